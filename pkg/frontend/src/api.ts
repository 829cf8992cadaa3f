import { FrameKind, LabelFile, labelFileSchema, VideoMeta } from "./types.js";

export interface SaveRejection {
  region_id: string;
  field: string;
  message: string;
}

export class LabelApi {
  constructor(private base: string = "") {}

  async meta(): Promise<VideoMeta> {
    const resp = await fetch(`${this.base}/video/meta`);
    if (!resp.ok) throw new Error(`meta failed: ${resp.status}`);
    return resp.json();
  }

  frameUrl(kind: FrameKind, index: number): string {
    return `${this.base}/frames/${kind}/${index}`;
  }

  async labels(): Promise<LabelFile> {
    const resp = await fetch(`${this.base}/labels`);
    if (!resp.ok) throw new Error(`labels failed: ${resp.status}`);
    return labelFileSchema.parse(await resp.json());
  }

  /** Returns [] on success, otherwise the server's per-region violations. */
  async saveLabels(file: LabelFile): Promise<SaveRejection[]> {
    const resp = await fetch(`${this.base}/labels`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(file),
    });
    if (resp.ok) return [];
    if (resp.status === 422) {
      const body = await resp.json();
      return body.violations ?? [{ region_id: "<file>", field: "file", message: "rejected" }];
    }
    throw new Error(`save failed: ${resp.status}`);
  }

  async keypoints(index: number): Promise<{ x: number; y: number; confidence: number }[]> {
    const resp = await fetch(`${this.base}/keypoints/${index}`);
    if (!resp.ok) return [];
    const body = await resp.json();
    return body.points ?? [];
  }
}
