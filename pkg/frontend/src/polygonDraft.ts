import { canvasToPixel, Point, ViewTransform } from "./coords.js";
import { MotionLabel, Region } from "./types.js";

/** In-progress polygon: click to add a vertex, close when >= 3 vertices. */
export interface RegionDraft {
  vertices: Point[]; // canvas space
  label: MotionLabel;
  frameRange: [number, number];
  closed: boolean;
}

export function newDraft(label: MotionLabel, frameRange: [number, number]): RegionDraft {
  return { vertices: [], label, frameRange, closed: false };
}

export function addVertex(draft: RegionDraft, p: Point): RegionDraft {
  if (draft.closed) return draft;
  return { ...draft, vertices: [...draft.vertices, p] };
}

export function canClose(draft: RegionDraft): boolean {
  return !draft.closed && draft.vertices.length >= 3;
}

export function closeDraft(draft: RegionDraft): RegionDraft {
  if (!canClose(draft)) return draft;
  return { ...draft, closed: true };
}

export function draftToRegion(
  draft: RegionDraft,
  id: string,
  transform: ViewTransform
): Region {
  if (!draft.closed) throw new Error("draft polygon is not closed");
  return {
    id,
    label: draft.label,
    polygon: draft.vertices.map((v) => {
      const p = canvasToPixel(v, transform);
      return [p.x, p.y] as [number, number];
    }),
    frame_range: draft.frameRange,
  };
}
