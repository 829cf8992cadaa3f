import { z } from "zod";

/** The four motion categories, mirroring the label-file contract of the backend. */
export const MOTION_LABELS = ["hand_finger", "vein", "background", "respiration"] as const;
export type MotionLabel = (typeof MOTION_LABELS)[number];

export const LABEL_COLORS: Record<MotionLabel, string> = {
  hand_finger: "#e05050",
  vein: "#5070e0",
  background: "#50b050",
  respiration: "#d0a030",
};

export const regionSchema = z.object({
  id: z.string().min(1),
  label: z.enum(MOTION_LABELS),
  polygon: z.array(z.tuple([z.number(), z.number()])).min(3),
  frame_range: z.tuple([z.number().int().nonnegative(), z.number().int()]),
});

export const labelFileSchema = z.object({
  video_ref: z.string(),
  author: z.string(),
  created_at: z.string(),
  regions: z.array(regionSchema),
});

export type Region = z.infer<typeof regionSchema>;
export type LabelFile = z.infer<typeof labelFileSchema>;

export interface VideoMeta {
  width: number;
  height: number;
  fps: number;
  frame_count: number;
  kinds: string[];
  has_keypoints: boolean;
}

export type FrameKind = "raw" | "magnified" | "heatmap" | "overlap";
