/** Affine, reversible mapping between canvas space and video pixel space.
 *
 * The canvas shows the video scaled by a uniform factor; saved label
 * coordinates must be in video pixels.
 */

export interface Point {
  x: number;
  y: number;
}

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export function fitTransform(
  videoW: number,
  videoH: number,
  canvasW: number,
  canvasH: number
): ViewTransform {
  const scale = Math.min(canvasW / videoW, canvasH / videoH);
  return {
    scale,
    offsetX: (canvasW - videoW * scale) / 2,
    offsetY: (canvasH - videoH * scale) / 2,
  };
}

export function canvasToPixel(p: Point, t: ViewTransform): Point {
  return { x: (p.x - t.offsetX) / t.scale, y: (p.y - t.offsetY) / t.scale };
}

export function pixelToCanvas(p: Point, t: ViewTransform): Point {
  return { x: p.x * t.scale + t.offsetX, y: p.y * t.scale + t.offsetY };
}
