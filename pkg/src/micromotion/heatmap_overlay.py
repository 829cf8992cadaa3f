"""Motion heatmaps (bitwise OR), keypoint circle rendering, and overlap averaging."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .frame_io import FrameSequence

MAX_KEYPOINTS = 22
DEFAULT_MIN_CONFIDENCE = 0.1
MARKER_COLOR = (1.0, 0.0, 0.0)
# radius scales with frame diagonal; 4 px at a 720p-equivalent diagonal
_RADIUS_PER_DIAGONAL = 4.0 / math.hypot(1280, 720)


@dataclass(frozen=True)
class Keypoint:
    x: float
    y: float
    confidence: float


@dataclass(frozen=True)
class KeypointFrame:
    frame_index: int
    points: tuple[Keypoint, ...]


class KeypointTrackError(ValueError):
    """Raised when a keypoint track file is malformed."""


def _check_aligned(a: FrameSequence, b: FrameSequence) -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    if a.count != b.count:
        raise ValueError(f"frame count mismatch: {a.count} vs {b.count}")
    if abs(a.fps - b.fps) > 1e-9:
        raise ValueError(f"fps mismatch: {a.fps} vs {b.fps}")


def heatmap(original: FrameSequence, magnified: FrameSequence) -> FrameSequence:
    """Per-byte bitwise OR of the two aligned sequences."""
    _check_aligned(original, magnified)
    return FrameSequence(
        frames=np.bitwise_or(original.frames, magnified.frames), fps=original.fps
    )


def average_overlap(heat: FrameSequence, skeleton: FrameSequence) -> FrameSequence:
    """Per-byte integer average, round half up."""
    _check_aligned(heat, skeleton)
    total = heat.frames.astype(np.uint16) + skeleton.frames.astype(np.uint16)
    return FrameSequence(frames=((total + 1) // 2).astype(np.uint8), fps=heat.fps)


def marker_radius(width: int, height: int) -> int:
    return max(1, round(_RADIUS_PER_DIAGONAL * math.hypot(width, height)))


def render_keypoints(
    frame: np.ndarray,
    kps: KeypointFrame,
    min_confidence: float = DEFAULT_MIN_CONFIDENCE,
) -> np.ndarray:
    """Draw a filled circle at each keypoint above the confidence threshold.

    `frame` is a float (h, w, 3) image; returns a modified copy.
    """
    out = np.array(frame, dtype=np.float64, copy=True)
    h, w = out.shape[:2]
    radius = marker_radius(w, h)
    ys, xs = np.mgrid[0:h, 0:w]
    for kp in kps.points:
        if kp.confidence < min_confidence:
            continue
        mask = (xs - kp.x) ** 2 + (ys - kp.y) ** 2 <= radius**2
        out[mask] = MARKER_COLOR
    return out


def load_keypoint_track(path: str) -> list[KeypointFrame]:
    """Parse a keypoint track JSON file: [{frame_index, points: [{x, y, confidence}]}]."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise KeypointTrackError("track file must contain a JSON array")
    track = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise KeypointTrackError(f"entry {i}: expected object")
        try:
            frame_index = int(entry["frame_index"])
            raw_points = entry["points"]
        except (KeyError, TypeError, ValueError) as exc:
            raise KeypointTrackError(f"entry {i}: {exc}") from exc
        if not isinstance(raw_points, list):
            raise KeypointTrackError(f"entry {i}: points must be an array")
        if len(raw_points) > MAX_KEYPOINTS:
            raise KeypointTrackError(
                f"entry {i}: {len(raw_points)} points exceeds limit {MAX_KEYPOINTS}"
            )
        points = []
        for j, p in enumerate(raw_points):
            try:
                kp = Keypoint(float(p["x"]), float(p["y"]), float(p["confidence"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise KeypointTrackError(f"entry {i} point {j}: {exc}") from exc
            if not 0.0 <= kp.confidence <= 1.0:
                raise KeypointTrackError(
                    f"entry {i} point {j}: confidence {kp.confidence} outside [0, 1]"
                )
            points.append(kp)
        track.append(KeypointFrame(frame_index=frame_index, points=tuple(points)))
    return track


def scale_track(
    track: list[KeypointFrame], from_dims: tuple[int, int], to_dims: tuple[int, int]
) -> list[KeypointFrame]:
    """Rescale track coordinates from original to padded/magnified frame space."""
    sx = to_dims[0] / from_dims[0]
    sy = to_dims[1] / from_dims[1]
    return [
        KeypointFrame(
            frame_index=kf.frame_index,
            points=tuple(
                Keypoint(kp.x * sx, kp.y * sy, kp.confidence) for kp in kf.points
            ),
        )
        for kf in track
    ]
