"""Frame-sequence I/O: manifest loading, zero padding, bilinear resize, PNG writing.

A sequence on disk is a directory of 8-bit RGB PNG files plus a JSON manifest
with keys ``subject_id``, ``fps``, ``frame_file_pattern`` (printf-style index
substitution, e.g. ``frame_%04d.png``), ``frame_count``, ``notes``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np
from PIL import Image


class ManifestError(ValueError):
    """Raised when a manifest or its referenced frames are invalid."""


@dataclass(frozen=True)
class Manifest:
    subject_id: str
    fps: float
    frame_file_pattern: str
    frame_count: int
    notes: str = ""

    def frame_path(self, directory: str, index: int) -> str:
        return os.path.join(directory, self.frame_file_pattern % index)


@dataclass(frozen=True)
class FrameSequence:
    """Ordered RGB frames with a common size and frame rate.

    ``frames`` is a uint8 array of shape (count, height, width, 3).
    Immutable after construction; safe to share across threads.
    """

    frames: np.ndarray = field(repr=False)
    fps: float

    def __post_init__(self):
        f = self.frames
        if f.ndim != 4 or f.shape[3] != 3 or f.dtype != np.uint8:
            raise ValueError("frames must be uint8 with shape (count, h, w, 3)")
        if f.shape[0] < 2:
            raise ValueError("need at least 2 frames for temporal processing")
        if self.fps <= 0:
            raise ValueError(f"fps must be > 0, got {self.fps}")
        f.setflags(write=False)

    @property
    def count(self) -> int:
        return self.frames.shape[0]

    @property
    def height(self) -> int:
        return self.frames.shape[1]

    @property
    def width(self) -> int:
        return self.frames.shape[2]


def load_manifest(manifest_path: str) -> Manifest:
    with open(manifest_path, encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        m = Manifest(
            subject_id=str(raw["subject_id"]),
            fps=float(raw["fps"]),
            frame_file_pattern=str(raw["frame_file_pattern"]),
            frame_count=int(raw["frame_count"]),
            notes=str(raw.get("notes", "")),
        )
    except KeyError as exc:
        raise ManifestError(f"manifest {manifest_path} missing key {exc}") from exc
    if m.fps <= 0:
        raise ManifestError(f"manifest {manifest_path}: fps must be > 0, got {m.fps}")
    if m.frame_count < 2:
        raise ManifestError(
            f"manifest {manifest_path}: frame_count must be >= 2, got {m.frame_count}"
        )
    return m


def load_sequence(manifest_path: str) -> FrameSequence:
    """Load all frames referenced by a manifest, in manifest order."""
    manifest = load_manifest(manifest_path)
    directory = os.path.dirname(os.path.abspath(manifest_path))
    frames = []
    dims = None
    for i in range(manifest.frame_count):
        path = manifest.frame_path(directory, i)
        if not os.path.exists(path):
            raise ManifestError(f"frame {i}: missing file {path}")
        with Image.open(path) as im:
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
        if dims is None:
            dims = arr.shape
        elif arr.shape != dims:
            raise ManifestError(
                f"frame {i}: dimensions {arr.shape[1]}x{arr.shape[0]} "
                f"differ from frame 0 ({dims[1]}x{dims[0]})"
            )
        frames.append(arr)
    return FrameSequence(frames=np.stack(frames), fps=manifest.fps)


def write_sequence(
    seq: FrameSequence, out_dir: str, subject_id: str = "", notes: str = ""
) -> str:
    """Write frames as PNGs plus a manifest; returns the manifest path.

    Round-trips bit-exactly through load_sequence.
    """
    os.makedirs(out_dir, exist_ok=True)
    pattern = "frame_%06d.png"
    for i in range(seq.count):
        Image.fromarray(seq.frames[i]).save(os.path.join(out_dir, pattern % i))
    manifest = {
        "subject_id": subject_id,
        "fps": seq.fps,
        "frame_file_pattern": pattern,
        "frame_count": seq.count,
        "notes": notes,
    }
    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
    return manifest_path


def padded_dim(size: int, levels: int) -> int:
    """Smallest value >= size divisible by 2**levels."""
    step = 1 << levels
    return ((size + step - 1) // step) * step


def pad_to_levels(seq: FrameSequence, levels: int) -> FrameSequence:
    """Zero-pad right/bottom so each dimension supports `levels` halvings.

    Zeros go on the right/bottom edges so pixel coordinates of the original
    content stay stable for labeling.
    """
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    w, h = padded_dim(seq.width, levels), padded_dim(seq.height, levels)
    if (w, h) == (seq.width, seq.height):
        return seq
    out = np.zeros((seq.count, h, w, 3), dtype=np.uint8)
    out[:, : seq.height, : seq.width] = seq.frames
    return FrameSequence(frames=out, fps=seq.fps)


def _bilinear_axis(arr: np.ndarray, new_size: int, axis: int) -> np.ndarray:
    old_size = arr.shape[axis]
    if new_size == old_size:
        return arr
    # endpoint-aligned sample grid: constants and corner samples are exact
    if old_size == 1:
        reps = [1] * arr.ndim
        reps[axis] = new_size
        return np.tile(arr, reps)
    pos = np.linspace(0.0, old_size - 1, new_size)
    lo = np.floor(pos).astype(np.intp)
    lo = np.minimum(lo, old_size - 2)
    frac = pos - lo
    a = np.take(arr, lo, axis=axis)
    b = np.take(arr, lo + 1, axis=axis)
    shape = [1] * arr.ndim
    shape[axis] = new_size
    frac = frac.reshape(shape)
    return a * (1.0 - frac) + b * frac


def resize_to(seq: FrameSequence, width: int, height: int) -> FrameSequence:
    """Bilinear resample every frame to the target dimensions."""
    if width < 1 or height < 1:
        raise ValueError(f"target dimensions must be >= 1, got {width}x{height}")
    data = seq.frames.astype(np.float64)
    data = _bilinear_axis(data, height, axis=1)
    data = _bilinear_axis(data, width, axis=2)
    out = np.clip(np.rint(data), 0, 255).astype(np.uint8)
    return FrameSequence(frames=out, fps=seq.fps)


def to_float(frames: np.ndarray) -> np.ndarray:
    """uint8 frames -> float32 in [0, 1]."""
    return frames.astype(np.float32) / 255.0


def to_uint8(frames: np.ndarray) -> np.ndarray:
    """Float frames -> uint8, clamping to [0, 1] first."""
    return np.clip(np.rint(frames * 255.0), 0, 255).astype(np.uint8)
