"""Per-region intensity waveforms: extraction, windowing, resampling, mesh export."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .frame_io import FrameSequence, to_float
from .labeling import MotionLabel

DEFAULT_FEATURE_LENGTH = 300  # 10 s at the 30 fps reference rate


@dataclass(frozen=True)
class Waveform:
    samples: np.ndarray = field(repr=False)
    fps: float
    label: MotionLabel | None = None
    subject_id: str = ""
    region_id: str = ""

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=np.float64)
        if s.ndim != 1 or len(s) < 2:
            raise ValueError("waveform needs at least 2 samples")
        if not np.all(np.isfinite(s)):
            raise ValueError("waveform samples must be finite")
        object.__setattr__(self, "samples", s)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.fps


@dataclass(frozen=True)
class WaveformDataset:
    items: tuple[Waveform, ...]
    feature_length: int

    def __post_init__(self):
        for w in self.items:
            if len(w.samples) != self.feature_length:
                raise ValueError(
                    f"waveform {w.region_id!r} has {len(w.samples)} samples, "
                    f"expected {self.feature_length}"
                )
            if w.label is None:
                raise ValueError(f"waveform {w.region_id!r} is unlabeled")

    def vectors(self) -> np.ndarray:
        return np.stack([w.samples for w in self.items])

    def labels(self) -> list[MotionLabel]:
        return [w.label for w in self.items]


def extract_waveform(
    seq: FrameSequence,
    pixels: set[tuple[int, int]],
    frame_range: tuple[int, int] | None = None,
    per_channel: bool = False,
) -> Waveform | np.ndarray:
    """Mean over the region's pixels and RGB channels per frame, scaled to [0, 1].

    With per_channel=True returns the raw (frames, 3) channel means instead.
    """
    if not pixels:
        raise ValueError("empty pixel set")
    start, end = frame_range if frame_range is not None else (0, seq.count)
    if not (0 <= start < end <= seq.count):
        raise ValueError(f"frame range [{start}, {end}) outside [0, {seq.count})")
    xs = np.array([p[0] for p in pixels])
    ys = np.array([p[1] for p in pixels])
    if xs.min() < 0 or ys.min() < 0 or xs.max() >= seq.width or ys.max() >= seq.height:
        raise ValueError("pixel set extends outside frame bounds")
    region = to_float(seq.frames[start:end, ys, xs, :])  # (frames, pixels, 3)
    channel_means = region.mean(axis=1)
    if per_channel:
        return channel_means
    return Waveform(samples=channel_means.mean(axis=1), fps=seq.fps)


def center_window(w: Waveform, seconds: float) -> Waveform:
    """Centered contiguous slice of round(seconds * fps) samples."""
    window = round(seconds * w.fps)
    n = len(w.samples)
    if window > n:
        raise ValueError(
            f"video of {n} samples at {w.fps} fps is shorter than {seconds} s window"
        )
    offset = (n - window) // 2
    return Waveform(
        samples=w.samples[offset : offset + window],
        fps=w.fps,
        label=w.label,
        subject_id=w.subject_id,
        region_id=w.region_id,
    )


def resample_to_length(w: Waveform, n: int) -> Waveform:
    """Linear interpolation onto n uniform positions; endpoints preserved exactly."""
    if n < 2:
        raise ValueError(f"target length must be >= 2, got {n}")
    old = len(w.samples)
    if n == old:
        resampled = w.samples
    else:
        positions = np.linspace(0.0, old - 1, n)
        resampled = np.interp(positions, np.arange(old), w.samples)
    # keep the effective duration: sample spacing scales with the length ratio
    new_fps = w.fps * (n - 1) / (old - 1)
    return Waveform(
        samples=resampled,
        fps=new_fps,
        label=w.label,
        subject_id=w.subject_id,
        region_id=w.region_id,
    )


def export_mesh(waveforms: list[Waveform], path: str) -> None:
    """Write a CSV grid (rows = waveforms, columns = time samples)."""
    if not waveforms:
        raise ValueError("no waveforms to export")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for w in waveforms:
            writer.writerow([f"{v:.6g}" for v in w.samples])


def export_plot_data(waveforms: list[Waveform], path: str) -> None:
    """Write plot-ready CSV: column 1 = time in seconds, one column per waveform."""
    if not waveforms:
        raise ValueError("no waveforms to export")
    n = len(waveforms[0].samples)
    if any(len(w.samples) != n for w in waveforms):
        raise ValueError("waveforms must share a common length")
    times = np.arange(n) / waveforms[0].fps
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["time_s"] + [w.region_id or f"w{i}" for i, w in enumerate(waveforms)])
        for t in range(n):
            writer.writerow(
                [f"{times[t]:.6g}"] + [f"{w.samples[t]:.6g}" for w in waveforms]
            )
