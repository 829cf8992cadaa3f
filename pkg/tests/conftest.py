"""Shared synthetic fixtures: videos, edge oscillation, waveform datasets."""

import numpy as np
import pytest

from micromotion.frame_io import FrameSequence
from micromotion.labeling import CLASS_ORDER
from micromotion.waveform import Waveform, WaveformDataset


def make_sequence(frames: np.ndarray, fps: float = 30.0) -> FrameSequence:
    return FrameSequence(frames=np.ascontiguousarray(frames, dtype=np.uint8), fps=fps)


def constant_video(value: int, count=4, h=8, w=8, fps=30.0) -> FrameSequence:
    return make_sequence(np.full((count, h, w, 3), value, dtype=np.uint8), fps)


def random_video(rng, count=4, h=8, w=8, fps=30.0) -> FrameSequence:
    return make_sequence(rng.integers(0, 256, (count, h, w, 3), dtype=np.uint8), fps)


def edge_profile(width: int, center: float, sigma: float = 4.0,
                 lo: float = 0.05, hi: float = 0.95) -> np.ndarray:
    x = np.arange(width)
    return lo + (hi - lo) * 0.5 * (1.0 + np.tanh((x - center) / sigma))


def oscillating_edge_video(
    width=64, height=64, fps=30.0, seconds=10.0,
    center=32.0, amplitude=0.2, freq=1.0, sigma=4.0,
) -> FrameSequence:
    """Blurred vertical edge displaced sinusoidally along x.

    A static sub-quantum per-row intensity offset decorrelates 8-bit
    rounding across rows, so row averaging recovers the sub-step
    temporal signal.
    """
    count = int(round(seconds * fps))
    t = np.arange(count) / fps
    dither = np.random.default_rng(7).uniform(0.0, 1 / 255, (height, 1, 1))
    frames = np.empty((count, height, width, 3), dtype=np.uint8)
    for i in range(count):
        c = center + amplitude * np.sin(2 * np.pi * freq * t[i])
        img = edge_profile(width, c, sigma)[None, :, None] + dither
        frames[i] = np.clip(np.rint(img * 255), 0, 255).astype(np.uint8)
    return make_sequence(frames, fps)


def measure_edge_amplitude(seq: FrameSequence, freq: float) -> float:
    """Sub-pixel edge location per frame via gradient centroid, then the
    amplitude of its component at the given frequency."""
    profiles = seq.frames.astype(np.float64).mean(axis=(1, 3))  # (count, width)
    grads = np.abs(np.diff(profiles, axis=1))
    x_mid = np.arange(grads.shape[1]) + 0.5
    centers = (grads * x_mid).sum(axis=1) / grads.sum(axis=1)
    n = len(centers)
    t = np.arange(n) / seq.fps
    phase = np.exp(-2j * np.pi * freq * t)
    return 2.0 * abs((centers * phase).mean())


CLASS_FREQS = {
    CLASS_ORDER[0]: 1.2,   # hand/finger
    CLASS_ORDER[1]: 0.25,  # vein
    CLASS_ORDER[2]: 0.05,  # background
    CLASS_ORDER[3]: 3.0,   # respiration
}


def synthetic_waveform_dataset(
    n_per_class=20, length=300, fps=30.0, noise=0.02, seed=0
) -> WaveformDataset:
    """Four classes as distinct-frequency sinusoids plus Gaussian noise."""
    rng = np.random.default_rng(seed)
    t = np.arange(length) / fps
    items = []
    for label, freq in CLASS_FREQS.items():
        for i in range(n_per_class):
            samples = 0.5 + 0.2 * np.sin(2 * np.pi * freq * t)
            samples = samples + rng.normal(0.0, noise, length)
            items.append(
                Waveform(
                    samples=np.clip(samples, 0.0, 1.0),
                    fps=fps,
                    label=label,
                    subject_id=f"s{i:03d}",
                    region_id=f"{label.value}_{i}",
                )
            )
    return WaveformDataset(items=tuple(items), feature_length=length)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
