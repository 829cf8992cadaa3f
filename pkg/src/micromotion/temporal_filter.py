"""Ideal (frequency-mask) temporal bandpass and gain application.

Offline whole-clip filtering: the DFT bins outside [f_lo, f_hi) are zeroed
(inclusive at f_lo, exclusive at f_hi); DC survives only when f_lo == 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BandpassSpec:
    f_lo: float
    f_hi: float
    fps: float

    def __post_init__(self):
        if not (0 <= self.f_lo < self.f_hi):
            raise ValueError(f"need 0 <= f_lo < f_hi, got [{self.f_lo}, {self.f_hi})")
        if self.f_hi > self.fps / 2 + 1e-12:
            raise ValueError(
                f"f_hi {self.f_hi} exceeds Nyquist {self.fps / 2} at {self.fps} fps"
            )


def ideal_bandpass(samples: np.ndarray, spec: BandpassSpec, axis: int = -1) -> np.ndarray:
    """Zero all frequency bins outside [f_lo, f_hi) along the given axis."""
    samples = np.asarray(samples, dtype=np.float64)
    n = samples.shape[axis]
    if n < 2:
        raise ValueError("need at least 2 samples")
    freqs = np.fft.rfftfreq(n, d=1.0 / spec.fps)
    keep = (freqs >= spec.f_lo - 1e-12) & (freqs < spec.f_hi - 1e-12)
    spectrum = np.fft.rfft(samples, axis=axis)
    shape = [1] * samples.ndim
    shape[axis] = len(freqs)
    spectrum *= keep.reshape(shape)
    return np.fft.irfft(spectrum, n=n, axis=axis)


def amplify_band(original: np.ndarray, band: np.ndarray, alpha: float) -> np.ndarray:
    """original + alpha * band, elementwise."""
    original = np.asarray(original, dtype=np.float64)
    band = np.asarray(band, dtype=np.float64)
    if original.shape != band.shape:
        raise ValueError(f"shape mismatch: {original.shape} vs {band.shape}")
    return original + alpha * band
