"""Gaussian and Laplacian image pyramids with the 5-tap binomial kernel.

Images are float arrays of shape (h, w, c) (or (h, w)); channels are
processed independently. Boundary handling is reflect-101 (edge pixel not
duplicated), which avoids dark-edge artifacts in the band images.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Kernel5:
    """Separable 5-tap smoothing kernel; the 2D weight grid is the outer product."""

    taps: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.taps, dtype=np.float64)
        if t.shape != (5,):
            raise ValueError("kernel must have exactly 5 taps")
        if not np.isclose(t.sum(), 1.0):
            raise ValueError("kernel taps must sum to 1")
        if not np.allclose(t, t[::-1]):
            raise ValueError("kernel must be symmetric")
        object.__setattr__(self, "taps", t)

    @property
    def grid(self) -> np.ndarray:
        return np.outer(self.taps, self.taps)


def binomial_kernel() -> Kernel5:
    """The standard [1, 4, 6, 4, 1]/16 generating kernel."""
    return Kernel5(np.array([1, 4, 6, 4, 1]) / 16.0)


@dataclass(frozen=True)
class GaussianPyramid:
    """Levels of successively halved, smoothed images; level 0 is the input."""

    levels: list[np.ndarray] = field(repr=False)

    @property
    def num_levels(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class LaplacianPyramid:
    """Band-pass difference images plus the coarsest Gaussian residual."""

    bands: list[np.ndarray] = field(repr=False)
    residual: np.ndarray = field(repr=False)


def _filter_axis(img: np.ndarray, taps: np.ndarray, axis: int) -> np.ndarray:
    padded = np.pad(
        img, [(2, 2) if a == axis else (0, 0) for a in range(img.ndim)], mode="reflect"
    )
    n = img.shape[axis]
    out = np.zeros_like(img, dtype=np.float64)
    for t in range(5):
        sl = [slice(None)] * img.ndim
        sl[axis] = slice(t, t + n)
        out += taps[t] * padded[tuple(sl)]
    return out


def _smooth(img: np.ndarray, kernel: Kernel5) -> np.ndarray:
    return _filter_axis(_filter_axis(img, kernel.taps, 0), kernel.taps, 1)


def reduce_image(img: np.ndarray, kernel: Kernel5 | None = None) -> np.ndarray:
    """Smooth with the 5x5 kernel and subsample at even coordinates."""
    kernel = kernel or binomial_kernel()
    h, w = img.shape[:2]
    if h % 2 or w % 2:
        raise ValueError(f"dimensions must be even, got {w}x{h}")
    return _smooth(img, kernel)[::2, ::2]


def expand_image(
    img: np.ndarray, target_w: int, target_h: int, kernel: Kernel5 | None = None
) -> np.ndarray:
    """Zero-upsample by 2 and smooth with factor-4 gain compensation.

    Only terms whose half-coordinates land on integers contribute; the
    factor 4 restores unit gain per parity class.
    """
    kernel = kernel or binomial_kernel()
    h, w = img.shape[:2]
    if target_h != 2 * h or target_w != 2 * w:
        raise ValueError(
            f"target {target_w}x{target_h} is not double the input {w}x{h}"
        )
    up = np.zeros((target_h, target_w) + img.shape[2:], dtype=np.float64)
    up[::2, ::2] = img
    return 4.0 * _smooth(up, kernel)


def build_gaussian(
    img: np.ndarray, n: int, kernel: Kernel5 | None = None
) -> GaussianPyramid:
    """n+1 levels; level 0 is the input unchanged."""
    kernel = kernel or binomial_kernel()
    _check_divisibility(img, n)
    levels = [np.asarray(img, dtype=np.float64)]
    for _ in range(n):
        levels.append(reduce_image(levels[-1], kernel))
    return GaussianPyramid(levels=levels)


def build_laplacian(
    img: np.ndarray, n: int, kernel: Kernel5 | None = None
) -> LaplacianPyramid:
    """n difference bands plus the coarsest Gaussian level as residual."""
    kernel = kernel or binomial_kernel()
    gauss = build_gaussian(img, n, kernel)
    bands = []
    for level in range(n):
        finer = gauss.levels[level]
        coarser = gauss.levels[level + 1]
        bands.append(
            finer - expand_image(coarser, finer.shape[1], finer.shape[0], kernel)
        )
    return LaplacianPyramid(bands=bands, residual=gauss.levels[-1])


def collapse(pyr: LaplacianPyramid, kernel: Kernel5 | None = None) -> np.ndarray:
    """Invert build_laplacian: expand the residual upward, adding each band."""
    kernel = kernel or binomial_kernel()
    img = pyr.residual
    for band in reversed(pyr.bands):
        if band.shape[0] != 2 * img.shape[0] or band.shape[1] != 2 * img.shape[1]:
            raise ValueError(
                f"band dims {band.shape[1]}x{band.shape[0]} do not chain "
                f"from {img.shape[1]}x{img.shape[0]}"
            )
        img = band + expand_image(img, band.shape[1], band.shape[0], kernel)
    return img


def _check_divisibility(img: np.ndarray, n: int) -> None:
    if n < 0:
        raise ValueError(f"level count must be >= 0, got {n}")
    h, w = img.shape[:2]
    step = 1 << n
    if h % step or w % step:
        raise ValueError(f"dimensions {w}x{h} not divisible by 2^{n}")
