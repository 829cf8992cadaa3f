"""Eulerian video magnification pipeline.

Pad, decompose every frame into a Laplacian pyramid, temporally bandpass
each band's per-pixel series, amplify, add back, collapse, clamp to [0, 1]
at the final 8-bit conversion only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import frame_io, pyramid
from .frame_io import FrameSequence
from .temporal_filter import BandpassSpec, ideal_bandpass


@dataclass(frozen=True)
class MagnifyConfig:
    alpha: float
    band: BandpassSpec
    num_levels: int = 3
    per_level_gain: tuple[float, ...] | None = None  # length num_levels + 1

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.num_levels < 1:
            raise ValueError(f"num_levels must be >= 1, got {self.num_levels}")
        if self.per_level_gain is not None and len(self.per_level_gain) != self.num_levels + 1:
            raise ValueError(
                f"per_level_gain must have {self.num_levels + 1} entries "
                f"(one per band plus residual), got {len(self.per_level_gain)}"
            )

    @property
    def gains(self) -> np.ndarray:
        if self.per_level_gain is None:
            return np.ones(self.num_levels + 1)
        return np.asarray(self.per_level_gain, dtype=np.float64)


def magnify(seq: FrameSequence, cfg: MagnifyConfig) -> FrameSequence:
    """Run the full magnification pipeline; output has padded dimensions."""
    if abs(cfg.band.fps - seq.fps) > 1e-9:
        raise ValueError(f"band fps {cfg.band.fps} does not match video fps {seq.fps}")
    padded = frame_io.pad_to_levels(seq, cfg.num_levels)
    frames = frame_io.to_float(padded.frames).astype(np.float64)
    kernel = pyramid.binomial_kernel()

    # stack each pyramid level across time: (count, h_l, w_l, 3)
    per_frame = [pyramid.build_laplacian(f, cfg.num_levels, kernel) for f in frames]
    stacks = [
        np.stack([p.bands[l] for p in per_frame]) for l in range(cfg.num_levels)
    ]
    stacks.append(np.stack([p.residual for p in per_frame]))

    gains = cfg.gains
    for l, stack in enumerate(stacks):
        if cfg.alpha * gains[l] == 0:
            continue
        filtered = ideal_bandpass(stack, cfg.band, axis=0)
        stack += cfg.alpha * gains[l] * filtered

    out = np.empty_like(frames)
    for t in range(padded.count):
        pyr = pyramid.LaplacianPyramid(
            bands=[stacks[l][t] for l in range(cfg.num_levels)],
            residual=stacks[cfg.num_levels][t],
        )
        out[t] = pyramid.collapse(pyr, kernel)
    return FrameSequence(frames=frame_io.to_uint8(out), fps=seq.fps)
