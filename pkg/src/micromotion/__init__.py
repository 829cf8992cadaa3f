"""Micro-motion video toolkit: magnification, heatmaps, labeling, waveforms, kNN."""

__version__ = "0.1.0"
