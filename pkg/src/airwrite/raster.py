"""Pixel-grid types shared by every pipeline stage.

Rasters wrap a numpy array and are immutable after construction: the array
is marked read-only, so instances are safe to share across threads and to
use as reference frames.

Coordinates follow image convention: x grows rightward in [0, width),
y grows downward in [0, height). Arrays are indexed [y, x].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from airwrite import _kernels


@dataclass(frozen=True)
class RgbRaster:
    """8-bit RGB frame, shape (height, width, 3), dtype uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.pixels, dtype=np.uint8)
        if a.ndim != 3 or a.shape[2] != 3 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"RgbRaster needs shape (h, w, 3), got {a.shape}")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        object.__setattr__(self, "pixels", a)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class GrayRaster:
    """Gray frame with values in [0, 255]; fractional values are allowed.

    Stages that the source material presents as images (grayscale
    conversion, edge normalization) quantize; intermediate filter outputs
    keep fractional precision.
    """

    pixels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.pixels, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"GrayRaster needs shape (h, w), got {a.shape}")
        if a.min() < 0 or a.max() > 255:
            raise ValueError("GrayRaster values must lie in [0, 255]")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        object.__setattr__(self, "pixels", a)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class BinaryRaster:
    """Binary mask with values in {0, 1}, dtype uint8."""

    pixels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.pixels, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"BinaryRaster needs shape (h, w), got {a.shape}")
        if a.max(initial=0) > 1:
            raise ValueError("BinaryRaster values must be 0 or 1")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        object.__setattr__(self, "pixels", a)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def count(self) -> int:
        """Number of lit pixels."""
        return int(self.pixels.sum())


@dataclass(frozen=True)
class Point:
    """Pixel position; fractional coordinates allowed (centroids)."""

    x: float
    y: float


def to_grayscale(frame: RgbRaster) -> GrayRaster:
    """Convert to luma (0.299 r + 0.587 g + 0.114 b, rounded half up)."""
    return GrayRaster(_kernels.luma(frame.pixels))
