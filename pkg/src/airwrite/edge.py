"""Four-stage edge enhancement: smooth, Sobel, normalize, threshold.

The output of the chain is not a binary edge map but a gray-level edge
image: normalization stretches the gradient magnitudes to [0, 255] and the
final threshold only quenches weak responses, keeping the surviving values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from airwrite import _kernels
from airwrite.errors import InvalidWindow, TooSmall
from airwrite.raster import BinaryRaster, GrayRaster

DEFAULT_WINDOW = 3
DEFAULT_EDGE_THRESHOLD = 50


def gaussian_sigma(w: int) -> float:
    """Standard deviation for a w-by-w smoothing window: 0.3(w/2 - 1) + 0.8.

    Evaluated in exact rational arithmetic and rounded once, so the result
    is the correctly rounded double (0.95 for w=3, not 0.95 + 1 ulp).
    """
    if w < 3 or w % 2 == 0:
        raise InvalidWindow(f"window must be odd and >= 3, got {w}")
    return float(Fraction(3, 10) * (Fraction(w, 2) - 1) + Fraction(4, 5))


@dataclass(frozen=True)
class GaussianKernel:
    """Normalized w-by-w Gaussian coefficient grid.

    The grid is the outer product of its 1-D axis profile, which the
    smoothing convolution exploits by running two separable passes.
    """

    w: int
    sigma: float
    weights: np.ndarray
    axis_weights: np.ndarray

    @classmethod
    def of_window(cls, w: int = DEFAULT_WINDOW) -> "GaussianKernel":
        sigma = gaussian_sigma(w)
        r = w // 2
        offsets = np.arange(-r, r + 1, dtype=np.float64)
        g1 = np.exp(-(offsets**2) / (2.0 * sigma * sigma))
        g1 /= g1.sum()
        weights = np.outer(g1, g1)
        weights.setflags(write=False)
        g1.setflags(write=False)
        return cls(w=w, sigma=sigma, weights=weights, axis_weights=g1)


@dataclass(frozen=True)
class EdgeMaps:
    """Stack produced by the enhancement chain.

    e_h, e_v are set by the gradient stage, e_n (plus the recorded extrema
    of e) by normalization, e_nt by thresholding; unfilled stages are None.
    """

    e_h: np.ndarray
    e_v: np.ndarray
    e: np.ndarray
    e_n: np.ndarray | None = None
    e_nt: np.ndarray | None = None
    e_min: float | None = None
    e_max: float | None = None


def gaussian_smooth(img: GrayRaster, kernel: GaussianKernel | None = None) -> GrayRaster:
    """Convolve with the normalized kernel; border pixels replicate."""
    if kernel is None:
        kernel = GaussianKernel.of_window()
    return GrayRaster(_kernels.smooth_replicate(img.pixels, kernel.axis_weights))


def sobel_gradient(img: GrayRaster) -> EdgeMaps:
    """Sobel responses and gradient magnitude sqrt(e_h^2 + e_v^2).

    The magnitude is defined on the interior (the 3x3 masks do not fit on
    the border); the one-pixel border of all grids is zero.
    """
    if img.height < 3 or img.width < 3:
        raise TooSmall(f"need at least 3x3, got {img.width}x{img.height}")
    e_h, e_v, e, e_min, e_max = _kernels.sobel(img.pixels)
    for a in (e_h, e_v, e):
        a.setflags(write=False)
    return EdgeMaps(e_h=e_h, e_v=e_v, e=e)


def normalize_edges(maps: EdgeMaps) -> EdgeMaps:
    """Stretch the magnitude image to [0, 255], rounding half up.

    A constant magnitude image (no dynamic range) normalizes to all zeros.
    """
    e_min = float(maps.e.min())
    e_max = float(maps.e.max())
    if e_max > e_min:
        # multiply before dividing: 255*(e-min)/(max-min) keeps exact
        # midpoints (e.g. 127.5) exact where the factored form cannot
        e_n = np.floor(255.0 * (maps.e - e_min) / (e_max - e_min) + 0.5)
    else:
        e_n = np.zeros_like(maps.e)
    e_n.setflags(write=False)
    return replace(maps, e_n=e_n, e_min=e_min, e_max=e_max)


def threshold_edges(maps: EdgeMaps, t: int = DEFAULT_EDGE_THRESHOLD) -> EdgeMaps:
    """Quench normalized responses below t, keeping the values of the rest."""
    e_nt = np.where(maps.e_n >= t, maps.e_n, 0.0)
    e_nt.setflags(write=False)
    return replace(maps, e_nt=e_nt)


def enhance(
    img: GrayRaster,
    kernel: GaussianKernel | None = None,
    t: int = DEFAULT_EDGE_THRESHOLD,
) -> EdgeMaps:
    """Run the full chain: smooth, gradient, normalize, threshold."""
    smoothed = gaussian_smooth(img, kernel)
    return threshold_edges(normalize_edges(sobel_gradient(smoothed)), t)


def support_mask(
    img: GrayRaster,
    kernel: GaussianKernel | None = None,
    t: int = DEFAULT_EDGE_THRESHOLD,
) -> BinaryRaster:
    """Nonzero set of enhance(img, kernel, t).e_nt as a binary mask.

    Fused fast path for per-frame gating; pixel-for-pixel equal to running
    the staged chain and testing e_nt > 0.
    """
    if img.height < 3 or img.width < 3:
        raise TooSmall(f"need at least 3x3, got {img.width}x{img.height}")
    if kernel is None:
        kernel = GaussianKernel.of_window()
    return BinaryRaster(_kernels.edge_support(img.pixels, kernel.axis_weights, float(t)))
