"""Red-fingertip extraction: color mask, frame differencing, object mask.

The red criterion is a dominance test (r >= min_red and r exceeds the
larger of g, b by min_dominance), which tolerates lighting changes better
than a fixed RGB box. Frame differencing against the previous frame is
available as an optional motion gate; it defaults off because dwell-based
character segmentation relies on seeing a stationary fingertip.
"""

from __future__ import annotations

from dataclasses import dataclass

from airwrite import _kernels
from airwrite.errors import DimensionMismatch
from airwrite.raster import BinaryRaster, RgbRaster


@dataclass(frozen=True)
class RedParams:
    """Thresholds for the red-object extraction stage."""

    min_red: int = 150
    min_dominance: int = 70
    diff_threshold: int = 25
    use_motion_gate: bool = False

    def __post_init__(self):
        if not 0 <= self.min_dominance <= self.min_red:
            raise ValueError("need min_red >= min_dominance >= 0")
        if not 0 <= self.diff_threshold <= 255:
            raise ValueError("diff_threshold must lie in [0, 255]")


def red_mask(frame: RgbRaster, params: RedParams = RedParams()) -> BinaryRaster:
    """Mask of pixels that read as the red fingertip."""
    return BinaryRaster(_kernels.red_mask(frame.pixels, params.min_red, params.min_dominance))


def frame_diff(current: RgbRaster, previous: RgbRaster, params: RedParams = RedParams()) -> BinaryRaster:
    """Mask of pixels whose max channel change exceeds diff_threshold."""
    if (current.width, current.height) != (previous.width, previous.height):
        raise DimensionMismatch(
            f"frame_diff: {current.width}x{current.height} vs {previous.width}x{previous.height}"
        )
    return BinaryRaster(_kernels.diff_mask(current.pixels, previous.pixels, params.diff_threshold))


def object_mask(
    current: RgbRaster,
    previous: RgbRaster | None = None,
    params: RedParams = RedParams(),
) -> BinaryRaster:
    """Red mask, optionally intersected with the motion mask.

    The very first frame has no reference, so the gate is skipped there.
    """
    red = red_mask(current, params)
    if not params.use_motion_gate or previous is None:
        return red
    moved = frame_diff(current, previous, params)
    return BinaryRaster(red.pixels & moved.pixels)
