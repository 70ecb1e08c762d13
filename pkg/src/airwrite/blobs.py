"""Connected-component labeling and per-region properties.

Labeling is the classic two-pass algorithm with union-find equivalence
resolution; labels come out renumbered 1..count in row-major
first-encounter order, so results are deterministic and directly
comparable against a flood-fill reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from airwrite import _kernels
from airwrite.raster import BinaryRaster, Point

DEFAULT_CONNECTIVITY = 8
DEFAULT_MIN_AREA = 15


@dataclass(frozen=True)
class LabelRaster:
    """Integer region map: 0 is background, regions are 1..count."""

    labels: np.ndarray
    count: int

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]


@dataclass(frozen=True)
class BoundingBox:
    """Tightest axis-aligned box around a region, inclusive on all sides."""

    min_x: int
    min_y: int
    max_x: int
    max_y: int

    def contains(self, p: Point) -> bool:
        return self.min_x <= p.x <= self.max_x and self.min_y <= p.y <= self.max_y


@dataclass(frozen=True)
class RegionProps:
    label: int
    area: int
    bbox: BoundingBox
    centroid: Point
    orientation: float


def label(mask: BinaryRaster, connectivity: int = DEFAULT_CONNECTIVITY) -> LabelRaster:
    """Label connected foreground regions under 4- or 8-connectivity."""
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    labels, count = _kernels.label_two_pass(mask.pixels, connectivity == 8)
    labels.setflags(write=False)
    return LabelRaster(labels=labels, count=int(count))


def _orientation(xs: np.ndarray, ys: np.ndarray, cx: float, cy: float) -> float:
    """Major-axis angle from second-order central moments, in (-pi/2, pi/2]."""
    dx = xs - cx
    dy = ys - cy
    mu20 = float((dx * dx).sum())
    mu02 = float((dy * dy).sum())
    mu11 = float((dx * dy).sum())
    if mu11 == 0.0 and mu20 == mu02:
        return 0.0
    theta = 0.5 * math.atan2(2.0 * mu11, mu20 - mu02)
    if theta <= -math.pi / 2:
        theta += math.pi
    return theta


def region_props(labeled: LabelRaster) -> list[RegionProps]:
    """Area, bounding box, centroid and orientation for each region."""
    props = []
    for k in range(1, labeled.count + 1):
        ys, xs = np.nonzero(labeled.labels == k)
        cx = float(xs.mean())
        cy = float(ys.mean())
        props.append(
            RegionProps(
                label=k,
                area=int(xs.size),
                bbox=BoundingBox(int(xs.min()), int(ys.min()), int(xs.max()), int(ys.max())),
                centroid=Point(cx, cy),
                orientation=_orientation(xs, ys, cx, cy),
            )
        )
    return props


def select_target(props: list[RegionProps], min_area: int = DEFAULT_MIN_AREA) -> RegionProps | None:
    """Largest region of at least min_area; ties go to the smallest label."""
    best = None
    for p in props:
        if p.area < min_area:
            continue
        if best is None or p.area > best.area:
            best = p
    return best
