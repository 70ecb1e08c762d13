"""Render a tracked stroke into a binary glyph image.

The stroke is normalized (translation and scale removed, aspect kept) into
a square canvas with a margin, consecutive points are joined with integer
line segments, and the line is thickened with a disc stamp. A second step
tight-crops the glyph and stretches it to the template size, deliberately
discarding aspect so that a bare vertical stroke fills the frame the same
way its template does.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from airwrite.errors import DegenerateStroke, EmptyGlyph
from airwrite.raster import BinaryRaster

MARGIN_FRACTION = 0.10


@dataclass(frozen=True)
class GlyphCanvas:
    """Square drawing surface for plotted strokes."""

    size: int = 128
    stroke_thickness: int = 3

    def __post_init__(self):
        if self.size < 16:
            raise ValueError("canvas size must be >= 16")
        if not 1 <= self.stroke_thickness < self.size / 4:
            raise ValueError("stroke_thickness must be in [1, size/4)")


def _round_half_up(v: float) -> int:
    return int(np.floor(v + 0.5))


def _line_pixels(x0: int, y0: int, x1: int, y1: int):
    """Bresenham line, inclusive of both endpoints."""
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    while True:
        yield x0, y0
        if x0 == x1 and y0 == y1:
            return
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def _disc_offsets(thickness: int) -> list[tuple[int, int]]:
    # disc of radius (t-1)/2; even thicknesses act like the next odd down
    r = (thickness - 1) / 2
    rr = r * r
    span = int(r)
    return [
        (a, b)
        for a in range(-span, span + 1)
        for b in range(-span, span + 1)
        if a * a + b * b <= rr
    ]


def rasterize_stroke(stroke, canvas: GlyphCanvas = GlyphCanvas()) -> BinaryRaster:
    """Draw a stroke into the canvas, normalized to fit with a 10% margin."""
    if len(stroke) < 2:
        raise DegenerateStroke(f"stroke needs >= 2 points, got {len(stroke)}")
    xs = [p.x for p in stroke]
    ys = [p.y for p in stroke]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    w = max_x - min_x
    h = max_y - min_y
    if w == 0 and h == 0:
        raise DegenerateStroke("all stroke points coincide")

    size = canvas.size
    margin = _round_half_up(MARGIN_FRACTION * size)
    usable = size - 2 * margin
    scale = usable / max(w, h)
    off_x = margin + (usable - w * scale) / 2
    off_y = margin + (usable - h * scale) / 2
    mapped = [
        (_round_half_up(off_x + (p.x - min_x) * scale), _round_half_up(off_y + (p.y - min_y) * scale))
        for p in stroke
    ]

    grid = np.zeros((size, size), dtype=np.uint8)
    disc = _disc_offsets(canvas.stroke_thickness)
    for (x0, y0), (x1, y1) in zip(mapped, mapped[1:]):
        for px, py in _line_pixels(x0, y0, x1, y1):
            for a, b in disc:
                x = px + a
                y = py + b
                if 0 <= x < size and 0 <= y < size:
                    grid[y, x] = 1
    return BinaryRaster(grid)


def fit_to_template(glyph: BinaryRaster, template_size: int) -> BinaryRaster:
    """Tight-crop the glyph and nearest-neighbor resample to a square."""
    ys, xs = np.nonzero(glyph.pixels)
    if xs.size == 0:
        raise EmptyGlyph("glyph has no lit pixels")
    crop = glyph.pixels[ys.min() : ys.max() + 1, xs.min() : xs.max() + 1]
    src_h, src_w = crop.shape
    t = template_size
    rows = np.minimum((np.floor((np.arange(t) + 0.5) * src_h / t)).astype(np.intp), src_h - 1)
    cols = np.minimum((np.floor((np.arange(t) + 0.5) * src_w / t)).astype(np.intp), src_w - 1)
    return BinaryRaster(crop[np.ix_(rows, cols)])
