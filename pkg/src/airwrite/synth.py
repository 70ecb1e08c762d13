"""Deterministic synthetic writing sequences for tests and demos.

Each uppercase letter has a canonical single-stroke path (retracing a
segment is allowed, lifting is not). render_sequence moves a red dot along
those paths over a neutral background, holds it still after each letter so
dwell segmentation fires, and leaves the frame empty for spaces. Frames are
pre-mirrored horizontally, exactly like a front camera, so the production
pipeline sees synthetic and real input the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from airwrite.errors import InvalidText, UnknownLabel
from airwrite.raster import Point, RgbRaster

BACKGROUND = (120, 120, 120)
_BOX_FRACTION = 0.7  # side of the writing box relative to min(frame dims)

# Single-stroke waypoints in the unit square, u rightward, v downward.
_LETTER_PATHS: dict[str, tuple[tuple[float, float], ...]] = {
    "A": ((0, 1), (0.5, 0), (1, 1), (0.75, 0.5), (0.25, 0.5)),
    "B": ((0, 1), (0, 0), (0.7, 0), (0.9, 0.12), (0.9, 0.38), (0.7, 0.5), (0, 0.5),
          (0.7, 0.5), (0.95, 0.62), (0.95, 0.88), (0.7, 1), (0, 1)),
    "C": ((0.9, 0.15), (0.6, 0), (0.25, 0.05), (0, 0.3), (0, 0.7), (0.25, 0.95),
          (0.6, 1), (0.9, 0.85)),
    "D": ((0, 1), (0, 0), (0.5, 0), (0.85, 0.2), (0.95, 0.5), (0.85, 0.8), (0.5, 1), (0, 1)),
    "E": ((1, 0), (0, 0), (0, 0.5), (0.8, 0.5), (0, 0.5), (0, 1), (1, 1)),
    "F": ((1, 0), (0, 0), (0, 0.5), (0.8, 0.5), (0, 0.5), (0, 1)),
    "G": ((0.9, 0.15), (0.6, 0), (0.25, 0.05), (0, 0.3), (0, 0.7), (0.25, 0.95),
          (0.6, 1), (0.9, 0.9), (0.9, 0.55), (0.55, 0.55)),
    "H": ((0, 0), (0, 1), (0, 0.5), (1, 0.5), (1, 0), (1, 1)),
    "I": ((0.5, 0), (0.5, 1)),
    "J": ((0.7, 0), (0.7, 0.75), (0.55, 0.95), (0.3, 1), (0.1, 0.85)),
    "K": ((0, 0), (0, 1), (0, 0.5), (0.85, 0), (0, 0.5), (0.85, 1)),
    "L": ((0, 0), (0, 1), (0.9, 1)),
    "M": ((0, 1), (0, 0), (0.5, 0.55), (1, 0), (1, 1)),
    "N": ((0, 1), (0, 0), (1, 1), (1, 0)),
    "O": ((0.5, 0), (0.15, 0.12), (0, 0.5), (0.15, 0.88), (0.5, 1), (0.85, 0.88),
          (1, 0.5), (0.85, 0.12), (0.5, 0)),
    "P": ((0, 1), (0, 0), (0.7, 0), (0.92, 0.15), (0.92, 0.35), (0.7, 0.5), (0, 0.5)),
    "Q": ((0.82, 0.85), (1, 1), (0.82, 0.85), (0.5, 1), (0.15, 0.88), (0, 0.5),
          (0.15, 0.12), (0.5, 0), (0.85, 0.12), (1, 0.5), (0.82, 0.85)),
    "R": ((0, 1), (0, 0), (0.7, 0), (0.92, 0.15), (0.92, 0.35), (0.7, 0.5), (0, 0.5), (0.95, 1)),
    "S": ((0.9, 0.1), (0.55, 0), (0.15, 0.08), (0.05, 0.28), (0.25, 0.45), (0.75, 0.55),
          (0.95, 0.72), (0.85, 0.92), (0.45, 1), (0.1, 0.9)),
    "T": ((0, 0), (1, 0), (0.5, 0), (0.5, 1)),
    "U": ((0, 0), (0, 0.7), (0.2, 0.95), (0.5, 1), (0.8, 0.95), (1, 0.7), (1, 0)),
    "V": ((0, 0), (0.5, 1), (1, 0)),
    "W": ((0, 0), (0.25, 1), (0.5, 0.3), (0.75, 1), (1, 0)),
    "X": ((0, 0), (1, 1), (0.5, 0.5), (1, 0), (0, 1)),
    "Y": ((0, 0), (0.5, 0.45), (1, 0), (0.5, 0.45), (0.5, 1)),
    "Z": ((0, 0), (1, 0), (0, 1), (1, 1)),
}


@dataclass(frozen=True)
class LetterPath:
    """Canonical single-stroke geometry for one uppercase letter."""

    label: str
    waypoints: tuple[Point, ...]


@dataclass(frozen=True)
class SynthParams:
    frame_size: tuple[int, int] = (640, 480)
    dot_radius: int = 6
    dot_color: tuple[int, int, int] = (255, 30, 30)
    points_per_stroke: int = 40
    jitter_sigma: float = 0.0
    dwell_pad: int = 17
    absence_pad: int = 22
    seed: int = 0

    def __post_init__(self):
        w, h = self.frame_size
        if self.jitter_sigma < 0:
            raise ValueError("jitter_sigma must be >= 0")
        if self.points_per_stroke < 2:
            raise ValueError("points_per_stroke must be >= 2")
        box = _BOX_FRACTION * min(w, h)
        margin = (min(w, h) - box) / 2
        if self.dot_radius < 1 or self.dot_radius >= margin:
            raise ValueError("dot does not fit the frame margins")


def letter_path(label: str) -> LetterPath:
    """Built-in single-stroke path for an uppercase letter."""
    path = _LETTER_PATHS.get(label)
    if path is None:
        raise UnknownLabel(f"no canonical path for {label!r}")
    return LetterPath(label=label, waypoints=tuple(Point(u, v) for u, v in path))


def _sample_polyline(waypoints: tuple[Point, ...], n: int) -> np.ndarray:
    """n points spaced uniformly by arc length along the polyline."""
    pts = np.array([(p.x, p.y) for p in waypoints], dtype=np.float64)
    seg = np.diff(pts, axis=0)
    seg_len = np.hypot(seg[:, 0], seg[:, 1])
    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    total = cum[-1]
    out = np.empty((n, 2), dtype=np.float64)
    targets = np.linspace(0.0, total, n)
    for i, s in enumerate(targets):
        k = int(np.searchsorted(cum, s, side="right")) - 1
        k = min(k, len(seg_len) - 1)
        t = 0.0 if seg_len[k] == 0 else (s - cum[k]) / seg_len[k]
        out[i] = pts[k] + t * seg[k]
    return out


def _paint_dot(background: np.ndarray, cx: int, cy: int, radius: int, color) -> np.ndarray:
    frame = background.copy()
    h, w = frame.shape[:2]
    y0, y1 = max(cy - radius, 0), min(cy + radius, h - 1)
    x0, x1 = max(cx - radius, 0), min(cx + radius, w - 1)
    yy, xx = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
    inside = (xx - cx) ** 2 + (yy - cy) ** 2 <= radius * radius
    frame[y0 : y1 + 1, x0 : x1 + 1][inside] = color
    return frame


def render_sequence(text: str, params: SynthParams = SynthParams()) -> list[RgbRaster]:
    """Render the frame sequence a camera would see for the given text."""
    if not text or any(c not in _LETTER_PATHS and c != " " for c in text):
        raise InvalidText(f"text must be nonempty over A-Z and space: {text!r}")

    w, h = params.frame_size
    side = _BOX_FRACTION * min(w, h)
    box_x = (w - side) / 2
    box_y = (h - side) / 2
    rng = np.random.default_rng(params.seed)
    background = np.empty((h, w, 3), dtype=np.uint8)
    background[:, :] = BACKGROUND
    blank = RgbRaster(background)

    frames: list[RgbRaster] = []
    for ch in text:
        if ch == " ":
            frames.extend([blank] * params.absence_pad)
            continue
        samples = _sample_polyline(letter_path(ch).waypoints, params.points_per_stroke)
        positions = np.empty_like(samples)
        positions[:, 0] = box_x + samples[:, 0] * side
        positions[:, 1] = box_y + samples[:, 1] * side
        if params.jitter_sigma > 0:
            positions += rng.normal(0.0, params.jitter_sigma, positions.shape)
        last = None
        for x, y in positions:
            cx = int(np.floor(x + 0.5))
            cy = int(np.floor(y + 0.5))
            cx = min(max(cx, params.dot_radius), w - 1 - params.dot_radius)
            cy = min(max(cy, params.dot_radius), h - 1 - params.dot_radius)
            mirrored_cx = w - 1 - cx  # camera mirroring
            last = RgbRaster(_paint_dot(background, mirrored_cx, cy, params.dot_radius, params.dot_color))
            frames.append(last)
        frames.extend([last] * params.dwell_pad)
    return frames
