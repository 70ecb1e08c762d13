"""Template-correlation character recognition.

A glyph is scored against every stored template with zero-mean normalized
(Pearson) correlation over {0,1} pixels, taking the best of the nine
one-pixel alignments to absorb crop and resample jitter. Sums are kept in
exact integer arithmetic, so a glyph correlated with itself scores exactly
1.0. Row-run signatures (count of horizontal strokes per scanline) are
computed as a reported diagnostic; they do not enter the ranking.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from airwrite import synth
from airwrite.errors import DimensionMismatch, EmptyGlyph, EmptySet, MixedSizes, UnreadableImage
from airwrite.plotter import GlyphCanvas, fit_to_template, rasterize_stroke
from airwrite.pnm import read_pgm, write_pgm
from airwrite.raster import BinaryRaster, GrayRaster

DEFAULT_TEMPLATE_SIZE = 64
DEFAULT_BINARIZE_THRESHOLD = 128
_LABEL_RE = re.compile(r"^[A-Z0-9]$")


@dataclass(frozen=True)
class Template:
    label: str
    image: BinaryRaster
    variant: int = 0


@dataclass(frozen=True)
class TemplateSet:
    templates: tuple[Template, ...]
    template_size: int


@dataclass(frozen=True)
class MatchResult:
    label: str
    score: float
    runner_up: tuple[str, float] | None
    signature_distance: int


def binarize(img: GrayRaster, threshold: int = DEFAULT_BINARIZE_THRESHOLD) -> BinaryRaster:
    """1 where intensity >= threshold."""
    return BinaryRaster((img.pixels >= threshold).astype(np.uint8))


def row_run_signature(glyph: BinaryRaster) -> list[int]:
    """Number of maximal horizontal runs of 1s in each row."""
    p = glyph.pixels
    starts = p.astype(bool).copy()
    starts[:, 1:] &= ~p[:, :-1].astype(bool)
    return [int(c) for c in starts.sum(axis=1)]


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    """Exact-integer Pearson correlation of two {0,1} grids."""
    n = a.size
    sa = int(a.sum())
    sb = int(b.sum())
    sab = int((a & b).sum())
    va = n * sa - sa * sa
    vb = n * sb - sb * sb
    if va == 0 or vb == 0:
        return 0.0
    return (n * sab - sa * sb) / math.sqrt(va * vb)


def correlate(glyph: BinaryRaster, template: Template) -> float:
    """Zero-shift Pearson correlation between glyph and template."""
    if (glyph.width, glyph.height) != (template.image.width, template.image.height):
        raise DimensionMismatch(
            f"glyph {glyph.width}x{glyph.height} vs template "
            f"{template.image.width}x{template.image.height}"
        )
    return _pearson(glyph.pixels, template.image.pixels)


def _shifted(p: np.ndarray, dx: int, dy: int) -> np.ndarray:
    out = np.zeros_like(p)
    h, w = p.shape
    ys = slice(max(dy, 0), h + min(dy, 0))
    xs = slice(max(dx, 0), w + min(dx, 0))
    ys_src = slice(max(-dy, 0), h + min(-dy, 0))
    xs_src = slice(max(-dx, 0), w + min(-dx, 0))
    out[ys, xs] = p[ys_src, xs_src]
    return out


def recognize(glyph: BinaryRaster, templates: TemplateSet) -> MatchResult:
    """Best-correlated template label, runner-up, and signature distance.

    Per-template score is the max of the nine one-pixel alignments; ties
    between templates go to the alphabetically first label, then lowest
    variant (the set is kept in that order).
    """
    size = templates.template_size
    if (glyph.width, glyph.height) != (size, size):
        raise DimensionMismatch(f"glyph must be {size}x{size}, got {glyph.width}x{glyph.height}")
    if not glyph.pixels.any():
        raise EmptyGlyph("cannot recognize an empty glyph")

    n = size * size
    stack = np.stack([t.image.pixels.ravel() for t in templates.templates]).astype(np.int64)
    sb = stack.sum(axis=1)
    vb = n * sb - sb * sb

    best = np.full(len(templates.templates), -2.0)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            g = _shifted(glyph.pixels, dx, dy).ravel().astype(np.int64)
            sa = int(g.sum())
            va = n * sa - sa * sa
            if va == 0:
                scores = np.zeros(len(sb))
            else:
                sab = stack @ g
                num = (n * sab - sa * sb).astype(np.float64)
                denom = np.sqrt((va * vb).astype(np.float64))
                scores = np.where(vb == 0, 0.0, num / np.where(vb == 0, 1.0, denom))
            np.maximum(best, scores, out=best)

    winner_idx = int(np.argmax(best))  # first max wins: alphabetical, then variant
    winner = templates.templates[winner_idx]
    runner_up = None
    for i, t in enumerate(templates.templates):
        if t.label == winner.label:
            continue
        if runner_up is None or best[i] > runner_up[1]:
            runner_up = (t.label, float(best[i]))
    sig_g = row_run_signature(glyph)
    sig_t = row_run_signature(winner.image)
    distance = int(sum(abs(a - b) for a, b in zip(sig_g, sig_t)))
    return MatchResult(
        label=winner.label,
        score=float(best[winner_idx]),
        runner_up=runner_up,
        signature_distance=distance,
    )


def load_templates(path) -> TemplateSet:
    """Load a <label>/<variant>.pgm directory tree as a template set."""
    root = Path(path)
    if not root.is_dir():
        raise EmptySet(f"{root} is not a directory")
    templates: list[Template] = []
    size: int | None = None
    size_source = None
    for label_dir in sorted(root.iterdir()):
        if not label_dir.is_dir() or not _LABEL_RE.match(label_dir.name):
            continue
        files = []
        for f in label_dir.glob("*.pgm"):
            if not f.stem.isdigit():
                raise UnreadableImage(f"{f}: variant file names must be numeric")
            files.append((int(f.stem), f))
        for variant, f in sorted(files):
            img = read_pgm(f)
            if img.width != img.height:
                raise UnreadableImage(f"{f}: template images must be square")
            if size is None:
                size, size_source = img.width, f
            elif img.width != size:
                raise MixedSizes(f"{f}: {img.width}x{img.height}, but {size_source} is {size}x{size}")
            bin_img = binarize(img)
            if not bin_img.pixels.any():
                raise UnreadableImage(f"{f}: template has no lit pixels")
            templates.append(Template(label=label_dir.name, image=bin_img, variant=variant))
    if not templates:
        raise EmptySet(f"no templates under {root}")
    return TemplateSet(templates=tuple(templates), template_size=size)


def default_templates(
    template_size: int = DEFAULT_TEMPLATE_SIZE,
    canvas_size: int = 128,
    thicknesses: tuple[int, ...] = (3, 5, 7),
) -> TemplateSet:
    """Template set rendered from the built-in letter paths.

    Three stroke-thickness variants per letter give the correlation stage
    some tolerance for how wide the tracked stroke ends up.
    """
    templates = []
    for code in range(ord("A"), ord("Z") + 1):
        label = chr(code)
        waypoints = synth.letter_path(label).waypoints
        for variant, thickness in enumerate(thicknesses):
            canvas = GlyphCanvas(size=canvas_size, stroke_thickness=thickness)
            glyph = fit_to_template(rasterize_stroke(waypoints, canvas), template_size)
            templates.append(Template(label=label, image=glyph, variant=variant))
    return TemplateSet(templates=tuple(templates), template_size=template_size)


def save_templates(templates: TemplateSet, path) -> None:
    """Write a template set as a <label>/<variant>.pgm tree."""
    root = Path(path)
    for t in templates.templates:
        d = root / t.label
        d.mkdir(parents=True, exist_ok=True)
        write_pgm(d / f"{t.variant}.pgm", t.image)
