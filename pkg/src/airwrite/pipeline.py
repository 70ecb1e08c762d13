"""End-to-end orchestration: frames in, recognized text out.

Per frame: extract the red object mask, optionally intersect it with the
edge-enhancement support (edge gate), label the result, pick the dominant
blob, and feed its centroid to the segmentation tracker. Completed strokes
are mirrored, plotted, fitted and matched against the template set.

Two exact shortcuts keep the per-frame cost down: a frame byte-identical
to its predecessor reuses the previous detection (stationary dwell frames
and absence runs are exactly that), and labeling runs on the object mask's
bounding window, which contains every foreground pixel.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from airwrite import _kernels, blobs, ocr, tracker
from airwrite.edge import DEFAULT_EDGE_THRESHOLD, DEFAULT_WINDOW, GaussianKernel
from airwrite.errors import DimensionMismatch, EmptyInput
from airwrite.ocr import TemplateSet, default_templates, load_templates
from airwrite.plotter import GlyphCanvas, fit_to_template, rasterize_stroke
from airwrite.raster import BinaryRaster, Point, RgbRaster
from airwrite.segmentation import RedParams
from airwrite.tracker import EventKind, TrackerConfig, TrackerEvent


@dataclass(frozen=True)
class PipelineConfig:
    red: RedParams = RedParams()
    gaussian_window: int = DEFAULT_WINDOW
    edge_threshold: int = DEFAULT_EDGE_THRESHOLD
    edge_gate: bool = True
    connectivity: int = blobs.DEFAULT_CONNECTIVITY
    min_area: int = blobs.DEFAULT_MIN_AREA
    tracker: TrackerConfig = TrackerConfig()
    canvas: GlyphCanvas = GlyphCanvas()
    template_dir: str | None = None
    templates: TemplateSet | None = None

    def resolve_templates(self) -> TemplateSet:
        if self.templates is not None:
            return self.templates
        if self.template_dir is not None:
            return load_templates(self.template_dir)
        return default_templates()


@dataclass
class CharRecord:
    label: str
    score: float
    stroke_len: int
    frame_span: tuple[int, int]


@dataclass
class Timings:
    total_s: float = 0.0
    per_char_s: list[float] = field(default_factory=list)
    stages: dict[str, float] = field(default_factory=dict)


@dataclass
class RecognitionReport:
    text: str
    per_char: list[CharRecord]
    timings: Timings


class Session:
    """One air-writing session; feed frames in order, read text as it forms.

    Not thread-safe: a session belongs to one logical execution thread.
    Separate sessions are fully independent.
    """

    def __init__(self, cfg: PipelineConfig = PipelineConfig()):
        self.cfg = cfg
        self.templates = cfg.resolve_templates()
        self.kernel = GaussianKernel.of_window(cfg.gaussian_window)
        self.state = tracker.TrackerState()
        self.per_char: list[CharRecord] = []
        self.timings = Timings()
        self.frame_index = -1
        self.last_glyph: BinaryRaster | None = None
        self._tracker_cfg: TrackerConfig | None = None
        self._parts: list[str] = []
        self._dims: tuple[int, int] | None = None
        self._prev: RgbRaster | None = None
        self._prev_detection: Point | None = None
        self._stroke_start: int | None = None

    @property
    def text(self) -> str:
        return "".join(self._parts).rstrip(" ")

    @property
    def last_detection(self) -> Point | None:
        return self._prev_detection

    def _stage(self, name: str, dt: float) -> None:
        self.timings.stages[name] = self.timings.stages.get(name, 0.0) + dt

    def _same_as_previous(self, pixels: np.ndarray) -> bool:
        prev = self._prev
        if prev is None:
            return False
        if pixels is prev.pixels:
            return True
        # cheap strided probe rejects most distinct frames before a full compare
        a = pixels.reshape(-1)
        b = prev.pixels.reshape(-1)
        return bool(np.array_equal(a[::997], b[::997])) and bool(np.array_equal(a, b))

    def _detect(self, frame: RgbRaster) -> Point | None:
        """Object centroid for one frame, or None when nothing qualifies.

        Works on raw arrays via the same compiled kernels as the public
        segmentation/edge/blobs APIs; results are identical.
        """
        if self._same_as_previous(frame.pixels):
            # identical frame: same masks, same detection; under the motion
            # gate a zero diff empties the mask instead
            return None if self.cfg.red.use_motion_gate else self._prev_detection

        red = self.cfg.red
        t0 = time.perf_counter()
        gate = _kernels.red_mask(frame.pixels, red.min_red, red.min_dominance)
        if red.use_motion_gate and self._prev is not None:
            gate &= _kernels.diff_mask(frame.pixels, self._prev.pixels, red.diff_threshold)
        rows = gate.any(axis=1)
        t1 = time.perf_counter()
        self._stage("segmentation_s", t1 - t0)
        if not rows.any():
            return None

        if self.cfg.edge_gate:
            gray = _kernels.luma(frame.pixels)
            support = _kernels.edge_support(
                gray, self.kernel.axis_weights, float(self.cfg.edge_threshold)
            )
            gate &= support
            rows = gate.any(axis=1)
            self._stage("edge_s", time.perf_counter() - t1)
            if not rows.any():
                return None

        t2 = time.perf_counter()
        cols = gate.any(axis=0)
        y0, y1 = np.flatnonzero(rows)[[0, -1]]
        x0, x1 = np.flatnonzero(cols)[[0, -1]]
        labels, count = _kernels.label_two_pass(
            gate[y0 : y1 + 1, x0 : x1 + 1], self.cfg.connectivity == 8
        )
        labeled = blobs.LabelRaster(labels=labels, count=int(count))
        target = blobs.select_target(blobs.region_props(labeled), self.cfg.min_area)
        self._stage("blob_s", time.perf_counter() - t2)
        if target is None:
            return None
        return Point(target.centroid.x + float(x0), target.centroid.y + float(y0))

    def _complete(self, stroke: tuple[Point, ...]) -> None:
        t0 = time.perf_counter()
        width = self._dims[0] if self._dims else self.cfg.tracker.frame_width
        mirrored = tracker.mirror_x(stroke, width)
        plotted = rasterize_stroke(mirrored, self.cfg.canvas)
        self.last_glyph = plotted
        glyph = fit_to_template(plotted, self.templates.template_size)
        match = ocr.recognize(glyph, self.templates)
        dt = time.perf_counter() - t0
        self.timings.per_char_s.append(dt)
        self._stage("recognition_s", dt)
        self._parts.append(match.label)
        start = self._stroke_start if self._stroke_start is not None else self.frame_index
        self.per_char.append(
            CharRecord(
                label=match.label,
                score=match.score,
                stroke_len=len(stroke),
                frame_span=(start, max(self.frame_index, start)),
            )
        )
        self._stroke_start = None

    def _apply_event(self, event: TrackerEvent) -> None:
        if event.kind is EventKind.POINT_APPENDED:
            if self._stroke_start is None:
                self._stroke_start = self.frame_index
        elif event.kind is EventKind.CHARACTER_COMPLETE:
            self._complete(event.stroke)
        elif event.kind is EventKind.SPACE_EMITTED:
            if self._parts and self._parts[-1] != " ":
                self._parts.append(" ")

    def process_frame(self, frame: RgbRaster) -> TrackerEvent:
        """Run the per-frame pipeline and advance the tracker."""
        if self._dims is None:
            self._dims = (frame.width, frame.height)
            self._tracker_cfg = replace(self.cfg.tracker, frame_width=frame.width)
        elif (frame.width, frame.height) != self._dims:
            raise DimensionMismatch(
                f"frame size changed mid-session: {self._dims} -> "
                f"{(frame.width, frame.height)}"
            )
        self.frame_index += 1
        detection = self._detect(frame)
        self._prev = frame
        self._prev_detection = detection

        t0 = time.perf_counter()
        self.state, event = tracker.step(self.state, detection, self._tracker_cfg)
        self._stage("tracker_s", time.perf_counter() - t0)
        self._apply_event(event)
        return event

    def commit(self) -> TrackerEvent:
        """Force-complete the pending character, as a full dwell would."""
        self.state, event = tracker.flush(self.state)
        self._apply_event(event)
        return event

    def finish(self) -> TrackerEvent:
        """Flush the pending stroke at end of input."""
        return self.commit()


def process_frame(session: Session, frame: RgbRaster) -> TrackerEvent:
    return session.process_frame(frame)


def recognize_sequence(frames, cfg: PipelineConfig = PipelineConfig()) -> RecognitionReport:
    """Fold the pipeline over a frame sequence and report the text read."""
    session = Session(cfg)
    t0 = time.perf_counter()
    n = 0
    for frame in frames:
        session.process_frame(frame)
        n += 1
    if n == 0:
        raise EmptyInput("no frames to recognize")
    session.finish()
    session.timings.total_s = time.perf_counter() - t0
    return RecognitionReport(text=session.text, per_char=session.per_char, timings=session.timings)


def report_to_json(report: RecognitionReport) -> dict:
    """Report as the documented JSON structure."""
    return {
        "text": report.text,
        "per_char": [
            {"label": c.label, "score": c.score, "frames": list(c.frame_span)}
            for c in report.per_char
        ],
        "timings": {
            "total_s": report.timings.total_s,
            "per_char_s": list(report.timings.per_char_s),
        },
    }
