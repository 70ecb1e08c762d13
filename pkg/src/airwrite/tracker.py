"""Stroke accumulation and character/space segmentation.

Two mechanisms end a character, mirroring how writers separate letters:

* dwell: the tracked point stays within dwell_epsilon of the last stroke
  point for dwell_frames consecutive frames ("waiting time"), or
* absence: the red tip disappears (back of the finger shown). A sustained
  absence of absence_frames completes any pending character; if the
  absence persists with nothing pending, it emits exactly one space.

Spaces are never emitted before the first completed character, and at most
one space is emitted per contiguous absence run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from airwrite.raster import Point


class EventKind(Enum):
    POINT_APPENDED = "point_appended"
    CHARACTER_COMPLETE = "character_complete"
    SPACE_EMITTED = "space_emitted"
    IDLE = "idle"


@dataclass(frozen=True)
class TrackerEvent:
    kind: EventKind
    stroke: tuple[Point, ...] | None = None


@dataclass(frozen=True)
class TrackerConfig:
    dwell_frames: int = 15
    dwell_epsilon: float = 3.0
    absence_frames: int = 20
    frame_width: int = 640

    def __post_init__(self):
        if self.dwell_frames < 1 or self.absence_frames < 1 or self.frame_width < 1:
            raise ValueError("counts must be >= 1")
        if self.dwell_epsilon <= 0:
            raise ValueError("dwell_epsilon must be positive")


@dataclass(frozen=True)
class TrackerState:
    """Per-session accumulation state; a value threaded through step()."""

    stroke: tuple[Point, ...] = ()
    dwell_counter: int = 0
    absence_counter: int = 0
    last_centroid: Point | None = None
    frames_seen: int = 0
    chars_completed: int = 0
    space_emitted_in_run: bool = False


_IDLE = TrackerEvent(EventKind.IDLE)


def step(
    state: TrackerState, detection: Point | None, cfg: TrackerConfig
) -> tuple[TrackerState, TrackerEvent]:
    """Advance the segmentation state machine by one frame."""
    seen = state.frames_seen + 1
    if detection is not None:
        if state.last_centroid is None:
            moved = True
        else:
            moved = (
                math.hypot(
                    detection.x - state.last_centroid.x, detection.y - state.last_centroid.y
                )
                > cfg.dwell_epsilon
            )
        if moved:
            new = replace(
                state,
                stroke=state.stroke + (detection,),
                dwell_counter=0,
                absence_counter=0,
                last_centroid=detection,
                frames_seen=seen,
                space_emitted_in_run=False,
            )
            return new, TrackerEvent(EventKind.POINT_APPENDED)
        dwell = state.dwell_counter + 1
        if dwell >= cfg.dwell_frames and len(state.stroke) >= 2:
            done = state.stroke
            new = replace(
                state,
                stroke=(),
                dwell_counter=0,
                absence_counter=0,
                frames_seen=seen,
                chars_completed=state.chars_completed + 1,
                space_emitted_in_run=False,
            )
            return new, TrackerEvent(EventKind.CHARACTER_COMPLETE, stroke=done)
        return (
            replace(state, dwell_counter=dwell, absence_counter=0, frames_seen=seen),
            _IDLE,
        )

    # no detection: the non-colored side of the finger
    absent = state.absence_counter + 1
    new = replace(state, absence_counter=absent, dwell_counter=0, frames_seen=seen)
    if absent < cfg.absence_frames:
        return new, _IDLE
    if len(state.stroke) >= 2:
        done = state.stroke
        new = replace(new, stroke=(), chars_completed=state.chars_completed + 1)
        return new, TrackerEvent(EventKind.CHARACTER_COMPLETE, stroke=done)
    if len(state.stroke) == 1:
        # a single tracked point cannot form a character; drop it
        return replace(new, stroke=()), _IDLE
    if state.chars_completed > 0 and not state.space_emitted_in_run:
        return replace(new, space_emitted_in_run=True), TrackerEvent(EventKind.SPACE_EMITTED)
    return new, _IDLE


def flush(state: TrackerState) -> tuple[TrackerState, TrackerEvent]:
    """End the session, completing any pending stroke."""
    if len(state.stroke) >= 2:
        done = state.stroke
        new = replace(
            state, stroke=(), dwell_counter=0, chars_completed=state.chars_completed + 1
        )
        return new, TrackerEvent(EventKind.CHARACTER_COMPLETE, stroke=done)
    return replace(state, stroke=()), _IDLE


def mirror_x(stroke: list[Point] | tuple[Point, ...], frame_width: int) -> list[Point]:
    """Undo the camera's horizontal mirroring: (x, y) -> (width-1-x, y)."""
    return [Point(frame_width - 1 - p.x, p.y) for p in stroke]
