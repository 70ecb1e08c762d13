"""Command-line interface: synth, recognize, serve, templates."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from airwrite import pnm
from airwrite.errors import AirwriteError
from airwrite.ocr import DEFAULT_TEMPLATE_SIZE, default_templates, save_templates
from airwrite.pipeline import (
    CharRecord,
    PipelineConfig,
    RecognitionReport,
    Session,
    report_to_json,
)
from airwrite.server import apply_overrides, serve
from airwrite.synth import SynthParams, render_sequence
from airwrite.tracker import EventKind

_THRESHOLD_FLAGS = {
    # flag -> config override key
    "min_red": "min_red",
    "min_dominance": "min_dominance",
    "diff_threshold": "diff_threshold",
    "motion_gate": "use_motion_gate",
    "gaussian_window": "gaussian_window",
    "edge_threshold": "edge_threshold",
    "edge_gate": "edge_gate",
    "connectivity": "connectivity",
    "min_blob_area": "min_area",
    "dwell_frames": "dwell_frames",
    "dwell_epsilon": "dwell_epsilon",
    "absence_frames": "absence_frames",
}


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with config overrides")
    p.add_argument("--templates", type=Path, help="template directory (default: built-in set)")
    p.add_argument("--min-red", type=int)
    p.add_argument("--min-dominance", type=int)
    p.add_argument("--diff-threshold", type=int)
    p.add_argument("--motion-gate", action="store_true", default=None)
    p.add_argument("--gaussian-window", type=int)
    p.add_argument("--edge-threshold", type=int)
    p.add_argument("--edge-gate", choices=("on", "off"))
    p.add_argument("--connectivity", type=int, choices=(4, 8))
    p.add_argument("--min-blob-area", type=int)
    p.add_argument("--dwell-frames", type=int)
    p.add_argument("--dwell-epsilon", type=float)
    p.add_argument("--absence-frames", type=int)


def _build_config(args: argparse.Namespace) -> PipelineConfig:
    overrides: dict = {}
    if args.config is not None:
        overrides.update(json.loads(args.config.read_text()))
    for flag, key in _THRESHOLD_FLAGS.items():
        value = getattr(args, flag, None)
        if value is None:
            continue
        if flag == "edge_gate":
            value = value == "on"
        overrides[key] = value
    cfg = apply_overrides(PipelineConfig(), overrides)
    if args.templates is not None:
        cfg = replace(cfg, template_dir=str(args.templates))
    return cfg


def _cmd_synth(args: argparse.Namespace) -> int:
    width, height = (int(v) for v in args.size.lower().split("x"))
    params = SynthParams(
        frame_size=(width, height),
        jitter_sigma=args.jitter,
        seed=args.seed,
        dot_radius=args.dot_radius,
        points_per_stroke=args.points_per_stroke,
    )
    frames = render_sequence(args.text, params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, frame in enumerate(frames, start=1):
        pnm.write_ppm(out / f"{i:06d}.ppm", frame)
    print(f"wrote {len(frames)} frames to {out}")
    return 0


def _cmd_recognize(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    frames = pnm.load_frames(args.frames)
    session = Session(cfg)
    dump_dir = Path(args.dump_glyphs) if args.dump_glyphs else None
    if dump_dir:
        dump_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    for frame in frames:
        event = session.process_frame(frame)
        _maybe_dump(session, event, dump_dir)
    _maybe_dump(session, session.finish(), dump_dir)
    session.timings.total_s = time.perf_counter() - t0

    report = RecognitionReport(text=session.text, per_char=session.per_char, timings=session.timings)
    with open(args.out, "a") as fh:
        fh.write(report.text + "\n")
    if args.report:
        Path(args.report).write_text(json.dumps(report_to_json(report), indent=2))
    print(report.text)
    return 0


def _maybe_dump(session: Session, event, dump_dir: Path | None) -> None:
    if dump_dir and event.kind is EventKind.CHARACTER_COMPLETE:
        record: CharRecord = session.per_char[-1]
        name = f"char_{len(session.per_char):03d}_{record.label}.pgm"
        pnm.write_pgm(dump_dir / name, session.last_glyph)


def _cmd_serve(args: argparse.Namespace) -> int:
    serve(port=args.port, cfg=_build_config(args), host=args.host)
    return 0


def _cmd_templates(args: argparse.Namespace) -> int:
    tset = default_templates(template_size=args.template_size)
    save_templates(tset, args.out)
    print(f"wrote {len(tset.templates)} templates to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="airwrite", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="render a synthetic writing sequence as PPM frames")
    p.add_argument("--text", required=True, help="text over A-Z and space")
    p.add_argument("--out", required=True, help="output frame directory")
    p.add_argument("--jitter", type=float, default=0.0, help="positional jitter sigma in px")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", default="640x480", help="frame size WxH")
    p.add_argument("--dot-radius", type=int, default=6)
    p.add_argument("--points-per-stroke", type=int, default=40)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("recognize", help="recognize the text written in a frame directory")
    p.add_argument("--frames", required=True, help="directory of numbered .ppm/.png frames")
    p.add_argument("--out", required=True, help="text file the result is appended to")
    p.add_argument("--report", help="write a JSON report here")
    p.add_argument("--dump-glyphs", help="dump plotted glyphs as PGM into this directory")
    _add_pipeline_flags(p)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("serve", help="run the live WebSocket endpoint")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    _add_pipeline_flags(p)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("templates", help="export the built-in template set")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--template-size", type=int, default=DEFAULT_TEMPLATE_SIZE)
    p.set_defaults(func=_cmd_templates)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AirwriteError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
