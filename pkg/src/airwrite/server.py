"""Live session endpoint: WebSocket in, tracking and text events out.

One JSON message per WebSocket frame, both directions. Every connection
owns an isolated recognition session; frames carry a strictly increasing
sequence number and are processed in arrival order. Protocol violations
are answered with error events and, where recoverable, the connection
stays open. Streaming the same frames through this endpoint produces the
same text as the batch pipeline.
"""

from __future__ import annotations

import base64
import binascii
import json
import secrets
from dataclasses import replace

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from airwrite import pnm
from airwrite.errors import AirwriteError
from airwrite.pipeline import PipelineConfig, Session
from airwrite.raster import RgbRaster
from airwrite.tracker import EventKind

_RED_KEYS = {"min_red", "min_dominance", "diff_threshold", "use_motion_gate"}
_TRACKER_KEYS = {"dwell_frames", "dwell_epsilon", "absence_frames"}
_TOP_KEYS = {"gaussian_window", "edge_threshold", "edge_gate", "connectivity", "min_area"}


def apply_overrides(cfg: PipelineConfig, overrides: dict) -> PipelineConfig:
    """Apply whitelisted start-message overrides to a pipeline config."""
    red_kw = {}
    tracker_kw = {}
    top_kw = {}
    for key, value in overrides.items():
        if key in _RED_KEYS:
            red_kw[key] = value
        elif key in _TRACKER_KEYS:
            tracker_kw[key] = value
        elif key in _TOP_KEYS:
            top_kw[key] = value
        else:
            raise ValueError(f"unknown config key: {key}")
    if red_kw:
        top_kw["red"] = replace(cfg.red, **red_kw)
    if tracker_kw:
        top_kw["tracker"] = replace(cfg.tracker, **tracker_kw)
    return replace(cfg, **top_kw)


def _decode_frame(data: dict) -> RgbRaster:
    encoding = data.get("encoding", "rgb8-base64")
    try:
        raw = base64.b64decode(data["data"], validate=True)
    except (KeyError, binascii.Error, TypeError) as exc:
        raise ValueError(f"bad frame payload: {exc}") from exc
    if encoding == "rgb8-base64":
        width = data.get("width")
        height = data.get("height")
        if not isinstance(width, int) or not isinstance(height, int):
            raise ValueError("rgb8-base64 frames need integer width and height")
        if len(raw) != width * height * 3:
            raise ValueError(f"expected {width * height * 3} bytes, got {len(raw)}")
        return RgbRaster(np.frombuffer(raw, dtype=np.uint8).reshape(height, width, 3))
    if encoding == "ppm-base64":
        return pnm.decode_ppm(raw, "<frame>")
    raise ValueError(f"unknown encoding: {encoding}")


class _Connection:
    """Protocol state for one WebSocket client."""

    def __init__(self, cfg: PipelineConfig):
        self.base_cfg = cfg
        self.session: Session | None = None
        self.session_id: str | None = None
        self.last_seq: int | None = None

    def start(self, overrides: dict) -> str:
        cfg = apply_overrides(self.base_cfg, overrides or {})
        # share the loaded templates across resets
        cfg = replace(cfg, templates=cfg.resolve_templates())
        self.base_cfg = cfg
        self.session = Session(cfg)
        self.session_id = secrets.token_hex(8)
        self.last_seq = None
        return self.session_id

    def reset(self) -> None:
        self.session = Session(self.base_cfg)


def create_app(cfg: PipelineConfig = PipelineConfig()) -> FastAPI:
    app = FastAPI(title="airwrite")

    @app.websocket("/")
    async def live(ws: WebSocket):  # pragma: no branch
        await ws.accept()
        conn = _Connection(cfg)

        async def send(event: dict) -> None:
            await ws.send_text(json.dumps(event))

        async def error(code: str, message: str) -> None:
            await send({"kind": "error", "code": code, "message": message})

        async def emit_tracker_event(event) -> None:
            if event.kind is EventKind.CHARACTER_COMPLETE:
                record = conn.session.per_char[-1]
                await send({"kind": "char", "label": record.label, "score": record.score})
                await send({"kind": "text", "text": conn.session.text})
            elif event.kind is EventKind.SPACE_EMITTED:
                await send({"kind": "space"})
                await send({"kind": "text", "text": conn.session.text})

        try:
            while True:
                try:
                    message = json.loads(await ws.receive_text())
                except json.JSONDecodeError as exc:
                    await error("bad_json", str(exc))
                    continue
                kind = message.get("kind")

                if kind == "start":
                    try:
                        session_id = conn.start(message.get("config") or {})
                    except (ValueError, TypeError, AirwriteError) as exc:
                        await error("bad_config", str(exc))
                        continue
                    await send({"kind": "ack", "session": session_id})
                    continue

                if conn.session is None:
                    await error("no_session", "send a start message first")
                    continue

                if kind == "frame":
                    seq = message.get("seq")
                    if not isinstance(seq, int):
                        await error("bad_seq", "frame seq must be an integer")
                        continue
                    if conn.last_seq is not None and seq <= conn.last_seq:
                        await error("out_of_order", f"seq {seq} after {conn.last_seq}")
                        continue
                    try:
                        frame = _decode_frame(message)
                    except (ValueError, AirwriteError) as exc:
                        await error("bad_frame", str(exc))
                        continue
                    try:
                        event = conn.session.process_frame(frame)
                    except AirwriteError as exc:
                        await error("dimension_mismatch", str(exc))
                        continue
                    conn.last_seq = seq
                    detection = conn.session.last_detection
                    if detection is not None:
                        await send(
                            {"kind": "tracked", "seq": seq, "x": detection.x, "y": detection.y}
                        )
                    await emit_tracker_event(event)
                elif kind == "commit":
                    await emit_tracker_event(conn.session.commit())
                elif kind == "reset":
                    conn.reset()
                    await send({"kind": "text", "text": ""})
                elif kind == "end":
                    await emit_tracker_event(conn.session.finish())
                    await send({"kind": "text", "text": conn.session.text})
                    await ws.close()
                    return
                else:
                    await error("unknown_kind", f"unsupported message kind: {kind!r}")
        except WebSocketDisconnect:
            pass

    return app


def serve(port: int = 8765, cfg: PipelineConfig = PipelineConfig(), host: str = "127.0.0.1") -> None:
    """Run the live endpoint until terminated."""
    import uvicorn

    uvicorn.run(create_app(cfg), host=host, port=port, log_level="warning")
