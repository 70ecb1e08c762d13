"""Minimal binary PPM (P6) / PGM (P5) codecs and frame-directory ingestion.

Only 8-bit maxval-255 images are supported; that is the pipeline's entire
color model. PNG reading is available when Pillow is installed.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from airwrite.errors import EmptyInput, UnreadableImage
from airwrite.raster import BinaryRaster, GrayRaster, RgbRaster

try:
    from PIL import Image as _PilImage
except ImportError:
    _PilImage = None


def _read_header(data: bytes, path, magic: bytes):
    """Parse a PNM header, returning (width, height, payload offset)."""
    # magic, whitespace/comment runs, width, height, maxval, single whitespace
    pos = 0
    if not data.startswith(magic):
        raise UnreadableImage(f"{path}: expected {magic.decode()} header")
    pos = len(magic)
    fields = []
    while len(fields) < 3:
        m = re.match(rb"(?:\s+|#[^\n]*\n)+", data[pos:])
        if m is None:
            raise UnreadableImage(f"{path}: truncated header")
        pos += m.end()
        m = re.match(rb"\d+", data[pos:])
        if m is None:
            raise UnreadableImage(f"{path}: malformed header")
        fields.append(int(m.group()))
        pos += m.end()
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise UnreadableImage(f"{path}: bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnreadableImage(f"{path}: only maxval 255 supported, got {maxval}")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise UnreadableImage(f"{path}: missing pixel data")
    return width, height, pos + 1


def decode_ppm(data: bytes, name="<bytes>") -> RgbRaster:
    """Decode binary P6 PPM bytes."""
    width, height, offset = _read_header(data, name, b"P6")
    need = width * height * 3
    payload = data[offset : offset + need]
    if len(payload) < need:
        raise UnreadableImage(f"{name}: pixel data truncated")
    return RgbRaster(np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3))


def read_ppm(path) -> RgbRaster:
    """Read a binary P6 PPM file."""
    return decode_ppm(Path(path).read_bytes(), path)


def write_ppm(path, frame: RgbRaster) -> None:
    """Write a binary P6 PPM file."""
    header = f"P6\n{frame.width} {frame.height}\n255\n".encode()
    Path(path).write_bytes(header + frame.pixels.tobytes())


def read_pgm(path) -> GrayRaster:
    """Read a binary P5 PGM file."""
    data = Path(path).read_bytes()
    width, height, offset = _read_header(data, path, b"P5")
    need = width * height
    payload = data[offset : offset + need]
    if len(payload) < need:
        raise UnreadableImage(f"{path}: pixel data truncated")
    return GrayRaster(np.frombuffer(payload, dtype=np.uint8).reshape(height, width))


def write_pgm(path, img: "GrayRaster | BinaryRaster") -> None:
    """Write a binary P5 PGM file.

    Gray values are rounded half up; binary masks are written as 0/255.
    """
    header = f"P5\n{img.width} {img.height}\n255\n".encode()
    if isinstance(img, BinaryRaster):
        quantized = img.pixels * np.uint8(255)
    else:
        quantized = np.floor(img.pixels + 0.5).astype(np.uint8)
    Path(path).write_bytes(header + quantized.tobytes())


def read_png(path) -> RgbRaster:
    """Read a PNG via Pillow, converting to 8-bit RGB."""
    if _PilImage is None:
        raise UnreadableImage(f"{path}: PNG support requires Pillow")
    try:
        with _PilImage.open(path) as im:
            rgb = im.convert("RGB")
            return RgbRaster(np.asarray(rgb, dtype=np.uint8))
    except UnreadableImage:
        raise
    except Exception as exc:
        raise UnreadableImage(f"{path}: {exc}") from exc


def load_frames(directory) -> list[RgbRaster]:
    """Load a numerically named frame sequence (000001.ppm, ...) in order.

    Files are sorted by the integer value of their stem, so 2.ppm sorts
    before 000010.ppm.
    """
    directory = Path(directory)
    entries = []
    for p in sorted(directory.iterdir()):
        if p.suffix.lower() not in (".ppm", ".png") or not p.is_file():
            continue
        if not p.stem.isdigit():
            raise UnreadableImage(f"{p}: frame files must be numerically named")
        entries.append((int(p.stem), p))
    entries.sort(key=lambda e: e[0])
    if not entries:
        raise EmptyInput(f"no .ppm/.png frames in {directory}")
    frames = []
    for _, p in entries:
        if p.suffix.lower() == ".ppm":
            frames.append(read_ppm(p))
        else:
            frames.append(read_png(p))
    return frames
