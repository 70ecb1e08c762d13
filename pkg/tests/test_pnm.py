import numpy as np
import pytest

from airwrite.errors import EmptyInput, UnreadableImage
from airwrite.pnm import (
    decode_ppm,
    load_frames,
    read_pgm,
    read_ppm,
    write_pgm,
    write_ppm,
)
from airwrite.raster import BinaryRaster, GrayRaster, RgbRaster


def test_ppm_round_trip(tmp_path, rng):
    px = rng.integers(0, 256, (7, 9, 3), dtype=np.uint8)
    path = tmp_path / "f.ppm"
    write_ppm(path, RgbRaster(px))
    back = read_ppm(path)
    assert np.array_equal(back.pixels, px)


def test_pgm_round_trip(tmp_path, rng):
    px = rng.integers(0, 256, (5, 4), dtype=np.uint8)
    path = tmp_path / "g.pgm"
    write_pgm(path, GrayRaster(px))
    assert np.array_equal(read_pgm(path).pixels, px)


def test_pgm_binary_written_as_0_255(tmp_path):
    px = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    path = tmp_path / "b.pgm"
    write_pgm(path, BinaryRaster(px))
    back = read_pgm(path)
    assert np.array_equal(back.pixels, px * 255)


def test_header_comments_and_whitespace():
    raw = b"P6 # comment\n# another\n 2\t1 \n255\n" + bytes([1, 2, 3, 4, 5, 6])
    img = decode_ppm(raw)
    assert (img.width, img.height) == (2, 1)
    assert img.pixels[0, 1, 2] == 6


def test_bad_magic_and_maxval_and_truncation(tmp_path):
    with pytest.raises(UnreadableImage):
        decode_ppm(b"P5\n2 2\n255\n" + bytes(4))
    with pytest.raises(UnreadableImage):
        decode_ppm(b"P6\n2 2\n65535\n" + bytes(24))
    with pytest.raises(UnreadableImage):
        decode_ppm(b"P6\n4 4\n255\n" + bytes(5))


def test_load_frames_numeric_order(tmp_path, rng):
    for n in (10, 2, 1):
        px = np.full((2, 2, 3), n, dtype=np.uint8)
        write_ppm(tmp_path / f"{n}.ppm", RgbRaster(px))
    frames = load_frames(tmp_path)
    assert [f.pixels[0, 0, 0] for f in frames] == [1, 2, 10]


def test_load_frames_rejects_non_numeric(tmp_path):
    write_ppm(tmp_path / "a.ppm", RgbRaster(np.zeros((2, 2, 3), dtype=np.uint8)))
    with pytest.raises(UnreadableImage):
        load_frames(tmp_path)


def test_load_frames_empty_dir(tmp_path):
    with pytest.raises(EmptyInput):
        load_frames(tmp_path)


def test_load_frames_reads_png_when_pillow_present(tmp_path):
    pil = pytest.importorskip("PIL.Image")
    px = np.arange(2 * 3 * 3, dtype=np.uint8).reshape(2, 3, 3)
    pil.fromarray(px, mode="RGB").save(tmp_path / "000001.png")
    frames = load_frames(tmp_path)
    assert np.array_equal(frames[0].pixels, px)
