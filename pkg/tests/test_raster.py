import numpy as np
import pytest

from airwrite.raster import BinaryRaster, GrayRaster, RgbRaster, to_grayscale

from conftest import solid_frame


class TestToGrayscale:
    def test_black_maps_to_black(self):
        out = to_grayscale(solid_frame(8, 5, (0, 0, 0)))
        assert np.all(out.pixels == 0)

    def test_white_maps_to_white(self):
        out = to_grayscale(solid_frame(8, 5, (255, 255, 255)))
        assert np.all(out.pixels == 255)

    def test_pure_red_pixel(self):
        # 0.299 * 255 = 76.245, round half up -> 76
        out = to_grayscale(solid_frame(1, 1, (255, 0, 0)))
        assert out.pixels[0, 0] == 76

    def test_rounds_half_up(self):
        # 299*5 + 587*0 + 114*30 = 4915 -> 4.915 rounds to 5
        out = to_grayscale(solid_frame(1, 1, (5, 0, 30)))
        assert out.pixels[0, 0] == 5
        # 299*0 + 587*0 + 114*250 = 28500 -> exactly 28.5 rounds up to 29
        out = to_grayscale(solid_frame(1, 1, (0, 0, 250)))
        assert out.pixels[0, 0] == 29

    def test_luma_bounded_by_channel_range(self, rng):
        px = rng.integers(0, 256, (20, 30, 3), dtype=np.uint8)
        out = to_grayscale(RgbRaster(px))
        lo = px.min(axis=2).astype(np.float64)
        hi = px.max(axis=2).astype(np.float64)
        assert np.all(out.pixels >= lo)
        assert np.all(out.pixels <= hi)

    def test_dimensions_preserved(self, rng):
        px = rng.integers(0, 256, (11, 17, 3), dtype=np.uint8)
        out = to_grayscale(RgbRaster(px))
        assert (out.width, out.height) == (17, 11)


class TestValidation:
    def test_rgb_shape_checked(self):
        with pytest.raises(ValueError):
            RgbRaster(np.zeros((4, 4), dtype=np.uint8))

    def test_gray_range_checked(self):
        with pytest.raises(ValueError):
            GrayRaster(np.full((2, 2), 300.0))
        with pytest.raises(ValueError):
            GrayRaster(np.full((2, 2), -1.0))

    def test_binary_values_checked(self):
        with pytest.raises(ValueError):
            BinaryRaster(np.full((2, 2), 2, dtype=np.uint8))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            GrayRaster(np.zeros((0, 3)))

    def test_rasters_are_immutable(self):
        r = solid_frame(3, 3, (1, 2, 3))
        with pytest.raises(ValueError):
            r.pixels[0, 0, 0] = 9
