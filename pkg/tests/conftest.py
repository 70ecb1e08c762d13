import numpy as np
import pytest

from airwrite.ocr import default_templates
from airwrite.raster import RgbRaster


@pytest.fixture(scope="session")
def default_tset():
    return default_templates()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def solid_frame(width, height, color):
    px = np.empty((height, width, 3), dtype=np.uint8)
    px[:, :] = color
    return RgbRaster(px)


def frame_with_dot(width, height, cx, cy, radius, color, background=(120, 120, 120)):
    px = np.empty((height, width, 3), dtype=np.uint8)
    px[:, :] = background
    yy, xx = np.mgrid[0:height, 0:width]
    inside = (xx - cx) ** 2 + (yy - cy) ** 2 <= radius * radius
    px[inside] = color
    return RgbRaster(px)
