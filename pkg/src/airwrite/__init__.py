"""Air-writing recognition: red-fingertip tracking plus template OCR."""

from airwrite.pipeline import PipelineConfig, RecognitionReport, Session, recognize_sequence
from airwrite.raster import BinaryRaster, GrayRaster, Point, RgbRaster, to_grayscale
from airwrite.synth import SynthParams, render_sequence

__version__ = "0.1.0"

__all__ = [
    "BinaryRaster",
    "GrayRaster",
    "PipelineConfig",
    "Point",
    "RecognitionReport",
    "RgbRaster",
    "Session",
    "SynthParams",
    "recognize_sequence",
    "render_sequence",
    "to_grayscale",
    "__version__",
]
