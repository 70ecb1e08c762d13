"""Exception types shared across the pipeline."""


class AirwriteError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(AirwriteError):
    """Two rasters that must share dimensions do not."""


class InvalidWindow(AirwriteError):
    """Gaussian window size is even or below 3."""


class TooSmall(AirwriteError):
    """Raster is too small for the requested operation."""


class DegenerateStroke(AirwriteError):
    """All stroke points coincide; nothing to rasterize."""


class EmptyGlyph(AirwriteError):
    """Glyph raster contains no lit pixels."""


class EmptySet(AirwriteError):
    """Template directory yielded no templates."""


class MixedSizes(AirwriteError):
    """Template images do not all share one size."""


class UnreadableImage(AirwriteError):
    """An image file could not be parsed."""


class UnknownLabel(AirwriteError):
    """No built-in path exists for the requested character."""


class InvalidText(AirwriteError):
    """Text contains characters outside A-Z and space."""


class EmptyInput(AirwriteError):
    """An operation that needs at least one frame received none."""
