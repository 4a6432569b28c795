"""Exception types shared across the package."""


class TwophaseError(Exception):
    """Base class for errors raised by this package."""


class DegenerateImageError(TwophaseError):
    """Image has no usable intensity variation (e.g. constant pixels)."""


class ImageFormatError(TwophaseError):
    """File is not a supported PGM/PNG image or is malformed."""


class EmptyImageError(TwophaseError):
    """Image parses but contains zero pixels."""
