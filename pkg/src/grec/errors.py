"""Exception types shared across the package."""


class GrecError(Exception):
    """Base class for all errors raised by this package."""


class CorruptStreamError(GrecError):
    """A serialized coder state or container failed to parse."""


class IntegrityError(GrecError):
    """Decoding finished but the coder state did not return to its
    initial value, meaning the stream and model disagree."""


class GraphFormatError(GrecError):
    """An edge-list input is malformed."""


class BoundsError(GrecError):
    """An input exceeds the coder's integer-range limits."""
