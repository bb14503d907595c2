"""Exception hierarchy for the package."""


class PauliNoiseError(Exception):
    """Base class for all errors raised by paulinoise."""


class DimensionError(PauliNoiseError):
    """Inputs have incompatible or unsupported dimensions."""


class SizeLimitError(PauliNoiseError):
    """A requested qubit count exceeds the configured cap."""


class PhysicalityError(PauliNoiseError):
    """An input violates a required physical property, such as unitarity,
    trace preservation, hermiticity preservation, or weight positivity."""


class ModelFormatError(PauliNoiseError):
    """A document failed to parse or violates a schema invariant."""
