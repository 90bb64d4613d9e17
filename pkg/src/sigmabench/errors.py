"""Exception types shared across the package."""


class BenchError(Exception):
    """Base class for all sigmabench errors."""


class ParseError(BenchError):
    """A field of an input file failed to parse; carries row/column context."""


class ShapeError(BenchError):
    """Inconsistent array shapes (ragged CSV rows, mismatched matrices)."""


class TooFewPatterns(BenchError):
    """Not enough patterns for the requested operation."""


class LengthMismatch(BenchError):
    """Paired vectors have different lengths."""


class EmptyInput(BenchError):
    """An operation received an empty vector or dataset."""


class EmptyDataset(EmptyInput):
    """A trainer received a dataset with no patterns."""


class DimensionMismatch(BenchError):
    """Vectors or pattern dimensions do not agree."""


class InvalidConfig(BenchError):
    """A configuration object violates its invariants."""


class InvalidGrid(InvalidConfig):
    """A sigma grid specification is unusable."""


class ConfigError(InvalidConfig):
    """A benchmark config file is invalid; message names the offending key."""


class UnlabeledData(BenchError):
    """A supervised operation received data without signed labels."""


class SingleClass(BenchError):
    """Binary training data contains only one class."""


class NotInitialized(BenchError):
    """A model was used before initialization."""
