"""Exception types shared across the package."""


class SectorQaoaError(Exception):
    """Base class for all package-specific errors."""


class ShapeMismatchError(SectorQaoaError, ValueError):
    """A box lies outside its shape, or two partitions disagree in size."""


class SectorInadmissibleError(SectorQaoaError, ValueError):
    """A partition has more parts than the local dimension allows."""


class DimensionCapError(SectorQaoaError, ValueError):
    """A request exceeds the dense desk-scale caps (d^n or n!)."""


class UnsupportedDimensionError(SectorQaoaError, ValueError):
    """An operation is only defined for a specific local dimension."""


class SymmetryViolationError(SectorQaoaError, ValueError):
    """The objective is not invariant under a required permutation."""

    def __init__(self, message: str, permutation=None):
        super().__init__(message)
        self.permutation = permutation


class ConstructionFailureError(SectorQaoaError, RuntimeError):
    """An algebraic construction produced a degenerate (zero) result."""


class ConfigError(SectorQaoaError, ValueError):
    """An experiment config file failed to parse or validate."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
