"""Exception types shared across the package."""


class LocsymError(Exception):
    """Base class for all locsym errors."""


class ValidationError(LocsymError, ValueError):
    """Invalid argument: bad sizes, counts, ranges or non-finite data."""


class NumericalError(LocsymError):
    """Computation left the numerically trustworthy regime."""


class NotSelfAdjointError(NumericalError):
    """Operator is too far from Hermitian to eigendecompose.

    Usually signals a complex-valued symbol or an invalid window system.
    """


class DegenerateKernelError(NumericalError):
    """Deconvolution kernel has no spectral content."""


class PgmError(ValidationError):
    """Malformed PGM file."""
