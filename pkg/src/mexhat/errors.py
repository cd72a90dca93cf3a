"""Exception and warning types raised across the package."""


class MexhatError(Exception):
    """Base class for all package errors."""


class ParameterError(MexhatError, ValueError):
    """An argument lies outside the documented domain."""


class CapacityError(MexhatError, OverflowError):
    """A requested order exceeds what float64 evaluation can represent."""


class TruncationError(MexhatError):
    """A state does not fit (or leaks out of) the truncated Fock space."""


class AdmissibilityError(MexhatError):
    """Coefficients violate the zero-mean constraint.

    ``residual`` is the exact weighted sum of the even coefficients.
    """

    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"inadmissible coefficients: weighted sum = {float(residual)!r}")


class DegenerateInputError(MexhatError, ValueError):
    """Projection annihilates the whole input."""


class AccuracyError(MexhatError, ArithmeticError):
    """A numerical integral failed to converge under refinement."""


class DivergenceError(MexhatError, ArithmeticError):
    """An integral grows without bound under refinement."""


class ConfigError(MexhatError, ValueError):
    """Malformed config or signal file; ``lineno`` points at the culprit."""

    def __init__(self, message, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where = f"{path}:"
            if lineno is not None:
                where += f"{lineno}:"
            where += " "
        super().__init__(where + message)


class CoverageWarning(UserWarning):
    """Signal grid does not cover the full daughter-wavelet window."""
