"""
Error Types
Exception hierarchy shared by every package of the toolkit
"""


class SpectralQsvtError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(SpectralQsvtError, ValueError):
    """Raised when operand shapes do not line up."""


class SvdConvergenceError(SpectralQsvtError):
    """Raised when the SVD iteration fails to converge."""

    def __init__(self, rows: int, cols: int, reason: str = ""):
        self.rows = rows
        self.cols = cols
        message = f"SVD did not converge for a {rows}x{cols} matrix"
        if reason:
            message += f": {reason}"
        super().__init__(message)


class DomainError(SpectralQsvtError, ValueError):
    """Raised when an argument lies outside its mathematical domain."""


class DocumentParseError(SpectralQsvtError, ValueError):
    """
    Raised when a structured-text document cannot be read.

    Args:
        message (str): What went wrong
        position (str): Line/column or key path of the problem
    """

    def __init__(self, message: str, position: str = ""):
        self.position = position
        if position:
            message = f"{message} (at {position})"
        super().__init__(message)


class RemezConvergenceError(SpectralQsvtError):
    """Raised when the Remez exchange hits its iteration cap."""

    def __init__(self, iterations: int, levelled_error: float, max_error: float):
        self.iterations = iterations
        self.levelled_error = levelled_error
        self.max_error = max_error
        super().__init__(
            f"Remez exchange did not converge after {iterations} iterations "
            f"(levelled error {levelled_error:.6e}, max error {max_error:.6e})"
        )


class InfeasibleCorrectionError(SpectralQsvtError):
    """Raised when a spectral correction has more constraints than basis terms."""

    def __init__(self, k_eff: int, n_terms: int):
        self.k_eff = k_eff
        self.n_terms = n_terms
        super().__init__(
            f"{k_eff} distinct target eigenvalues exceed the {n_terms} odd Chebyshev "
            f"terms of the base polynomial; the correction needs K << n0"
        )


class InfeasibleInterpolationError(SpectralQsvtError):
    """Raised when the pure spectral system cannot be interpolated exactly."""

    def __init__(self, max_residual: float, residuals):
        self.max_residual = max_residual
        self.residuals = residuals
        super().__init__(
            f"spectral interpolation left a max residual of {max_residual:.3e}; "
            f"increase n_factor"
        )


class SpectralRadiusError(SpectralQsvtError):
    """Raised when an operator's spectrum leaves [-1, 1]."""


class DegenerateOutputError(SpectralQsvtError):
    """Raised when p(A)b vanishes and cannot be normalized."""


class ExperimentConfigError(SpectralQsvtError, ValueError):
    """Raised for unknown experiment ids or out-of-range parameters."""


class PrecisionWarning(UserWarning):
    """Issued when a linear system is too ill-conditioned for float64."""
