"""
Pure Spectral Polynomial
Min-norm odd polynomial interpolating 1/lambda at every known eigenvalue
"""

import logging
import math
from typing import Optional

import numpy as np

from chebpoly.polynomial import OddChebyshevPoly
from numerics.clenshaw import odd_chebyshev_basis
from numerics.linalg import pinv_solve
from spectral.spectrum import Spectrum
from utils.errors import DomainError, InfeasibleInterpolationError

logger = logging.getLogger(__name__)

INTERPOLATION_TOL = 1e-10


def interpolation_system(values: np.ndarray, n_terms: int) -> np.ndarray:
    """Rows lambda_k T_{2j+1}(lambda_k); the system matrix Lambda B."""
    values = np.asarray(values, dtype=np.float64)
    return values[:, None] * odd_chebyshev_basis(values, n_terms)


def pure_spectral(spectrum: Spectrum, n_factor: float = 1.0, n_terms: Optional[int] = None,
                  rel_cutoff: Optional[float] = None) -> OddChebyshevPoly:
    """
    Solve Lambda B c = 1 in the minimum-norm sense.

    Args:
        spectrum (Spectrum): Normalized eigenvalues
        n_factor (float): n = ceil(n_factor * N) when n_terms is not given
        n_terms (int): Explicit number of odd terms
        rel_cutoff (float): Singular value truncation for the solve

    Returns:
        OddChebyshevPoly: Label "spectral", degree 2n - 1, tau not attached

    Raises:
        InfeasibleInterpolationError: If some eigenvalue is missed by more than 1e-10
    """
    values = spectrum.values
    if n_terms is None:
        if n_factor < 1.0:
            raise DomainError(f"n_factor must be >= 1, got {n_factor}")
        n_terms = math.ceil(n_factor * values.size)
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")

    system = interpolation_system(values, n_terms)
    coeffs = pinv_solve(system, np.ones(values.size), rel_cutoff)

    residuals = np.abs(system @ coeffs - 1.0)
    max_residual = float(np.max(residuals))
    if max_residual > INTERPOLATION_TOL:
        logger.error(f"Pure spectral interpolation with n={n_terms} for N={values.size} "
                     f"left residual {max_residual:.3e}")
        raise InfeasibleInterpolationError(max_residual, residuals)

    logger.info(f"Pure spectral polynomial: N={values.size}, d={2 * n_terms - 1}, "
                f"max eigenvalue residual {max_residual:.3e}")
    return OddChebyshevPoly(
        coeffs=coeffs,
        a=float(values[0]),
        label="spectral",
        meta={"n_eigenvalues": int(values.size), "n_factor": float(n_terms / values.size),
              "kappa": spectrum.kappa},
    )
