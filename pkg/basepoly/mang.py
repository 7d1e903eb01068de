"""
Mang Least-Squares Polynomial
Discretized L2 fit of p(x) = 1/x in the theta = arccos(x) parametrization
"""

import logging
from typing import Optional

import numpy as np

from basepoly.approx_spec import ApproxSpec, search_min_terms
from chebpoly.polynomial import OddChebyshevPoly
from numerics.clenshaw import odd_chebyshev_basis
from numerics.linalg import lstsq
from utils.errors import DomainError

logger = logging.getLogger(__name__)


def default_theta_grid(n_terms: int) -> int:
    return max(2000, 20 * n_terms)


def mang_system(spec: ApproxSpec, n_terms: int, theta_grid: int):
    """
    Least-squares rows T_{2j+1}(cos(theta_i)) against 1 / cos(theta_i) on a uniform theta grid.

    Args:
        spec (ApproxSpec): Target
        n_terms (int): Number of odd terms
        theta_grid (int): Number of uniform theta samples on [0, arccos a]

    Returns:
        tuple: (matrix, right-hand side 1 / x)
    """
    theta = np.linspace(0.0, np.arccos(spec.a), theta_grid)
    x = np.cos(theta)
    return odd_chebyshev_basis(x, n_terms), 1.0 / x


def mang(spec: ApproxSpec, n_terms: int, theta_grid: Optional[int] = None) -> OddChebyshevPoly:
    """
    Odd-Chebyshev coefficients minimizing the discretized L2 residual.

    Args:
        spec (ApproxSpec): kappa and eps
        n_terms (int): Number of odd terms (degree 2 n_terms - 1)
        theta_grid (int): Uniform theta samples; defaults to max(2000, 20 n_terms)

    Returns:
        OddChebyshevPoly: Least-squares polynomial labelled "mang"
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    if theta_grid is None:
        theta_grid = default_theta_grid(n_terms)
    if theta_grid < n_terms:
        raise DomainError(f"theta_grid={theta_grid} gives fewer samples than the {n_terms} unknowns")
    if theta_grid < 10 * n_terms:
        logger.warning(f"theta_grid={theta_grid} is below 10 x n_terms={10 * n_terms}; "
                       f"the L2 fit may be poorly resolved")

    matrix, rhs = mang_system(spec, n_terms, theta_grid)
    coeffs = lstsq(matrix, rhs)
    return OddChebyshevPoly(coeffs=coeffs, a=spec.a, label="mang", eps_target=spec.eps,
                            meta={"kappa": float(spec.kappa), "theta_grid": int(theta_grid)})


def mang_min_degree(spec: ApproxSpec, grid_density: Optional[int] = None) -> OddChebyshevPoly:
    """
    Lowest-degree Mang polynomial whose dense-grid max residual is <= spec.eps.

    The L2 objective gives no uniform guarantee, so every candidate is
    certified on the error-profile grid.
    """
    return search_min_terms(lambda n: mang(spec, n), spec, grid_density)
