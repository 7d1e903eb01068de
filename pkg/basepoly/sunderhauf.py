"""
Sunderhauf Closed-Form Polynomial
Optimal odd approximation to 1/x with an analytic accuracy certificate

The error of the degree 2n - 1 polynomial is a scaled shifted Chebyshev
combination in y = (2x^2 - 1 - a^2) / (1 - a^2):

    x p(x) - 1 = -(-1)^n (1 + a)^2 / (4a) * L_n(y),
    L_n(y) = 2 (T_n(y) + beta T_{n-1}(y)) / (2 alpha)^n,

with alpha = (1 + a) / (2 (1 - a)) and beta = (1 - a) / (1 + a).
"""

import logging
import math
from typing import Optional

import numpy as np
from numpy.polynomial import chebyshev

from basepoly.approx_spec import ApproxSpec
from chebpoly.polynomial import OddChebyshevPoly
from numerics.clenshaw import odd_chebyshev_basis
from utils.errors import DomainError

logger = logging.getLogger(__name__)


def error_polynomial(x, n_terms: int, a: float) -> np.ndarray:
    """Signed residual x p(x) - 1 of the closed form, valid for every real x."""
    alpha = (1.0 + a) / (2.0 * (1.0 - a))
    beta = (1.0 - a) / (1.0 + a)
    y = (2.0 * np.asarray(x, dtype=np.float64) ** 2 - (1.0 + a * a)) / (1.0 - a * a)

    series = np.zeros(n_terms + 1)
    series[n_terms] = 1.0
    series[n_terms - 1] = beta
    scaled = 2.0 * chebyshev.chebval(y, series) / (2.0 * alpha) ** n_terms
    return -((-1.0) ** n_terms) * (1.0 + a) ** 2 / (4.0 * a) * scaled


def odd_coefficients(n_terms: int, a: float) -> np.ndarray:
    """
    Odd-Chebyshev coefficients of p from its values at the positive roots of T_{2n}.

    The n positive roots carry discrete orthogonality for T_1 .. T_{2n-1}:
    sum_k T_{2i+1}(x_k) T_{2j+1}(x_k) = (n / 2) delta_ij.
    """
    k = np.arange(1, n_terms + 1)
    nodes = np.cos((2 * k - 1) * np.pi / (4 * n_terms))
    values = (1.0 + error_polynomial(nodes, n_terms, a)) / nodes
    return (2.0 / n_terms) * (odd_chebyshev_basis(nodes, n_terms).T @ values)


def sunderhauf_error_bound(n_terms: int, a: float) -> float:
    """Guaranteed max |x p(x) - 1| on [a, 1] for n_terms odd terms."""
    return (1 - a) ** n_terms / (a * (1 + a) ** (n_terms - 1))


def sunderhauf(spec: ApproxSpec, n_terms: int) -> OddChebyshevPoly:
    """
    Closed-form polynomial of degree 2 n_terms - 1.

    Args:
        spec (ApproxSpec): kappa and eps
        n_terms (int): Number of odd terms

    Returns:
        OddChebyshevPoly: Polynomial labelled "sunderhauf", with its bound in meta
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    if spec.a >= 1.0:
        raise DomainError("the closed form needs a < 1")
    bound = sunderhauf_error_bound(n_terms, spec.a)
    return OddChebyshevPoly(coeffs=odd_coefficients(n_terms, spec.a), a=spec.a, label="sunderhauf",
                            eps_target=spec.eps,
                            meta={"kappa": float(spec.kappa), "error_bound": float(bound)})


def sunderhauf_min_terms(spec: ApproxSpec) -> int:
    """Smallest n with sunderhauf_error_bound(n, a) <= eps."""
    a = spec.a
    n = math.ceil((math.log(1 / spec.eps) + math.log(1 / a) + math.log(1 + a))
                  / math.log((1 + a) / (1 - a)))
    return max(1, n)


def sunderhauf_min_degree(spec: ApproxSpec, grid_density: Optional[int] = None) -> OddChebyshevPoly:
    """
    Closed-form minimal degree; no search needed since the bound is analytic.

    grid_density is accepted for interface parity with the other builders.
    """
    p = sunderhauf(spec, sunderhauf_min_terms(spec))
    logger.info(f"sunderhauf: degree {p.degree} for kappa={spec.kappa:g}, eps={spec.eps:g}")
    return p
