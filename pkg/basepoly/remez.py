"""
Remez Minimax Polynomial
Exchange algorithm for min over odd p of max_{x in [a,1]} |x p(x) - 1|

The weighted error e(x) = x p(x) - 1 lives in the span of the n even
functions x T_{2j+1}(x), a Haar space on [a, 1] (a > 0), so the best
approximation equioscillates on a reference of n + 1 points.
"""

import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from basepoly.approx_spec import ApproxSpec, search_min_terms
from chebpoly.polynomial import OddChebyshevPoly, dense_grid
from numerics.clenshaw import odd_chebyshev_basis, odd_clenshaw
from numerics.linalg import condition_estimate, lstsq
from utils.errors import DomainError, PrecisionWarning, RemezConvergenceError

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100
CONVERGENCE_TOL = 1e-6
ILL_CONDITIONED = 1e14


@dataclass(frozen=True, eq=False)
class RemezState:
    """
    Equioscillation certificate of a Remez run.

    Attributes:
        reference (np.ndarray): Final n + 1 reference points, increasing
        levelled_error (float): |h| from the last levelled solve
        max_error (float): Max |e(x)| found on [a, 1]
        iterations (int): Exchange steps taken
        alternation_count (int): Consecutive sign alternations at near-maximal error
        signed_errors (np.ndarray): e(x) at the reference points
    """
    reference: np.ndarray
    levelled_error: float
    max_error: float
    iterations: int
    alternation_count: int
    signed_errors: np.ndarray


def _weighted_basis(x: np.ndarray, n_terms: int) -> np.ndarray:
    return x[:, None] * odd_chebyshev_basis(x, n_terms)


def _weighted_error(coeffs, x):
    return x * odd_clenshaw(coeffs, x) - 1.0


def initial_reference(a: float, n_terms: int) -> np.ndarray:
    """Chebyshev points of the second kind mapped to [a, 1], n_terms + 1 of them."""
    k = np.arange(n_terms + 1)
    t = -np.cos(np.pi * k / n_terms)
    return a + (1.0 - a) * (t + 1.0) / 2.0


def _levelled_solve(reference: np.ndarray, n_terms: int) -> Tuple[np.ndarray, float]:
    system = np.empty((n_terms + 1, n_terms + 1))
    system[:, :n_terms] = _weighted_basis(reference, n_terms)
    system[:, n_terms] = (-1.0) ** np.arange(n_terms + 1)

    cond = condition_estimate(system)
    if cond > ILL_CONDITIONED:
        message = (f"Remez reference system is ill-conditioned (cond ~ {cond:.2e}); "
                   f"float64 results at degree {2 * n_terms - 1} may be inaccurate")
        logger.warning(message)
        warnings.warn(message, PrecisionWarning, stacklevel=3)

    sol = lstsq(system, np.ones(n_terms + 1))
    return sol[:n_terms], float(sol[n_terms])


def _refine(coeffs, lo: float, x0: float, hi: float, e0: float) -> Tuple[float, float]:
    """Polish a grid extremum of |e| inside [lo, hi]; keeps the grid point if no improvement."""
    if not lo < hi:
        return x0, e0
    res = minimize_scalar(lambda t: -abs(_weighted_error(coeffs, t)), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-14 * max(1.0, hi)})
    x1 = float(res.x)
    e1 = float(_weighted_error(coeffs, x1))
    if abs(e1) > abs(e0) and np.sign(e1) == np.sign(e0):
        return x1, e1
    return x0, e0


def _local_extrema(coeffs, grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    One extremum of e per maximal run of constant sign, polished.

    Returns:
        tuple: (points, signed errors), alternating in sign by construction
    """
    err = _weighted_error(coeffs, grid)
    sign = np.where(err >= 0.0, 1.0, -1.0)
    runs = np.split(np.arange(grid.size), np.flatnonzero(np.diff(sign) != 0) + 1)

    xs, es = [], []
    for run in runs:
        i = int(run[np.argmax(np.abs(err[run]))])
        lo = grid[max(i - 1, run[0])]
        hi = grid[min(i + 1, run[-1])]
        x, e = _refine(coeffs, lo, grid[i], hi, float(err[i]))
        xs.append(x)
        es.append(e)
    return np.array(xs), np.array(es)


def _multi_exchange(xs: np.ndarray, es: np.ndarray, n_terms: int) -> Optional[np.ndarray]:
    if xs.size < n_terms + 1:
        return None
    lo, hi = 0, xs.size
    while hi - lo > n_terms + 1:
        if abs(es[lo]) < abs(es[hi - 1]):
            lo += 1
        else:
            hi -= 1
    return xs[lo:hi].copy()


def _single_exchange(reference: np.ndarray, ref_err: np.ndarray, x_new: float, e_new: float) -> np.ndarray:
    ref = reference.copy()
    s_new = np.sign(e_new)
    if x_new < ref[0]:
        if np.sign(ref_err[0]) == s_new:
            ref[0] = x_new
        else:
            ref = np.concatenate([[x_new], ref[:-1]])
    elif x_new > ref[-1]:
        if np.sign(ref_err[-1]) == s_new:
            ref[-1] = x_new
        else:
            ref = np.concatenate([ref[1:], [x_new]])
    else:
        i = int(np.searchsorted(ref, x_new)) - 1
        i = min(max(i, 0), ref.size - 2)
        if np.sign(ref_err[i]) == s_new:
            ref[i] = x_new
        else:
            ref[i + 1] = x_new
    return ref


def _alternation_count(es: np.ndarray, max_error: float) -> int:
    """Longest run of alternating signs among extrema within 1e-3 of the max."""
    big = es[np.abs(es) >= (1.0 - 1e-3) * max_error]
    if big.size == 0:
        return 0
    best = run = 1
    for prev, cur in zip(big[:-1], big[1:]):
        run = run + 1 if np.sign(prev) != np.sign(cur) else 1
        best = max(best, run)
    return best


def remez(spec: ApproxSpec, n_terms: int, exchange: str = "multi",
          max_iterations: int = MAX_ITERATIONS) -> Tuple[OddChebyshevPoly, RemezState]:
    """
    Minimax odd-Chebyshev approximation of 1/x with n_terms terms.

    Args:
        spec (ApproxSpec): kappa and eps (eps only labels the result)
        n_terms (int): Number of odd terms (degree 2 n_terms - 1)
        exchange (str): "multi" (simultaneous exchange) or "single"
        max_iterations (int): Iteration cap

    Returns:
        tuple: (polynomial, RemezState)

    Raises:
        RemezConvergenceError: If the cap is hit before the levelled error settles
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    if exchange not in ("multi", "single"):
        raise DomainError(f"unknown exchange strategy '{exchange}'")

    a = spec.a
    grid = dense_grid(a, max(2000, 50 * n_terms))
    reference = initial_reference(a, n_terms)
    coeffs, h, max_error = None, 0.0, float("inf")

    for iteration in range(1, max_iterations + 1):
        coeffs, h = _levelled_solve(reference, n_terms)
        level = abs(h)

        xs, es = _local_extrema(coeffs, np.unique(np.concatenate([grid, reference])))
        max_error = float(np.max(np.abs(es)))

        if max_error - level <= CONVERGENCE_TOL * level or max_error < 1e-14:
            ref_err = _weighted_error(coeffs, reference)
            state = RemezState(
                reference=reference,
                levelled_error=level,
                max_error=max_error,
                iterations=iteration,
                alternation_count=_alternation_count(es, max_error),
                signed_errors=ref_err,
            )
            logger.debug(f"Remez degree {2 * n_terms - 1}: converged in {iteration} iterations, "
                         f"error {max_error:.6e}, {state.alternation_count} alternations")
            p = OddChebyshevPoly(coeffs=coeffs, a=a, label="remez", eps_target=spec.eps,
                                 meta={"kappa": float(spec.kappa), "max_residual": max_error})
            return p, state

        if exchange == "multi":
            new_reference = _multi_exchange(xs, es, n_terms)
            if new_reference is None:
                logger.warning(f"Remez found only {xs.size} alternation points, need {n_terms + 1}")
                break
        else:
            k = int(np.argmax(np.abs(es)))
            new_reference = _single_exchange(reference, _weighted_error(coeffs, reference), xs[k], es[k])
        reference = new_reference

    raise RemezConvergenceError(iteration, abs(h), max_error)


def remez_min_degree(spec: ApproxSpec, grid_density: Optional[int] = None,
                     exchange: str = "multi") -> OddChebyshevPoly:
    """
    Lowest-degree Remez polynomial with max residual <= spec.eps.

    Args:
        spec (ApproxSpec): Target
        grid_density (int): Certification grid density
        exchange (str): Exchange strategy passed to remez

    Returns:
        OddChebyshevPoly: Certified polynomial
    """
    return search_min_terms(lambda n: remez(spec, n, exchange=exchange)[0], spec, grid_density)
