"""
Approximation Specification
Problem parameters shared by every base polynomial builder, and the
minimal-degree search they all use
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

from chebpoly.polynomial import OddChebyshevPoly, error_profile
from utils.errors import DomainError

logger = logging.getLogger(__name__)

MAX_TERMS = 4096


@dataclass(frozen=True)
class ApproxSpec:
    """
    Approximate 1/x on [a, 1] with a = 1 / kappa to tolerance eps.

    Attributes:
        kappa (float): Condition number, > 1
        eps (float): Target tolerance in (0, 1)
    """
    kappa: float
    eps: float = 0.1

    def __post_init__(self):
        if not self.kappa > 1.0:
            raise DomainError(f"kappa must be > 1, got {self.kappa}")
        if not 0.0 < self.eps < 1.0:
            raise DomainError(f"eps must lie in (0, 1), got {self.eps}")

    @property
    def a(self) -> float:
        return 1.0 / self.kappa


def search_min_terms(build: Callable[[int], OddChebyshevPoly], spec: ApproxSpec,
                     grid_density: Optional[int] = None,
                     max_terms: int = MAX_TERMS) -> OddChebyshevPoly:
    """
    Smallest n_terms whose polynomial meets spec.eps on the dense grid.

    Doubles n_terms until the certificate passes, then bisects between the
    last failure and the first success.

    Args:
        build (callable): n_terms -> polynomial
        spec (ApproxSpec): Target
        grid_density (int): Certification grid density
        max_terms (int): Give up beyond this many terms

    Returns:
        OddChebyshevPoly: Certified polynomial of minimal degree
    """
    def certified(n: int):
        p = build(n)
        err = error_profile(p, grid_density).max_residual
        logger.debug(f"degree {2 * n - 1}: max residual {err:.6e} (target {spec.eps})")
        return p, err <= spec.eps

    lo, n = 0, 1
    while True:
        p, ok = certified(n)
        if ok:
            break
        lo = n
        n *= 2
        if n > max_terms:
            raise DomainError(
                f"no degree up to {2 * max_terms - 1} reaches eps={spec.eps} for kappa={spec.kappa}"
            )

    best, hi = p, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        p, ok = certified(mid)
        if ok:
            best, hi = p, mid
        else:
            lo = mid

    logger.info(f"{best.label}: minimal degree {best.degree} for kappa={spec.kappa:g}, eps={spec.eps:g}")
    return best
