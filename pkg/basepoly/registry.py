"""
Base Polynomial Registry
Name-based access to the builders, with a cache for repeated experiment rows
"""

import logging
from functools import lru_cache
from typing import Optional

from basepoly.approx_spec import ApproxSpec
from basepoly.mang import mang, mang_min_degree
from basepoly.remez import remez, remez_min_degree
from basepoly.sunderhauf import sunderhauf, sunderhauf_min_degree
from chebpoly.polynomial import OddChebyshevPoly
from utils.errors import DomainError

logger = logging.getLogger(__name__)

METHODS = ("remez", "mang", "sunderhauf")

_MIN_DEGREE = {
    "remez": remez_min_degree,
    "mang": mang_min_degree,
    "sunderhauf": sunderhauf_min_degree,
}

_FIXED_DEGREE = {
    "remez": lambda spec, n: remez(spec, n)[0],
    "mang": mang,
    "sunderhauf": sunderhauf,
}


@lru_cache(maxsize=64)
def build_base(method: str, spec: ApproxSpec, degree: Optional[int] = None) -> OddChebyshevPoly:
    """
    Build a base polynomial by method name.

    Args:
        method (str): "remez", "mang" or "sunderhauf"
        spec (ApproxSpec): kappa and eps
        degree (int): Fixed odd degree; None searches for the minimal one

    Returns:
        OddChebyshevPoly: Base polynomial (tau not yet attached)
    """
    if method not in METHODS:
        raise DomainError(f"unknown base method '{method}', expected one of {', '.join(METHODS)}")
    if degree is None:
        return _MIN_DEGREE[method](spec)
    if degree < 1 or degree % 2 == 0:
        raise DomainError(f"degree must be a positive odd integer, got {degree}")
    logger.info(f"Building {method} polynomial of degree {degree} for kappa={spec.kappa:g}")
    return _FIXED_DEGREE[method](spec, (degree + 1) // 2)
