"""
Load Vectors
Right-hand sides b, always normalized to unit Euclidean norm
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.errors import DimensionMismatchError, DomainError

logger = logging.getLogger(__name__)

LOAD_KINDS = ("uniform", "point", "custom")
_ALIASES = {"point-at-midpoint": "point", "midpoint": "point"}


@dataclass(frozen=True, eq=False)
class LoadVector:
    """
    Unit-norm load vector.

    Attributes:
        kind (str): uniform, point or custom
        values (np.ndarray): Entries with ||b||_2 = 1
    """
    kind: str
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).reshape(-1)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.values.size)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def load(kind: str, n: int, values=None) -> LoadVector:
    """
    Build a normalized load vector.

    The point load sits at index floor(N/2) (0-based), which is the midpoint
    for odd N.

    Args:
        kind (str): "uniform", "point" (or "point-at-midpoint") or "custom"
        n (int): Dimension N
        values: Entries for a custom load

    Returns:
        LoadVector: The load
    """
    kind = _ALIASES.get(kind, kind)
    if kind not in LOAD_KINDS:
        raise DomainError(f"unknown load kind '{kind}', expected one of {', '.join(LOAD_KINDS)}")
    if n < 1:
        raise DomainError(f"N must be >= 1, got {n}")

    if kind == "uniform":
        vec = np.ones(n)
    elif kind == "point":
        vec = np.zeros(n)
        vec[n // 2] = 1.0
    else:
        if values is None:
            raise DomainError("a custom load needs its values")
        vec = np.asarray(values, dtype=np.float64).reshape(-1)
        if vec.size != n:
            raise DimensionMismatchError(f"custom load has length {vec.size}, expected {n}")

    norm = float(np.linalg.norm(vec))
    if norm == 0.0 or not np.isfinite(norm):
        raise DomainError("load vector must have a finite nonzero norm")
    return LoadVector(kind=kind, values=vec / norm)


def as_load(b, n: Optional[int] = None) -> LoadVector:
    """Accept a LoadVector or raw entries; raw entries become a normalized custom load."""
    if isinstance(b, LoadVector):
        return b
    vec = np.asarray(b, dtype=np.float64).reshape(-1)
    return load("custom", vec.size if n is None else n, vec)
