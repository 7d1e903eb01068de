"""
Dense Linear Algebra Kernel
SVD, truncated minimum-norm solves and least squares on small dense matrices
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from utils.config import get_svd_rel_cutoff
from utils.errors import DimensionMismatchError, DomainError, SvdConvergenceError

logger = logging.getLogger(__name__)

# Row-major float64 2-D array; every matrix in the toolkit is one of these.
DenseMatrix = np.ndarray


@dataclass(frozen=True)
class SvdResult:
    """
    Thin singular value decomposition m = u @ diag(s) @ vt.

    Attributes:
        u (np.ndarray): rows x r left singular vectors (orthonormal columns)
        s (np.ndarray): r singular values, non-increasing, >= 0
        vt (np.ndarray): r x cols right singular vectors (orthonormal rows)
    """
    u: np.ndarray
    s: np.ndarray
    vt: np.ndarray

    @property
    def v(self) -> np.ndarray:
        return self.vt.T

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.vt

    def rank(self, rel_cutoff: float) -> int:
        if self.s.size == 0 or self.s[0] == 0.0:
            return 0
        return int(np.count_nonzero(self.s > rel_cutoff * self.s[0]))


def as_dense_matrix(m) -> DenseMatrix:
    """
    Validate and convert input to a finite float64 matrix.

    Args:
        m: Array-like with two dimensions

    Returns:
        np.ndarray: float64 copy-free view where possible
    """
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"matrix of shape {arr.shape} has non-finite entries")
    return arr


def _as_vector(rhs, length: int, what: str = "rhs") -> np.ndarray:
    vec = np.asarray(rhs, dtype=np.float64).reshape(-1)
    if vec.shape[0] != length:
        raise DimensionMismatchError(f"{what} has length {vec.shape[0]}, expected {length}")
    if not np.all(np.isfinite(vec)):
        raise DomainError(f"{what} has non-finite entries")
    return vec


def svd(m) -> SvdResult:
    """
    Thin SVD with singular values sorted in descending order.

    Args:
        m: Finite dense matrix

    Returns:
        SvdResult: Decomposition reconstructing m

    Raises:
        SvdConvergenceError: If LAPACK does not converge
    """
    arr = as_dense_matrix(m)
    rows, cols = arr.shape
    try:
        u, s, vt = np.linalg.svd(arr, full_matrices=False)
    except np.linalg.LinAlgError as e:
        logger.error(f"SVD failed on a {rows}x{cols} matrix: {e}")
        raise SvdConvergenceError(rows, cols, str(e)) from e
    return SvdResult(u=u, s=s, vt=vt)


def pinv_solve(m, rhs, rel_cutoff: Optional[float] = None) -> np.ndarray:
    """
    Minimum-norm least-squares solution via truncated SVD.

    Singular values below rel_cutoff * sigma_max are treated as zero, so the
    result is the pseudoinverse solution of the truncated matrix.

    Args:
        m: Dense matrix (rows x cols)
        rhs: Vector of length rows
        rel_cutoff (float): Relative truncation in [0, 1); defaults to QSVT_SVD_REL_CUTOFF

    Returns:
        np.ndarray: Solution of length cols
    """
    if rel_cutoff is None:
        rel_cutoff = get_svd_rel_cutoff()
    if not 0.0 <= rel_cutoff < 1.0:
        raise DomainError(f"rel_cutoff must lie in [0, 1), got {rel_cutoff}")

    arr = as_dense_matrix(m)
    vec = _as_vector(rhs, arr.shape[0])
    dec = svd(arr)

    keep = dec.rank(rel_cutoff)
    if keep < dec.s.size:
        logger.debug(f"pinv_solve truncated {dec.s.size - keep} of {dec.s.size} singular values")
    if keep == 0:
        return np.zeros(arr.shape[1])

    coeffs = (dec.u[:, :keep].T @ vec) / dec.s[:keep]
    return dec.vt[:keep].T @ coeffs


def lstsq(m, rhs, rel_cutoff: Optional[float] = None) -> np.ndarray:
    """
    Least-squares solution argmin ||m x - rhs|| for tall or square m.

    Args:
        m: Dense matrix with rows >= cols
        rhs: Vector of length rows
        rel_cutoff (float): Optional truncation; defaults to machine precision scaled by size

    Returns:
        np.ndarray: Solution of length cols
    """
    arr = as_dense_matrix(m)
    rows, cols = arr.shape
    if rows < cols:
        raise DimensionMismatchError(f"lstsq needs rows >= cols, got a {rows}x{cols} matrix")
    if rel_cutoff is None:
        rel_cutoff = np.finfo(np.float64).eps * max(rows, cols)
    return pinv_solve(arr, rhs, rel_cutoff=rel_cutoff)


def condition_estimate(m) -> float:
    """2-norm condition number from singular values (inf when singular)."""
    s = svd(m).s
    if s.size == 0 or s[-1] == 0.0:
        return float('inf')
    return float(s[0] / s[-1])
