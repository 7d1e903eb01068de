"""
Poisson Operators
Finite-difference Laplacians with analytic eigenpairs, normalized to spectrum (0, 1]
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from spectral.spectrum import Spectrum, merge_duplicates
from utils.errors import DimensionMismatchError, DomainError

logger = logging.getLogger(__name__)

KINDS = ("poisson1d", "poisson2d", "custom")


@dataclass(frozen=True, eq=False)
class OperatorModel:
    """
    Symmetric positive definite operator A / lambda_max.

    Attributes:
        matrix (sp.csr_matrix): The normalized operator
        scale (float): lambda_max of the unnormalized operator
        kind (str): poisson1d, poisson2d or custom
        eigenvalues (np.ndarray): Normalized eigenvalues, ascending, if known
        eigenvectors (np.ndarray): Orthonormal eigenvectors as columns, same order
        grid_shape (tuple): Interior grid the unknowns live on
    """
    matrix: sp.csr_matrix
    scale: float
    kind: str = "custom"
    eigenvalues: Optional[np.ndarray] = None
    eigenvectors: Optional[np.ndarray] = None
    grid_shape: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown operator kind '{self.kind}'")
        if self.matrix.shape[0] != self.matrix.shape[1]:
            raise DimensionMismatchError(f"operator must be square, got {self.matrix.shape}")
        if self.eigenvalues is not None:
            self.eigenvalues.setflags(write=False)
        if self.eigenvectors is not None:
            self.eigenvectors.setflags(write=False)

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def kappa(self) -> float:
        if self.eigenvalues is None:
            raise DomainError("condition number needs the operator's eigenvalues")
        return float(self.eigenvalues[-1] / self.eigenvalues[0])

    def matvec(self, v) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=np.float64)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def spectrum(self, merge_tol: Optional[float] = None) -> Spectrum:
        """Eigenvalues as a Spectrum, carrying kappa and scale."""
        if self.eigenvalues is None:
            raise DomainError("operator has no known eigenvalues")
        return merge_duplicates(self.eigenvalues, merge_tol, kappa=self.kappa,
                                scale=float(self.scale), source=self.kind)

    def solve(self, b) -> np.ndarray:
        """
        Classical solution of (A / lambda_max) x = b.

        Uses the eigen-expansion when eigenpairs are known, otherwise a sparse
        direct solve.
        """
        vec = np.asarray(b, dtype=np.float64).reshape(-1)
        if vec.size != self.dimension:
            raise DimensionMismatchError(
                f"vector has length {vec.size}, operator has dimension {self.dimension}"
            )
        if self.eigenvectors is not None:
            coords = self.eigenvectors.T @ vec
            return self.eigenvectors @ (coords / self.eigenvalues)
        return spsolve(self.matrix.tocsc(), vec)


def _laplacian_1d(n: int) -> sp.csr_matrix:
    h = 1.0 / (n + 1)
    return sp.diags([-1.0, 2.0, -1.0], [-1, 0, 1], shape=(n, n), format="csr") / (h * h)


def _eigenpairs_1d(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """lambda_k = 4/h^2 sin^2(k pi / (2(N+1))), v_k(i) = sqrt(2/(N+1)) sin(i k pi/(N+1))."""
    h = 1.0 / (n + 1)
    k = np.arange(1, n + 1)
    values = 4.0 / (h * h) * np.sin(k * np.pi / (2 * (n + 1))) ** 2
    i = np.arange(1, n + 1)
    vectors = np.sqrt(2.0 / (n + 1)) * np.sin(np.outer(i, k) * np.pi / (n + 1))
    return values, vectors


def poisson1d(n: int) -> OperatorModel:
    """
    1D Poisson operator -u'' on N interior nodes of [0, 1], Dirichlet boundaries.

    Args:
        n (int): Number of interior nodes N

    Returns:
        OperatorModel: Normalized operator with analytic eigenpairs
    """
    if n < 1:
        raise DomainError(f"N must be >= 1, got {n}")
    values, vectors = _eigenpairs_1d(n)
    scale = float(values[-1])
    op = OperatorModel(
        matrix=(_laplacian_1d(n) / scale).tocsr(),
        scale=scale,
        kind="poisson1d",
        eigenvalues=values / scale,
        eigenvectors=vectors,
        grid_shape=(n,),
    )
    logger.info(f"Built 1D Poisson operator: N={n}, kappa={op.kappa:.6g}")
    return op


def poisson2d(n1: int) -> OperatorModel:
    """
    2D five-point Poisson operator on an N1 x N1 interior grid of the unit square.

    Eigenvalues are pairwise sums of the 1D ones and eigenvectors Kronecker
    products, so lambda_{j,k} = lambda_{k,j} exactly.

    Args:
        n1 (int): Interior nodes per direction

    Returns:
        OperatorModel: Normalized operator of dimension N1^2
    """
    if n1 < 1:
        raise DomainError(f"N1 must be >= 1, got {n1}")
    l1 = _laplacian_1d(n1)
    eye = sp.identity(n1, format="csr")
    laplacian = sp.kron(l1, eye) + sp.kron(eye, l1)

    values_1d, vectors_1d = _eigenpairs_1d(n1)
    sums = np.add.outer(values_1d, values_1d).reshape(-1)
    vectors = np.einsum("ij,kl->ikjl", vectors_1d, vectors_1d).reshape(n1 * n1, n1 * n1)
    order = np.argsort(sums, kind="stable")
    scale = float(sums[order[-1]])

    op = OperatorModel(
        matrix=(laplacian / scale).tocsr(),
        scale=scale,
        kind="poisson2d",
        eigenvalues=sums[order] / scale,
        eigenvectors=vectors[:, order],
        grid_shape=(n1, n1),
    )
    logger.info(f"Built 2D Poisson operator: N1={n1}, N={n1 * n1}, kappa={op.kappa:.6g}")
    return op


def from_matrix(matrix, symmetry_tol: float = 1e-12) -> OperatorModel:
    """
    Wrap an explicit SPD matrix, normalizing by its largest eigenvalue.

    Args:
        matrix: Dense or sparse square matrix
        symmetry_tol (float): Allowed relative asymmetry

    Returns:
        OperatorModel: kind "custom" with eigenpairs from a dense symmetric solve
    """
    dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix, dtype=np.float64)
    if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
        raise DimensionMismatchError(f"operator must be square, got shape {dense.shape}")
    if np.max(np.abs(dense - dense.T)) > symmetry_tol * max(1.0, np.max(np.abs(dense))):
        raise DomainError("operator matrix is not symmetric")

    values, vectors = np.linalg.eigh(dense)
    if values[0] <= 0.0:
        raise DomainError(f"operator matrix is not positive definite (lambda_min={values[0]:.3e})")
    scale = float(values[-1])
    return OperatorModel(
        matrix=sp.csr_matrix(dense / scale),
        scale=scale,
        kind="custom",
        eigenvalues=values / scale,
        eigenvectors=vectors,
        grid_shape=(dense.shape[0],),
    )
