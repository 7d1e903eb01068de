"""
QSVT Emulator
Noiseless QSVT output state computed by exact polynomial application

With exact phase factors the post-selected QSVT state is p(A) b / ||p(A) b||,
so phase factorization is not modelled; every output is tagged
`exact-polynomial`.
"""

import logging

import numpy as np

from chebpoly.polynomial import OddChebyshevPoly
from numerics.clenshaw import clenshaw_matrix_apply
from operators.loads import as_load
from operators.poisson import OperatorModel
from utils.errors import DegenerateOutputError, DomainError

logger = logging.getLogger(__name__)

EMULATION = "exact-polynomial"


def apply_polynomial(p: OddChebyshevPoly, op: OperatorModel, b) -> np.ndarray:
    """Unnormalized p(A) b through matrix-vector products only."""
    return clenshaw_matrix_apply(p.coeffs, op, as_load(b, op.dimension).values)


def eigen_expansion(p: OddChebyshevPoly, op: OperatorModel, b) -> np.ndarray:
    """Reference p(A) b = sum_k p(lambda_k) (v_k^T b) v_k from analytic eigenpairs."""
    if op.eigenvectors is None:
        raise DomainError("eigen-expansion needs the operator's eigenvectors")
    vec = as_load(b, op.dimension).values
    coords = op.eigenvectors.T @ vec
    return op.eigenvectors @ (p(op.eigenvalues) * coords)


def emulate(p: OddChebyshevPoly, op: OperatorModel, b) -> np.ndarray:
    """
    Emulate the QSVT statevector output.

    Args:
        p (OddChebyshevPoly): Polynomial (unnormalized coefficients)
        op (OperatorModel): Normalized operator
        b: LoadVector or raw entries (normalized on the way in)

    Returns:
        np.ndarray: u_QSVT = p(A) b / ||p(A) b||

    Raises:
        DegenerateOutputError: If p(A) b vanishes
    """
    pb = apply_polynomial(p, op, b)
    norm = float(np.linalg.norm(pb))
    if norm == 0.0 or not np.isfinite(norm):
        raise DegenerateOutputError(
            f"p(A)b has norm {norm} for the {p.label} polynomial of degree {p.degree}; "
            f"no output state to normalize"
        )
    return pb / norm
