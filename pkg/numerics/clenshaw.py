"""
Odd Chebyshev Recurrences
Clenshaw evaluation of sum_j c_j T_{2j+1}, on scalars, grids and operators
"""

import logging

import numpy as np

from utils.errors import DimensionMismatchError, SpectralRadiusError

logger = logging.getLogger(__name__)


def odd_clenshaw(coeffs, x):
    """
    Evaluate p(x) = sum_j c_j T_{2j+1}(x) with the Clenshaw recurrence.

    The recurrence runs in y = T_2(x) = 2x^2 - 1, using
    T_{2j+3} = 2 T_2 T_{2j+1} - T_{2j-1}, and finishes with
    p(x) = x (b_0 - b_1). Everything before the final multiply is even in x,
    so p(-x) = -p(x) holds bit for bit.

    Args:
        coeffs: Odd-series coefficients c_0..c_{n-1}
        x: Scalar or array of abscissae

    Returns:
        float or np.ndarray: p(x) with the shape of x
    """
    c = np.asarray(coeffs, dtype=np.float64)
    xs = np.asarray(x, dtype=np.float64)
    y2 = 2.0 * (2.0 * xs * xs - 1.0)

    b1 = np.zeros_like(xs)
    b2 = np.zeros_like(xs)
    for ck in c[::-1]:
        b1, b2 = ck + y2 * b1 - b2, b1
    # after the loop b1 holds b_0 and b2 holds b_1
    result = xs * (b1 - b2)
    if np.ndim(result) == 0:
        return float(result)
    return result


def odd_chebyshev_basis(x, n_terms: int) -> np.ndarray:
    """
    Matrix of odd Chebyshev polynomials B[i, j] = T_{2j+1}(x_i).

    Args:
        x: Sample points
        n_terms (int): Number of odd terms n

    Returns:
        np.ndarray: len(x) x n_terms matrix
    """
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    basis = np.empty((xs.size, n_terms))
    if n_terms == 0:
        return basis
    y2 = 2.0 * (2.0 * xs * xs - 1.0)
    basis[:, 0] = xs
    if n_terms > 1:
        # T_3 = 2 T_2 T_1 - T_{-1}, and T_{-1} = T_1
        basis[:, 1] = y2 * xs - xs
    for j in range(2, n_terms):
        basis[:, j] = y2 * basis[:, j - 1] - basis[:, j - 2]
    return basis


def direct_odd_eval(coeffs, x):
    """Reference evaluation through T_k(x) = cos(k arccos x); x must lie in [-1, 1]."""
    c = np.asarray(coeffs, dtype=np.float64)
    xs = np.asarray(x, dtype=np.float64)
    theta = np.arccos(np.clip(xs, -1.0, 1.0))
    orders = 2 * np.arange(c.size) + 1
    values = np.cos(np.multiply.outer(theta, orders)) @ c
    if np.ndim(values) == 0:
        return float(values)
    return values


def clenshaw_matrix_apply(coeffs, op, b) -> np.ndarray:
    """
    Compute p(A) b using only matrix-vector products.

    Same recurrence as odd_clenshaw with the scalar y replaced by the operator
    Y = 2A^2 - I. For ||A|| <= 1 the iterates obey
    ||b_k|| <= n * sum|c| * ||b||; a larger norm means the spectrum left [-1, 1].

    Args:
        coeffs: Odd-series coefficients
        op: Object with `dimension` and `matvec(v)`; `eigenvalues` is checked when present
        b: Input vector

    Returns:
        np.ndarray: p(A) b

    Raises:
        SpectralRadiusError: If the operator is not normalized
    """
    c = np.asarray(coeffs, dtype=np.float64)
    vec = np.asarray(b, dtype=np.float64).reshape(-1)
    if vec.shape[0] != op.dimension:
        raise DimensionMismatchError(
            f"vector has length {vec.shape[0]}, operator has dimension {op.dimension}"
        )

    eigenvalues = getattr(op, "eigenvalues", None)
    if eigenvalues is not None and np.max(np.abs(eigenvalues)) > 1.0 + 1e-12:
        raise SpectralRadiusError(
            f"operator spectral radius {np.max(np.abs(eigenvalues)):.6g} exceeds 1; "
            f"normalize it by lambda_max before applying a polynomial"
        )

    bound = 2.0 * max(c.size, 1) * float(np.sum(np.abs(c))) * float(np.linalg.norm(vec)) + 1e-300

    def apply_y(v):
        return 2.0 * op.matvec(op.matvec(v)) - v

    b1 = np.zeros_like(vec)
    b2 = np.zeros_like(vec)
    for ck in c[::-1]:
        b1, b2 = ck * vec + 2.0 * apply_y(b1) - b2, b1
        if np.linalg.norm(b1) > bound:
            raise SpectralRadiusError(
                "Clenshaw iterates grew beyond the bound for a spectrum in [-1, 1]; "
                "normalize the operator by lambda_max"
            )
    return op.matvec(b1 - b2)
