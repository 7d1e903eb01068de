"""
Spectral Correction
Min-norm coefficient update making x p(x) = 1 exact at chosen eigenvalues

Given a base polynomial p0 with n0 odd terms and K_eff target eigenvalues:
    r = 1 - lambda p0(lambda)             residuals at the targets
    M = Lambda_K B_K                      K_eff x n0 constraint matrix
    G alpha = r,  G = M M^T               Gram system, truncated SVD solve
    delta_c = M^T alpha                   min-norm correction, same degree
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from chebpoly.polynomial import OddChebyshevPoly, error_profile, normalize
from numerics.clenshaw import odd_chebyshev_basis
from numerics.linalg import condition_estimate, pinv_solve
from spectral.pure import interpolation_system
from spectral.spectrum import Spectrum, merge_duplicates
from utils.errors import DomainError, InfeasibleCorrectionError
from utils.helpers import save_json_file

logger = logging.getLogger(__name__)

REFINE_THRESHOLD = 1e-14


@dataclass(frozen=True, eq=False)
class CorrectionReport:
    """
    Everything a correction computed, plus the pointwise error bound.

    Attributes:
        targets (np.ndarray): Merged target eigenvalues (K_eff of them)
        k_requested (int): Number of eigenvalues asked for before merging
        residuals (np.ndarray): r_k = 1 - lambda_k p0(lambda_k)
        alpha (np.ndarray): Gram multipliers
        correction (np.ndarray): c_corr, length n0
        gram_condition (float): Condition estimate of G
        constraint_norm (float): ||Lambda_K B_K||_2
        base_eps (float): Observed max residual of p0 on [a, 1]
        post_residuals (np.ndarray): |lambda_k p_SC(lambda_k) - 1|
        grid (np.ndarray): Grid the bound was evaluated on
        bound_values (np.ndarray): Bound at each grid point
        observed (np.ndarray): |x p_SC(x) - 1| at each grid point
    """
    targets: np.ndarray
    k_requested: int
    residuals: np.ndarray
    alpha: np.ndarray
    correction: np.ndarray
    gram_condition: float
    constraint_norm: float
    base_eps: float
    post_residuals: np.ndarray
    grid: np.ndarray
    bound_values: np.ndarray
    observed: np.ndarray

    @property
    def k_eff(self) -> int:
        return int(self.targets.size)

    @property
    def n_terms(self) -> int:
        return int(self.correction.size)

    def bound(self, x):
        return prop1_bound(self.base_eps, self.targets, self.alpha, self.n_terms, x)

    @property
    def bound_holds(self) -> bool:
        return bool(np.all(self.observed <= self.bound_values * (1.0 + 1e-12) + 1e-15))

    @property
    def max_post_residual(self) -> float:
        return float(np.max(self.post_residuals))


def prop1_bound(p0_eps: float, targets, alpha, n_terms: int, x):
    """
    Pointwise bound eps + ||Lambda_K B_K||_2 ||alpha||_2 ||T(x)||_2.

    T(x) is the vector (T_1(x), T_3(x), ..., T_{2 n0 - 1}(x)).

    Args:
        p0_eps (float): Max residual of the base polynomial on [a, 1]
        targets: Corrected eigenvalues
        alpha: Gram multipliers
        n_terms (int): n0
        x: Scalar or array

    Returns:
        float or np.ndarray: The bound at x
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    alpha_norm = float(np.linalg.norm(alpha))
    if alpha_norm == 0.0:
        return float(p0_eps) if np.ndim(x) == 0 else np.full(np.shape(x), float(p0_eps))

    constraint_norm = float(np.linalg.norm(interpolation_system(targets, n_terms), 2))
    t_norm = np.linalg.norm(odd_chebyshev_basis(x, n_terms), axis=1)
    bound = p0_eps + constraint_norm * alpha_norm * t_norm
    if np.ndim(x) == 0:
        return float(bound[0])
    return bound.reshape(np.shape(x))


def _select_targets(spectrum: Spectrum, K: Optional[int], targets: Optional[Sequence[float]],
                    merge_tol: Optional[float]) -> Tuple[Spectrum, int]:
    tol = spectrum.merge_tol if merge_tol is None else merge_tol
    if targets is not None:
        chosen = merge_duplicates(targets, tol)
        return chosen, len(chosen)
    k = len(spectrum) if K is None else int(K)
    return spectrum.smallest(k, tol), k


def spectral_correct(p0: OddChebyshevPoly, spectrum: Spectrum, K: Optional[int] = None,
                     targets: Optional[Sequence[float]] = None, merge_tol: Optional[float] = None,
                     rel_cutoff: Optional[float] = None,
                     grid_density: Optional[int] = None) -> Tuple[OddChebyshevPoly, CorrectionReport]:
    """
    Correct p0 so that lambda p_SC(lambda) = 1 at the K smallest eigenvalues.

    Args:
        p0 (OddChebyshevPoly): Base polynomial
        spectrum (Spectrum): Known normalized eigenvalues
        K (int): How many of the smallest eigenvalues to target; None means all
        targets (list): Explicit target eigenvalues, overriding K
        merge_tol (float): delta_merge; defaults to the spectrum's
        rel_cutoff (float): Truncation for the Gram solve
        grid_density (int): Grid density for tau and the bound sweep

    Returns:
        tuple: (p_SC with tau attached, CorrectionReport)

    Raises:
        InfeasibleCorrectionError: If K_eff exceeds the number of terms of p0
    """
    chosen, k_requested = _select_targets(spectrum, K, targets, merge_tol)
    lam = chosen.representatives
    n0 = p0.n_terms
    if lam.size > n0:
        raise InfeasibleCorrectionError(int(lam.size), n0)
    if lam[0] < p0.a * (1.0 - 1e-12):
        logger.warning(f"Target {lam[0]:.6g} lies below the approximation edge a={p0.a:.6g}; "
                       f"the pointwise bound does not cover it")

    system = interpolation_system(lam, n0)
    residuals = 1.0 - lam * p0(lam)
    gram = system @ system.T

    alpha = pinv_solve(gram, residuals, rel_cutoff)
    leftover = residuals - system @ (system.T @ alpha)
    if np.max(np.abs(leftover)) > REFINE_THRESHOLD:
        alpha = alpha + pinv_solve(gram, leftover, rel_cutoff)
    correction = system.T @ alpha

    p_sc = replace(p0.with_coeffs(p0.coeffs + correction, label="spectral-corrected"),
                   meta={**p0.meta, "base_label": p0.label, "k": k_requested, "k_eff": int(lam.size)})
    p_sc = normalize(p_sc, grid_density)

    base_profile = error_profile(p0, grid_density)
    sc_profile = error_profile(p_sc, grid_density)
    report = CorrectionReport(
        targets=lam.copy(),
        k_requested=k_requested,
        residuals=residuals,
        alpha=alpha,
        correction=correction,
        gram_condition=condition_estimate(gram),
        constraint_norm=float(np.linalg.norm(system, 2)),
        base_eps=base_profile.max_residual,
        post_residuals=np.abs(lam * p_sc(lam) - 1.0),
        grid=sc_profile.grid,
        bound_values=prop1_bound(base_profile.max_residual, lam, alpha, n0, sc_profile.grid),
        observed=sc_profile.residuals,
    )
    logger.info(f"Spectral correction of {p0.label} (d={p0.degree}): K={k_requested}, "
                f"K_eff={report.k_eff}, cond(G)={report.gram_condition:.3e}, "
                f"max target residual {report.max_post_residual:.3e}, tau {p_sc.tau:.6g}")
    return p_sc, report


def eig_residual(p: OddChebyshevPoly, spectrum: Spectrum, subset: str = "all",
                 report: Optional[CorrectionReport] = None) -> float:
    """
    Max discrete residual max_k |lambda_k p(lambda_k) - 1|.

    Args:
        p (OddChebyshevPoly): Polynomial (unnormalized coefficients)
        spectrum (Spectrum): Eigenvalues
        subset (str): "all" or "corrected"
        report (CorrectionReport): Supplies the corrected targets for subset="corrected"

    Returns:
        float: The residual
    """
    if subset == "all":
        lam = spectrum.values
    elif subset == "corrected":
        if report is None:
            raise DomainError("subset='corrected' needs the correction report")
        lam = report.targets
    else:
        raise DomainError(f"unknown eigenvalue subset '{subset}'")
    return float(np.max(np.abs(lam * p(lam) - 1.0)))


def report_to_document(report: CorrectionReport) -> Dict[str, Any]:
    gap = report.bound_values - report.observed
    return {
        "kind": "correction-report",
        "k": report.k_requested,
        "k_eff": report.k_eff,
        "n_terms": report.n_terms,
        "targets": [float(v) for v in report.targets],
        "residuals": [float(v) for v in report.residuals],
        "alpha": [float(v) for v in report.alpha],
        "correction": [float(v) for v in report.correction],
        "gram_condition": float(report.gram_condition),
        "post_residual_max": report.max_post_residual,
        "bound": {
            "base_eps": float(report.base_eps),
            "constraint_norm": float(report.constraint_norm),
            "alpha_norm": float(np.linalg.norm(report.alpha)),
            "grid_points": int(report.grid.size),
            "max_bound": float(np.max(report.bound_values)),
            "max_observed": float(np.max(report.observed)),
            "min_slack": float(np.min(gap)),
            "holds": report.bound_holds,
        },
    }


def save_report(report: CorrectionReport, file_path: str) -> str:
    return save_json_file(report_to_document(report), file_path)
