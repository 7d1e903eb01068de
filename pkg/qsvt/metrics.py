"""
QSVT Metrics
Fidelity, success probability and compliance of an emulated QSVT solve
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np

from chebpoly.polynomial import OddChebyshevPoly
from operators.loads import as_load
from operators.poisson import OperatorModel
from qsvt.emulator import EMULATION, apply_polynomial
from utils.errors import DegenerateOutputError, DomainError
from utils.helpers import safe_divide, save_json_file

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QsvtMetrics:
    """
    Solution quality of one (polynomial, operator, load) triple.

    Compliance values are in units of the normalized operator A / lambda_max.

    Attributes:
        degree (int): Polynomial degree d
        tau (float): Subnormalization factor
        fidelity (float): (u^T u_QSVT)^2
        success_probability (float): ||p(A) b||^2 / tau^2
        compliance (float): Classical b^T A^-1 b
        compliance_qsvt (float): (b^T u_QSVT) tau sqrt(P_succ)
        compliance_error (float): |C_QSVT - C| / |C|
        eig_residual_all (float): Max discrete residual over every eigenvalue, if known
        eig_residual_corrected (float): Same over the corrected targets, if any
        peak_value (float): Max entry of u_QSVT, sign fixed so b^T u_QSVT >= 0
        classical_peak (float): Max entry of the normalized classical solution
        peak_error (float): |peak_value - classical_peak| / |classical_peak|
        label (str): Polynomial label
        emulation (str): Always "exact-polynomial"
    """
    degree: int
    tau: float
    fidelity: float
    success_probability: float
    compliance: float
    compliance_qsvt: float
    compliance_error: float
    eig_residual_all: Optional[float]
    eig_residual_corrected: Optional[float]
    peak_value: float
    classical_peak: float
    peak_error: float
    label: str
    emulation: str = EMULATION

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _require_tau(p: OddChebyshevPoly) -> float:
    if p.tau is None or p.tau <= 0.0:
        raise DomainError(f"the {p.label} polynomial needs tau before QSVT metrics; call normalize()")
    return float(p.tau)


def metrics(p: OddChebyshevPoly, op: OperatorModel, b,
            targets=None) -> QsvtMetrics:
    """
    Compute every metric for one emulated solve.

    Args:
        p (OddChebyshevPoly): Polynomial with tau attached
        op (OperatorModel): Normalized operator
        b: LoadVector or raw entries
        targets: Corrected eigenvalues, for the corrected-subset E_eig

    Returns:
        QsvtMetrics: The metrics
    """
    tau = _require_tau(p)
    vec = as_load(b, op.dimension).values

    pb = apply_polynomial(p, op, vec)
    pb_norm = float(np.linalg.norm(pb))
    if pb_norm == 0.0:
        raise DegenerateOutputError(f"p(A)b vanishes for the {p.label} polynomial")
    u_qsvt = pb / pb_norm

    x = op.solve(vec)
    compliance = float(vec @ x)
    u = x / np.linalg.norm(x)

    fidelity = float(np.clip((u @ u_qsvt) ** 2, 0.0, 1.0))
    success = pb_norm ** 2 / tau ** 2
    if success > 1.0 + 1e-9:
        logger.warning(f"P_succ={success:.6g} exceeds 1; tau={tau:.6g} underestimates max |p|")
    compliance_qsvt = float((vec @ u_qsvt) * tau * np.sqrt(success))

    eig_all = None
    if op.eigenvalues is not None:
        eig_all = float(np.max(np.abs(op.eigenvalues * p(op.eigenvalues) - 1.0)))
    eig_corrected = None
    if targets is not None:
        lam = np.asarray(targets, dtype=np.float64)
        eig_corrected = float(np.max(np.abs(lam * p(lam) - 1.0)))

    sign = -1.0 if vec @ u_qsvt < 0.0 else 1.0
    peak_value = float(np.max(sign * u_qsvt))
    classical_peak = float(np.max(u))

    result = QsvtMetrics(
        degree=p.degree,
        tau=tau,
        fidelity=fidelity,
        success_probability=float(success),
        compliance=compliance,
        compliance_qsvt=compliance_qsvt,
        compliance_error=abs(safe_divide(compliance_qsvt - compliance, abs(compliance))),
        eig_residual_all=eig_all,
        eig_residual_corrected=eig_corrected,
        peak_value=peak_value,
        classical_peak=classical_peak,
        peak_error=abs(safe_divide(peak_value - classical_peak, abs(classical_peak))),
        label=p.label,
    )
    logger.debug(f"QSVT metrics for {p.label} d={p.degree}: F={fidelity:.9f}, "
                 f"P_succ={success:.6g}, compliance error {result.compliance_error:.3e}")
    return result


def compliance_identity_check(p: OddChebyshevPoly, op: OperatorModel, b) -> float:
    """
    Discrepancy between (b^T u_QSVT) tau sqrt(P_succ) and b^T p(A) b.

    Args:
        p (OddChebyshevPoly): Polynomial with tau attached
        op (OperatorModel): Normalized operator
        b: LoadVector or raw entries

    Returns:
        float: |difference| / max(1, |b^T p(A) b|)
    """
    tau = _require_tau(p)
    vec = as_load(b, op.dimension).values
    pb = apply_polynomial(p, op, vec)
    pb_norm = float(np.linalg.norm(pb))
    if pb_norm == 0.0:
        return 0.0
    success = pb_norm ** 2 / tau ** 2
    via_state = float((vec @ (pb / pb_norm)) * tau * np.sqrt(success))
    direct = float(vec @ pb)
    return abs(via_state - direct) / max(1.0, abs(direct))


def metrics_to_document(m: QsvtMetrics, seed: Optional[int] = None) -> Dict[str, Any]:
    return {"kind": "qsvt-metrics", "seed": seed, **m.to_dict()}


def save_metrics(m: QsvtMetrics, file_path: str, seed: Optional[int] = None) -> str:
    return save_json_file(metrics_to_document(m, seed), file_path)
