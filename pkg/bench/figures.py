"""
Figure Datasets
Dense-grid residual series and solution surfaces as CSV, ready for external plotting
"""

import logging
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from basepoly.approx_spec import ApproxSpec
from bench.config import ExperimentConfig
from bench.tables import (base_spec, cached_operator, corrected_base, normalized_base,
                          provenance_frame)
from chebpoly.polynomial import OddChebyshevPoly, dense_grid, normalize
from operators.loads import load
from qsvt.emulator import EMULATION, emulate
from qsvt.metrics import metrics
from spectral.correction import spectral_correct
from spectral.pure import pure_spectral
from spectral.spectrum import Spectrum, merge_duplicates
from utils.config import get_grid_density
from utils.errors import ExperimentConfigError
from utils.helpers import resolve_output_path, write_csv

logger = logging.getLogger(__name__)


def residual_series(p: OddChebyshevPoly, grid: np.ndarray) -> np.ndarray:
    """Pointwise |x p(x) - 1|."""
    return np.abs(grid * p(grid) - 1.0)


def _summary_row(series: str, p: OddChebyshevPoly, grid: np.ndarray,
                 spectrum: Optional[Spectrum] = None, **extra) -> Dict:
    row = {
        "series": series,
        "d": p.degree,
        "tau": p.tau,
        "max_residual": float(np.max(residual_series(p, grid))),
        "eig_residual_all": np.nan,
    }
    if spectrum is not None:
        row["eig_residual_all"] = float(np.max(np.abs(spectrum.values * p(spectrum.values) - 1.0)))
    row.update(extra)
    return row


def fig1(cfg: ExperimentConfig) -> Dict[str, pd.DataFrame]:
    """Base polynomials side by side on [1/kappa, 1]."""
    spec = ApproxSpec(kappa=cfg.kappa, eps=cfg.eps)
    grid = dense_grid(spec.a, get_grid_density())
    wide = {"x": grid}
    summary = []
    for method in cfg.methods:
        p = normalized_base(method, spec)
        wide[method] = residual_series(p, grid)
        summary.append(_summary_row(method, p, grid, method=method))
    return {"fig1": pd.DataFrame(wide), "fig1_summary": provenance_frame(summary, cfg)}


def fig2(cfg: ExperimentConfig) -> Dict[str, pd.DataFrame]:
    """Pure spectral polynomials for growing n_factor on a synthetic spectrum."""
    spectrum = merge_duplicates(cfg.eigenvalues)
    kappa = 1.0 / spectrum.values[0]
    grid = dense_grid(spectrum.values[0], get_grid_density())
    wide = {"x": grid}
    summary = []
    for n_factor in cfg.n_factors:
        p = normalize(pure_spectral(spectrum, n_factor))
        name = f"n_factor_{n_factor:g}"
        wide[name] = residual_series(p, grid)
        summary.append(_summary_row(name, p, grid, spectrum, n_factor=n_factor,
                                    tau_over_kappa=p.tau / kappa))
    return {"fig2": pd.DataFrame(wide), "fig2_summary": provenance_frame(summary, cfg)}


def _correction_figure(cfg: ExperimentConfig, spectrum: Spectrum, spec: ApproxSpec,
                       reference: Optional[Spectrum] = None) -> Dict[str, pd.DataFrame]:
    """Each base polynomial next to its spectrally corrected version."""
    grid = dense_grid(spec.a, get_grid_density())
    wide = {"x": grid}
    summary: List[Dict] = []
    for method in cfg.methods:
        base = normalized_base(method, spec)
        p_sc, report = spectral_correct(base, spectrum, K=cfg.k)
        wide[method] = residual_series(base, grid)
        wide[f"spectral_{method}"] = residual_series(p_sc, grid)

        summary.append(_summary_row(method, base, grid, spectrum, method=method, corrected=False))
        extra = {
            "method": method,
            "corrected": True,
            "K": report.k_requested,
            "K_eff": report.k_eff,
            "eig_residual_corrected": report.max_post_residual,
            "bound_holds": report.bound_holds,
        }
        if reference is not None:
            p_ref, _ = spectral_correct(base, reference, K=cfg.k and min(cfg.k, len(reference)))
            extra["coeff_diff_vs_reference"] = float(np.max(np.abs(p_sc.coeffs - p_ref.coeffs)))
        summary.append(_summary_row(f"spectral_{method}", p_sc, grid, spectrum, **extra))

    name = cfg.experiment_id
    return {name: pd.DataFrame(wide), f"{name}_summary": provenance_frame(summary, cfg)}


def fig_synthetic(cfg: ExperimentConfig) -> Dict[str, pd.DataFrame]:
    """Synthetic spectra: well-separated, close pair, degenerate pair."""
    spectrum = merge_duplicates(cfg.eigenvalues)
    reference = merge_duplicates(cfg.reference_eigenvalues) if cfg.reference_eigenvalues else None
    return _correction_figure(cfg, spectrum, ApproxSpec(kappa=cfg.kappa, eps=cfg.eps), reference)


def fig5(cfg: ExperimentConfig) -> Dict[str, pd.DataFrame]:
    """Correction at every eigenvalue of a small 1D Poisson operator."""
    op = cached_operator("poisson1d", cfg.n)
    return _correction_figure(cfg, op.spectrum(), base_spec(cfg, op))


def fig7(cfg: ExperimentConfig) -> Dict[str, pd.DataFrame]:
    """2D solution surfaces: classical, base Mang and spectral-Mang."""
    op = cached_operator("poisson2d", cfg.n1)
    b = load("uniform", op.dimension)
    spec = base_spec(cfg, op)
    base = normalized_base("mang", spec)
    p_sc, report = corrected_base("mang", spec, "poisson2d", cfg.n1, cfg.k)

    x = op.solve(b.values)
    surfaces = {"classical": x / np.linalg.norm(x)}
    for name, p in (("mang", base), ("spectral_mang", p_sc)):
        u = emulate(p, op, b)
        surfaces[name] = -u if b.values @ u < 0.0 else u

    n1 = cfg.n1
    h = 1.0 / (n1 + 1)
    i, j = np.divmod(np.arange(op.dimension), n1)
    wide = pd.DataFrame({"i": i, "j": j, "x": (i + 1) * h, "y": (j + 1) * h, **surfaces})

    summary = [{"series": "classical", "max_value": float(np.max(surfaces["classical"])),
                "fidelity": 1.0, "K_eff": pd.NA}]
    for name, p, targets, k_eff in (("mang", base, None, pd.NA),
                                    ("spectral_mang", p_sc, report.targets, report.k_eff)):
        result = metrics(p, op, b, targets=targets)
        summary.append({"series": name, "max_value": result.peak_value,
                        "fidelity": result.fidelity, "K_eff": k_eff, "d": p.degree})
    return {"fig7": wide, "fig7_summary": provenance_frame(summary, cfg)}


FIGURES = {
    "fig1": fig1,
    "fig2": fig2,
    "fig3": fig_synthetic,
    "fig4": fig_synthetic,
    "fig5": fig5,
    "fig6": fig_synthetic,
    "fig7": fig7,
}


def run_figure(cfg: ExperimentConfig, write: bool = True) -> Dict[str, pd.DataFrame]:
    """
    Build one figure dataset and write its CSV files.

    Args:
        cfg (ExperimentConfig): Figure configuration
        write (bool): Write each frame to <output_dir>/<name>.csv

    Returns:
        dict: CSV name -> DataFrame
    """
    if cfg.experiment_id not in FIGURES:
        raise ExperimentConfigError(f"'{cfg.experiment_id}' is not a figure experiment")

    logger.info("=" * 60)
    logger.info(f"Building {cfg.experiment_id} dataset")
    logger.info("=" * 60)
    try:
        frames = FIGURES[cfg.experiment_id](cfg)
    except Exception as e:
        logger.error(f"{cfg.experiment_id} failed: {e}")
        raise

    if write:
        for name, df in frames.items():
            write_csv(df, resolve_output_path(cfg.output_dir, f"{name}.csv"))
    return frames
