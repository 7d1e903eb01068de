"""
Experiment Configuration
Validated parameters for every reproducible table and figure
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from utils.config import get_output_dir
from utils.errors import ExperimentConfigError

logger = logging.getLogger(__name__)

TABLE_IDS = ("table1", "table2", "table3", "table4", "table5")
FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7")


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Parameters of one experiment.

    Attributes:
        experiment_id (str): table1..table5 or fig1..fig7
        kappa (float): Base-polynomial condition number; None uses the operator's
        eps (float): Base accuracy target
        eps_list (tuple): Accuracy targets swept by the experiment
        n (int): 1D interior nodes
        n1 (int): 2D interior nodes per direction
        k (int): Corrected eigenvalues; None means all
        k_list (tuple): K values swept by the experiment
        m_list (tuple): Refinement levels, N = 2^m
        n_factors (tuple): Pure spectral oversampling factors
        etas (tuple): Perturbation levels
        trials (int): Trials per perturbation level
        seed (int): Base seed; trial t uses seed + t
        eigenvalues (tuple): Explicit spectrum for synthetic figures
        reference_eigenvalues (tuple): Second spectrum compared against
        loads (tuple): Load kinds
        methods (tuple): Base polynomial methods
        output_dir (str): Where CSVs go
    """
    experiment_id: str
    kappa: Optional[float] = None
    eps: float = 0.2
    eps_list: Tuple[float, ...] = ()
    n: int = 4
    n1: int = 16
    k: Optional[int] = None
    k_list: Tuple[int, ...] = ()
    m_list: Tuple[int, ...] = ()
    n_factors: Tuple[float, ...] = ()
    etas: Tuple[float, ...] = ()
    trials: int = 10
    seed: Optional[int] = None
    eigenvalues: Tuple[float, ...] = ()
    reference_eigenvalues: Tuple[float, ...] = ()
    loads: Tuple[str, ...] = ("uniform",)
    methods: Tuple[str, ...] = ("mang",)
    output_dir: str = field(default_factory=get_output_dir)

    def __post_init__(self):
        validate(self)


_DEFAULTS: Dict[str, dict] = {
    "table1": dict(m_list=(3, 4), n_factors=(2, 3, 4, 5, 8)),
    "table2": dict(n=4, k=2, eps_list=(0.2, 0.1, 0.01)),
    "table3": dict(n=16, k=16, eps=0.5, eps_list=(0.5, 1e-3), loads=("uniform", "point")),
    "table4": dict(n=16, k=16, eps=0.5, etas=(0.0, 1e-2, 1e-1), trials=10, seed=42),
    "table5": dict(n1=16, eps=0.2, k_list=(0, 1, 4, 8, 16, 32)),
    "fig1": dict(kappa=10.0, eps=0.2, methods=("remez", "mang", "sunderhauf")),
    "fig2": dict(eigenvalues=(0.1, 0.5, 1.0), n_factors=(1, 2, 3, 4)),
    "fig3": dict(kappa=10.0, eps=0.2, eigenvalues=(0.1, 0.15, 1.0),
                 methods=("remez", "mang", "sunderhauf")),
    "fig4": dict(kappa=10.0, eps=0.2, eigenvalues=(0.1, 0.1, 1.0),
                 reference_eigenvalues=(0.1, 1.0), methods=("remez", "mang", "sunderhauf")),
    "fig5": dict(n=4, eps=0.1, k=4, methods=("remez", "mang", "sunderhauf")),
    "fig6": dict(kappa=10.0, eps=0.2, eigenvalues=(0.1, 0.5, 1.0),
                 methods=("remez", "mang", "sunderhauf")),
    "fig7": dict(n1=16, eps=0.2, k=32),
}


def validate(cfg: ExperimentConfig) -> None:
    """
    Check that a configuration is runnable.

    Raises:
        ExperimentConfigError: Naming the first offending parameter
    """
    if cfg.experiment_id not in TABLE_IDS + FIGURE_IDS:
        raise ExperimentConfigError(f"unknown experiment id '{cfg.experiment_id}'")
    if cfg.kappa is not None and not cfg.kappa > 1.0:
        raise ExperimentConfigError(f"kappa must be > 1, got {cfg.kappa}")
    for eps in (cfg.eps,) + tuple(cfg.eps_list):
        if not 0.0 < eps < 1.0:
            raise ExperimentConfigError(f"eps must lie in (0, 1), got {eps}")
    if cfg.n < 1 or cfg.n1 < 1:
        raise ExperimentConfigError(f"grid sizes must be >= 1, got N={cfg.n}, N1={cfg.n1}")
    if cfg.k is not None and cfg.k < 1:
        raise ExperimentConfigError(f"K must be >= 1, got {cfg.k}")
    if any(k < 0 for k in cfg.k_list):
        raise ExperimentConfigError(f"K values must be >= 0, got {cfg.k_list}")
    if any(m < 0 or m > 12 for m in cfg.m_list):
        raise ExperimentConfigError(f"refinement levels must lie in [0, 12], got {cfg.m_list}")
    if any(f < 1.0 for f in cfg.n_factors):
        raise ExperimentConfigError(f"n_factor values must be >= 1, got {cfg.n_factors}")
    if any(eta < 0.0 or eta >= 1.0 for eta in cfg.etas):
        raise ExperimentConfigError(f"eta values must lie in [0, 1), got {cfg.etas}")
    if cfg.trials < 1:
        raise ExperimentConfigError(f"trials must be >= 1, got {cfg.trials}")
    if cfg.seed is not None and cfg.seed < 0:
        raise ExperimentConfigError(f"seed must be >= 0, got {cfg.seed}")
    if any(not 0.0 < v <= 1.0 for v in cfg.eigenvalues + cfg.reference_eigenvalues):
        raise ExperimentConfigError("synthetic eigenvalues must lie in (0, 1]")
    bad_loads = [x for x in cfg.loads if x not in ("uniform", "point")]
    if bad_loads:
        raise ExperimentConfigError(f"unknown load kinds {bad_loads}")
    bad_methods = [x for x in cfg.methods if x not in ("remez", "mang", "sunderhauf")]
    if bad_methods:
        raise ExperimentConfigError(f"unknown base methods {bad_methods}")


def make_config(experiment_id: str, **overrides) -> ExperimentConfig:
    """
    Registry defaults for an experiment, with None-valued overrides ignored.

    Args:
        experiment_id (str): table1..table5 or fig1..fig7
        **overrides: Field values taking precedence over the defaults

    Returns:
        ExperimentConfig: Validated configuration
    """
    if experiment_id not in _DEFAULTS:
        raise ExperimentConfigError(f"unknown experiment id '{experiment_id}'")
    params = dict(_DEFAULTS[experiment_id])
    params.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig(experiment_id=experiment_id, **params)
    except TypeError as e:
        raise ExperimentConfigError(f"bad parameters for {experiment_id}: {e}") from e
