"""
Configuration Module
Reads toolkit settings from the environment (and an optional .env file)
"""

import os
import logging
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


def _get_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"Ignoring non-numeric {name}={raw!r}, using {default}")
        return default


def _get_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


def get_output_dir() -> str:
    """
    Directory where CSV tables and documents are written.

    Returns:
        str: Value of QSVT_OUTPUT_DIR, or "results"
    """
    return os.getenv('QSVT_OUTPUT_DIR', 'results')


def get_log_level() -> str:
    return os.getenv('QSVT_LOG_LEVEL', 'INFO').upper()


def get_log_file() -> str:
    return os.getenv('QSVT_LOG_FILE', 'spectral_qsvt.log')


def get_grid_density() -> int:
    """
    Default number of samples per grid family on [a, 1].

    Returns:
        int: Value of QSVT_GRID_DENSITY, or 10000
    """
    return max(1000, _get_int('QSVT_GRID_DENSITY', 10000))


def get_merge_tol() -> float:
    return _get_float('QSVT_MERGE_TOL', 1e-9)


def get_svd_rel_cutoff() -> float:
    return _get_float('QSVT_SVD_REL_CUTOFF', 1e-12)


def get_bench_workers() -> int:
    return max(1, _get_int('QSVT_BENCH_WORKERS', 1))
