"""
Spectrum
Sorted normalized eigenvalues with duplicate merging and document I/O
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional

import numpy as np

from utils.config import get_merge_tol
from utils.errors import DocumentParseError, DomainError
from utils.helpers import (load_json_file, require_float, require_keys,
                           save_json_file)

logger = logging.getLogger(__name__)


def _merge(values: np.ndarray, merge_tol: float) -> np.ndarray:
    """Greedy left-to-right clustering; the first member represents its cluster."""
    reps = [values[0]]
    for v in values[1:]:
        if v - reps[-1] >= merge_tol:
            reps.append(v)
    return np.array(reps)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigenvalues normalized to (0, 1], sorted ascending.

    Attributes:
        values (np.ndarray): All eigenvalues, duplicates included
        merge_tol (float): delta_merge for representative selection
        kappa (float): Condition number of the source operator, if known
        scale (float): lambda_max used for normalization, if known
        source (str): Where the eigenvalues came from
        representatives (np.ndarray): Distinct values after merging
    """
    values: np.ndarray
    merge_tol: float = 1e-9
    kappa: Optional[float] = None
    scale: Optional[float] = None
    source: str = "custom"
    representatives: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=np.float64).reshape(-1))
        if vals.size == 0:
            raise DomainError("a spectrum needs at least one eigenvalue")
        if not np.all(np.isfinite(vals)) or vals[0] <= 0.0 or vals[-1] > 1.0:
            raise DomainError(f"normalized eigenvalues must lie in (0, 1], got range "
                              f"[{vals[0]:.6g}, {vals[-1]:.6g}]")
        if self.merge_tol < 0.0:
            raise DomainError(f"merge_tol must be >= 0, got {self.merge_tol}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        reps = _merge(vals, self.merge_tol)
        reps.setflags(write=False)
        object.__setattr__(self, "representatives", reps)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def k_eff(self) -> int:
        return int(self.representatives.size)

    def smallest(self, k: int, merge_tol: Optional[float] = None) -> "Spectrum":
        """Spectrum restricted to its k smallest eigenvalues, re-merged at merge_tol if given."""
        if not 1 <= k <= len(self):
            raise DomainError(f"K={k} must lie in [1, {len(self)}]")
        tol = self.merge_tol if merge_tol is None else merge_tol
        return replace(self, values=self.values[:k], merge_tol=tol)


def merge_duplicates(eigs, merge_tol: Optional[float] = None, **kwargs) -> Spectrum:
    """
    Merge eigenvalues closer than merge_tol.

    Args:
        eigs: Normalized eigenvalues in (0, 1]
        merge_tol (float): delta_merge; defaults to QSVT_MERGE_TOL
        **kwargs: Passed through to Spectrum (kappa, scale, source)

    Returns:
        Spectrum: With representatives and k_eff populated
    """
    if merge_tol is None:
        merge_tol = get_merge_tol()
    spectrum = Spectrum(values=np.asarray(eigs, dtype=np.float64), merge_tol=merge_tol, **kwargs)
    if spectrum.k_eff < len(spectrum):
        logger.info(f"Merged {len(spectrum)} eigenvalues into {spectrum.k_eff} representatives "
                    f"(delta_merge={merge_tol:g})")
    return spectrum


def spectrum_to_document(spectrum: Spectrum) -> Dict[str, Any]:
    return {
        "kind": "spectrum",
        "source": spectrum.source,
        "kappa": spectrum.kappa,
        "scale": spectrum.scale,
        "merge_tol": spectrum.merge_tol,
        "k_eff": spectrum.k_eff,
        "values": [float(v) for v in spectrum.values],
    }


def spectrum_from_document(data: Dict[str, Any], source: str = "<document>") -> Spectrum:
    """
    Build a Spectrum from a parsed spectrum document.

    Args:
        data (dict): Parsed document
        source (str): Name used in error messages

    Returns:
        Spectrum: The spectrum
    """
    require_keys(data, ("kind", "values"), source)
    if data["kind"] != "spectrum":
        raise DocumentParseError(f"document {source} has kind '{data['kind']}', expected 'spectrum'",
                                 position="kind")
    values = data["values"]
    if not isinstance(values, list) or not values:
        raise DocumentParseError(f"document {source}: 'values' must be a non-empty array", position="values")

    kwargs = {}
    for key in ("kappa", "scale", "merge_tol"):
        if data.get(key) is not None:
            kwargs[key] = require_float(data, key, source)
    try:
        return Spectrum(values=np.asarray(values, dtype=np.float64),
                        source=str(data.get("source", "custom")), **kwargs)
    except (DomainError, ValueError, TypeError) as e:
        raise DocumentParseError(f"document {source}: {e}", position="values") from e


def save_spectrum(spectrum: Spectrum, file_path: str) -> str:
    return save_json_file(spectrum_to_document(spectrum), file_path)


def load_spectrum(file_path: str) -> Spectrum:
    return spectrum_from_document(load_json_file(file_path), source=str(file_path))
