"""
Spectrum Perturbation
Seeded relative noise on eigenvalue estimates, for robustness studies
"""

import logging
from dataclasses import replace

import numpy as np

from spectral.spectrum import Spectrum
from utils.errors import DomainError

logger = logging.getLogger(__name__)

GENERATOR = "philox"


def make_generator(seed: int) -> np.random.Generator:
    """Counter-based Philox4x64 generator, the documented RNG of every study."""
    return np.random.Generator(np.random.Philox(seed))


def perturb_spectrum(spectrum: Spectrum, eta: float, seed: int) -> Spectrum:
    """
    Replace lambda_k with lambda_k (1 + delta_k), delta_k ~ U(-eta, eta) i.i.d.

    Args:
        spectrum (Spectrum): Exact eigenvalues
        eta (float): Relative noise level, >= 0
        seed (int): Generator seed

    Returns:
        Spectrum: Perturbed, clamped to (0, 1] and re-sorted
    """
    if eta < 0.0:
        raise DomainError(f"eta must be >= 0, got {eta}")
    if eta == 0.0:
        return spectrum

    delta = make_generator(seed).uniform(-eta, eta, size=len(spectrum))
    values = spectrum.values * (1.0 + delta)

    tiny = np.finfo(np.float64).tiny
    clamped = (values > 1.0) | (values <= 0.0)
    if np.any(clamped):
        logger.warning(f"Clamped {int(np.sum(clamped))} perturbed eigenvalues into (0, 1] "
                       f"(eta={eta:g}, seed={seed})")
        values = np.clip(values, tiny, 1.0)

    logger.debug(f"Perturbed {len(spectrum)} eigenvalues with eta={eta:g}, seed={seed}")
    return replace(spectrum, values=values, source=f"{spectrum.source}+perturbed")
