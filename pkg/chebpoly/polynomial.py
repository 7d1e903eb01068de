"""
Odd Chebyshev Polynomial
Value type for p(x) = sum_j c_j T_{2j+1}(x) approximating 1/x on [a, 1]
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from numerics.clenshaw import odd_clenshaw
from utils.config import get_grid_density
from utils.errors import DomainError

logger = logging.getLogger(__name__)

LABELS = ("remez", "mang", "sunderhauf", "spectral", "spectral-corrected", "external")


@dataclass(frozen=True, eq=False)
class OddChebyshevPoly:
    """
    Odd polynomial in the Chebyshev basis.

    Coefficients are always those of the unnormalized approximant p_hat;
    the normalized polynomial used by QSVT is p_hat / tau.

    Attributes:
        coeffs (np.ndarray): c_0..c_{n-1} multiplying T_1, T_3, ..., T_{2n-1}
        a (float): Lower spectral edge in (0, 1]
        tau (float): Subnormalization factor, None until computed
        label (str): Provenance tag
        eps_target (float): Accuracy target the polynomial was built for, if any
    """
    coeffs: np.ndarray
    a: float
    tau: Optional[float] = None
    label: str = "external"
    eps_target: Optional[float] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.float64).reshape(-1)
        if c.size == 0:
            raise DomainError("an odd Chebyshev polynomial needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise DomainError("polynomial coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

        if not 0.0 < self.a <= 1.0:
            raise DomainError(f"lower edge a must lie in (0, 1], got {self.a}")
        if self.tau is not None and not self.tau >= 0.0:
            raise DomainError(f"tau must be >= 0, got {self.tau}")
        if self.label not in LABELS:
            raise DomainError(f"unknown polynomial label '{self.label}'")

    @property
    def n_terms(self) -> int:
        return int(self.coeffs.size)

    @property
    def degree(self) -> int:
        return 2 * self.n_terms - 1

    def __call__(self, x):
        return odd_clenshaw(self.coeffs, x)

    def normalized(self, x):
        """Evaluate p_hat(x) / tau; tau must already be set."""
        if self.tau is None or self.tau == 0.0:
            raise DomainError("polynomial has no subnormalization factor yet")
        return odd_clenshaw(self.coeffs, x) / self.tau

    def with_tau(self, tau: float) -> "OddChebyshevPoly":
        return replace(self, tau=float(tau))

    def with_coeffs(self, coeffs, label: Optional[str] = None) -> "OddChebyshevPoly":
        """Copy with new coefficients; tau is cleared since it no longer applies."""
        return replace(self, coeffs=np.asarray(coeffs, dtype=np.float64), tau=None,
                       label=label or self.label)


@dataclass(frozen=True, eq=False)
class ErrorProfile:
    """
    Pointwise residual |x p_hat(x) - 1| on a dense grid over [a, 1].

    Attributes:
        grid (np.ndarray): Sorted sample points in [a, 1]
        residuals (np.ndarray): Residual at each sample
        max_residual (float): Max over the grid, the epsilon certificate
    """
    grid: np.ndarray
    residuals: np.ndarray
    max_residual: float

    @property
    def argmax(self) -> float:
        return float(self.grid[int(np.argmax(self.residuals))])


def evaluate(p: OddChebyshevPoly, x):
    """
    Evaluate p at x in [-1, 1].

    Args:
        p (OddChebyshevPoly): Polynomial
        x: Scalar or array inside [-1, 1]

    Returns:
        float or np.ndarray: sum_j c_j T_{2j+1}(x)
    """
    xs = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(xs) > 1.0) or not np.all(np.isfinite(xs)):
        raise DomainError(f"Chebyshev evaluation needs x in [-1, 1], got {x}")
    return p(xs)


def dense_grid(a: float, density: int) -> np.ndarray:
    """
    Sorted sample grid on [a, 1].

    Union of `density` uniform points in x and `density` uniform points in
    theta = arccos(x), so high-degree oscillations near x = 1 stay resolved.
    """
    uniform_x = np.linspace(a, 1.0, density)
    uniform_theta = np.cos(np.linspace(0.0, np.arccos(a), density))
    grid = np.unique(np.clip(np.concatenate([uniform_x, uniform_theta]), a, 1.0))
    return grid


def _check_density(grid_density: Optional[int]) -> int:
    if grid_density is None:
        return get_grid_density()
    if grid_density < 1000:
        raise DomainError(f"grid_density must be >= 1000, got {grid_density}")
    return int(grid_density)


def compute_tau(p_hat: OddChebyshevPoly, grid_density: Optional[int] = None) -> float:
    """
    Subnormalization factor tau = max |p_hat(x)| over [a, 1].

    Odd symmetry makes [-1, -a] redundant. The best grid cell is refined by
    golden-section search.

    Args:
        p_hat (OddChebyshevPoly): Unnormalized polynomial
        grid_density (int): Samples per grid family (>= 1000)

    Returns:
        float: tau
    """
    density = _check_density(grid_density)
    grid = dense_grid(p_hat.a, density)
    values = np.abs(p_hat(grid))
    best = int(np.argmax(values))
    tau = float(values[best])

    if 0 < best < grid.size - 1:
        lo, mid, hi = grid[best - 1], grid[best], grid[best + 1]
        try:
            res = minimize_scalar(lambda t: -abs(odd_clenshaw(p_hat.coeffs, t)),
                                  bracket=(lo, mid, hi), method="golden")
            if lo <= res.x <= hi:
                tau = max(tau, float(-res.fun))
        except ValueError:
            # flat top, the grid value stands
            pass

    logger.debug(f"tau={tau:.12g} for {p_hat.label} polynomial of degree {p_hat.degree}")
    return tau


def error_profile(p: OddChebyshevPoly, grid_density: Optional[int] = None) -> ErrorProfile:
    """
    Residuals of the unnormalized approximant on a dense grid.

    Args:
        p (OddChebyshevPoly): Polynomial (coefficients are p_hat)
        grid_density (int): Samples per grid family (>= 1000)

    Returns:
        ErrorProfile: Grid, residuals and their max
    """
    density = _check_density(grid_density)
    grid = dense_grid(p.a, density)
    residuals = np.abs(grid * p(grid) - 1.0)
    return ErrorProfile(grid=grid, residuals=residuals, max_residual=float(np.max(residuals)))


def normalize(p_hat: OddChebyshevPoly, grid_density: Optional[int] = None) -> OddChebyshevPoly:
    """Return p_hat with tau computed and attached."""
    return p_hat.with_tau(compute_tau(p_hat, grid_density))
