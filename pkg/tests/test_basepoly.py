import numpy as np
import pytest

from basepoly.approx_spec import ApproxSpec
from basepoly.mang import mang, mang_min_degree, mang_system
from basepoly.registry import build_base
from basepoly.remez import initial_reference, remez, remez_min_degree
from basepoly.sunderhauf import (sunderhauf, sunderhauf_error_bound, sunderhauf_min_degree,
                                 sunderhauf_min_terms)
from chebpoly.polynomial import error_profile, normalize
from utils.errors import DomainError, PrecisionWarning, RemezConvergenceError


def test_approx_spec_validation():
    assert ApproxSpec(kappa=4.0).a == 0.25
    with pytest.raises(DomainError):
        ApproxSpec(kappa=1.0)
    with pytest.raises(DomainError):
        ApproxSpec(kappa=10.0, eps=1.0)


def test_initial_reference_spans_interval():
    ref = initial_reference(0.1, 5)
    assert ref.size == 6
    assert ref[0] == pytest.approx(0.1)
    assert ref[-1] == pytest.approx(1.0)


def test_remez_single_term_is_analytic():
    # minimax of c x^2 - 1 on [0.5, 1] equioscillates at both ends: c = 1.6
    p, state = remez(ApproxSpec(kappa=2.0, eps=0.5), 1)
    assert p.coeffs[0] == pytest.approx(1.6, abs=1e-8)
    assert state.levelled_error == pytest.approx(0.6, abs=1e-8)


def test_remez_equioscillates():
    n_terms = 12
    p, state = remez(ApproxSpec(kappa=10.0, eps=0.2), n_terms)
    assert state.alternation_count >= n_terms + 1
    assert state.max_error <= state.levelled_error * (1.0 + 1e-6) + 1e-14
    assert error_profile(p, 5000).max_residual == pytest.approx(state.max_error, rel=1e-4)
    assert p.label == "remez"


def test_remez_exchange_strategies_agree():
    spec = ApproxSpec(kappa=5.0, eps=0.2)
    _, multi = remez(spec, 3, exchange="multi")
    _, single = remez(spec, 3, exchange="single")
    assert single.max_error == pytest.approx(multi.max_error, rel=1e-4)


def test_remez_rejects_bad_arguments():
    with pytest.raises(DomainError):
        remez(ApproxSpec(kappa=5.0), 0)
    with pytest.raises(DomainError):
        remez(ApproxSpec(kappa=5.0), 2, exchange="random")


def test_mang_residual_decreases_with_degree():
    spec = ApproxSpec(kappa=10.0, eps=0.2)
    errors = [error_profile(mang(spec, n), 2000).max_residual for n in (4, 8, 16)]
    assert errors[0] > errors[1] > errors[2]


def test_mang_min_degree_is_minimal():
    spec = ApproxSpec(kappa=10.0, eps=0.2)
    p = mang_min_degree(spec)
    assert error_profile(p).max_residual <= spec.eps
    assert error_profile(mang(spec, p.n_terms - 1)).max_residual > spec.eps
    assert p.degree in (25, 27, 29)


def test_mang_rejects_tiny_grid():
    with pytest.raises(DomainError):
        mang(ApproxSpec(kappa=10.0), 10, theta_grid=5)


def test_sunderhauf_degree_and_bound():
    spec = ApproxSpec(kappa=10.0, eps=0.2)
    assert sunderhauf_min_terms(spec) == 20
    p = sunderhauf_min_degree(spec)
    assert p.degree == 39
    bound = sunderhauf_error_bound(p.n_terms, spec.a)
    assert bound <= spec.eps
    assert error_profile(p).max_residual <= bound + 1e-9


def test_sunderhauf_error_bound_formula():
    assert sunderhauf_error_bound(1, 0.5) == pytest.approx(1.0)
    assert sunderhauf_error_bound(3, 0.5) == pytest.approx(0.5 ** 3 / (0.5 * 1.5 ** 2))


def test_sunderhauf_is_odd_chebyshev():
    p = sunderhauf(ApproxSpec(kappa=4.0, eps=0.2), 6)
    x = np.linspace(0.25, 1.0, 7)
    assert np.allclose(p(-x), -p(x))
    assert p.label == "sunderhauf"


def test_registry_dispatch():
    spec = ApproxSpec(kappa=5.0, eps=0.2)
    assert build_base("mang", spec, 9).degree == 9
    assert build_base("mang", spec, 9) is build_base("mang", spec, 9)
    with pytest.raises(DomainError):
        build_base("chebfun", spec)
    with pytest.raises(DomainError):
        build_base("mang", spec, 8)


def test_mang_matches_normal_equations():
    spec = ApproxSpec(kappa=10.0, eps=0.2)
    matrix, rhs = mang_system(spec, 3, 50)
    expected = np.linalg.solve(matrix.T @ matrix, matrix.T @ rhs)
    assert np.allclose(mang(spec, 3, theta_grid=50).coeffs, expected, rtol=1e-10, atol=1e-10)


def test_mang_single_sample_fits_one():
    p = mang(ApproxSpec(kappa=10.0), 1, theta_grid=1)
    assert p.coeffs[0] == pytest.approx(1.0, abs=1e-14)


def test_mang_never_beats_minimax_at_equal_degree():
    spec = ApproxSpec(kappa=10.0, eps=0.2)
    for n_terms in (4, 8, 12):
        _, state = remez(spec, n_terms)
        assert error_profile(mang(spec, n_terms)).max_residual >= state.max_error - 1e-9


MIN_DEGREE = {"remez": remez_min_degree, "mang": mang_min_degree, "sunderhauf": sunderhauf_min_degree}
EPS_LATTICE = (0.5, 0.2, 0.1, 0.01)


@pytest.mark.parametrize("kappa", [4.0, 10.0, pytest.param(117.6, marks=pytest.mark.slow)])
def test_min_degree_monotone_in_eps(kappa):
    degrees = {method: [build(ApproxSpec(kappa=kappa, eps=eps)).degree for eps in EPS_LATTICE]
               for method, build in MIN_DEGREE.items()}
    for method, series in degrees.items():
        assert series == sorted(series), method
    assert all(m >= r for m, r in zip(degrees["mang"], degrees["remez"]))


@pytest.mark.parametrize("eps", [0.5, 0.1])
def test_min_degree_monotone_in_kappa(eps):
    for build in MIN_DEGREE.values():
        degrees = [build(ApproxSpec(kappa=kappa, eps=eps)).degree for kappa in (4.0, 10.0, 20.0)]
        assert degrees == sorted(degrees)


@pytest.mark.parametrize("method", ["remez", "mang"])
def test_min_degree_equals_exhaustive_scan(method):
    spec = ApproxSpec(kappa=4.0, eps=0.1)
    builders = {"remez": lambda n: remez(spec, n)[0], "mang": lambda n: mang(spec, n)}
    n_terms = 1
    while error_profile(builders[method](n_terms)).max_residual > spec.eps:
        n_terms += 1
    assert MIN_DEGREE[method](spec).degree == 2 * n_terms - 1


def test_remez_on_degenerate_interval():
    spec = ApproxSpec(kappa=1.0 + 1e-9, eps=0.1)
    p, state = remez(spec, 1)
    assert p(1.0) == pytest.approx(1.0, abs=1e-8)
    assert state.max_error <= 1e-8

    with pytest.warns(PrecisionWarning):
        try:
            remez(spec, 3)
        except (RemezConvergenceError, DomainError):
            pass


@pytest.mark.parametrize("method", ["remez", "mang", "sunderhauf"])
def test_tau_scales_with_kappa(method):
    eps = 0.2
    for kappa in (4.0, 10.0, 40.0):
        p = normalize(build_base(method, ApproxSpec(kappa=kappa, eps=eps)))
        assert (1.0 - eps) * kappa <= p.tau <= (1.0 + eps) * kappa * (1.0 + 1e-3)


def test_sunderhauf_single_term_hits_bound_at_one():
    p = sunderhauf(ApproxSpec(kappa=4.0, eps=0.2), 1)
    # n = 1 residual peaks at x = 1 with value (1 - a) / a
    assert p(1.0) - 1.0 == pytest.approx(sunderhauf_error_bound(1, 0.25), rel=1e-12)
    assert p.meta["error_bound"] == pytest.approx(3.0)
