import numpy as np
import pytest

from chebpoly.polynomial import OddChebyshevPoly
from numerics.linalg import pinv_solve
from operators.poisson import poisson1d, poisson2d
from spectral.correction import (eig_residual, prop1_bound, report_to_document,
                                 spectral_correct)
from spectral.pure import interpolation_system, pure_spectral
from spectral.spectrum import (Spectrum, load_spectrum, merge_duplicates, save_spectrum,
                               spectrum_from_document)
from utils.errors import (DocumentParseError, DomainError, InfeasibleCorrectionError,
                          InfeasibleInterpolationError)


def test_merge_duplicates_examples():
    merged = merge_duplicates([0.1, 0.1, 1.0], 1e-9)
    assert merged.representatives.tolist() == [0.1, 1.0]
    assert merged.k_eff == 2
    single = merge_duplicates([0.3], 0.5)
    assert single.representatives.tolist() == [0.3]


def test_merge_keeps_first_member_and_gap():
    merged = merge_duplicates([0.5, 0.2, 0.2 + 1e-12, 0.2 + 2e-12, 0.9], 1e-9)
    assert merged.representatives.tolist() == [0.2, 0.5, 0.9]
    assert np.all(np.diff(merged.representatives) >= 1e-9)


def test_merge_2d_lowest_eigenvalues():
    spectrum = poisson2d(16).spectrum()
    assert merge_duplicates(spectrum.values[:32], 1e-9).k_eff == 18


def test_spectrum_validation():
    with pytest.raises(DomainError):
        merge_duplicates([])
    with pytest.raises(DomainError):
        merge_duplicates([0.0, 0.5])
    with pytest.raises(DomainError):
        merge_duplicates([0.5, 1.5])
    with pytest.raises(DomainError):
        merge_duplicates([0.2, 1.0]).smallest(3)


def test_spectrum_document_round_trip(tmp_path, poisson4):
    spectrum = poisson4.spectrum()
    loaded = load_spectrum(save_spectrum(spectrum, str(tmp_path / "s.json")))
    assert np.array_equal(loaded.values, spectrum.values)
    assert loaded.kappa == spectrum.kappa
    with pytest.raises(DocumentParseError):
        spectrum_from_document({"kind": "polynomial", "values": [0.5]})
    with pytest.raises(DocumentParseError):
        spectrum_from_document({"kind": "spectrum", "values": [2.0]})


def test_pure_spectral_hand_cases():
    assert np.allclose(pure_spectral(merge_duplicates([1.0]), 1.0).coeffs, [1.0], atol=1e-12)
    p = pure_spectral(merge_duplicates([0.5]), n_terms=2)
    assert np.allclose(p.coeffs, [0.8, -1.6], atol=1e-12)
    assert p.label == "spectral"
    assert p.degree == 3


def test_pure_spectral_interpolates_poisson():
    spectrum = poisson1d(8).spectrum()
    p = pure_spectral(spectrum, 4.0)
    assert p.degree == 63
    assert eig_residual(p, spectrum) <= 1e-10


def test_pure_spectral_reports_infeasibility():
    with pytest.raises(InfeasibleInterpolationError) as info:
        pure_spectral(merge_duplicates([0.2, 0.6, 1.0]), n_terms=1)
    assert info.value.max_residual > 1e-10
    with pytest.raises(DomainError):
        pure_spectral(merge_duplicates([0.5]), 0.5)


def test_correction_hand_case():
    p0 = OddChebyshevPoly(coeffs=[1.0], a=0.5)
    p_sc, report = spectral_correct(p0, merge_duplicates([0.5]), grid_density=1000)
    assert report.residuals[0] == pytest.approx(0.75)
    assert report.alpha[0] == pytest.approx(12.0)
    assert report.correction[0] == pytest.approx(3.0)
    assert p_sc.coeffs[0] == pytest.approx(4.0, abs=1e-12)
    assert 0.5 * p_sc(0.5) == pytest.approx(1.0, abs=1e-12)
    assert p_sc.tau == pytest.approx(4.0)
    assert report.base_eps == pytest.approx(0.75)
    assert report.bound(1.0) == pytest.approx(0.75 + 3.0)
    assert report.bound_holds


def test_zero_residual_means_no_correction():
    p0 = OddChebyshevPoly(coeffs=[4.0], a=0.25)
    p_sc, report = spectral_correct(p0, merge_duplicates([0.5]), grid_density=1000)
    assert np.all(report.alpha == 0.0)
    assert np.array_equal(p_sc.coeffs, p0.coeffs)


def test_prop1_bound_without_correction_is_eps():
    assert prop1_bound(0.2, [0.5], [0.0], 3, 0.7) == 0.2


def test_correction_example_invariants(mang_example, example_spectrum):
    p_sc, report = spectral_correct(mang_example, example_spectrum, grid_density=10000)
    assert report.max_post_residual <= 1e-12
    assert p_sc.n_terms == mang_example.n_terms
    assert p_sc.label == "spectral-corrected"
    assert np.all(report.observed <= report.bound_values + 1e-12)

    twice, _ = spectral_correct(p_sc, example_spectrum)
    assert np.max(np.abs(twice.coeffs - p_sc.coeffs)) <= 1e-12


def test_merge_invariance(mang_example):
    degenerate, _ = spectral_correct(mang_example, merge_duplicates([0.1, 0.1, 1.0]))
    distinct, _ = spectral_correct(mang_example, merge_duplicates([0.1, 1.0]))
    assert np.max(np.abs(degenerate.coeffs - distinct.coeffs)) <= 1e-12


def test_explicit_targets_override_k(mang_example, example_spectrum):
    p_sc, report = spectral_correct(mang_example, example_spectrum, targets=[0.5])
    assert report.targets.tolist() == [0.5]
    assert abs(0.5 * p_sc(0.5) - 1.0) <= 1e-12


def test_correction_is_min_norm():
    rng = np.random.default_rng(5)
    for _ in range(5):
        p0 = OddChebyshevPoly(coeffs=rng.normal(size=6), a=0.2)
        targets = np.sort(rng.uniform(0.2, 1.0, 3))
        _, report = spectral_correct(p0, merge_duplicates(targets), grid_density=1000)
        lam = report.targets
        direct = pinv_solve(interpolation_system(lam, 6), 1.0 - lam * p0(lam))
        assert np.allclose(report.correction, direct, atol=1e-10)


def test_poisson_full_correction(poisson4, mang_poisson4):
    spectrum = poisson4.spectrum()
    p_sc, report = spectral_correct(mang_poisson4, spectrum, K=4)
    assert report.k_eff == 4
    assert eig_residual(p_sc, spectrum) <= 1e-12


def test_eig_residual_subsets(poisson4, mang_poisson4):
    spectrum = poisson4.spectrum()
    p_sc, report = spectral_correct(mang_poisson4, spectrum, K=2)
    assert eig_residual(p_sc, spectrum, "corrected", report) <= 1e-12
    assert eig_residual(p_sc, spectrum, "all") > 1e-6
    with pytest.raises(DomainError):
        eig_residual(p_sc, spectrum, "corrected")
    with pytest.raises(DomainError):
        eig_residual(p_sc, spectrum, "some")


def test_correction_errors(example_spectrum):
    p0 = OddChebyshevPoly(coeffs=[1.0], a=0.1)
    with pytest.raises(InfeasibleCorrectionError):
        spectral_correct(p0, example_spectrum)
    with pytest.raises(DomainError):
        spectral_correct(p0, example_spectrum, K=5)


def test_report_document(mang_example, example_spectrum):
    _, report = spectral_correct(mang_example, example_spectrum)
    doc = report_to_document(report)
    assert doc["kind"] == "correction-report"
    assert doc["k_eff"] == 3
    assert doc["bound"]["holds"] is True
    assert len(doc["alpha"]) == 3


def test_smallest_restricts_and_remerges():
    spectrum = merge_duplicates([0.1, 0.1, 0.5, 1.0])
    head = spectrum.smallest(3)
    assert head.values.tolist() == [0.1, 0.1, 0.5]
    assert head.k_eff == 2
    assert spectrum.smallest(3, merge_tol=0.5).k_eff == 1


def test_correction_k_counts_eigenvalues_before_merging(mang_example):
    _, report = spectral_correct(mang_example, merge_duplicates([0.1, 0.1, 0.5, 1.0]), K=3)
    assert report.targets.tolist() == [0.1, 0.5]
