import json
import logging

import numpy as np
import pandas as pd
import pytest

from bench.cli import cli_dispatch
from bench.config import make_config
from bench.figures import run_figure
from bench.tables import cached_operator, run_table
from bench.verify import run_verify
from chebpoly.document import load_polynomial
from spectral.correction import spectral_correct
from spectral.spectrum import load_spectrum
from utils.errors import ExperimentConfigError


def test_make_config_defaults_and_validation(tmp_path):
    cfg = make_config("table4")
    assert cfg.seed == 42 and cfg.trials == 10 and cfg.etas == (0.0, 1e-2, 1e-1)
    assert make_config("table4", seed=None).seed == 42
    with pytest.raises(ExperimentConfigError):
        make_config("table9")
    with pytest.raises(ExperimentConfigError):
        make_config("table2", eps_list=(0.2, 1.5))
    with pytest.raises(ExperimentConfigError):
        make_config("table4", trials=0)
    with pytest.raises(ExperimentConfigError):
        make_config("fig2", n_factors=(0.5,))


def test_verify_suite_passes():
    df = run_verify(seed=0)
    assert df["passed"].all(), df.to_string()


def test_table2_small(tmp_path):
    cfg = make_config("table2", output_dir=str(tmp_path))
    frames = run_table(cfg)
    df = pd.read_csv(tmp_path / "table2.csv")
    assert len(df) == 6 and len(frames["table2"]) == 6
    assert set(df["emulation"]) == {"exact-polynomial"}
    assert "seed" in df.columns
    spectral = df[df["method"] == "Spectral-Mang"]
    assert (spectral["eig_residual_corrected"] <= 1e-12).all()
    base = df[df["method"] == "Mang"]
    assert (base["eig_residual_all"].to_numpy() <= np.array([0.2, 0.1, 0.01])).all()
    assert (spectral["d"].to_numpy() == base["d"].to_numpy()).all()


def test_table_failure_becomes_error_rows(tmp_path):
    cfg = make_config("table2", n=1, output_dir=str(tmp_path))
    df = run_table(cfg)["table2"]
    assert len(df) == 6
    assert (df["error"] != "").all()
    assert (tmp_path / "table2.csv").exists()


def test_table4_is_deterministic(tmp_path):
    def run(sub):
        cfg = make_config("table4", n=4, k=4, eps=0.1, trials=3, seed=7, output_dir=str(tmp_path / sub))
        run_table(cfg)
        return (tmp_path / sub / "table4.csv").read_bytes(), (tmp_path / sub / "table4_trials.csv").read_bytes()

    assert run("a") == run("b")
    trials = pd.read_csv(tmp_path / "a" / "table4_trials.csv")
    assert len(trials) == 9
    assert trials["trial_seed"].tolist() == [7, 8, 9] * 3
    summary = pd.read_csv(tmp_path / "a" / "table4.csv")
    assert summary["seed"].tolist() == [7, 7, 7]


def test_fig4_degenerate_pair_matches_merged_run(tmp_path):
    frames = run_figure(make_config("fig4", output_dir=str(tmp_path)))
    summary = frames["fig4_summary"]
    corrected = summary[summary["corrected"] == True]  # noqa: E712
    assert len(corrected) == 3
    assert (corrected["K_eff"] == 2).all()
    assert (corrected["coeff_diff_vs_reference"] <= 1e-12).all()
    assert (tmp_path / "fig4.csv").exists() and (tmp_path / "fig4_summary.csv").exists()


def test_fig5_corrects_every_eigenvalue(tmp_path):
    summary = run_figure(make_config("fig5", output_dir=str(tmp_path)))["fig5_summary"]
    corrected = summary[summary["corrected"] == True]  # noqa: E712
    assert (corrected["eig_residual_all"] <= 1e-12).all()
    assert corrected["bound_holds"].all()


def test_cli_base_document(tmp_path):
    out = tmp_path / "remez.json"
    assert cli_dispatch(["base", "--method", "remez", "--kappa", "10", "--eps", "0.2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["label"] == "remez"
    assert doc["degree"] in (21, 23, 25)
    assert doc["tau"] is not None


def test_cli_rejects_unknown_flags():
    assert cli_dispatch(["base", "--method", "remez", "--kappa", "10", "--colour", "red"]) != 0
    assert cli_dispatch(["frobnicate"]) != 0


def test_cli_reports_library_errors(tmp_path):
    assert cli_dispatch(["base", "--method", "mang", "--kappa", "0.5", "--out", str(tmp_path / "p.json")]) == 1


def test_cli_pipeline_matches_library(tmp_path):
    spectrum_doc = tmp_path / "s.json"
    base_doc = tmp_path / "mang.json"
    corrected_doc = tmp_path / "sc.json"
    report_doc = tmp_path / "report.json"
    metrics_doc = tmp_path / "metrics.json"

    assert cli_dispatch(["spectrum", "--operator", "poisson1d", "--n", "4", "--out", str(spectrum_doc)]) == 0
    assert cli_dispatch(["base", "--method", "mang", "--kappa", "9.48", "--eps", "0.1",
                         "--out", str(base_doc)]) == 0
    assert cli_dispatch(["correct", "--poly", str(base_doc), "--spectrum", str(spectrum_doc),
                         "--k", "2", "--out", str(corrected_doc), "--report", str(report_doc)]) == 0
    assert cli_dispatch(["qsvt", "--poly", str(corrected_doc), "--operator", "poisson1d", "--n", "4",
                         "--report", str(report_doc), "--out", str(metrics_doc)]) == 0

    result = json.loads(metrics_doc.read_text())
    assert result["eig_residual_corrected"] <= 1e-12
    assert result["emulation"] == "exact-polynomial"

    in_process, _ = spectral_correct(load_polynomial(str(base_doc)), load_spectrum(str(spectrum_doc)), K=2)
    assert np.max(np.abs(load_polynomial(str(corrected_doc)).coeffs - in_process.coeffs)) <= 1e-12


def test_cli_reproduce_needs_a_target():
    assert cli_dispatch(["reproduce"]) == 2


def test_fig2_tau_shrinks_with_oversampling(tmp_path):
    summary = run_figure(make_config("fig2", output_dir=str(tmp_path)))["fig2_summary"]
    ratios = summary.sort_values("n_factor")["tau_over_kappa"].tolist()
    assert all(later <= earlier + 1e-9 for earlier, later in zip(ratios, ratios[1:]))
    first = summary.sort_values("n_factor").iloc[0]
    assert first["d"] == 5
    assert first["tau_over_kappa"] > 1.0


def test_table4_base_covers_perturbed_eigenvalues(tmp_path, caplog):
    cfg = make_config("table4", n=4, k=4, eps=0.1, trials=2, seed=7, output_dir=str(tmp_path))
    with caplog.at_level(logging.WARNING):
        frames = run_table(cfg)
    summary, trials = frames["table4"], frames["table4_trials"]
    assert (trials["error"] == "").all()
    assert summary["base_kappa"].nunique() == 1
    assert summary["base_kappa"].iloc[0] >= cached_operator("poisson1d", 4).kappa
    assert not any("below the approximation edge" in r.getMessage() for r in caplog.records)
