"""
Command Line Interface
Chains the library through polynomial, spectrum and report documents
"""

import argparse
import logging
from typing import List, Optional

import numpy as np
import pandas as pd

from basepoly.approx_spec import ApproxSpec
from basepoly.registry import METHODS, build_base
from basepoly.remez import remez, remez_min_degree
from bench.config import FIGURE_IDS, TABLE_IDS, make_config
from bench.figures import run_figure
from bench.tables import run_table
from bench.verify import run_verify
from chebpoly.document import load_polynomial, save_polynomial
from chebpoly.polynomial import normalize
from operators.loads import load
from operators.perturb import perturb_spectrum
from operators.poisson import poisson1d, poisson2d
from qsvt.metrics import metrics, save_metrics
from spectral.correction import save_report, spectral_correct
from spectral.pure import pure_spectral
from spectral.spectrum import load_spectrum, save_spectrum
from utils.config import get_output_dir
from utils.errors import DocumentParseError, SpectralQsvtError
from utils.helpers import load_json_file, resolve_output_path

logger = logging.getLogger(__name__)

OPERATORS = {"poisson1d": poisson1d, "poisson2d": poisson2d}


def _out(path: Optional[str], default_name: str) -> str:
    return path or resolve_output_path(get_output_dir(), default_name)


def cmd_base(args) -> int:
    spec = ApproxSpec(kappa=args.kappa, eps=args.eps)
    if args.method == "remez" and args.exchange == "single":
        if args.degree is None:
            p = remez_min_degree(spec, exchange="single")
        else:
            p, _ = remez(spec, (args.degree + 1) // 2, exchange="single")
    else:
        p = build_base(args.method, spec, args.degree)
    p = normalize(p)
    path = save_polynomial(p, _out(args.out, f"base_{args.method}.json"))
    logger.info(f"{args.method} polynomial: d={p.degree}, tau={p.tau:.6g}")
    print(path)
    return 0


def cmd_pure(args) -> int:
    spectrum = load_spectrum(args.spectrum)
    p = normalize(pure_spectral(spectrum, args.n_factor, n_terms=args.n_terms))
    print(save_polynomial(p, _out(args.out, "pure_spectral.json")))
    return 0


def cmd_spectrum(args) -> int:
    op = OPERATORS[args.operator](args.n)
    spectrum = op.spectrum(args.merge_tol)
    if args.eta:
        spectrum = perturb_spectrum(spectrum, args.eta, args.seed)
    logger.info(f"{args.operator} spectrum: N={len(spectrum)}, K_eff={spectrum.k_eff}, kappa={op.kappa:.6g}")
    print(save_spectrum(spectrum, _out(args.out, f"spectrum_{args.operator}_{args.n}.json")))
    return 0


def cmd_correct(args) -> int:
    p0 = load_polynomial(args.poly)
    spectrum = load_spectrum(args.spectrum)
    p_sc, report = spectral_correct(p0, spectrum, K=args.k, targets=args.targets,
                                    merge_tol=args.merge_tol)
    print(save_polynomial(p_sc, _out(args.out, "spectral_corrected.json")))
    print(save_report(report, _out(args.report, "correction_report.json")))
    return 0


def _report_targets(path: Optional[str]):
    if path is None:
        return None
    data = load_json_file(path)
    if data.get("kind") != "correction-report" or "targets" not in data:
        raise DocumentParseError(f"document {path} is not a correction report", position="kind")
    return np.asarray(data["targets"], dtype=np.float64)


def cmd_qsvt(args) -> int:
    p = load_polynomial(args.poly)
    if p.tau is None:
        p = normalize(p)
    op = OPERATORS[args.operator](args.n)
    result = metrics(p, op, load(args.load, op.dimension), targets=_report_targets(args.report))
    pd.set_option('display.width', None)
    print(pd.Series(result.to_dict()).to_string())
    print(save_metrics(result, _out(args.out, "qsvt_metrics.json"), seed=args.seed))
    return 0


def cmd_reproduce(args) -> int:
    if args.all:
        ids = list(TABLE_IDS + FIGURE_IDS)
    else:
        ids = [f"table{t}" for t in args.table or []] + [f"fig{f}" for f in args.figure or []]
    if not ids:
        logger.error("Nothing to reproduce: pass --table, --figure or --all")
        return 2

    failed = 0
    for step, experiment_id in enumerate(ids, start=1):
        logger.info(f"\n[Step {step}/{len(ids)}] {experiment_id}")
        overrides = {"output_dir": args.output_dir}
        if experiment_id == "table4":
            overrides.update(seed=args.seed, trials=args.trials)
        cfg = make_config(experiment_id, **overrides)
        try:
            runner = run_table if experiment_id in TABLE_IDS else run_figure
            for name in runner(cfg):
                print(resolve_output_path(cfg.output_dir, f"{name}.csv"))
        except Exception as e:
            logger.error(f"{experiment_id} failed: {e}")
            failed += 1
    return 1 if failed else 0


def cmd_verify(args) -> int:
    df = run_verify(args.seed)
    print(df.to_string(index=False))
    return 0 if bool(df["passed"].all()) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-qsvt",
        description='Spectrally corrected QSVT polynomials for linear systems',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py base --method remez --kappa 10 --eps 0.2
  python main.py spectrum --operator poisson1d --n 4 --out s.json
  python main.py correct --poly results/base_mang.json --spectrum s.json --k 2
  python main.py qsvt --poly results/spectral_corrected.json --operator poisson1d --n 4
  python main.py reproduce --table 4 --seed 42 --trials 10
  python main.py verify
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("base", help="Build a base polynomial approximating 1/x on [1/kappa, 1]")
    p.add_argument('--method', choices=METHODS, required=True)
    p.add_argument('--kappa', type=float, required=True, help='Condition number (> 1)')
    p.add_argument('--eps', type=float, default=0.1, help='Accuracy target in (0, 1) (default: 0.1)')
    p.add_argument('--degree', type=int, help='Fixed odd degree instead of the minimal one')
    p.add_argument('--exchange', choices=("multi", "single"), default="multi",
                   help='Remez exchange strategy (default: multi)')
    p.add_argument('--out', type=str, help='Output polynomial document')
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("pure", help="Build the pure spectral polynomial of a spectrum document")
    p.add_argument('--spectrum', type=str, required=True)
    p.add_argument('--n-factor', type=float, default=1.0)
    p.add_argument('--n-terms', type=int)
    p.add_argument('--out', type=str)
    p.set_defaults(func=cmd_pure)

    p = sub.add_parser("spectrum", help="Export the normalized spectrum of a Poisson operator")
    p.add_argument('--operator', choices=tuple(OPERATORS), default="poisson1d")
    p.add_argument('--n', type=int, required=True, help='N (1D) or N1 (2D) interior nodes')
    p.add_argument('--merge-tol', type=float)
    p.add_argument('--eta', type=float, default=0.0, help='Relative perturbation level')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--out', type=str)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("correct", help="Spectrally correct a polynomial document")
    p.add_argument('--poly', type=str, required=True)
    p.add_argument('--spectrum', type=str, required=True)
    p.add_argument('--k', type=int, help='Number of smallest eigenvalues to correct (default: all)')
    p.add_argument('--targets', type=float, nargs='+', help='Explicit target eigenvalues')
    p.add_argument('--merge-tol', type=float)
    p.add_argument('--out', type=str)
    p.add_argument('--report', type=str, help='Correction report document')
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("qsvt", help="Emulate QSVT and report solution metrics")
    p.add_argument('--poly', type=str, required=True)
    p.add_argument('--operator', choices=tuple(OPERATORS), default="poisson1d")
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--load', choices=("uniform", "point"), default="uniform")
    p.add_argument('--report', type=str, help='Correction report supplying the corrected targets')
    p.add_argument('--seed', type=int)
    p.add_argument('--out', type=str)
    p.set_defaults(func=cmd_qsvt)

    p = sub.add_parser("reproduce", help="Reproduce result tables and figure datasets as CSV")
    p.add_argument('--table', type=int, nargs='+', choices=range(1, 6))
    p.add_argument('--figure', type=int, nargs='+', choices=range(1, 8))
    p.add_argument('--all', action='store_true')
    p.add_argument('--seed', type=int)
    p.add_argument('--trials', type=int)
    p.add_argument('--output-dir', type=str)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("verify", help="Run the invariant suite")
    p.add_argument('--seed', type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def cli_dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run a subcommand.

    Args:
        argv (list): Arguments without the program name

    Returns:
        int: Exit status, 0 on success
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return args.func(args)
    except SpectralQsvtError as e:
        logger.error(f"{args.command} failed: {e}")
        return 1
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        return 1
