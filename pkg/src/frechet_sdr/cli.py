"""Command-line interface: ``python -m frechet_sdr <subcommand> ...``.

Exit status: 0 success, 1 usage error, 2 data/validation error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import dataio
from ._errors import NumericalError, ValidationError
from .evalmetrics import distance_correlation_sq, trace_correlation
from .kwire import KernelSpec, KwireFit, kwire_fit, kwire_insample, kwire_predict
from .ladle import ladle_estimate
from .metrics import (
    EuclideanVectors,
    MetricSpec,
    QuantileDistributions,
    SpherePoints,
    pairwise_distance_matrix,
)
from .simgen import SimDesign, run_experiment
from .wire import sufficient_predictors, wire_fit

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

RESPONSE_METRICS = ("euclidean", "geodesic-sphere", "wasserstein", "isomap", "lle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _responses(Y, metric):
    if metric == "wasserstein":
        if Y.shape[1] != 2:
            raise ValidationError("wasserstein responses need two columns (mu, sigma)")
        return QuantileDistributions(Y[:, 0], Y[:, 1])
    if metric == "geodesic-sphere":
        return SpherePoints(Y)
    return EuclideanVectors(Y)


def distances_from_args(args):
    if getattr(args, "dist", None):
        return dataio.read_distance_matrix(args.dist)
    if not getattr(args, "y", None):
        raise UsageError("either --dist or --y is required")
    Y = dataio.read_csv_matrix(args.y)
    spec = MetricSpec(args.metric, k=args.k, m=args.m, reg=args.reg)
    return pairwise_distance_matrix(_responses(Y, args.metric), spec)


def _add_response_args(p, require_x=True):
    if require_x:
        p.add_argument("--x", required=True, help="predictor CSV (n x p)")
    p.add_argument("--dist", help="precomputed distance CSV (n x n)")
    p.add_argument("--y", help="response CSV")
    p.add_argument("--metric", default="euclidean", choices=RESPONSE_METRICS)
    p.add_argument("--k", type=int, default=10, help="isomap/lle neighbours")
    p.add_argument("--m", type=int, default=5, help="lle embedding dimension")
    p.add_argument("--reg", type=float, default=1e-3, help="lle regulariser")


def _diag_path(out, name):
    out = Path(out)
    return out.with_name(f"{out.stem}_{name}.csv")


def cmd_fit_linear(args):
    X = dataio.read_csv_matrix(args.x)
    D = distances_from_args(args)
    fit = wire_fit(X, D, args.d)
    for msg in fit.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    dataio.write_csv_matrix(args.out, fit.basis)
    if args.predictors:
        dataio.write_csv_matrix(args.predictors, sufficient_predictors(X, fit))
    if args.dump_diagnostics:
        dataio.write_csv_matrix(_diag_path(args.out, "M_hat"), fit.M_hat)
        dataio.write_csv_matrix(_diag_path(args.out, "singular_values"), fit.singular_values)


def save_kwire_fit(fit, directory):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    dataio.write_csv_matrix(d / "alpha.csv", fit.alpha)
    dataio.write_csv_matrix(d / "gamma.csv", fit.gamma)
    dataio.write_csv_matrix(d / "eigenvalues.csv", fit.eigenvalues)
    dataio.write_csv_matrix(d / "X_train.csv", fit.X_train)
    dataio.write_csv_matrix(d / "kernel_col_means.csv", fit.kernel_col_means)
    dataio.write_csv_matrix(d / "kernel.csv", [[fit.kernel.sigma, fit.epsilon_n]])


def load_kwire_fit(directory):
    d = Path(directory)
    alpha = dataio.read_csv_matrix(d / "alpha.csv")
    sigma, eps = dataio.read_csv_matrix(d / "kernel.csv")[0]
    return KwireFit(alpha=alpha,
                    gamma=dataio.read_csv_matrix(d / "gamma.csv"),
                    eigenvalues=dataio.read_csv_matrix(d / "eigenvalues.csv").ravel(),
                    epsilon_n=float(eps), kernel=KernelSpec(float(sigma)),
                    X_train=dataio.read_csv_matrix(d / "X_train.csv"),
                    kernel_col_means=dataio.read_csv_matrix(d / "kernel_col_means.csv").ravel(),
                    d=alpha.shape[1])


def cmd_fit_nonlinear(args):
    X = dataio.read_csv_matrix(args.x)
    D = distances_from_args(args)
    fit = kwire_fit(X, D, args.d, args.epsilon, KernelSpec(args.sigma))
    save_kwire_fit(fit, args.out)
    if args.dump_diagnostics:
        dataio.write_csv_matrix(Path(args.out) / "insample.csv", kwire_insample(fit))


def cmd_predict(args):
    fit = load_kwire_fit(args.fit)
    dataio.write_csv_matrix(args.out, kwire_predict(fit, dataio.read_csv_matrix(args.x)))


def cmd_order(args):
    X = dataio.read_csv_matrix(args.x)
    D = distances_from_args(args)
    base = math.e if args.log_base == "e" else float(args.log_base)
    res = ladle_estimate(X, D, n_boot=args.boot, seed=args.seed, log_base=base)
    print(f"d_hat={res.d_hat}")
    if res.skipped:
        print(f"warning: skipped bootstrap replicates {res.skipped}", file=sys.stderr)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "f_n", "g_n", "objective"])
            for k in range(res.r_p + 1):
                w.writerow([k, repr(float(res.f_n[k])), repr(float(res.g_n[k])),
                            repr(float(res.objective[k]))])


def cmd_simulate(args):
    design = SimDesign(model=args.model, case=args.case, n=args.n, p=args.p,
                       scenario=args.scenario, seed=args.seed, noise_sd=args.noise_sd)
    summary = run_experiment(design, args.method, reps=args.reps, d=args.d,
                             epsilon_n=args.epsilon, sigma=args.sigma, n_boot=args.boot)
    for key, value in summary.mean.items():
        print(f"mean_{key}={value:.6f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(summary.to_rows())


def median_bandwidth(X):
    from scipy.spatial.distance import pdist

    med = float(np.median(pdist(X)))
    return med if med > 0 else 1.0


def cmd_digits(args):
    classes = [int(c) for c in args.classes.split(",")]
    train = dataio.load_optdigits(args.train, classes)
    test = dataio.load_optdigits(args.test, classes)
    print(f"train={len(train)} test={len(test)}")
    Xtr, Ytr, ltr = dataio.digits_arrays(train, args.half)
    Xte, _, lte = dataio.digits_arrays(test, args.half)

    spec = MetricSpec(args.metric, k=args.k, m=args.m, reg=args.reg)
    D = pairwise_distance_matrix(EuclideanVectors(Ytr), spec)
    if args.method == "wire":
        fit = wire_fit(Xtr, D, args.d)
        Ptr, Pte = sufficient_predictors(Xtr, fit), sufficient_predictors(Xte, fit)
    else:
        sigma = args.sigma if args.sigma is not None else median_bandwidth(Xtr)
        fit = kwire_fit(Xtr, D, args.d, args.epsilon, KernelSpec(sigma))
        Ptr, Pte = kwire_predict(fit, Xtr), kwire_predict(fit, Xte)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dataio.write_csv_matrix(out / "train_predictors.csv", Ptr)
    dataio.write_csv_matrix(out / "test_predictors.csv", Pte)
    dataio.write_csv_matrix(out / "train_labels.csv", ltr)
    dataio.write_csv_matrix(out / "test_labels.csv", lte)
    prefix = Path(args.svg) if args.svg else out / "scatter"
    if args.d >= 2:
        dataio.emit_scatter_svg(Ptr[:, :2], ltr, f"{prefix}_train.svg")
        dataio.emit_scatter_svg(Pte[:, :2], lte, f"{prefix}_test.svg")


def cmd_distances(args):
    Y = dataio.read_csv_matrix(args.y)
    spec = MetricSpec(args.metric, k=args.k, m=args.m, reg=args.reg)
    dataio.write_csv_matrix(args.out, pairwise_distance_matrix(_responses(Y, args.metric), spec))


def cmd_eval(args):
    A = dataio.read_csv_matrix(args.a)
    B = dataio.read_csv_matrix(args.b)
    value = trace_correlation(A, B) if args.stat == "trace" else distance_correlation_sq(A, B)
    print(repr(round(value, 12)))


def build_parser():
    parser = _Parser(prog="frechet_sdr", description="Frechet sufficient dimension reduction")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--dump-diagnostics", action="store_true")
    common.add_argument("--threads", type=int, default=None,
                        help="cap BLAS threads (default: all cores)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("fit-linear", parents=[common], help="linear WIRE fit")
    _add_response_args(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out", required=True, help="basis CSV")
    p.add_argument("--predictors", help="optional CSV for X @ basis")
    p.set_defaults(func=cmd_fit_linear)

    p = sub.add_parser("fit-nonlinear", parents=[common], help="kernel WIRE fit")
    _add_response_args(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--out", required=True, help="output directory for the fit")
    p.set_defaults(func=cmd_fit_nonlinear)

    p = sub.add_parser("predict", parents=[common], help="evaluate a saved kernel fit")
    p.add_argument("--fit", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("order", parents=[common], help="ladle dimension estimate")
    _add_response_args(p)
    p.add_argument("--boot", type=int, default=None, help="bootstrap count (default n)")
    p.add_argument("--log-base", default="e")
    p.add_argument("--out", help="curves CSV")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("simulate", parents=[common], help="simulation study")
    p.add_argument("--model", default="I", choices=("I", "II", "III", "IV"))
    p.add_argument("--case", default="i", choices=("i", "ii"))
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--p", type=int, default=10)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--method", default="wire", choices=("wire", "kwire", "ladle"))
    p.add_argument("--scenario", default="default",
                   choices=("default", "S1", "S2", "S3", "S4"))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--boot", type=int, default=None)
    p.add_argument("--noise-sd", type=float, default=None)
    p.add_argument("--out", help="summary CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("digits", parents=[common], help="optdigits pipeline")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--classes", default="0,8,9")
    p.add_argument("--half", default="upper-as-x", choices=dataio.ORIENTATIONS)
    p.add_argument("--method", default="kwire", choices=("wire", "kwire"))
    p.add_argument("--metric", default="isomap", choices=("euclidean", "isomap", "lle"))
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--reg", type=float, default=1e-3)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--sigma", type=float, default=None,
                   help="kernel bandwidth (default: median pairwise distance)")
    p.add_argument("--svg", help="SVG path prefix")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("distances", parents=[common], help="response distance matrix")
    p.add_argument("--y", required=True)
    p.add_argument("--metric", default="euclidean", choices=RESPONSE_METRICS)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--reg", type=float, default=1e-3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("eval", parents=[common], help="trace or distance correlation")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--stat", default="dcor", choices=("trace", "dcor"))
    p.set_defaults(func=cmd_eval)
    return parser


def _run(args):
    if args.threads:
        from threadpoolctl import threadpool_limits

        with threadpool_limits(limits=args.threads):
            return args.func(args)
    return args.func(args)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        _run(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
