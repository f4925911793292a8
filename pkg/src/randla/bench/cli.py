"""Command-line experiment harness.

One experiment per invocation::

    randla <experiment> [options]

Experiments: jl, factor-bench, eigenfaces, kpca, svm-grid, ls-bench.
Reports go to stdout as a table and, with --out, to CSV or JSON.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
convergence failure.
"""

from __future__ import annotations

import argparse
import sys

from randla.bench.experiments import run_experiment
from randla.bench.reportio import save_report
from randla.errors import ConvergenceError, DataError

USAGE_ERROR, DATA_ERROR, CONVERGENCE_ERROR = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the harness contract says 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _int_list(text):
    return [int(part) for part in text.split(",") if part.strip()]


def _float_list(text):
    return [float(part) for part in text.split(",") if part.strip()]


def build_parser():
    parser = _Parser(
        prog="randla",
        description="Randomized linear algebra experiment harness",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="master seed")
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="report file format (default csv)")

    p = sub.add_parser("jl", help="squared-norm preservation under projection")
    p.add_argument("--dim", type=int, default=1000, help="source dimension d")
    p.add_argument("--rank", type=int, default=10, help="target dimension k")
    p.add_argument("--trials", type=int, default=10000)
    common(p)

    p = sub.add_parser("factor-bench",
                       help="SVD vs RSVD and ID vs RID over a rank sweep")
    p.add_argument("--rows", type=int, default=400)
    p.add_argument("--cols", type=int, default=200)
    p.add_argument("--matrix-rank", type=int, default=20,
                   help="rank of the planted low-rank part")
    p.add_argument("--noise", type=float, default=0.01)
    p.add_argument("--ranks", type=_int_list, default=[5, 10, 20, 40],
                   help="comma-separated sweep of approximation ranks")
    p.add_argument("--oversampling", type=int, default=10)
    p.add_argument("--power", type=int, default=1,
                   help="subspace iteration rounds for RSVD")
    p.add_argument("--repeats", type=int, default=3, help="timing repetitions")
    common(p)

    p = sub.add_parser("eigenfaces",
                       help="basis images by exact vs randomized SVD")
    p.add_argument("--data", help="directory of PGM images (default: bundled set)")
    p.add_argument("--ranks", type=_int_list, default=[1, 2, 4, 8, 16])
    p.add_argument("--oversampling", type=int, default=10)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--repeats", type=int, default=3)
    common(p)

    p = sub.add_parser("kpca", help="kernel PCA embeddings, exact vs random features")
    p.add_argument("--points", type=int, default=100, help="points per class")
    p.add_argument("--radius", type=float, default=3.0)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--cloud-std", type=float, default=0.7)
    p.add_argument("--gamma", type=float, action="append", dest="gamma_values",
                   metavar="G", help="kernel bandwidth (repeatable)")
    p.add_argument("--gammas", type=_float_list, default=[0.05, 0.2, 1.0],
                   help="comma-separated kernel bandwidths")
    p.add_argument("--gamma-range", nargs=2, type=float, metavar=("LO", "HI"),
                   help="sample bandwidths uniformly from [LO, HI] instead "
                        "of sweeping fixed values")
    p.add_argument("--groups", type=int, default=1,
                   help="bandwidth draws per range-sampled map")
    p.add_argument("--features", type=_int_list, default=[20, 200, 2000],
                   help="comma-separated random feature counts")
    p.add_argument("--mode", choices=("paper", "corrected"), default="paper",
                   help="feature normalization mode")
    common(p)

    p = sub.add_parser("svm-grid", help="cross-validated bandwidth grid search")
    p.add_argument("--points", type=int, default=600, help="total points")
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--classes", type=int, default=10)
    p.add_argument("--center-std", type=float, default=1.0)
    p.add_argument("--noise", type=float, default=0.8)
    p.add_argument("--gamma", type=float, action="append", dest="gamma_values",
                   metavar="G", help="kernel bandwidth (repeatable)")
    p.add_argument("--gammas", type=_float_list,
                   default=[0.005, 0.01, 0.02, 0.05, 0.1])
    p.add_argument("--folds", type=int, default=3)
    p.add_argument("--features", type=int, default=350,
                   help="random feature count m")
    p.add_argument("--box", type=float, default=1.0)
    p.add_argument("--grid-modes", default="deterministic,random-serial",
                   help="comma-separated subset of deterministic,"
                        "random-serial,random-parallel")
    p.add_argument("--parallel", nargs="?", type=int, const=4, default=None,
                   metavar="T",
                   help="run the random kernel route with T threads "
                        "(adds/uses the random-parallel mode)")
    p.add_argument("--mode", choices=("paper", "corrected"), default="paper")
    common(p)

    p = sub.add_parser("ls-bench", help="QR vs random-search least squares")
    p.add_argument("--dims", type=_int_list, default=[100, 200, 400, 800],
                   help="comma-separated n values (rows = 2n)")
    p.add_argument("--candidates", type=int, default=100,
                   help="random candidates per instance")
    p.add_argument("--repeats", type=int, default=3)
    common(p)
    return parser


def _config_from_args(args):
    name = args.experiment
    if name == "jl":
        return {"dim": args.dim, "k": args.rank, "trials": args.trials,
                "seed": args.seed}
    if name == "factor-bench":
        return {"rows": args.rows, "cols": args.cols, "rank": args.matrix_rank,
                "noise": args.noise, "ks": args.ranks,
                "oversampling": args.oversampling, "power": args.power,
                "repeats": args.repeats, "seed": args.seed}
    if name == "eigenfaces":
        return {"data": args.data, "ks": args.ranks,
                "oversampling": args.oversampling, "power": args.power,
                "repeats": args.repeats, "seed": args.seed}
    if name == "kpca":
        return {"n": args.points, "radius": args.radius, "noise": args.noise,
                "cloud_std": args.cloud_std,
                "gammas": args.gamma_values or args.gammas,
                "gamma_range": tuple(args.gamma_range) if args.gamma_range else None,
                "groups": args.groups,
                "feature_counts": args.features, "mode": args.mode,
                "seed": args.seed}
    if name == "svm-grid":
        modes = [m.strip() for m in args.grid_modes.split(",") if m.strip()]
        threads = 0
        if args.parallel is not None:
            threads = args.parallel
            if "random-parallel" not in modes:
                modes.append("random-parallel")
        return {"n": args.points, "d": args.dim, "classes": args.classes,
                "center_std": args.center_std, "noise": args.noise,
                "gammas": args.gamma_values or args.gammas,
                "folds": args.folds, "m": args.features,
                "box": args.box, "grid_modes": tuple(modes), "threads": threads,
                "mode": args.mode, "seed": args.seed}
    return {"dims": args.dims, "candidates": args.candidates,
            "repeats": args.repeats, "seed": args.seed}


def _print_report(report, stream=None):
    stream = stream if stream is not None else sys.stdout
    header = [report.sweep_name] + list(report.columns)
    widths = [max(len(h), 12) for h in header]
    print(f"experiment: {report.experiment_name}  seed: {report.seed}", file=stream)
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)), file=stream)
    for value, metrics in report.rows:
        cells = [f"{value:.6g}"] + [f"{metrics[c]:.6g}" for c in report.columns]
        print("  ".join(c.ljust(w) for c, w in zip(cells, widths)), file=stream)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run_experiment(args.experiment, _config_from_args(args))
    except DataError as exc:
        print(f"randla: data error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except ConvergenceError as exc:
        print(f"randla: convergence error: {exc}", file=sys.stderr)
        return CONVERGENCE_ERROR
    except ValueError as exc:
        print(f"randla: usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    _print_report(report)
    if args.out:
        save_report(report, args.out, format=args.format)
        print(f"report written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
