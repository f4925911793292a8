"""The six benchmark experiments behind the CLI.

Each experiment takes a config dict (unknown keys are rejected with the
full offending list), runs deterministically from its seed, and returns an
:class:`ExperimentReport`. Timing follows one protocol everywhere: a
discarded warm-up call, then the median of ``repeats`` monotonic-clock
repetitions. Timing columns are the only report fields exempt from
reproducibility.
"""

from __future__ import annotations

import importlib.resources
import math
import time

import numpy as np

from randla.bench.datasets import DatasetSpec, generate_dataset
from randla.bench.reportio import ExperimentReport
from randla.factor import (
    RsvdConfig,
    compare_decompositions,
    deterministic_id,
    projection_error,
    randomized_id,
    randomized_svd,
)
from randla.kernels import (
    KernelSpec,
    bandwidth_averaged_rbf_kernel,
    exact_kernel_matrix,
    rff_kernel_matrix,
    sample_range_rff,
    sample_rff,
)
from randla.linalg import frobenius_norm, svd
from randla.models.leastsq import ls_random_search, ls_solve_qr, residual_norm
from randla.models.pca import kernel_pca
from randla.models.svm import GRID_MODES, grid_search_cv
from randla.rng import RandomStream, check_seed, derive_seed
from randla.sketch import norm_preservation_experiment

EXPERIMENTS = ("jl", "factor-bench", "eigenfaces", "kpca", "svm-grid", "ls-bench")

_MODE_IDS = {mode: float(i) for i, mode in enumerate(GRID_MODES)}

_SCHEMAS = {
    "jl": {"dim": 1000, "k": 10, "trials": 10000, "seed": 0},
    "factor-bench": {
        "rows": 400, "cols": 200, "rank": 20, "noise": 0.01,
        "ks": (5, 10, 20, 40), "oversampling": 10, "power": 1,
        "repeats": 3, "seed": 0,
    },
    "eigenfaces": {
        "data": None, "ks": (1, 2, 4, 8, 16), "oversampling": 10,
        "power": 1, "repeats": 3, "seed": 0,
    },
    "kpca": {
        "n": 100, "radius": 3.0, "noise": 0.1, "cloud_std": 0.7,
        "gammas": (0.05, 0.2, 1.0), "gamma_range": None, "groups": 1,
        "feature_counts": (20, 200, 2000), "mode": "paper", "seed": 0,
    },
    "svm-grid": {
        "n": 600, "d": 64, "classes": 10, "center_std": 1.0, "noise": 0.8,
        "gammas": (0.005, 0.01, 0.02, 0.05, 0.1), "folds": 3, "m": 350,
        "box": 1.0, "tol": 1e-3, "grid_modes": ("deterministic", "random-serial"),
        "threads": 0, "mode": "paper", "seed": 0,
    },
    "ls-bench": {
        "dims": (100, 200, 400, 800), "candidates": 100, "repeats": 3, "seed": 0,
    },
}


def bundled_faces_dir():
    """Path of the packaged PGM face images."""
    return str(importlib.resources.files("randla").joinpath("assets", "faces"))


def timed_median(fn, repeats):
    """(last result, median seconds) over ``repeats`` runs after a warm-up."""
    fn()
    times = []
    result = None
    for _ in range(max(1, int(repeats))):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return result, float(np.median(times))


def resolve_config(name, config):
    if name not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {name!r}; choose from {EXPERIMENTS}")
    schema = _SCHEMAS[name]
    config = dict(config or {})
    unknown = sorted(set(config) - set(schema))
    if unknown:
        raise ValueError(
            f"invalid config keys for {name}: {unknown}; allowed keys: "
            f"{sorted(schema)}"
        )
    merged = dict(schema)
    merged.update({k: v for k, v in config.items() if v is not None})
    return merged


def run_experiment(name, config=None) -> ExperimentReport:
    cfg = resolve_config(name, config)
    runner = {
        "jl": _run_jl,
        "factor-bench": _run_factor_bench,
        "eigenfaces": _run_eigenfaces,
        "kpca": _run_kpca,
        "svm-grid": _run_svm_grid,
        "ls-bench": _run_ls_bench,
    }[name]
    return runner(cfg)


def _run_jl(cfg):
    seed = check_seed(cfg["seed"])
    stats = norm_preservation_experiment(cfg["dim"], cfg["k"], cfg["trials"], seed)
    report = ExperimentReport(
        experiment_name="jl",
        parameters={"dim": cfg["dim"], "k": cfg["k"], "trials": cfg["trials"]},
        sweep_name="k",
        columns=["mean_error", "stdev", "trials"],
        seed=seed,
    )
    report.add_row(cfg["k"], {
        "mean_error": stats.mean,
        "stdev": stats.stdev,
        "trials": stats.trial_count,
    })
    return report


def _run_factor_bench(cfg):
    seed = check_seed(cfg["seed"])
    spec = DatasetSpec("low-rank-plus-noise", {
        "rows": cfg["rows"], "cols": cfg["cols"],
        "rank": cfg["rank"], "noise": cfg["noise"],
    })
    a, _ = generate_dataset(spec, derive_seed(seed, "matrix"))
    repeats = cfg["repeats"]
    full_svd, svd_seconds = timed_median(lambda: svd(a), repeats)
    full_id, cpqr_seconds = timed_median(
        lambda: deterministic_id(a, min(a.shape)), repeats
    )
    report = ExperimentReport(
        experiment_name="factor-bench",
        parameters={k: cfg[k] for k in
                    ("rows", "cols", "rank", "noise", "oversampling", "power")},
        sweep_name="k",
        columns=[
            "svd_err_det", "svd_err_rand", "svd_relative",
            "svd_sec_det", "svd_sec_rand",
            "id_err_det", "id_err_rand", "id_relative",
            "id_sec_det", "id_sec_rand",
        ],
        seed=seed,
    )
    for k in cfg["ks"]:
        k = int(k)
        det_svd = full_svd.u[:, :k] @ (full_svd.s[:k, None] * full_svd.vt[:k, :])
        rs_cfg = RsvdConfig(rank=k, power=cfg["power"],
                            oversampling=cfg["oversampling"],
                            seed=derive_seed(seed, "rsvd", k))
        rand_f, rsvd_seconds = timed_median(
            lambda: randomized_svd(a, rs_cfg), repeats
        )
        rand_svd = rand_f.u @ (rand_f.s[:, None] * rand_f.vt)
        svd_report = compare_decompositions(
            a, det_svd, rand_svd, timings=(svd_seconds, rsvd_seconds)
        )
        det_basis = full_id.basis[:, :k]
        det_id_approx = det_basis @ (det_basis.T @ a)
        rid, rid_seconds = timed_median(
            lambda: randomized_id(a, k, cfg["oversampling"],
                                  derive_seed(seed, "rid", k)),
            repeats,
        )
        rid_approx = rid.basis @ (rid.basis.T @ a)
        id_report = compare_decompositions(
            a, det_id_approx, rid_approx, timings=(cpqr_seconds, rid_seconds)
        )
        report.add_row(k, {
            "svd_err_det": svd_report.absolute_deterministic,
            "svd_err_rand": svd_report.absolute_random,
            "svd_relative": svd_report.relative,
            "svd_sec_det": svd_report.elapsed_det_seconds,
            "svd_sec_rand": svd_report.elapsed_rand_seconds,
            "id_err_det": id_report.absolute_deterministic,
            "id_err_rand": id_report.absolute_random,
            "id_relative": id_report.relative,
            "id_sec_det": id_report.elapsed_det_seconds,
            "id_sec_rand": id_report.elapsed_rand_seconds,
        })
    return report


def _run_eigenfaces(cfg):
    seed = check_seed(cfg["seed"])
    path = cfg["data"] or bundled_faces_dir()
    images, _ = generate_dataset(DatasetSpec("pgm-dir", {"path": path}), seed)
    mean_face = images.mean(axis=1)
    centered = images - mean_face[:, None]
    repeats = cfg["repeats"]
    full, det_seconds = timed_median(lambda: svd(centered), repeats)
    report = ExperimentReport(
        experiment_name="eigenfaces",
        parameters={"data": path, "images": images.shape[1],
                    "pixels": images.shape[0],
                    "oversampling": cfg["oversampling"], "power": cfg["power"]},
        sweep_name="k",
        columns=["err_det", "err_rand", "relative", "sec_det", "sec_rand"],
        seed=seed,
    )
    for k in cfg["ks"]:
        k = int(k)
        if k > images.shape[1]:
            continue
        rs_cfg = RsvdConfig(rank=k, power=cfg["power"],
                            oversampling=cfg["oversampling"],
                            seed=derive_seed(seed, "eigenfaces-rsvd", k))
        rand_f, rand_seconds = timed_median(
            lambda: randomized_svd(centered, rs_cfg), repeats
        )
        err_det = projection_error(centered, full.u[:, :k])
        err_rand = frobenius_norm(
            centered - rand_f.u @ (rand_f.s[:, None] * rand_f.vt)
        )
        ad, ar = err_det, err_rand
        relative = 0.0 if ar == ad else (math.inf if ad == 0.0 else (ar - ad) / ad)
        report.add_row(k, {
            "err_det": err_det,
            "err_rand": err_rand,
            "relative": relative,
            "sec_det": det_seconds,
            "sec_rand": rand_seconds,
        })
    return report


def radial_threshold_accuracy(embedding, labels):
    """Best accuracy of a threshold on the embedding-row norm.

    Sweeps every midpoint between consecutive sorted radii (both label
    orientations), which is the exact optimum for this one-dimensional
    classifier family.
    """
    radii = np.sqrt((embedding * embedding).sum(axis=1))
    order = np.argsort(radii)
    sorted_labels = np.asarray(labels).astype(int)[order]
    n = sorted_labels.size
    # inside_is_one[i] = accuracy when the first i points are called class 1.
    ones_prefix = np.concatenate([[0], np.cumsum(sorted_labels == 1)])
    zeros_prefix = np.concatenate([[0], np.cumsum(sorted_labels == 0)])
    best = 0.0
    for i in range(n + 1):
        acc_inside_one = (ones_prefix[i] + (zeros_prefix[n] - zeros_prefix[i])) / n
        acc_inside_zero = (zeros_prefix[i] + (ones_prefix[n] - ones_prefix[i])) / n
        best = max(best, acc_inside_one, acc_inside_zero)
    return float(best)


def _run_kpca(cfg):
    seed = check_seed(cfg["seed"])
    spec = DatasetSpec("circle-cloud", {
        "n": cfg["n"], "radius": cfg["radius"],
        "noise": cfg["noise"], "cloud_std": cfg["cloud_std"],
    })
    x, y = generate_dataset(spec, derive_seed(seed, "dataset"))
    gamma_range = cfg["gamma_range"]
    groups = int(cfg["groups"])
    parameters = {"n_per_class": cfg["n"], "radius": cfg["radius"],
                  "noise": cfg["noise"], "cloud_std": cfg["cloud_std"],
                  "mode": cfg["mode"], "groups": groups}
    if gamma_range is not None:
        lo, hi = float(gamma_range[0]), float(gamma_range[1])
        parameters["gamma_range"] = [lo, hi]
        # Bandwidth-interval sweep: one deterministic reference (the
        # closed-form averaged kernel) plus range-sampled maps; the gamma
        # column carries the interval midpoint.
        sweeps = [((lo + hi) / 2.0, "range")]
    else:
        sweeps = [(float(g), "fixed") for g in cfg["gammas"]]
    report = ExperimentReport(
        experiment_name="kpca",
        parameters=parameters,
        sweep_name="row",
        columns=["gamma", "m", "randomized", "label", "emb1", "emb2"],
        seed=seed,
    )
    row_index = 0
    for gamma, kind in sweeps:
        if kind == "range":
            lo, hi = gamma_range
            cells = [(0, bandwidth_averaged_rbf_kernel(x, x, lo, hi))]
            for m in cfg["feature_counts"]:
                rmap = sample_range_rff(
                    x.shape[1], int(m), groups, (lo, hi),
                    derive_seed(seed, "kpca-range-map", int(m)),
                    normalization_mode=cfg["mode"],
                )
                cells.append((int(m) * groups, rff_kernel_matrix(rmap, x, x)))
        else:
            cells = [(0, exact_kernel_matrix(x, x, KernelSpec(kind="rbf",
                                                              gamma=gamma)))]
            for m in cfg["feature_counts"]:
                rmap = sample_rff(
                    x.shape[1], int(m), gamma,
                    derive_seed(seed, "kpca-map", int(m), repr(gamma)),
                    normalization_mode=cfg["mode"],
                )
                cells.append((int(m), rff_kernel_matrix(rmap, x, x)))
        for m, gram in cells:
            emb = kernel_pca(gram, 2).coordinates
            for i in range(x.shape[0]):
                report.add_row(row_index, {
                    "gamma": gamma, "m": m, "randomized": float(m > 0),
                    "label": float(y[i]), "emb1": emb[i, 0], "emb2": emb[i, 1],
                })
                row_index += 1
    return report


def _run_svm_grid(cfg):
    seed = check_seed(cfg["seed"])
    spec = DatasetSpec("gaussian-blobs", {
        "n": cfg["n"], "d": cfg["d"], "classes": cfg["classes"],
        "center_std": cfg["center_std"], "noise": cfg["noise"],
    })
    x, y = generate_dataset(spec, derive_seed(seed, "dataset"))
    modes = cfg["grid_modes"]
    if isinstance(modes, str):
        modes = (modes,)
    for mode in modes:
        if mode not in GRID_MODES:
            raise ValueError(f"unknown grid mode {mode!r}; choose from {GRID_MODES}")
    report = ExperimentReport(
        experiment_name="svm-grid",
        parameters={"n": cfg["n"], "d": cfg["d"], "classes": cfg["classes"],
                    "folds": cfg["folds"], "m": cfg["m"], "box": cfg["box"],
                    "mode": cfg["mode"],
                    "grid_modes": ",".join(modes)},
        sweep_name="gamma",
        columns=["accuracy", "seconds", "mode_id"],
        seed=seed,
    )
    threads = int(cfg["threads"]) or None
    for mode in modes:
        result = grid_search_cv(
            x, y, list(cfg["gammas"]), cfg["folds"], mode, cfg["m"], seed,
            box=cfg["box"], tol=cfg["tol"],
            normalization_mode=cfg["mode"], threads=threads,
        )
        for gamma, accuracy, seconds, row_mode in result.rows:
            report.add_row(gamma, {
                "accuracy": accuracy,
                "seconds": seconds,
                "mode_id": _MODE_IDS[row_mode],
            })
    return report


def _run_ls_bench(cfg):
    seed = check_seed(cfg["seed"])
    repeats = cfg["repeats"]
    report = ExperimentReport(
        experiment_name="ls-bench",
        parameters={"candidates": cfg["candidates"]},
        sweep_name="n",
        columns=["residual_qr", "residual_rand", "sec_qr", "sec_rand"],
        seed=seed,
    )
    for n in cfg["dims"]:
        n = int(n)
        m = 2 * n
        a = RandomStream(derive_seed(seed, "ls-matrix", n)).normal_matrix(m, n)
        b = RandomStream(derive_seed(seed, "ls-rhs", n)).normals(m)
        x_qr, sec_qr = timed_median(lambda: ls_solve_qr(a, b), repeats)
        (x_rand, res_rand), sec_rand = timed_median(
            lambda: ls_random_search(a, b, cfg["candidates"],
                                     derive_seed(seed, "ls-search", n)),
            repeats,
        )
        report.add_row(n, {
            "residual_qr": residual_norm(a, x_qr, b),
            "residual_rand": res_rand,
            "sec_qr": sec_qr,
            "sec_rand": sec_rand,
        })
    return report
