"""Seeded dataset generation and ingestion for the experiment harness.

Every generated dataset is a pure function of (spec, seed). Supported kinds:

* ``circle-cloud``: class 0 sits on a radius-R circle with radial Gaussian
  noise, class 1 is an isotropic Gaussian at the origin (2-D, binary).
* ``gaussian-blobs``: c isotropic Gaussian clusters in R^d around random
  centers; the 10-class, 64-dimensional preset stands in for a small digit
  set.
* ``low-rank-plus-noise``: U_r V_r^T + noise * G with Gaussian factors
  U_r (rows x rank) and V_r (cols x rank).
* ``csv-file`` / ``pgm-dir``: load a matrix from disk (no labels).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from randla.bench.reportio import load_matrix_csv, load_pgm_dir
from randla.errors import DataError
from randla.rng import RandomStream, check_seed, derive_seed

KINDS = ("circle-cloud", "gaussian-blobs", "low-rank-plus-noise", "csv-file", "pgm-dir")

_DEFAULTS = {
    "circle-cloud": {"n": 100, "radius": 3.0, "noise": 0.1, "cloud_std": 0.7},
    "gaussian-blobs": {"n": 600, "d": 64, "classes": 10, "center_std": 1.0,
                       "noise": 0.8},
    "low-rank-plus-noise": {"rows": 400, "cols": 200, "rank": 20, "noise": 0.01},
    "csv-file": {"path": None, "header": False},
    "pgm-dir": {"path": None},
}


@dataclass(frozen=True)
class DatasetSpec:
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DataError(f"unknown dataset kind {self.kind!r}; choose from {KINDS}")
        unknown = set(self.params) - set(_DEFAULTS[self.kind])
        if unknown:
            raise DataError(
                f"invalid parameters for {self.kind}: {sorted(unknown)}; "
                f"allowed: {sorted(_DEFAULTS[self.kind])}"
            )

    def resolved(self):
        merged = dict(_DEFAULTS[self.kind])
        merged.update(self.params)
        return merged


def _circle_cloud(p, seed):
    n = int(p["n"])
    if n < 1:
        raise DataError(f"n per class must be >= 1, got {n}")
    radius, noise, cloud_std = float(p["radius"]), float(p["noise"]), float(p["cloud_std"])
    if noise < 0 or cloud_std < 0 or radius <= 0:
        raise DataError("radius must be positive, noise and cloud_std non-negative")
    angles = 2.0 * math.pi * RandomStream(derive_seed(seed, "circle-angles")).uniforms(n)
    radii = radius + noise * RandomStream(derive_seed(seed, "circle-noise")).normals(n)
    circle = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    cloud = cloud_std * RandomStream(derive_seed(seed, "cloud")).normal_matrix(n, 2)
    x = np.vstack([circle, cloud])
    y = np.concatenate([np.zeros(n, dtype=np.int64), np.ones(n, dtype=np.int64)])
    return x, y


def _gaussian_blobs(p, seed):
    n, d, c = int(p["n"]), int(p["d"]), int(p["classes"])
    if n < c or c < 1 or d < 1:
        raise DataError(f"need n >= classes >= 1 and d >= 1, got n={n}, classes={c}, d={d}")
    center_std, noise = float(p["center_std"]), float(p["noise"])
    if noise < 0 or center_std < 0:
        raise DataError("center_std and noise must be non-negative")
    centers = center_std * RandomStream(derive_seed(seed, "blob-centers")).normal_matrix(c, d)
    counts = [n // c + (1 if i < n % c else 0) for i in range(c)]
    offsets = noise * RandomStream(derive_seed(seed, "blob-points")).normal_matrix(n, d)
    y = np.repeat(np.arange(c, dtype=np.int64), counts)
    x = centers[y] + offsets
    return x, y


def _low_rank_plus_noise(p, seed):
    rows, cols, rank = int(p["rows"]), int(p["cols"]), int(p["rank"])
    noise = float(p["noise"])
    if rank < 1 or rank > min(rows, cols):
        raise DataError(f"rank must be in [1, {min(rows, cols)}], got {rank}")
    if noise < 0:
        raise DataError("noise must be non-negative")
    u = RandomStream(derive_seed(seed, "factor-left")).normal_matrix(rows, rank)
    v = RandomStream(derive_seed(seed, "factor-right")).normal_matrix(cols, rank)
    x = u @ v.T
    if noise > 0:
        x = x + noise * RandomStream(derive_seed(seed, "additive-noise")).normal_matrix(
            rows, cols
        )
    return x, None


def generate_dataset(spec: DatasetSpec, seed):
    """Materialize (X, y or None) for a dataset spec; deterministic in
    (spec, seed)."""
    seed = check_seed(seed)
    p = spec.resolved()
    if spec.kind == "circle-cloud":
        return _circle_cloud(p, seed)
    if spec.kind == "gaussian-blobs":
        return _gaussian_blobs(p, seed)
    if spec.kind == "low-rank-plus-noise":
        return _low_rank_plus_noise(p, seed)
    if spec.kind == "csv-file":
        if not p["path"]:
            raise DataError("csv-file dataset requires a path")
        return load_matrix_csv(p["path"], header=bool(p["header"])), None
    if not p["path"]:
        raise DataError("pgm-dir dataset requires a path")
    return load_pgm_dir(p["path"]), None
