"""Eigenbasis extraction for image collections stored one image per column.

The mean image is subtracted from every column and the leading left
singular vectors of the centered matrix become the basis images, computed
either by the exact SVD or the randomized one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from randla.errors import DataError
from randla.factor import RsvdConfig, randomized_svd
from randla.linalg import as_matrix, frobenius_norm, svd


@dataclass(frozen=True)
class EigenfaceBasis:
    mean_face: np.ndarray
    basis: np.ndarray  # pixels x k, orthonormal columns
    singular_values: np.ndarray


def eigenfaces(images, k, method="deterministic", rsvd_cfg: RsvdConfig | None = None):
    """Leading k basis images of a pixels x n_images matrix.

    ``method`` is "deterministic" (full SVD, truncated) or "randomized"
    (range-sketched SVD; ``rsvd_cfg`` overrides rank/power/oversampling/
    seed, defaulting to rank k). Identical images make the centered matrix
    exactly zero, which has no principled basis and is rejected.
    """
    a = as_matrix(images, "images")
    n_images = a.shape[1]
    if n_images < 2:
        raise ValueError(f"need at least 2 images, got {n_images}")
    if not 1 <= k <= n_images:
        raise ValueError(f"k must be in [1, {n_images}], got {k}")
    if method not in ("deterministic", "randomized"):
        raise ValueError(f"method must be deterministic or randomized, got {method!r}")
    mean_face = a.mean(axis=1)
    centered = a - mean_face[:, None]
    if frobenius_norm(centered) == 0.0:
        raise DataError("all images are identical: centered matrix is zero")
    if method == "deterministic":
        f = svd(centered)
        basis, values = f.u[:, :k], f.s[:k]
    else:
        cfg = rsvd_cfg if rsvd_cfg is not None else RsvdConfig(rank=k)
        if cfg.rank != k:
            cfg = RsvdConfig(rank=k, power=cfg.power,
                             oversampling=cfg.oversampling, seed=cfg.seed)
        f = randomized_svd(centered, cfg)
        basis, values = f.u, f.s
    return EigenfaceBasis(
        mean_face=mean_face,
        basis=basis.copy(),
        singular_values=values.copy(),
    )
