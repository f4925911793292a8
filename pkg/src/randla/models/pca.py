"""Principal component analysis and its kernelized form.

PCA centers the feature columns and eigendecomposes the covariance
(1/n) A0^T A0; kernel PCA double-centers a Gram matrix and embeds each
point by its eigenvector coordinates scaled by sqrt(eigenvalue), i.e. the
feature-space coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from randla.kernels import center_kernel_matrix
from randla.linalg import as_matrix, sym_eig


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray  # d x k, orthonormal columns
    explained_variance: np.ndarray  # length k, non-increasing


@dataclass(frozen=True)
class KpcaEmbedding:
    """n x k kernel-PCA coordinates.

    ``zero_padded`` is set when fewer than k positive eigenvalues existed;
    the surplus columns are zero.
    """

    coordinates: np.ndarray
    eigenvalues: np.ndarray
    zero_padded: bool


def pca_fit(x, k) -> PcaModel:
    """Top-k principal components of the rows of X."""
    x = as_matrix(x, "X")
    n, d = x.shape
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if not 1 <= k <= min(n, d):
        raise ValueError(f"k must be in [1, {min(n, d)}], got {k}")
    mean = x.mean(axis=0)
    centered = x - mean
    cov = (centered.T @ centered) / n
    eig = sym_eig(cov)
    return PcaModel(
        mean=mean,
        components=eig.vectors[:, :k].copy(),
        explained_variance=np.maximum(eig.values[:k], 0.0),
    )


def pca_transform(model: PcaModel, x):
    """Project rows of X onto the principal components: (X - mean) C."""
    x = as_matrix(x, "X")
    if x.shape[1] != model.mean.shape[0]:
        raise ValueError(
            f"dimension mismatch: X has {x.shape[1]} columns, model expects "
            f"{model.mean.shape[0]}"
        )
    return (x - model.mean) @ model.components


def kernel_pca(k_matrix, k) -> KpcaEmbedding:
    """Embed n points from their Gram matrix: center, eigendecompose, and
    scale eigenvector j by sqrt(max(lambda_j, 0))."""
    k_matrix = as_matrix(k_matrix, "K")
    n = k_matrix.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    eig = sym_eig(center_kernel_matrix(k_matrix))
    # "Positive" up to rounding: eigenvalues at the noise floor of the
    # decomposition carry no usable direction.
    floor = 1e-12 * max(float(np.abs(eig.values).max()), 1e-300)
    positive = int((eig.values[:k] > floor).sum())
    scales = np.sqrt(np.maximum(eig.values[:k], 0.0))
    coords = eig.vectors[:, :k] * scales[None, :]
    return KpcaEmbedding(
        coordinates=coords,
        eigenvalues=eig.values[:k].copy(),
        zero_padded=positive < k,
    )
