"""Least-squares solvers: QR with back substitution, and the naive
random-candidate search it is benchmarked against.
"""

from __future__ import annotations

import math

import numpy as np

from randla.linalg import as_matrix, as_vector, householder_qr
from randla.rng import RandomStream, check_seed, derive_seed


def _back_substitute(r, c):
    n = r.shape[0]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (c[i] - r[i, i + 1 :] @ x[i + 1 :]) / r[i, i]
    return x


def ls_solve_qr(a, b):
    """Minimize ||A x - b||_2 via thin QR: x = R^{-1} (Q^T b).

    Requires m >= n and full numerical column rank
    (|R_nn| > 1e-12 |R_11|); R is inverted by back substitution, never
    explicitly.
    """
    a = as_matrix(a, "A")
    b = as_vector(b, "b")
    m, n = a.shape
    if m < n:
        raise ValueError(f"least squares requires rows >= cols, got {m}x{n}")
    if b.shape[0] != m:
        raise ValueError(f"b must have length {m}, got {b.shape[0]}")
    f = householder_qr(a)
    diag = np.abs(np.diag(f.r))
    if diag[-1] <= 1e-12 * diag[0]:
        raise ValueError(
            f"A is numerically rank deficient: |R_nn| = {diag[-1]:.3e} vs "
            f"|R_11| = {diag[0]:.3e}"
        )
    return _back_substitute(f.r, f.q.T @ b)


def ls_random_search(a, b, k, seed):
    """Draw k standard-normal candidate vectors and keep the best residual.

    Candidates come sequentially from one stream, so enlarging k with the
    same seed extends the candidate set (the best residual never worsens).
    Returns (x_best, residual_norm).
    """
    a = as_matrix(a, "A")
    b = as_vector(b, "b")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"b must have length {a.shape[0]}, got {b.shape[0]}")
    n = a.shape[1]
    stream = RandomStream(derive_seed(check_seed(seed), "ls-candidates"))
    candidates = stream.normals(k * n).reshape(k, n)
    residuals = a @ candidates.T - b[:, None]
    norms = np.sqrt((residuals * residuals).sum(axis=0))
    best = int(np.argmin(norms))
    return candidates[best].copy(), float(norms[best])


def residual_norm(a, x, b):
    """||A x - b||_2."""
    r = as_matrix(a, "A") @ as_vector(x, "x") - as_vector(b, "b")
    return math.sqrt(r @ r)
