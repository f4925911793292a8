"""Dense linear algebra built from scratch, plus seeded matrix generation.

Matrices are plain 2-D float64 numpy arrays (row-major); :func:`as_matrix`
is the validating constructor every public entry point runs its inputs
through, so non-finite values never reach a kernel. Factorizations are
deterministic: after computing a decomposition, each orthonormal column of
the left factor (Q, U, or an eigenvector) is flipped so its
largest-magnitude entry is nonnegative, with the paired factor flipped to
match, making results comparable across runs and backends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from randla import backend
from randla.errors import ConvergenceError
from randla.rng import RandomStream, check_seed

# Iteration budget for SVD / eigensolver sweeps: generous enough to never
# trip on convergent inputs, finite so a pathological input fails loudly.
SWEEP_CAP_FACTOR = 100


def as_matrix(a, name="matrix"):
    """Validate and return ``a`` as a C-ordered 2-D float64 array.

    Rejects empty shapes and any NaN/Inf entry.
    """
    arr = np.ascontiguousarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have positive dimensions, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_vector(v, name="vector"):
    arr = np.ascontiguousarray(v, dtype=np.float64).reshape(-1)
    if arr.size < 1:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class QrFactors:
    """Thin QR factors; ``perm`` is the pivot order when pivoting was used."""

    q: np.ndarray
    r: np.ndarray
    perm: np.ndarray | None = None


@dataclass(frozen=True)
class SvdFactors:
    u: np.ndarray
    s: np.ndarray
    vt: np.ndarray

    @property
    def v(self):
        return self.vt.T


@dataclass(frozen=True)
class EigFactors:
    values: np.ndarray
    vectors: np.ndarray


def frobenius_norm(a):
    """sqrt of the sum of squared entries."""
    arr = np.asarray(a, dtype=np.float64)
    return float(np.sqrt((arr * arr).sum()))


def gaussian_matrix(rows, cols, seed):
    """rows x cols matrix of i.i.d. standard normals.

    The stream is Philox keyed by ``seed`` with Box-Muller applied to raw
    53-bit uniforms (see :mod:`randla.rng`), so the result is bit-identical
    across runs, platforms, and thread counts.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"dimensions must be positive, got {rows}x{cols}")
    return RandomStream(check_seed(seed)).normal_matrix(rows, cols)


def _fix_left_signs(left, right_rows=None, r_rows=None):
    """Flip columns of ``left`` so each column's largest-|.| entry is >= 0.

    The paired factor (rows of Vt, or rows of R) is flipped alongside so the
    product is unchanged.
    """
    for j in range(left.shape[1]):
        col = left[:, j]
        i = int(np.argmax(np.abs(col)))
        if col[i] < 0.0:
            left[:, j] = -col
            if right_rows is not None:
                right_rows[j, :] = -right_rows[j, :]
            if r_rows is not None and j < r_rows.shape[0]:
                r_rows[j, :] = -r_rows[j, :]


def householder_qr(a):
    """Thin QR (Q: m x n, R: n x n) of a matrix with rows >= cols."""
    a = as_matrix(a, "A")
    m, n = a.shape
    if m < n:
        raise ValueError(f"householder_qr requires rows >= cols, got {m}x{n}")
    q, r = backend.householder_qr(a)
    _fix_left_signs(q, r_rows=r)
    return QrFactors(q=q, r=r)


def column_pivoted_qr(a):
    """QR with greedy largest-column-norm pivoting: A[:, perm] = Q R."""
    a = as_matrix(a, "A")
    q, r, perm = backend.column_pivoted_qr(a)
    _fix_left_signs(q, r_rows=r)
    return QrFactors(q=q, r=r, perm=perm)


def svd(a):
    """Thin singular value decomposition A = U diag(S) V^T.

    Computed by Householder bidiagonalization followed by implicit-shift QR
    sweeps on the bidiagonal (Wilkinson shift, Givens bulge chasing).
    Singular values are nonnegative and sorted non-increasing.
    """
    a = as_matrix(a, "A")
    m, n = a.shape
    cap = max(1, SWEEP_CAP_FACTOR * min(m, n))
    if m >= n:
        u, s, vt, steps = backend.golub_kahan_svd(a, cap)
    else:
        ut, s, vtt, steps = backend.golub_kahan_svd(np.ascontiguousarray(a.T), cap)
        u, vt = vtt.T.copy(), np.ascontiguousarray(ut.T)
    if steps < 0:
        raise ConvergenceError(
            f"SVD did not converge within {-steps} implicit-shift steps "
            f"for a {m}x{n} matrix"
        )
    _fix_left_signs(u, right_rows=vt)
    return SvdFactors(u=u, s=s, vt=vt)


def sym_eig(s):
    """Eigendecomposition of a symmetric matrix via cyclic Jacobi rotations.

    Eigenvalues come back sorted non-increasing with orthonormal
    eigenvectors in the matching columns.
    """
    s = as_matrix(s, "S")
    n, n2 = s.shape
    if n != n2:
        raise ValueError(f"sym_eig requires a square matrix, got {n}x{n2}")
    asym = frobenius_norm(s - s.T)
    if asym > 1e-10:
        raise ValueError(
            f"sym_eig requires a symmetric matrix; ||S - S^T||_F = {asym:.3e}"
        )
    s = np.ascontiguousarray((s + s.T) / 2.0)
    values, vectors, sweeps = backend.jacobi_sym_eig(s, max(1, SWEEP_CAP_FACTOR * n))
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge within {-sweeps} sweeps "
            f"for a {n}x{n} matrix"
        )
    _fix_left_signs(vectors)
    return EigFactors(values=values, vectors=vectors)
