"""Randomized and deterministic low-rank factorizations and their error
metrics: randomized SVD with subspace iteration, interpolative decomposition
via column-pivoted QR (greedy or from a uniform column sample), an adaptive
rank finder for a target projection error, and the existence bound for the
fixed-precision problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from randla.linalg import (
    SvdFactors,
    as_matrix,
    column_pivoted_qr,
    frobenius_norm,
    gaussian_matrix,
    householder_qr,
    svd,
)
from randla.rng import RandomStream, check_seed, derive_seed


@dataclass(frozen=True)
class IdResult:
    """Interpolative decomposition output: A ~= basis basis^T A.

    ``selected_columns`` index columns of the original matrix; the first k
    of them generate the basis.
    """

    basis: np.ndarray
    selected_columns: np.ndarray
    approximation_rank: int


@dataclass(frozen=True)
class RsvdConfig:
    rank: int
    power: int = 1
    oversampling: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.power < 0:
            raise ValueError(f"power must be >= 0, got {self.power}")
        if self.oversampling < 0:
            raise ValueError(f"oversampling must be >= 0, got {self.oversampling}")
        check_seed(self.seed)


@dataclass(frozen=True)
class ErrorReport:
    """Deterministic-vs-randomized approximation errors for one target.

    ``relative`` is (ar - ad) / ad; +inf when the deterministic error is
    exactly zero but the randomized one is not.
    """

    absolute_deterministic: float
    absolute_random: float
    relative: float
    elapsed_det_seconds: float = 0.0
    elapsed_rand_seconds: float = 0.0


class FixedPrecisionBound(NamedTuple):
    rank_bound: int
    vacuous: bool


def randomized_svd(a, cfg: RsvdConfig, raw_power: bool = False) -> SvdFactors:
    """Rank-k randomized SVD via a Gaussian range sketch.

    Pipeline: sample a Gaussian test matrix with k + oversampling columns,
    run ``power`` rounds of subspace iteration, orthonormalize, project
    (B = Q^T A), take the small SVD of B, and lift (U = Q Ub), truncating
    all factors to k.

    Subspace iteration is stabilized by default: each application of A or
    A^T is followed by a thin QR, which is exact-arithmetic-equivalent to
    multiplying by (A A^T)^power but does not square the condition number.
    ``raw_power=True`` instead forms the explicit product
    (A A^T)^power (A Omega) with a single final QR, reproducing the naive
    formulation for comparison runs.
    """
    a = as_matrix(a, "A")
    m, n = a.shape
    k = cfg.rank
    if k > min(m, n):
        raise ValueError(f"rank {k} exceeds min(m, n) = {min(m, n)}")
    p = min(k + cfg.oversampling, min(m, n))
    omega = gaussian_matrix(n, p, cfg.seed)
    y = a @ omega
    if raw_power:
        gram = a @ a.T
        for _ in range(cfg.power):
            y = gram @ y
        q = householder_qr(y).q
    else:
        q = householder_qr(y).q
        for _ in range(cfg.power):
            q = householder_qr(a.T @ q).q
            q = householder_qr(a @ q).q
    b = q.T @ a
    small = svd(b)
    u = q @ small.u
    return SvdFactors(u=u[:, :k], s=small.s[:k], vt=small.vt[:k, :])


def deterministic_id(a, k) -> IdResult:
    """Interpolative decomposition from column-pivoted QR of the full matrix."""
    a = as_matrix(a, "A")
    if not 1 <= k <= min(a.shape):
        raise ValueError(f"k must be in [1, {min(a.shape)}], got {k}")
    f = column_pivoted_qr(a)
    return IdResult(
        basis=f.q[:, :k].copy(),
        selected_columns=f.perm[:k].copy(),
        approximation_rank=k,
    )


def randomized_id(a, k, oversampling, seed) -> IdResult:
    """Interpolative decomposition from a uniform sample of p = k +
    oversampling distinct columns, pivoted within the sample only.

    ``selected_columns`` are reported in the original column indexing.
    """
    a = as_matrix(a, "A")
    m, n = a.shape
    if k < 1 or k > m:
        raise ValueError(f"k must be in [1, {m}], got {k}")
    if oversampling < 0:
        raise ValueError(f"oversampling must be >= 0, got {oversampling}")
    p = k + oversampling
    if p > n:
        raise ValueError(f"k + oversampling = {p} exceeds column count {n}")
    stream = RandomStream(derive_seed(check_seed(seed), "id-columns"))
    cols = stream.sample_without_replacement(n, p)
    sub = np.ascontiguousarray(a[:, cols])
    f = column_pivoted_qr(sub)
    kk = min(k, f.q.shape[1])
    return IdResult(
        basis=f.q[:, :kk].copy(),
        selected_columns=cols[f.perm[:kk]].copy(),
        approximation_rank=kk,
    )


def projection_error(a, basis):
    """||A - Q Q^T A||_F for a column-orthonormal basis Q (may be empty)."""
    a = as_matrix(a, "A")
    basis = np.asarray(basis, dtype=np.float64)
    if basis.ndim != 2 or basis.shape[0] != a.shape[0]:
        raise ValueError(
            f"basis must be {a.shape[0]} x k, got shape {basis.shape}"
        )
    if basis.shape[1] == 0:
        return frobenius_norm(a)
    gram_dev = frobenius_norm(basis.T @ basis - np.eye(basis.shape[1]))
    if gram_dev > 1e-10:
        raise ValueError(
            f"basis columns are not orthonormal: ||Q^T Q - I||_F = {gram_dev:.3e}"
        )
    return frobenius_norm(a - basis @ (basis.T @ a))


def fixed_precision_bound(n, epsilon) -> FixedPrecisionBound:
    """Rank bound guaranteeing a basis with ||A - Q Q^T A||_F <= epsilon
    exists: the smallest integer strictly above
    24 n^3 ln(n) / (3 eps^4 n - 2 eps^6).

    The bound is exact but astronomically loose; ``vacuous`` flags the
    (typical) case where it is at least n and therefore says nothing.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    denom = 3.0 * epsilon**4 * n - 2.0 * epsilon**6
    if denom <= 0.0:
        raise ValueError(
            f"bound undefined: 3 eps^4 n - 2 eps^6 = {denom:.3e} is not positive "
            f"(n={n}, epsilon={epsilon})"
        )
    value = 24.0 * n**3 * math.log(n) / denom
    rank_bound = math.floor(value) + 1
    return FixedPrecisionBound(rank_bound=rank_bound, vacuous=rank_bound >= n)


def adaptive_rank(a, epsilon, step=8, seed=0):
    """Grow a randomized orthonormal range basis until the projection error
    drops to ``epsilon`` (or the basis is square).

    Blocks of ``step`` Gaussian-sketched columns are orthogonalized twice
    against the accumulated basis before being appended. Returns
    ``(basis, k)``; when even a full basis cannot reach ``epsilon`` the full
    basis is returned and the caller can inspect the achieved error.
    """
    a = as_matrix(a, "A")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if step < 1:
        raise ValueError(f"step must be positive, got {step}")
    seed = check_seed(seed)
    m, n = a.shape
    limit = min(m, n)
    basis = np.zeros((m, 0))
    a_norm = frobenius_norm(a)
    if a_norm <= epsilon:
        return basis, 0
    # Residual directions below this carry nothing new (they are rounding
    # noise of the double orthogonalization) and would corrupt the basis.
    drop_tol = 1e-12 * a_norm
    block_index = 0
    while basis.shape[1] < limit:
        width = min(step, limit - basis.shape[1])
        omega = gaussian_matrix(n, width, derive_seed(seed, "block", block_index))
        block_index += 1
        y = a @ omega
        if basis.shape[1]:
            for _ in range(2):
                y -= basis @ (basis.T @ y)
        f = column_pivoted_qr(y)
        kept = int((np.abs(np.diag(f.r)) > drop_tol).sum())
        if kept == 0:
            # The sketch lies in the current span: the numerical range of A
            # is exhausted and the achieved error is the attainable floor.
            break
        new_cols = f.q[:, :kept]
        if basis.shape[1]:
            new_cols = new_cols - basis @ (basis.T @ new_cols)
            new_cols = householder_qr(new_cols).q
        basis = np.hstack([basis, new_cols])
        if projection_error(a, basis) <= epsilon:
            break
    return basis, basis.shape[1]


def compare_decompositions(a, det_approx, rand_approx, timings=(0.0, 0.0)):
    """Frobenius errors of two approximations of A and their relative gap."""
    a = as_matrix(a, "A")
    det_approx = as_matrix(det_approx, "det_approx")
    rand_approx = as_matrix(rand_approx, "rand_approx")
    if det_approx.shape != a.shape or rand_approx.shape != a.shape:
        raise ValueError(
            f"shape mismatch: A {a.shape}, det {det_approx.shape}, "
            f"rand {rand_approx.shape}"
        )
    ad = frobenius_norm(det_approx - a)
    ar = frobenius_norm(rand_approx - a)
    if ar == ad:
        relative = 0.0
    elif ad == 0.0:
        relative = math.inf
    else:
        relative = (ar - ad) / ad
    det_s, rand_s = timings
    return ErrorReport(
        absolute_deterministic=ad,
        absolute_random=ar,
        relative=relative,
        elapsed_det_seconds=float(det_s),
        elapsed_rand_seconds=float(rand_s),
    )
