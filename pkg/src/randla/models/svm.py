"""Kernel SVM trained by SMO-style dual coordinate ascent, one-vs-one
multiclass on top of it, and cross-validated bandwidth grid search with
exact or random-feature kernels.

The solver works on a precomputed Gram matrix and optimizes the soft-margin
dual with a maximal-violating-pair working set: at each step the most
KKT-violating (i, j) pair is updated analytically inside the box. The
optimality gap it drives below ``tol`` is the standard m(alpha) - M(alpha)
criterion, which the tests re-check from scratch.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from randla.errors import ConvergenceError
from randla.kernels import KernelSpec, exact_kernel_matrix, rff_kernel_matrix, sample_rff
from randla.linalg import as_matrix, frobenius_norm
from randla.rng import RandomStream, check_seed, derive_seed

GRID_MODES = ("deterministic", "random-serial", "random-parallel")


@dataclass(frozen=True)
class SvmModel:
    """Trained binary SVM in dual form.

    ``dual_coefficients`` holds alpha_i in [0, box] for every training
    point (zero off the support); ``labels`` are the +-1 training labels,
    kept so the decision function sum(alpha_i y_i K(x_i, x)) + bias can be
    evaluated. ``gram_source`` is a free-form descriptor of the kernel the
    Gram matrix came from.
    """

    dual_coefficients: np.ndarray
    bias: float
    support_indices: np.ndarray
    labels: np.ndarray
    box: float
    gram_source: str = "precomputed"


@dataclass(frozen=True)
class GridSearchReport:
    """One row per (gamma, mode): mean CV accuracy and elapsed seconds."""

    rows: list = field(default_factory=list)  # (gamma, accuracy, seconds, mode)


def _check_binary_labels(y):
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    values = set(np.unique(y))
    if not values <= {-1.0, 1.0} or len(values) == 0:
        raise ValueError(f"labels must be in {{-1, +1}}, got values {sorted(values)}")
    return y


def svm_train(k_matrix, y, box=1.0, tol=1e-3, max_iter=None,
              gram_source="precomputed") -> SvmModel:
    """Solve the soft-margin dual on a precomputed Gram matrix.

    Raises ConvergenceError (with the remaining KKT gap) if the violating
    pair iteration has not reached ``tol`` after ``max_iter`` updates
    (default 100 * n, at least 10000).
    """
    k_matrix = as_matrix(k_matrix, "K")
    n = k_matrix.shape[0]
    if k_matrix.shape[1] != n:
        raise ValueError(f"Gram matrix must be square, got {k_matrix.shape}")
    if frobenius_norm(k_matrix - k_matrix.T) > 1e-8 * max(1.0, frobenius_norm(k_matrix)):
        raise ValueError("Gram matrix must be symmetric")
    y = _check_binary_labels(y)
    if y.shape[0] != n:
        raise ValueError(f"labels length {y.shape[0]} != Gram size {n}")
    if box <= 0.0 or tol <= 0.0:
        raise ValueError("box and tol must be positive")
    if max_iter is None:
        max_iter = max(10_000, 100 * n)

    q = k_matrix * np.outer(y, y)
    alpha = np.zeros(n)
    grad = -np.ones(n)  # gradient of 0.5 a^T Q a - e^T a at a = 0
    pos = y > 0.0
    gap = np.inf
    for _ in range(max_iter):
        at_upper = alpha >= box - 1e-12 * box
        at_lower = alpha <= 1e-12 * box
        up = np.where(pos, ~at_upper, ~at_lower)
        low = np.where(pos, ~at_lower, ~at_upper)
        score = -y * grad
        if not up.any() or not low.any():
            gap = 0.0
            break
        up_scores = np.where(up, score, -np.inf)
        low_scores = np.where(low, score, np.inf)
        i = int(np.argmax(up_scores))
        j = int(np.argmin(low_scores))
        gap = float(up_scores[i] - low_scores[j])
        if gap <= tol:
            break
        curvature = k_matrix[i, i] + k_matrix[j, j] - 2.0 * k_matrix[i, j]
        if curvature <= 1e-12:
            curvature = 1e-12
        step = gap / curvature
        # Clip so both alphas stay inside [0, box].
        step = min(step, box - alpha[i] if y[i] > 0 else alpha[i])
        step = min(step, alpha[j] if y[j] > 0 else box - alpha[j])
        d_i = y[i] * step
        d_j = -y[j] * step
        alpha[i] += d_i
        alpha[j] += d_j
        grad += q[:, i] * d_i + q[:, j] * d_j
    else:
        raise ConvergenceError(
            f"SMO did not converge within {max_iter} updates; KKT gap = {gap:.3e}"
        )

    support = np.flatnonzero(alpha > 1e-9 * box)
    free = support[(alpha[support] < box - 1e-9 * box)]
    raw = k_matrix @ (alpha * y)
    if free.size:
        bias = float(np.mean(y[free] - raw[free]))
    else:
        score = -y * grad
        at_upper = alpha >= box - 1e-12 * box
        at_lower = alpha <= 1e-12 * box
        up = np.where(pos, ~at_upper, ~at_lower)
        low = np.where(pos, ~at_lower, ~at_upper)
        hi = float(np.max(score[up])) if up.any() else None
        lo = float(np.min(score[low])) if low.any() else None
        if hi is None:
            hi = lo if lo is not None else 0.0
        if lo is None:
            lo = hi
        bias = (hi + lo) / 2.0
    return SvmModel(
        dual_coefficients=alpha,
        bias=bias,
        support_indices=support,
        labels=y,
        box=float(box),
        gram_source=gram_source,
    )


def svm_decision(model: SvmModel, k_test):
    """Decision values for test rows against the training columns."""
    k_test = as_matrix(k_test, "K_test")
    n = model.dual_coefficients.shape[0]
    if k_test.shape[1] != n:
        raise ValueError(
            f"K_test must have {n} columns (one per training point), got "
            f"{k_test.shape[1]}"
        )
    return k_test @ (model.dual_coefficients * model.labels) + model.bias


def svm_predict(model: SvmModel, k_test):
    """Predicted +-1 labels; an exact zero decision value maps to +1."""
    decision = svm_decision(model, k_test)
    return np.where(decision >= 0.0, 1.0, -1.0)


@dataclass(frozen=True)
class OvoModel:
    """One-vs-one ensemble: one binary SVM per class pair.

    Each entry of ``machines`` is (class_a, class_b, train_indices, model);
    within a pair, class_a (the smaller label) maps to +1.
    """

    machines: list
    n_classes: int
    n_train: int


def _check_multiclass_labels(y):
    y = np.asarray(y).astype(int).reshape(-1)
    if y.min() < 0:
        raise ValueError("class labels must be non-negative integers")
    c = int(y.max()) + 1
    if c < 2:
        raise ValueError(f"need at least 2 classes, got {c}")
    counts = np.bincount(y, minlength=c)
    missing = np.flatnonzero(counts == 0)
    if missing.size:
        raise ValueError(f"classes with no samples: {missing.tolist()}")
    return y, c


def one_vs_one_train(k_matrix, y, box=1.0, tol=1e-3) -> OvoModel:
    """Train c(c-1)/2 binary SVMs on the class-pair blocks of a Gram matrix."""
    k_matrix = as_matrix(k_matrix, "K")
    y, c = _check_multiclass_labels(y)
    if y.shape[0] != k_matrix.shape[0]:
        raise ValueError("labels length must match Gram size")
    machines = []
    for a in range(c):
        for b in range(a + 1, c):
            idx = np.flatnonzero((y == a) | (y == b))
            sub = np.ascontiguousarray(k_matrix[np.ix_(idx, idx)])
            pair_y = np.where(y[idx] == a, 1.0, -1.0)
            model = svm_train(sub, pair_y, box=box, tol=tol,
                              gram_source=f"pair {a} vs {b}")
            machines.append((a, b, idx, model))
    return OvoModel(machines=machines, n_classes=c, n_train=y.shape[0])


def one_vs_one_predict(ovo: OvoModel, k_test):
    """Plurality vote over all pair machines; ties go to the smallest class."""
    k_test = as_matrix(k_test, "K_test")
    if k_test.shape[1] != ovo.n_train:
        raise ValueError(
            f"K_test must have {ovo.n_train} columns, got {k_test.shape[1]}"
        )
    votes = np.zeros((k_test.shape[0], ovo.n_classes), dtype=np.int64)
    for a, b, idx, model in ovo.machines:
        pred = svm_predict(model, k_test[:, idx])
        votes[:, a] += pred > 0
        votes[:, b] += pred < 0
    # argmax returns the first maximum, i.e. the smallest class index.
    return np.argmax(votes, axis=1)


def stratified_folds(y, folds, seed):
    """Deterministic stratified fold assignment (array of fold ids).

    Within each class, indices are shuffled by a stream derived from the
    seed and dealt round-robin, so every fold sees every class.
    """
    y = np.asarray(y).astype(int).reshape(-1)
    if folds < 2:
        raise ValueError(f"folds must be >= 2, got {folds}")
    counts = np.bincount(y)
    min_count = counts[counts > 0].min()
    if folds > min_count:
        raise ValueError(
            f"folds = {folds} exceeds the smallest class count {min_count}"
        )
    assign = np.empty(y.shape[0], dtype=np.int64)
    stream = RandomStream(derive_seed(check_seed(seed), "cv-folds"))
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        order = stream.sample_without_replacement(idx.size, idx.size)
        for pos, which in enumerate(order):
            assign[idx[which]] = pos % folds
    return assign


def _cv_accuracy(k_full, y, fold_assign, folds, box, tol):
    """Mean accuracy over folds given a full-data Gram matrix."""
    y = np.asarray(y).astype(int).reshape(-1)
    binary = set(np.unique(y)) <= {0, 1}
    accuracies = []
    for f in range(folds):
        test = fold_assign == f
        train = ~test
        tr = np.flatnonzero(train)
        te = np.flatnonzero(test)
        k_tr = np.ascontiguousarray(k_full[np.ix_(tr, tr)])
        k_te = np.ascontiguousarray(k_full[np.ix_(te, tr)])
        if binary:
            model = svm_train(k_tr, np.where(y[tr] == 1, 1.0, -1.0), box=box, tol=tol)
            pred = (svm_predict(model, k_te) > 0).astype(int)
        else:
            ovo = one_vs_one_train(k_tr, y[tr], box=box, tol=tol)
            pred = one_vs_one_predict(ovo, k_te)
        accuracies.append(float(np.mean(pred == y[te])))
    return float(np.mean(accuracies))


def grid_search_cv(x, y, gammas, folds, mode, m, seed, box=1.0, tol=1e-3,
                   normalization_mode="paper",
                   threads: Optional[int] = None) -> GridSearchReport:
    """Stratified k-fold CV accuracy for each RBF bandwidth in ``gammas``.

    ``mode`` selects the kernel route: "deterministic" evaluates the exact
    RBF kernel; "random-serial" and "random-parallel" build an m-feature
    random Fourier approximation with a per-gamma sub-seed. The parallel
    mode evaluates gamma tasks with a thread pool but, because every task
    derives its own stream from (seed, gamma index), its accuracies are
    bitwise identical to the serial mode.
    """
    x = as_matrix(x, "X")
    y = np.asarray(y).astype(int).reshape(-1)
    if y.shape[0] != x.shape[0]:
        raise ValueError("labels length must match sample count")
    gammas = [float(g) for g in gammas]
    if not gammas:
        raise ValueError("gamma list must not be empty")
    if mode not in GRID_MODES:
        raise ValueError(f"mode must be one of {GRID_MODES}, got {mode!r}")
    if m < 1:
        raise ValueError(f"feature count m must be positive, got {m}")
    seed = check_seed(seed)
    fold_assign = stratified_folds(y, folds, seed)

    def evaluate(task):
        g_index, gamma = task
        start = time.perf_counter()
        if mode == "deterministic":
            k_full = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=gamma))
        else:
            rmap = sample_rff(
                x.shape[1], m, gamma,
                derive_seed(seed, "grid-gamma", g_index),
                normalization_mode=normalization_mode,
            )
            k_full = rff_kernel_matrix(rmap, x, x)
        accuracy = _cv_accuracy(k_full, y, fold_assign, folds, box, tol)
        return gamma, accuracy, time.perf_counter() - start, mode

    tasks = list(enumerate(gammas))
    if mode == "random-parallel":
        workers = threads if threads and threads > 0 else 4
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, tasks))
    else:
        rows = [evaluate(t) for t in tasks]
    return GridSearchReport(rows=rows)
