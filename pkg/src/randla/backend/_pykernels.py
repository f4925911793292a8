"""Pure NumPy implementations of the dense factorization kernels.

These are the reference routines; the compiled extension in ``_ckernels``
mirrors them loop for loop. Everything here is written from first
principles on top of array arithmetic (no ``numpy.linalg`` calls), because
the factorizations themselves are the point of the library.

Kernel contracts (shared with the extension):

* ``householder_qr(A)``        -> (Q, R) thin factors, requires m >= n
* ``column_pivoted_qr(A)``     -> (Q, R, perm) with greedy norm pivoting
* ``golub_kahan_svd(A, cap)``  -> (U, s, Vt, steps); m >= n; steps < 0 on
  iteration-budget exhaustion (|steps| is the budget that was exceeded)
* ``jacobi_sym_eig(S, cap)``   -> (values, vectors, sweeps); sweeps < 0 on
  exhaustion

Singular values / eigenvalues come back sorted non-increasing. Sign
conventions are applied by the caller so both backends share one rule.
"""

import numpy as np

_EPS = float(np.finfo(np.float64).eps)

BACKEND_NAME = "python"


def _householder_vector(x):
    """Reflector (v, beta) with v[0] = 1 and (I - beta v v^T) x = +-|x| e0."""
    v = x.copy()
    v[0] = 1.0
    sigma = float(x[1:] @ x[1:])
    if sigma == 0.0:
        # Already axis-aligned; reflect only to fix a negative leading entry.
        beta = 0.0 if x[0] >= 0.0 else 2.0
        return v, beta
    mu = np.sqrt(x[0] * x[0] + sigma)
    if x[0] <= 0.0:
        v0 = x[0] - mu
    else:
        v0 = -sigma / (x[0] + mu)
    beta = 2.0 * v0 * v0 / (sigma + v0 * v0)
    v[1:] /= v0
    return v, beta


def _apply_reflector_left(block, v, beta):
    # block <- (I - beta v v^T) block
    if beta != 0.0:
        block -= beta * np.outer(v, v @ block)


def householder_qr(a):
    """Thin QR of an m x n matrix with m >= n via Householder reflections."""
    m, n = a.shape
    r = a.copy()
    reflectors = []
    for j in range(n):
        v, beta = _householder_vector(r[j:, j])
        _apply_reflector_left(r[j:, j:], v, beta)
        reflectors.append((v, beta))
    q = np.zeros((m, n))
    for j in range(n):
        q[j, j] = 1.0
    for j in range(n - 1, -1, -1):
        v, beta = reflectors[j]
        _apply_reflector_left(q[j:, :], v, beta)
    return q, np.triu(r[:n, :])


def column_pivoted_qr(a):
    """QR with greedy largest-residual-column-norm pivoting.

    Returns thin Q (m x k), R (k x n) and the pivot order ``perm`` such that
    A[:, perm] = Q R, with k = min(m, n). Residual column norms are
    recomputed at every step (no downdating), so pivot choices are immune to
    cancellation drift.
    """
    m, n = a.shape
    k = min(m, n)
    r = a.copy()
    perm = np.arange(n)
    reflectors = []
    for j in range(k):
        norms = np.einsum("ij,ij->j", r[j:, j:], r[j:, j:])
        p = j + int(np.argmax(norms))
        if p != j:
            r[:, [j, p]] = r[:, [p, j]]
            perm[[j, p]] = perm[[p, j]]
        v, beta = _householder_vector(r[j:, j])
        _apply_reflector_left(r[j:, j:], v, beta)
        reflectors.append((v, beta))
    q = np.zeros((m, k))
    for j in range(k):
        q[j, j] = 1.0
    for j in range(k - 1, -1, -1):
        v, beta = reflectors[j]
        _apply_reflector_left(q[j:, :], v, beta)
    return q, np.triu(r[:k, :]), perm


def _bidiagonalize(a):
    """A = U B V^T with B upper bidiagonal; A is m x n, m >= n.

    Returns (U m x n, d, e, Vt n x n) where d holds the diagonal of B and
    e[i] = B[i-1, i] (e[0] is structurally zero).
    """
    m, n = a.shape
    b = a.copy()
    left = []
    right = []
    for j in range(n):
        v, beta = _householder_vector(b[j:, j])
        _apply_reflector_left(b[j:, j:], v, beta)
        left.append((v, beta))
        if j < n - 2:
            w, omega = _householder_vector(b[j, j + 1 :])
            if omega != 0.0:
                b[j:, j + 1 :] -= omega * np.outer(b[j:, j + 1 :] @ w, w)
            right.append((w, omega))
    u = np.zeros((m, n))
    for j in range(n):
        u[j, j] = 1.0
    for j in range(n - 1, -1, -1):
        v, beta = left[j]
        _apply_reflector_left(u[j:, :], v, beta)
    # A = [H_0..H_{n-1}] B [G_{n-3}..G_0]: accumulate the G product from the
    # innermost factor outward, i.e. ascending j.
    vt = np.eye(n)
    for j in range(len(right)):
        w, omega = right[j]
        if omega != 0.0:
            vt[j + 1 :, :] -= omega * np.outer(w, w @ vt[j + 1 :, :])
    d = np.zeros(n)
    e = np.zeros(n)
    for i in range(n):
        d[i] = b[i, i]
        if i > 0:
            e[i] = b[i - 1, i]
    return u, d, e, vt


def _rotate_columns(mat, p, q, c, s):
    # (col_p, col_q) <- (c*col_p + s*col_q, c*col_q - s*col_p)
    tmp = c * mat[:, p] + s * mat[:, q]
    mat[:, q] = c * mat[:, q] - s * mat[:, p]
    mat[:, p] = tmp


def _rotate_rows(mat, p, q, c, s):
    tmp = c * mat[p, :] + s * mat[q, :]
    mat[q, :] = c * mat[q, :] - s * mat[p, :]
    mat[p, :] = tmp


def golub_kahan_svd(a, step_cap):
    """Thin SVD of an m x n matrix (m >= n) by bidiagonalization followed by
    implicit-shift QR sweeps on the bidiagonal.

    Each QR step uses the Wilkinson shift from the trailing 2x2 of B^T B and
    chases the bulge with Givens rotations accumulated into U and Vt.
    ``step_cap`` bounds the total number of QR steps; on exhaustion the
    returned step count is negative and the factors are not usable.
    """
    m, n = a.shape
    u, d, e, vt = _bidiagonalize(a)
    anorm = 0.0
    for i in range(n):
        anorm = max(anorm, abs(d[i]) + abs(e[i]))
    steps = 0
    for k in range(n - 1, -1, -1):
        while True:
            # Split: find the start of the bidiagonal block ending at k.
            cancel = False
            l = k
            while l > 0:
                if abs(e[l]) <= _EPS * anorm:
                    e[l] = 0.0
                    break
                if abs(d[l - 1]) <= _EPS * anorm:
                    cancel = True
                    break
                l -= 1
            if cancel:
                # d[l-1] is negligible: rotate e[l..k] away against rows
                # below so the block decouples from the zero diagonal.
                c, s = 0.0, 1.0
                for i in range(l, k + 1):
                    f = s * e[i]
                    e[i] = c * e[i]
                    if abs(f) <= _EPS * anorm:
                        break
                    g = d[i]
                    h = np.hypot(f, g)
                    d[i] = h
                    c = g / h
                    s = -f / h
                    _rotate_columns(u, l - 1, i, c, s)
                continue
            z = d[k]
            if l == k:
                # Converged; enforce a nonnegative singular value.
                if z < 0.0:
                    d[k] = -z
                    vt[k, :] = -vt[k, :]
                break
            steps += 1
            if steps > step_cap:
                return u, d, vt, -step_cap
            # Wilkinson shift from the trailing 2x2 of B^T B.
            x = d[l]
            y = d[k - 1]
            g = e[k - 1]
            h = e[k]
            f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y)
            g = np.hypot(f, 1.0)
            f = ((x - z) * (x + z) + h * (y / (f + np.copysign(g, f)) - h)) / x
            # Bulge chase.
            c, s = 1.0, 1.0
            for j in range(l, k):
                i = j + 1
                g = e[i]
                y = d[i]
                h = s * g
                g = c * g
                zz = np.hypot(f, h)
                e[j] = zz
                c = f / zz
                s = h / zz
                f = x * c + g * s
                g = g * c - x * s
                h = y * s
                y = y * c
                _rotate_rows(vt, j, i, c, s)
                zz = np.hypot(f, h)
                d[j] = zz
                if zz != 0.0:
                    c = f / zz
                    s = h / zz
                f = c * g + s * y
                x = c * y - s * g
                _rotate_columns(u, j, i, c, s)
            e[l] = 0.0
            e[k] = f
            d[k] = x
    order = np.argsort(-d, kind="stable")
    return u[:, order], d[order], vt[order, :], steps


def jacobi_sym_eig(s, sweep_cap):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (values, vectors, sweeps) with values sorted non-increasing and
    eigenvectors in the matching columns. ``sweeps`` is negative if the
    off-diagonal mass failed to vanish within ``sweep_cap`` full sweeps.
    """
    a = s.copy()
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a[0, :1].copy(), v, 0
    fro = np.sqrt(np.einsum("ij,ij->", a, a))
    # Rounding keeps entries near eps*|A|, so that is the natural floor;
    # the residual off-norm it allows is ~n*eps*|A|, the accuracy any
    # backward-stable eigensolver delivers anyway.
    skip = _EPS * fro
    sweeps = 0
    converged = fro == 0.0
    while not converged:
        sweeps += 1
        if sweeps > sweep_cap:
            return np.diag(a).copy(), v, -sweep_cap
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (
                    abs(theta) + np.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                # a <- J^T a J with J rotating the (p, q) plane.
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - sn * col_q
                a[:, q] = sn * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sn * row_q
                a[q, :] = sn * row_p + c * row_q
                vec_p = v[:, p].copy()
                v[:, p] = c * vec_p - sn * v[:, q]
                v[:, q] = sn * vec_p + c * v[:, q]
        if not rotated:
            converged = True
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order], sweeps
