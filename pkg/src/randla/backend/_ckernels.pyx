# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``: same algorithms, same contracts.

Each routine mirrors the pure NumPy reference step for step (reflector
construction, pivot rule, shift/rotation sequence, thresholds), so the two
backends agree to rounding error and either one can satisfy the test suite.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport copysign, fabs, hypot, sqrt

cnp.import_array()

BACKEND_NAME = "cython"

cdef double _EPS = float(np.finfo(np.float64).eps)


cdef double _make_reflector(double[::1] x) noexcept nogil:
    """Overwrite x with the Householder vector (x[0] := 1); return beta."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double sigma = 0.0, x0 = x[0], mu, v0, beta
    for i in range(1, n):
        sigma += x[i] * x[i]
    x[0] = 1.0
    if sigma == 0.0:
        return 0.0 if x0 >= 0.0 else 2.0
    mu = sqrt(x0 * x0 + sigma)
    if x0 <= 0.0:
        v0 = x0 - mu
    else:
        v0 = -sigma / (x0 + mu)
    beta = 2.0 * v0 * v0 / (sigma + v0 * v0)
    for i in range(1, n):
        x[i] /= v0
    return beta


cdef void _apply_reflector_rows(double[:, ::1] mat, double[::1] v, double beta,
                                Py_ssize_t row0, Py_ssize_t col0) noexcept nogil:
    """mat[row0:, col0:] <- (I - beta v v^T) mat[row0:, col0:]."""
    cdef Py_ssize_t i, c, m = mat.shape[0], n = mat.shape[1]
    cdef double w
    if beta == 0.0:
        return
    for c in range(col0, n):
        w = 0.0
        for i in range(row0, m):
            w += v[i - row0] * mat[i, c]
        w *= beta
        for i in range(row0, m):
            mat[i, c] -= v[i - row0] * w


cdef void _apply_reflector_cols(double[:, ::1] mat, double[::1] w, double omega,
                                Py_ssize_t row0, Py_ssize_t col0) noexcept nogil:
    """mat[row0:, col0:] <- mat[row0:, col0:] (I - omega w w^T)."""
    cdef Py_ssize_t i, c, m = mat.shape[0], n = mat.shape[1]
    cdef double acc
    if omega == 0.0:
        return
    for i in range(row0, m):
        acc = 0.0
        for c in range(col0, n):
            acc += mat[i, c] * w[c - col0]
        acc *= omega
        for c in range(col0, n):
            mat[i, c] -= acc * w[c - col0]


cdef void _rotate_columns(double[:, ::1] mat, Py_ssize_t p, Py_ssize_t q,
                          double c, double s) noexcept nogil:
    cdef Py_ssize_t i, m = mat.shape[0]
    cdef double t
    for i in range(m):
        t = c * mat[i, p] + s * mat[i, q]
        mat[i, q] = c * mat[i, q] - s * mat[i, p]
        mat[i, p] = t


cdef void _rotate_rows(double[:, ::1] mat, Py_ssize_t p, Py_ssize_t q,
                       double c, double s) noexcept nogil:
    cdef Py_ssize_t j, n = mat.shape[1]
    cdef double t
    for j in range(n):
        t = c * mat[p, j] + s * mat[q, j]
        mat[q, j] = c * mat[q, j] - s * mat[p, j]
        mat[p, j] = t


def householder_qr(a):
    """Thin QR of an m x n matrix with m >= n via Householder reflections."""
    r_arr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] r = r_arr
    cdef Py_ssize_t m = r.shape[0], n = r.shape[1], i, j
    vs_arr = np.zeros((n, m))
    betas_arr = np.zeros(n)
    cdef double[:, ::1] vs = vs_arr
    cdef double[::1] betas = betas_arr
    for j in range(n):
        for i in range(j, m):
            vs[j, i - j] = r[i, j]
        betas[j] = _make_reflector(vs[j, : m - j])
        _apply_reflector_rows(r, vs[j, : m - j], betas[j], j, j)
    q_arr = np.zeros((m, n))
    cdef double[:, ::1] q = q_arr
    for j in range(n):
        q[j, j] = 1.0
    for j in range(n - 1, -1, -1):
        _apply_reflector_rows(q, vs[j, : m - j], betas[j], j, 0)
    return q_arr, np.triu(r_arr[:n, :])


def column_pivoted_qr(a):
    """QR with greedy largest-residual-column-norm pivoting (see the
    reference backend for the contract)."""
    r_arr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] r = r_arr
    cdef Py_ssize_t m = r.shape[0], n = r.shape[1], k = min(m, n)
    cdef Py_ssize_t i, j, c, p
    perm_arr = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t[::1] perm = perm_arr
    vs_arr = np.zeros((k, m))
    betas_arr = np.zeros(k)
    cdef double[:, ::1] vs = vs_arr
    cdef double[::1] betas = betas_arr
    cdef double best, nrm, t
    cdef Py_ssize_t tmp
    for j in range(k):
        best = -1.0
        p = j
        for c in range(j, n):
            nrm = 0.0
            for i in range(j, m):
                nrm += r[i, c] * r[i, c]
            if nrm > best:
                best = nrm
                p = c
        if p != j:
            for i in range(m):
                t = r[i, j]
                r[i, j] = r[i, p]
                r[i, p] = t
            tmp = perm[j]
            perm[j] = perm[p]
            perm[p] = tmp
        for i in range(j, m):
            vs[j, i - j] = r[i, j]
        betas[j] = _make_reflector(vs[j, : m - j])
        _apply_reflector_rows(r, vs[j, : m - j], betas[j], j, j)
    q_arr = np.zeros((m, k))
    cdef double[:, ::1] q = q_arr
    for j in range(k):
        q[j, j] = 1.0
    for j in range(k - 1, -1, -1):
        _apply_reflector_rows(q, vs[j, : m - j], betas[j], j, 0)
    return q_arr, np.triu(r_arr[:k, :]), perm_arr


def golub_kahan_svd(a, step_cap):
    """Thin SVD of an m x n matrix (m >= n): Householder bidiagonalization,
    then implicit-shift QR sweeps with Givens bulge chasing."""
    b_arr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] b = b_arr
    cdef Py_ssize_t m = b.shape[0], n = b.shape[1]
    cdef Py_ssize_t i, j, k, l, idx
    # Bidiagonalization; reflectors kept for the accumulation passes.
    lv_arr = np.zeros((n, m))
    lbeta_arr = np.zeros(n)
    rv_arr = np.zeros((n, n)) if n > 2 else np.zeros((1, n))
    romega_arr = np.zeros(n)
    cdef double[:, ::1] lv = lv_arr
    cdef double[::1] lbeta = lbeta_arr
    cdef double[:, ::1] rv = rv_arr
    cdef double[::1] romega = romega_arr
    for j in range(n):
        for i in range(j, m):
            lv[j, i - j] = b[i, j]
        lbeta[j] = _make_reflector(lv[j, : m - j])
        _apply_reflector_rows(b, lv[j, : m - j], lbeta[j], j, j)
        if j < n - 2:
            for i in range(j + 1, n):
                rv[j, i - j - 1] = b[j, i]
            romega[j] = _make_reflector(rv[j, : n - j - 1])
            _apply_reflector_cols(b, rv[j, : n - j - 1], romega[j], j, j + 1)
    u_arr = np.zeros((m, n))
    cdef double[:, ::1] u = u_arr
    for j in range(n):
        u[j, j] = 1.0
    for j in range(n - 1, -1, -1):
        _apply_reflector_rows(u, lv[j, : m - j], lbeta[j], j, 0)
    vt_arr = np.eye(n)
    cdef double[:, ::1] vt = vt_arr
    for j in range(n - 2):
        _apply_reflector_rows(vt, rv[j, : n - j - 1], romega[j], j + 1, 0)
    d_arr = np.zeros(n)
    e_arr = np.zeros(n)
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    for i in range(n):
        d[i] = b[i, i]
        if i > 0:
            e[i] = b[i - 1, i]
    # Implicit-shift QR phase.
    cdef double anorm = 0.0, c, s, f, g, h, x, y, z, zz
    cdef long steps = 0, cap = int(step_cap)
    cdef bint cancel
    for i in range(n):
        if fabs(d[i]) + fabs(e[i]) > anorm:
            anorm = fabs(d[i]) + fabs(e[i])
    for k in range(n - 1, -1, -1):
        while True:
            cancel = False
            l = k
            while l > 0:
                if fabs(e[l]) <= _EPS * anorm:
                    e[l] = 0.0
                    break
                if fabs(d[l - 1]) <= _EPS * anorm:
                    cancel = True
                    break
                l -= 1
            if cancel:
                c = 0.0
                s = 1.0
                for i in range(l, k + 1):
                    f = s * e[i]
                    e[i] = c * e[i]
                    if fabs(f) <= _EPS * anorm:
                        break
                    g = d[i]
                    h = hypot(f, g)
                    d[i] = h
                    c = g / h
                    s = -f / h
                    _rotate_columns(u, l - 1, i, c, s)
                continue
            z = d[k]
            if l == k:
                if z < 0.0:
                    d[k] = -z
                    for j in range(n):
                        vt[k, j] = -vt[k, j]
                break
            steps += 1
            if steps > cap:
                return u_arr, d_arr, vt_arr, -cap
            x = d[l]
            y = d[k - 1]
            g = e[k - 1]
            h = e[k]
            f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y)
            g = hypot(f, 1.0)
            f = ((x - z) * (x + z) + h * (y / (f + copysign(g, f)) - h)) / x
            c = 1.0
            s = 1.0
            for j in range(l, k):
                idx = j + 1
                g = e[idx]
                y = d[idx]
                h = s * g
                g = c * g
                zz = hypot(f, h)
                e[j] = zz
                c = f / zz
                s = h / zz
                f = x * c + g * s
                g = g * c - x * s
                h = y * s
                y = y * c
                _rotate_rows(vt, j, idx, c, s)
                zz = hypot(f, h)
                d[j] = zz
                if zz != 0.0:
                    c = f / zz
                    s = h / zz
                f = c * g + s * y
                x = c * y - s * g
                _rotate_columns(u, j, idx, c, s)
            e[l] = 0.0
            e[k] = f
            d[k] = x
    order = np.argsort(-d_arr, kind="stable")
    return u_arr[:, order], d_arr[order], vt_arr[order, :], int(steps)


def jacobi_sym_eig(s_mat, sweep_cap):
    """Symmetric eigendecomposition by cyclic Jacobi rotations."""
    a_arr = np.array(s_mat, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] a = a_arr
    cdef Py_ssize_t n = a.shape[0], p, q, i
    v_arr = np.eye(n)
    cdef double[:, ::1] v = v_arr
    if n == 1:
        return a_arr[0, :1].copy(), v_arr, 0
    cdef double fro = 0.0, skip, apq, theta, t, c, sn, tp, tq
    cdef long sweeps = 0, cap = int(sweep_cap)
    cdef bint rotated, converged
    for p in range(n):
        for q in range(n):
            fro += a[p, q] * a[p, q]
    fro = sqrt(fro)
    skip = _EPS * fro
    converged = fro == 0.0
    while not converged:
        sweeps += 1
        if sweeps > cap:
            return np.diag(a_arr).copy(), v_arr, -cap
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) <= skip:
                    continue
                rotated = True
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                sn = t * c
                for i in range(n):
                    tp = a[i, p]
                    tq = a[i, q]
                    a[i, p] = c * tp - sn * tq
                    a[i, q] = sn * tp + c * tq
                for i in range(n):
                    tp = a[p, i]
                    tq = a[q, i]
                    a[p, i] = c * tp - sn * tq
                    a[q, i] = sn * tp + c * tq
                for i in range(n):
                    tp = v[i, p]
                    v[i, p] = c * tp - sn * v[i, q]
                    v[i, q] = sn * tp + c * v[i, q]
        if not rotated:
            converged = True
    values = np.diag(a_arr).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v_arr[:, order], int(sweeps)
