"""The compiled extension and the pure NumPy fallback must agree."""

import numpy as np
import pytest

from randla.backend import _pykernels

try:
    from randla.backend import _ckernels
except ImportError:
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="extension not built")

SHAPES = [(1, 1), (6, 4), (4, 6), (40, 25), (25, 40), (80, 80)]


def _rand(shape, seed):
    return np.random.default_rng(seed).standard_normal(shape)


@needs_ext
@pytest.mark.parametrize("shape", [s for s in SHAPES if s[0] >= s[1]])
def test_householder_qr_agreement(shape):
    a = _rand(shape, 1)
    q1, r1 = _pykernels.householder_qr(a)
    q2, r2 = _ckernels.householder_qr(a)
    assert np.allclose(q1, q2, atol=1e-12)
    assert np.allclose(r1, r2, atol=1e-12)


@needs_ext
@pytest.mark.parametrize("shape", SHAPES)
def test_column_pivoted_qr_agreement(shape):
    a = _rand(shape, 2)
    q1, r1, p1 = _pykernels.column_pivoted_qr(a)
    q2, r2, p2 = _ckernels.column_pivoted_qr(a)
    assert np.array_equal(p1, p2)
    assert np.allclose(q1, q2, atol=1e-11)
    assert np.allclose(r1, r2, atol=1e-11)


@needs_ext
@pytest.mark.parametrize("shape", [s for s in SHAPES if s[0] >= s[1]])
def test_svd_agreement(shape):
    a = _rand(shape, 3)
    u1, s1, vt1, st1 = _pykernels.golub_kahan_svd(a, 100_000)
    u2, s2, vt2, st2 = _ckernels.golub_kahan_svd(a, 100_000)
    assert st1 >= 0 and st2 >= 0
    assert np.allclose(s1, s2, atol=1e-11 * max(1.0, s1[0]))
    for u, s, vt in ((u1, s1, vt1), (u2, s2, vt2)):
        rec = np.linalg.norm(a - u @ (s[:, None] * vt))
        assert rec < 1e-11 * max(1.0, np.linalg.norm(a))


@needs_ext
@pytest.mark.parametrize("n", [1, 2, 10, 50])
def test_jacobi_agreement(n):
    a = _rand((n, n), 4)
    s = (a + a.T) / 2
    w1, v1, sw1 = _pykernels.jacobi_sym_eig(s, 10_000)
    w2, v2, sw2 = _ckernels.jacobi_sym_eig(s, 10_000)
    assert sw1 >= 0 and sw2 >= 0
    scale = max(1.0, np.abs(w1).max())
    assert np.allclose(w1, w2, atol=1e-10 * scale)
    for w, v in ((w1, v1), (w2, v2)):
        assert np.linalg.norm(s @ v - v * w) < 1e-10 * scale * n
