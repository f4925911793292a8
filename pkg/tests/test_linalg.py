"""Core factorization contracts, checked against hand values and
numpy.linalg as the independent oracle."""

import numpy as np
import pytest

from randla.errors import ConvergenceError
from randla.linalg import (
    as_matrix,
    column_pivoted_qr,
    frobenius_norm,
    gaussian_matrix,
    householder_qr,
    svd,
    sym_eig,
)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        as_matrix(np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        as_matrix(np.array([[np.nan, 1.0]]))
    with pytest.raises(ValueError):
        as_matrix(np.array([[np.inf]]))
    with pytest.raises(ValueError):
        as_matrix(np.zeros((0, 3)))


class TestGaussianMatrix:
    def test_bit_identical_reruns(self):
        a = gaussian_matrix(3, 3, 42)
        b = gaussian_matrix(3, 3, 42)
        assert np.array_equal(a, b)

    def test_sample_mean_near_zero(self):
        a = gaussian_matrix(100, 100, 7)
        assert abs(a.mean()) < 0.05

    def test_single_entry(self):
        a = gaussian_matrix(1, 1, 0)
        assert a.shape == (1, 1) and np.isfinite(a[0, 0])

    def test_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            gaussian_matrix(0, 3, 1)


class TestHouseholderQr:
    def test_identity(self):
        f = householder_qr(np.eye(3))
        assert np.allclose(f.q, np.eye(3), atol=1e-15)
        assert np.allclose(f.r, np.eye(3), atol=1e-15)

    def test_three_four_five_column(self):
        a = np.array([[3.0, 0.0], [4.0, 0.0], [0.0, 1.0]])
        f = householder_qr(a)
        assert abs(abs(f.r[0, 0]) - 5.0) < 1e-12

    def test_reconstruction_random(self):
        a = gaussian_matrix(50, 20, 11)
        f = householder_qr(a)
        assert frobenius_norm(a - f.q @ f.r) / frobenius_norm(a) < 1e-12
        assert frobenius_norm(f.q.T @ f.q - np.eye(20)) < 1e-12
        assert np.allclose(f.r, np.triu(f.r))

    def test_rejects_wide(self):
        with pytest.raises(ValueError):
            householder_qr(np.ones((2, 3)))


class TestColumnPivotedQr:
    def test_pivot_picks_largest_norm(self):
        a = np.diag([1.0, 10.0, 0.1])
        f = column_pivoted_qr(a)
        assert f.perm[0] == 1

    def test_identity_reconstructs(self):
        f = column_pivoted_qr(np.eye(4))
        a = np.eye(4)
        assert frobenius_norm(a[:, f.perm] - f.q @ f.r) < 1e-12

    def test_rank_revealed(self):
        left = gaussian_matrix(30, 2, 3)
        right = gaussian_matrix(10, 2, 4)
        a = left @ right.T
        f = column_pivoted_qr(a)
        assert abs(f.r[2, 2]) < 1e-10
        diag = np.abs(np.diag(f.r))
        assert np.all(diag[:-1] >= diag[1:] - 1e-12)

    def test_wide_matrix(self):
        a = gaussian_matrix(3, 8, 5)
        f = column_pivoted_qr(a)
        assert frobenius_norm(a[:, f.perm] - f.q @ f.r) < 1e-12 * frobenius_norm(a)


class TestSvd:
    def test_diagonal(self):
        f = svd(np.diag([3.0, 2.0, 1.0]))
        assert np.allclose(f.s, [3.0, 2.0, 1.0], atol=1e-12)

    def test_outer_product_singular_value(self):
        u = np.array([2.0, 0.0, 0.0])
        v = np.array([0.0, 3.0, 0.0, 0.0])
        f = svd(np.outer(u, v))
        assert abs(f.s[0] - 6.0) < 1e-12
        assert np.all(f.s[1:] < 1e-12)

    @pytest.mark.parametrize("shape", [(1, 1), (5, 3), (3, 5), (40, 40), (60, 25)])
    def test_reconstruction_and_orthogonality(self, shape):
        a = gaussian_matrix(*shape, seed=shape[0] * 100 + shape[1])
        f = svd(a)
        rel = frobenius_norm(a - f.u @ (f.s[:, None] * f.vt)) / frobenius_norm(a)
        assert rel < 1e-10
        p = min(shape)
        assert frobenius_norm(f.u.T @ f.u - np.eye(p)) < 1e-12
        assert frobenius_norm(f.vt @ f.vt.T - np.eye(p)) < 1e-12
        assert np.all(np.diff(f.s) <= 1e-12)
        assert np.all(f.s >= 0)

    def test_matches_eigenvalues_of_gram(self):
        """Singular values equal sqrt of the A^T A eigenvalues."""
        a = gaussian_matrix(30, 12, 9)
        f = svd(a)
        eig = sym_eig(a.T @ a)
        assert np.allclose(f.s, np.sqrt(np.maximum(eig.values, 0.0)), atol=1e-8)

    def test_matches_numpy_oracle(self):
        a = gaussian_matrix(25, 18, 13)
        assert np.allclose(svd(a).s, np.linalg.svd(a, compute_uv=False), atol=1e-10)

    def test_projection_of_reconstruction(self):
        a = gaussian_matrix(20, 10, 17)
        f = svd(a)
        again = svd(f.u @ (f.s[:, None] * f.vt))
        assert np.allclose(again.s, f.s, atol=1e-8)

    def test_zero_matrix(self):
        f = svd(np.zeros((4, 3)))
        assert np.all(f.s == 0)

    def test_sign_convention(self):
        f = svd(gaussian_matrix(20, 8, 21))
        for j in range(8):
            col = f.u[:, j]
            assert col[np.argmax(np.abs(col))] >= 0

    def test_iteration_cap_raises(self):
        from randla.backend import golub_kahan_svd

        a = gaussian_matrix(30, 30, 3)
        _, _, _, steps = golub_kahan_svd(a, 1)
        assert steps == -1  # budget exhausted is reported, not hung

    def test_convergence_error_type(self, monkeypatch):
        import randla.linalg as linalg_mod

        monkeypatch.setattr(linalg_mod, "SWEEP_CAP_FACTOR", 0)
        with pytest.raises(ConvergenceError):
            linalg_mod.svd(gaussian_matrix(20, 20, 5))


class TestSymEig:
    def test_diagonal(self):
        f = sym_eig(np.diag([2.0, 1.0]))
        assert np.allclose(f.values, [2.0, 1.0], atol=1e-14)

    def test_exchange_matrix(self):
        f = sym_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(f.values, [1.0, -1.0], atol=1e-14)

    def test_identity(self):
        f = sym_eig(np.eye(5))
        assert np.allclose(f.values, np.ones(5))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_random_symmetric(self):
        a = gaussian_matrix(30, 30, 31)
        s = (a + a.T) / 2
        f = sym_eig(s)
        assert frobenius_norm(s @ f.vectors - f.vectors * f.values) < 1e-8
        assert frobenius_norm(f.vectors.T @ f.vectors - np.eye(30)) < 1e-12
        assert np.all(np.diff(f.values) <= 1e-12)
        # trace invariance
        assert abs(np.trace(s) - f.values.sum()) < 1e-8
        # numpy oracle
        assert np.allclose(f.values, np.sort(np.linalg.eigvalsh(s))[::-1], atol=1e-10)


class TestFrobeniusNorm:
    def test_identity(self):
        assert abs(frobenius_norm(np.eye(3)) - np.sqrt(3)) < 1e-15

    def test_zero(self):
        assert frobenius_norm(np.zeros((2, 5))) == 0.0

    def test_three_four_five(self):
        assert abs(frobenius_norm(np.array([[3.0, 4.0]])) - 5.0) < 1e-15
