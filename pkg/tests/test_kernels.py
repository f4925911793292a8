"""Exact kernels, random feature maps, and the bandwidth-range sampler."""

import math

import numpy as np
import pytest

from randla.kernels import (
    KernelSpec,
    bandwidth_averaged_rbf_kernel,
    center_kernel_matrix,
    exact_kernel_matrix,
    rff_features,
    rff_kernel_matrix,
    sample_range_rff,
    sample_rff,
)
from randla.linalg import gaussian_matrix, sym_eig
from randla.rng import derive_seed


def unit_ball_points(n, d, seed):
    pts = gaussian_matrix(n, d, seed)
    norms = np.sqrt((pts * pts).sum(axis=1, keepdims=True))
    return pts / np.maximum(norms, 1.0)


class TestExactKernel:
    def test_rbf_diagonal_is_one(self):
        x = gaussian_matrix(10, 3, 1)
        k = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=0.7))
        assert np.allclose(np.diag(k), 1.0, atol=1e-12)

    def test_rbf_unit_distance(self):
        x = np.array([[0.0, 0.0]])
        y = np.array([[1.0, 0.0]])
        k = exact_kernel_matrix(x, y, KernelSpec(kind="rbf", gamma=1.0))
        assert abs(k[0, 0] - 0.36787944117144233) < 1e-12

    def test_gram_symmetric_psd(self):
        x = gaussian_matrix(15, 4, 2)
        k = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=0.5))
        assert np.abs(k - k.T).max() < 1e-14
        assert sym_eig(k).values.min() >= -1e-8

    def test_polynomial(self):
        x = np.array([[1.0, 2.0]])
        y = np.array([[3.0, 1.0]])
        spec = KernelSpec(kind="polynomial", degree=3, coef0=1.0)
        assert np.isclose(exact_kernel_matrix(x, y, spec)[0, 0], 6.0**3)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            exact_kernel_matrix(np.ones((2, 3)), np.ones((2, 4)),
                                KernelSpec(kind="rbf"))

    def test_shift_invariance(self):
        x = gaussian_matrix(8, 3, 3)
        y = gaussian_matrix(5, 3, 4)
        t = np.array([1.5, -2.0, 0.25])
        spec = KernelSpec(kind="rbf", gamma=1.3)
        assert np.allclose(
            exact_kernel_matrix(x, y, spec),
            exact_kernel_matrix(x + t, y + t, spec),
            atol=1e-12,
        )


class TestSampleRff:
    def test_frequency_variance(self):
        gamma = 0.8
        m = sample_rff(20, 5000, gamma, seed=1)
        var = m.frequencies.var()
        assert abs(var - 2 * gamma) < 0.05 * 2 * gamma

    def test_variance_scales_with_gamma(self):
        v1 = sample_rff(10, 5000, 1.0, seed=2).frequencies.var()
        v2 = sample_rff(10, 5000, 2.0, seed=2).frequencies.var()
        assert abs(v2 / v1 - 2.0) < 0.1

    def test_deterministic(self):
        a = sample_rff(5, 100, 1.0, seed=3)
        b = sample_rff(5, 100, 1.0, seed=3)
        assert np.array_equal(a.frequencies, b.frequencies)
        assert np.array_equal(a.phases, b.phases)

    def test_phases_in_range(self):
        m = sample_rff(4, 10_000, 1.0, seed=4)
        assert m.phases.min() >= 0.0
        assert m.phases.max() < 2 * math.pi


class TestFeatures:
    def test_forced_zero_phase(self):
        m = sample_rff(3, 8, 1.0, seed=5, normalization_mode="paper")
        m = type(m)(frequencies=m.frequencies, phases=np.zeros(8),
                    feature_count=8, group_count=1, gamma_or_range=1.0,
                    normalization_mode="paper")
        z = rff_features(m, np.zeros((2, 3)))
        assert np.all(z == 1.0)

    def test_paper_mode_bounded(self):
        m = sample_rff(6, 50, 2.0, seed=6, normalization_mode="paper")
        z = rff_features(m, gaussian_matrix(40, 6, 7) * 3)
        assert z.min() >= -1.0 and z.max() <= 1.0

    def test_corrected_mode_unit_second_moment(self):
        m = 10_000
        rmap = sample_rff(5, m, 1.0, seed=8, normalization_mode="corrected")
        z = rff_features(rmap, gaussian_matrix(1, 5, 9))
        assert abs((z**2).mean() - 1.0) <= 4.0 / math.sqrt(m)


class TestRffKernel:
    def test_corrected_converges_to_kernel(self):
        """Hoeffding-style band: 9 of 10 seeds within 0.1 entrywise."""
        x = unit_ball_points(50, 5, 10)
        k = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=1.0))
        hits = 0
        for seed in range(10):
            rmap = sample_rff(5, 5000, 1.0, derive_seed(11, "conv", seed))
            kh = rff_kernel_matrix(rmap, x, x)
            hits += np.abs(kh - k).max() < 0.1
        assert hits >= 9

    def test_paper_mode_converges_to_half_kernel(self):
        x = unit_ball_points(50, 5, 12)
        k = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=1.0))
        off = ~np.eye(50, dtype=bool)
        hits = 0
        for seed in range(10):
            rmap = sample_rff(5, 5000, 1.0, derive_seed(13, "half", seed),
                              normalization_mode="paper")
            kh = rff_kernel_matrix(rmap, x, x)
            hits += np.abs(kh - k / 2.0)[off].max() < 0.1
        assert hits >= 9

    def test_rank_bounded_by_feature_count(self):
        x = gaussian_matrix(60, 3, 14)
        rmap = sample_rff(3, 20, 1.0, seed=15)
        kh = rff_kernel_matrix(rmap, x, x)
        s = np.linalg.svd(kh, compute_uv=False)
        assert s[20] < 1e-10  # the 21st singular value

    def test_gram_psd_every_mode(self):
        x = gaussian_matrix(30, 4, 16)
        for mode in ("paper", "corrected"):
            rmap = sample_rff(4, 64, 0.5, seed=17, normalization_mode=mode)
            kh = rff_kernel_matrix(rmap, x, x)
            assert np.abs(kh - kh.T).max() < 1e-12
            assert sym_eig(kh).values.min() >= -1e-10

    def test_error_decays_with_m(self):
        """Median max error over 11 seeds improves from m to 4m."""
        x = unit_ball_points(30, 4, 18)
        k = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=1.0))
        errs = {m: [] for m in (250, 1000)}
        for m in errs:
            for seed in range(11):
                rmap = sample_rff(4, m, 1.0, derive_seed(19, "decay", m, seed))
                errs[m].append(np.abs(rff_kernel_matrix(rmap, x, x) - k).max())
        assert np.median(errs[1000]) < np.median(errs[250])


class TestRangeRff:
    def test_degenerate_interval_equals_plain(self):
        ranged = sample_range_rff(4, 50, 3, (0.9, 0.9), seed=20)
        plain = sample_rff(4, 150, 0.9, seed=20)
        assert np.array_equal(ranged.frequencies, plain.frequencies)
        assert np.array_equal(ranged.phases, plain.phases)

    def test_single_group(self):
        rmap = sample_range_rff(4, 30, 1, (0.5, 2.0), seed=21)
        assert rmap.group_count == 1
        assert rmap.total_features == 30

    def test_matches_bandwidth_averaged_kernel(self):
        """Closed-form oracle: the uniform-bandwidth average of the RBF
        kernel is (exp(-lo r^2) - exp(-hi r^2)) / ((hi - lo) r^2)."""
        lo, hi = 0.5, 2.0
        x = unit_ball_points(40, 4, 22)
        diffs = x[:, None, :] - x[None, :, :]
        r2 = (diffs**2).sum(axis=2)
        with np.errstate(divide="ignore", invalid="ignore"):
            target = (np.exp(-lo * r2) - np.exp(-hi * r2)) / ((hi - lo) * r2)
        target[r2 == 0] = 1.0
        hits = 0
        for seed in range(10):
            rmap = sample_range_rff(4, 1000, 10, (lo, hi),
                                    derive_seed(23, "range", seed))
            kh = rff_kernel_matrix(rmap, x, x)
            hits += np.abs(kh - target).max() < 0.1
        assert hits >= 9

    def test_rejects_bad_interval(self):
        for interval in ((0.0, 1.0), (2.0, 1.0), (-1.0, 1.0)):
            with pytest.raises(ValueError):
                sample_range_rff(3, 10, 2, interval, seed=0)


class TestBandwidthAveragedKernel:
    def test_matches_gauss_legendre_quadrature(self):
        from numpy.polynomial.legendre import leggauss

        lo, hi = 0.5, 2.0
        x = gaussian_matrix(6, 3, 30)
        k = bandwidth_averaged_rbf_kernel(x, x, lo, hi)
        nodes, weights = leggauss(60)
        g = (lo + hi) / 2 + (hi - lo) / 2 * nodes
        r2 = ((x[:, None, :] - x[None, :, :]) ** 2).sum(axis=2)
        for i in range(6):
            for j in range(6):
                quad = (weights * np.exp(-g * r2[i, j])).sum() / 2.0
                assert abs(k[i, j] - quad) < 1e-13

    def test_degenerate_interval_is_plain_rbf(self):
        x = gaussian_matrix(5, 2, 31)
        k = bandwidth_averaged_rbf_kernel(x, x, 0.7, 0.7)
        exact = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=0.7))
        assert np.allclose(k, exact, atol=1e-12)

    def test_diagonal_is_one(self):
        x = gaussian_matrix(8, 4, 32)
        k = bandwidth_averaged_rbf_kernel(x, x, 0.3, 1.7)
        assert np.allclose(np.diag(k), 1.0, atol=1e-12)

    def test_between_endpoint_kernels(self):
        x = gaussian_matrix(7, 3, 33)
        lo_k = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=0.5))
        hi_k = exact_kernel_matrix(x, x, KernelSpec(kind="rbf", gamma=2.0))
        avg = bandwidth_averaged_rbf_kernel(x, x, 0.5, 2.0)
        assert np.all(avg <= lo_k + 1e-12)
        assert np.all(avg >= hi_k - 1e-12)


class TestShiftInvariance:
    def test_rff_kernel_shift_stable_to_sampling_accuracy(self):
        """With a frozen map, translating both inputs moves the kernel
        estimate only within its own Monte Carlo band (the cosine features
        are shift invariant in expectation over the phases, not pointwise)."""
        m = 10_000
        x = gaussian_matrix(10, 3, 26) * 0.5
        t = np.array([0.7, -0.3, 0.2])
        rmap = sample_rff(3, m, 1.0, seed=27)
        k1 = rff_kernel_matrix(rmap, x, x)
        k2 = rff_kernel_matrix(rmap, x + t, x + t)
        assert np.abs(k1 - k2).max() < 5.0 / math.sqrt(m)


class TestCentering:
    def test_idempotent(self):
        x = gaussian_matrix(6, 6, 24)
        k = (x + x.T) / 2
        once = center_kernel_matrix(k)
        twice = center_kernel_matrix(once)
        assert np.abs(once - twice).max() < 1e-12

    def test_all_ones_to_zero(self):
        assert np.abs(center_kernel_matrix(np.ones((4, 4)))).max() < 1e-14

    def test_row_sums_vanish(self):
        x = gaussian_matrix(5, 5, 25)
        kc = center_kernel_matrix((x + x.T) / 2)
        assert np.abs(kc.sum(axis=0)).max() < 1e-10
        assert np.abs(kc.sum(axis=1)).max() < 1e-10

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            center_kernel_matrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
