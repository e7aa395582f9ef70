import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intspace.errors import DomainError
from intspace.simulate import SimulationConfig, replicate_stream, sample_matrix, sample_sorted
from intspace.spectral import (
    autocovariance,
    dirichlet_response,
    exact_uniform_autocovariance,
    expected_lobe_counts,
    filter_equivalence,
    kernel_response,
    lobe_counts,
)
from intspace.variates import Exponential, Uniform


class TestKernel:
    def test_delta(self):
        np.testing.assert_allclose(kernel_response(1, 64), np.ones(64), rtol=0, atol=1e-15)

    def test_dc(self):
        assert kernel_response(16, 16)[0] == 16

    @pytest.mark.parametrize("w", [1, 2, 3, 10, 37])
    def test_dirichlet_closed_form(self, w):
        np.testing.assert_allclose(kernel_response(w, 1200), dirichlet_response(w, 1200), rtol=0, atol=1e-10)

    def test_bounds(self):
        with pytest.raises(DomainError):
            kernel_response(0, 8)
        with pytest.raises(DomainError):
            kernel_response(9, 8)

    @pytest.mark.parametrize("w", range(1, 30))
    def test_lobe_counts_of_dirichlet(self, w):
        assert lobe_counts(dirichlet_response(w, 4096)) == expected_lobe_counts(w)

    @pytest.mark.parametrize("w", [4, 7, 10])
    def test_zero_count_from_signed_form(self, w):
        # with N a multiple of w every zero of the kernel falls on a bin in (0, N/2]
        N = 200 * w
        signed = dirichlet_response(w, N, signed=True)[1:N // 2 + 1]
        assert int(np.sum(np.abs(signed) < 1e-9)) == expected_lobe_counts(w)[0]


class TestFilterEquivalence:
    def test_hand_example(self):
        rep = filter_equivalence([0, 1, 3, 6], 2)
        assert rep.convolution_ok and rep.convolution_deviation == 0.0

    def test_w1_ratio_is_one(self):
        x = sample_sorted(Uniform(), 300, replicate_stream(1, 0))
        rep = filter_equivalence(x, 1)
        np.testing.assert_allclose(rep.ratio[rep.retained], 1.0, rtol=0, atol=1e-12)

    def test_uniform_n1200_w10(self):
        x = sample_sorted(Uniform(), 1200, replicate_stream(0, 0))
        rep = filter_equivalence(x, 10)
        assert rep.convolution_ok
        assert rep.ratio_matches()
        assert rep.lobes_match()

    def test_report_shapes(self):
        x = sample_sorted(Exponential(1.0), 100, replicate_stream(4, 0))
        rep = filter_equivalence(x, 5)
        n = len(rep.freq_bins)
        assert n == rep.n_fft // 2 + 1
        for field in (rep.spacing_spectrum, rep.interval_spectrum, rep.kernel_response, rep.retained):
            assert len(field) == n
        assert np.all(rep.spacing_spectrum >= 0) and np.all(rep.interval_spectrum >= 0)

    def test_truncated_alignment_is_available(self):
        x = sample_sorted(Uniform(), 1200, replicate_stream(0, 0))
        rep = filter_equivalence(x, 10, alignment="truncated")
        assert rep.convolution_ok and rep.alignment == "truncated"
        assert rep.max_relative_error > 0.05

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            filter_equivalence([0, 1, 2], 2)
        with pytest.raises(DomainError):
            filter_equivalence(np.arange(20.0), 3, N=8)
        with pytest.raises(DomainError):
            filter_equivalence(np.arange(20.0), 3, alignment="centered")

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(0, 1e3), min_size=25, max_size=200).map(sorted), st.integers(1, 20))
    def test_convolution_identity(self, x, w):
        assert filter_equivalence(x, w).convolution_deviation <= 1e-12

    def test_csv(self):
        rep = filter_equivalence(np.arange(12.0) ** 2, 3)
        lines = rep.to_csv().strip().split("\n")
        assert lines[0] == "bin,freq,spacing_spectrum,interval_spectrum,ratio,kernel_response,retained"
        assert len(lines) == len(rep.freq_bins) + 1
        assert "np.float64" not in lines[1]


class TestAutocovariance:
    cfg = SimulationConfig(Uniform(), 60, 800, 21, (6,))

    def test_lag_zero_is_variance(self):
        rep = autocovariance(self.cfg, 40, 6, 8)
        assert rep.empirical_cov[0] == rep.empirical_variance
        m = sample_matrix(Uniform(), 60, 800, 21)
        base = m[:, 39] - m[:, 33]
        assert rep.empirical_variance == np.var(base, ddof=1)

    def test_predicted_triangle(self):
        rep = autocovariance(self.cfg, 40, 6, 8)
        assert rep.predicted[0] == rep.variance_used
        np.testing.assert_array_equal(rep.predicted[6:], 0.0)
        np.testing.assert_allclose(np.diff(rep.predicted[:7]), -rep.variance_used / 6, rtol=1e-12)

    def test_exact_uniform_curve(self):
        rep = autocovariance(self.cfg, 40, 6, 8)
        assert rep.exact_cov[0] == pytest.approx(rep.variance_used, rel=1e-14)
        n, w = 60, 6
        for lag in range(9):
            shared = max(w - lag, 0)
            expected = (shared * (n + 1) - w * w) / ((n + 1) ** 2 * (n + 2))
            assert exact_uniform_autocovariance(n, w, lag) == pytest.approx(expected, rel=1e-14)

    def test_exact_curve_against_brute_force(self):
        # covariance of sums of uniform spacings from the spacing covariance matrix
        n, w = 12, 4
        var = n / ((n + 1) ** 2 * (n + 2))
        cov = -1 / ((n + 1) ** 2 * (n + 2))
        sigma = np.full((n + 1, n + 1), cov) + np.eye(n + 1) * (var - cov)
        for lag in range(7):
            a = np.zeros(n + 1)
            b = np.zeros(n + 1)
            a[11 - w:11] = 1
            b[11 - w - lag:11 - lag] = 1
            assert a @ sigma @ b == pytest.approx(exact_uniform_autocovariance(n, w, lag), rel=1e-12)

    def test_empirical_variance_for_other_models(self):
        cfg = SimulationConfig(Exponential(1.0), 40, 300, 2, (4,))
        rep = autocovariance(cfg, 30, 4, 3)
        assert rep.exact_cov is None and rep.variance_used == rep.empirical_variance

    def test_preconditions(self):
        with pytest.raises(DomainError):
            autocovariance(self.cfg, 40, 6, 12)
        with pytest.raises(DomainError):
            autocovariance(self.cfg, 12, 6, 6)

    def test_csv(self):
        rep = autocovariance(self.cfg, 40, 6, 2)
        lines = rep.to_csv().strip().split("\n")
        assert lines[0] == "lag,empirical_cov,predicted,exact_cov,standard_error"
        assert len(lines) == 4 and "np.float64" not in rep.to_csv()
