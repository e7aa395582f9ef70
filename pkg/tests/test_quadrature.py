import numpy as np
import pytest

from intspace import closedform as cf
from intspace.closedform import IntervalSpec
from intspace.errors import DomainError, QuadratureError
from intspace.quadrature import (
    QuadratureConfig,
    generic_density,
    generic_moment,
    generic_moments,
    moment_upper_limit,
    normalization,
)
from intspace.variates import Exponential, Logistic, Uniform


class TestConfig:
    @pytest.mark.parametrize("kw", [{"abs_tol": 0.0}, {"rel_tol": 0.5}, {"max_subdivisions": 5}])
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            QuadratureConfig(**kw)


class TestDensity:
    def test_uniform_outside_support(self):
        assert generic_density(IntervalSpec(5, 3, 2), Uniform(0, 1), 1.2) == 0.0
        assert generic_density(IntervalSpec(5, 3, 2), Uniform(0, 1), -0.2) == 0.0

    def test_uniform_example(self):
        spec = IntervalSpec(5, 3, 2)
        assert generic_density(spec, Uniform(0, 1), 0.3) == pytest.approx(
            cf.density_uniform(spec, 0, 1, 0.3), rel=1e-12)

    def test_logistic_example(self):
        spec = IntervalSpec(20, 10, 3)
        assert abs(generic_density(spec, Logistic(0, 1), 0.5) - cf.density_logistic(spec, 0, 1, 0.5)) <= 1e-8

    def test_array_shape(self):
        y = np.linspace(0.1, 0.5, 6).reshape(2, 3)
        out = generic_density(IntervalSpec(8, 4, 2), Exponential(1.0), y)
        assert out.shape == (2, 3)

    def test_subdivision_limit_reports_estimate(self):
        cfg = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=10)
        with pytest.raises(QuadratureError) as info:
            generic_density(IntervalSpec(60, 30, 3), Logistic(0, 1), 0.2, cfg)
        assert info.value.estimate is not None and info.value.error is not None


class TestMoments:
    def test_uniform_mean(self):
        spec = IntervalSpec(12, 7, 3)
        assert generic_moment(spec, Uniform(0, 1), 1) == pytest.approx(3 / 13, abs=1e-10)

    def test_exponential_moments(self):
        spec = IntervalSpec(30, 15, 4)
        assert abs(generic_moment(spec, Exponential(1.0), 1) - cf.mean_exp_sum(spec)) <= 1e-8
        assert abs(generic_moment(spec, Exponential(1.0), 2) - cf.second_moment_exp_series(spec)) <= 1e-8

    def test_uniform_variance(self):
        spec = IntervalSpec(15, 9, 4)
        res = generic_moments(spec, Uniform(0, 1))
        assert res.method == "quadrature" and res.abs_error_estimate is not None
        assert res.variance > 0
        assert abs(res.variance - cf.var_uniform(spec, 0, 1)) <= 1e-8

    def test_logistic_mean(self):
        spec = IntervalSpec(20, 8, 3)
        assert abs(generic_moment(spec, Logistic(1.0, 2.0), 1) - cf.mean_logistic_sum(spec, 1.0, 2.0)) <= 1e-8

    def test_order_check(self):
        with pytest.raises(DomainError):
            generic_moment(IntervalSpec(5, 3, 1), Uniform(0, 1), 3)

    def test_upper_limit_tail_mass(self):
        # P(D > y_max) <= 2 n eps with eps = abs_tol / (10 n)
        cfg = QuadratureConfig()
        spec = IntervalSpec(40, 20, 5)
        y_max = moment_upper_limit(spec, Exponential(1.0), cfg)
        assert np.exp(-y_max * (spec.n - spec.i + 1)) < cfg.abs_tol


class TestNormalization:
    @pytest.mark.parametrize("model", [Uniform(0, 1), Exponential(1.0), Logistic(0, 1)], ids=lambda m: m.kind)
    def test_generic_density_integrates_to_one(self, model):
        rng = np.random.default_rng(2)
        for _ in range(2):
            n = int(rng.integers(3, 41))
            w = int(rng.integers(1, min(6, n - 1) + 1))
            i = int(rng.integers(w + 1, n + 1))
            spec = IntervalSpec(n, i, w)
            total, _ = normalization(spec, model, density=generic_density)
            assert abs(total - 1) <= 1e-6
