from fractions import Fraction

import pytest

from intspace import closedform
from intspace.checks import SUITES, iter_specs, run_checks
from intspace.errors import DomainError


class TestIterSpecs:
    def test_count(self):
        # for each n the valid pairs number sum_{w=1}^{min(W, n-1)} (n - w)
        specs = list(iter_specs(6, 2))
        expected = sum(n - w for n in range(2, 7) for w in range(1, min(2, n - 1) + 1))
        assert len(specs) == expected
        assert all(1 <= s.w < s.i <= s.n for s in specs)


class TestRunChecks:
    def test_all_pass(self):
        results = run_checks(8, 3)
        assert [r.check for r in results] == [s.__name__.replace("check_", "") for s in SUITES]
        assert all(r.passed and r.status == "pass" for r in results)
        assert all(r.cases > 0 for r in results)

    def test_deterministic(self):
        assert run_checks(8, 2, seed=5) == run_checks(8, 2, seed=5)

    def test_bad_bounds(self):
        with pytest.raises(DomainError):
            run_checks(1, 1)

    def test_logistic_corruption_detected(self, monkeypatch):
        original = closedform.logistic_mean_sum_exact
        monkeypatch.setattr(closedform, "logistic_mean_sum_exact",
                            lambda s: original(s) * (1 + Fraction(1, 10**6)))
        by_name = {r.check: r for r in run_checks(8, 2)}
        assert not by_name["logistic_series_vs_sum"].passed
        assert "first failure" in by_name["logistic_series_vs_sum"].detail
