"""Self-verification suites run by ``intspace verify``.

Each suite compares two independent routes to the same quantity and
reports the number of cases, the largest absolute disagreement and whether
it is within the suite's tolerance. Functions are looked up on their
modules at call time, so a patched implementation is what gets checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List

import numpy as np

from . import closedform, quadrature
from .closedform import IntervalSpec
from .errors import DomainError, IntSpaceError
from .variates import Exponential, Logistic, Uniform

__all__ = ["CheckResult", "SUITES", "iter_specs", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    check: str
    cases: int
    max_abs_err: float
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "FAIL"


def iter_specs(max_n: int, max_w: int) -> Iterator[IntervalSpec]:
    """Every valid ``(n, i, w)`` with ``n <= max_n`` and ``w <= max_w``."""
    for n in range(2, max_n + 1):
        for w in range(1, min(max_w, n - 1) + 1):
            for i in range(w + 1, n + 1):
                yield IntervalSpec(n, i, w)


def _random_specs(rng, max_n, max_w, count):
    out = []
    for _ in range(count):
        n = rng.randint(2, max(2, max_n))
        w = rng.randint(1, min(max_w, n - 1))
        i = rng.randint(w + 1, n)
        out.append(IntervalSpec(n, i, w))
    return out


def _exact_suite(name, specs, lhs: Callable, rhs: Callable, rtol=0.0) -> CheckResult:
    cases, worst, failed = 0, 0.0, []
    for spec in specs:
        a, b = lhs(spec), rhs(spec)
        cases += 1
        err = abs(float(Fraction(a) - Fraction(b)))
        worst = max(worst, err)
        ok = a == b if rtol == 0 else err <= rtol * abs(float(b))
        if not ok:
            failed.append(spec)
    detail = "" if not failed else f"first failure n={failed[0].n} i={failed[0].i} w={failed[0].w}"
    return CheckResult(name, cases, worst, not failed, detail)


def check_exp_series_vs_sum(max_n, max_w, rng) -> CheckResult:
    return _exact_suite("exp_series_vs_sum", iter_specs(max_n, max_w),
                        lambda s: closedform.exp_mean_series_exact(s),
                        lambda s: closedform.exp_mean_sum_exact(s))


def check_logistic_series_vs_sum(max_n, max_w, rng) -> CheckResult:
    return _exact_suite("logistic_series_vs_sum", iter_specs(max_n, max_w),
                        lambda s: closedform.logistic_mean_series_exact(s),
                        lambda s: closedform.logistic_mean_sum_exact(s), rtol=1e-9)


def check_w1_reductions(max_n, max_w, rng) -> CheckResult:
    """At ``w = 1`` every formula must collapse to the single-spacing result."""
    def exp_var(s):
        try:
            return closedform.exp_variance_exact(s)
        except ArithmeticError:
            return Fraction(-1)

    specs = list(iter_specs(max_n, 1))
    parts = [
        _exact_suite("", specs, exp_var, lambda s: Fraction(1, (s.n - s.i + 1) ** 2)),
        _exact_suite("", specs, lambda s: closedform.exp_mean_series_exact(s),
                     lambda s: Fraction(1, s.n - s.i + 1)),
        _exact_suite("", specs, lambda s: closedform.logistic_mean_series_exact(s),
                     lambda s: Fraction(s.n, (s.i - 1) * (s.n - s.i + 1))),
    ]
    return CheckResult("w1_reductions", sum(p.cases for p in parts), max(p.max_abs_err for p in parts),
                       all(p.passed for p in parts))


def check_exp_variance_positive(max_n, max_w, rng) -> CheckResult:
    cases, failed = 0, []
    for spec in iter_specs(max_n, max_w):
        cases += 1
        try:
            closedform.exp_variance_exact(spec)
        except ArithmeticError:
            failed.append(spec)
    detail = "" if not failed else f"first failure n={failed[0].n} i={failed[0].i} w={failed[0].w}"
    return CheckResult("exp_variance_positive", cases, 0.0, not failed, detail)


_MODELS = (Uniform(0.0, 1.0), Exponential(1.0), Logistic(0.0, 1.0))


def check_normalization(max_n, max_w, rng, per_model=3, tol=1e-8) -> CheckResult:
    cases, worst, ok = 0, 0.0, True
    for model in _MODELS:
        for spec in _random_specs(rng, max_n, max_w, per_model):
            try:
                val, _ = quadrature.normalization(spec, model)
                err = abs(val - 1.0)
            except IntSpaceError:
                err = float("inf")
            cases += 1
            worst = max(worst, err)
            ok = ok and err <= tol
    return CheckResult("normalization", cases, worst, ok)


def check_quadrature_vs_closed(max_n, max_w, rng, per_model=2, points=10, tol=1e-8) -> CheckResult:
    cases, worst, ok = 0, 0.0, True
    for model in _MODELS:
        for spec in _random_specs(rng, max_n, max_w, per_model):
            top = quadrature.order_statistic_scale(spec, model) * 3
            if isinstance(model, Uniform):
                top = min(top, model.width)
            ys = np.linspace(top / points, top, points)
            try:
                err = float(np.max(np.abs(closedform.density(spec, model, ys)
                                          - quadrature.generic_density(spec, model, ys))))
            except IntSpaceError:
                err = float("inf")
            cases += points
            worst = max(worst, err)
            ok = ok and err <= tol
    return CheckResult("quadrature_vs_closed", cases, worst, ok)


SUITES = (
    check_exp_series_vs_sum,
    check_logistic_series_vs_sum,
    check_w1_reductions,
    check_exp_variance_positive,
    check_normalization,
    check_quadrature_vs_closed,
)


def run_checks(max_n: int = 20, max_w: int = 4, seed: int = 0) -> List[CheckResult]:
    """Run every suite over ``n <= max_n`` and ``w <= max_w``."""
    if max_n < 2 or max_w < 1:
        raise DomainError(f"need max_n >= 2 and max_w >= 1, got {max_n}, {max_w}")
    rng = random.Random(seed)
    return [suite(max_n, max_w, rng) for suite in SUITES]
