"""Closed-form densities and moments of the interval spacing D_{i,w} = T_i - T_{i-w}.

Indices are 1-based: ``i`` is the upper order-statistic index and ``w`` the
width, with ``1 <= w < i <= n``. Alternating series are summed on exact
rationals in the unit-scale model (``lam = 1`` or ``sigma = 1``) and scaled
afterwards; their terms reach ``n**w / w!`` while the result is of order
one, so floating-point summation would cancel catastrophically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError, ParameterError
from .specfun import (
    beta_int,
    binomial,
    digamma_forward_difference,
    factorial,
    log_hyp2f1_pfaff,
    to_real,
)
from .variates import Exponential, Logistic, Uniform, VariateModel

__all__ = [
    "ExactValue",
    "IntervalSpec",
    "MomentResult",
    "density",
    "density_exp",
    "density_logistic",
    "density_uniform",
    "exp_mean_series_exact",
    "exp_mean_sum_exact",
    "exp_second_moment_exact",
    "exp_variance_exact",
    "logistic_mean_series_exact",
    "logistic_mean_sum_exact",
    "logistic_scale_factor",
    "mean",
    "mean_exp_series",
    "mean_exp_sum",
    "mean_logistic_series",
    "mean_logistic_sum",
    "mean_uniform",
    "moments",
    "second_moment_exp_series",
    "var_exp",
    "var_uniform",
    "variance",
]

METHODS = ("closed_form", "quadrature", "simulation")


@dataclass(frozen=True)
class IntervalSpec:
    """Sample size ``n``, upper index ``i`` and width ``w`` of D_{i,w}."""

    n: int
    i: int
    w: int

    def __post_init__(self):
        for name in ("n", "i", "w"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {v!r}")
        if not 1 <= self.w < self.i <= self.n:
            raise DomainError(
                f"need 1 <= w < i <= n, got n={self.n}, i={self.i}, w={self.w}")

    @property
    def lower(self):
        """Index of the lower order statistic, ``i - w``."""
        return self.i - self.w


@dataclass(frozen=True)
class MomentResult:
    mean: float
    variance: Optional[float]
    method: str
    abs_error_estimate: Optional[float] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}")
        if self.variance is not None and self.variance < 0:
            raise DomainError(f"negative variance {self.variance}")
        if self.method != "closed_form" and self.abs_error_estimate is None:
            raise DomainError(f"{self.method} result needs an error estimate")


class ExactValue(NamedTuple):
    """An exact unit-scale rational together with its scaled real value."""

    exact: Fraction
    value: float


def _as_array(y):
    return np.asarray(y, dtype=float)


def _out(y, arr):
    return float(arr) if np.ndim(y) == 0 else arr


# uniform ---------------------------------------------------------------------

def density_uniform(spec: IntervalSpec, a: float, b: float, y):
    """Density of D_{i,w} for Uniform(a, b); it does not depend on ``i``."""
    width = Uniform(a, b).width
    n, w = spec.n, spec.w
    pref = to_real(Fraction(factorial(n), factorial(w - 1) * factorial(n - w)))
    ya = _as_array(y)
    r = np.clip(ya / width, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        body = pref / width * r ** (w - 1) * (1.0 - r) ** (n - w)
    inside = (ya >= 0) & (ya <= width)
    return _out(y, np.where(inside, body, 0.0))


def mean_uniform(spec: IntervalSpec, a: float, b: float) -> MomentResult:
    width = Uniform(a, b).width
    return MomentResult(spec.w * width / (spec.n + 1), var_uniform(spec, a, b), "closed_form")


def var_uniform(spec: IntervalSpec, a: float, b: float) -> float:
    width = Uniform(a, b).width
    n, w = spec.n, spec.w
    return to_real(Fraction(w * (n + 1 - w), n + 2)) * (width / (n + 1)) ** 2


# exponential -----------------------------------------------------------------

def density_exp(spec: IntervalSpec, lam: float, y):
    Exponential(lam)
    n, i, w = spec.n, spec.i, spec.w
    pref = to_real(w * binomial(n - i + w, n - i))
    ya = _as_array(y)
    yp = np.maximum(ya, 0.0)
    body = pref * lam * np.exp(-lam * yp * (n - i + 1)) * (-np.expm1(-lam * yp)) ** (w - 1)
    return _out(y, np.where(ya >= 0, body, 0.0))


def _exp_prefactor(spec):
    n, i, w = spec.n, spec.i, spec.w
    return Fraction(factorial(n - i + w), factorial(w - 1) * factorial(n - i))


def _exp_alternating(spec, power):
    n, i, w = spec.n, spec.i, spec.w
    total = Fraction(0)
    for k in range(w):
        total += (-1) ** k * binomial(w - 1, k) / (n - i + w - k) ** power
    # the (-1)^(w-1) from (e^{-x} - 1)^(w-1) belongs to both moments
    return (-1) ** (w - 1) * total


def exp_mean_series_exact(spec: IntervalSpec) -> Fraction:
    """Alternating-series mean at unit rate, exact."""
    return _exp_prefactor(spec) * _exp_alternating(spec, 2)


def exp_second_moment_exact(spec: IntervalSpec) -> Fraction:
    return 2 * _exp_prefactor(spec) * _exp_alternating(spec, 3)


def exp_variance_exact(spec: IntervalSpec) -> Fraction:
    var = exp_second_moment_exact(spec) - exp_mean_series_exact(spec) ** 2
    if var <= 0:
        raise ArithmeticError(f"nonpositive exact variance {var} for {spec}")
    return var


def exp_mean_sum_exact(spec: IntervalSpec) -> Fraction:
    """Harmonic-sum mean at unit rate: sum over the w spacings inside the interval."""
    n, i, w = spec.n, spec.i, spec.w
    return sum((Fraction(1, n - i + j + 1) for j in range(w)), Fraction(0))


def mean_exp_series(spec: IntervalSpec, lam: float = 1.0) -> ExactValue:
    Exponential(lam)
    exact = exp_mean_series_exact(spec)
    return ExactValue(exact, to_real(exact) / lam)


def mean_exp_sum(spec: IntervalSpec, lam: float = 1.0) -> float:
    Exponential(lam)
    n, i, w = spec.n, spec.i, spec.w
    return math.fsum(1.0 / (lam * (n - i + j + 1)) for j in range(w))


def second_moment_exp_series(spec: IntervalSpec, lam: float = 1.0) -> float:
    Exponential(lam)
    return to_real(exp_second_moment_exact(spec)) / lam**2


def var_exp(spec: IntervalSpec, lam: float = 1.0) -> float:
    Exponential(lam)
    return to_real(exp_variance_exact(spec)) / lam**2


# logistic --------------------------------------------------------------------

def logistic_scale_factor(spec: IntervalSpec) -> Fraction:
    """``w * prod_{j=1}^{w} (i-j)(n-i+j) / (j (n+j))``."""
    n, i, w = spec.n, spec.i, spec.w
    s2 = Fraction(w)
    for j in range(1, w + 1):
        s2 *= Fraction((i - j) * (n - i + j), j * (n + j))
    return s2


def density_logistic(spec: IntervalSpec, mu: float, sigma: float, y, rel_tol: float = 1e-13):
    """Density of D_{i,w} for Logistic(mu, sigma) via the hypergeometric closed form.

    Evaluated in logs: the factors ``(e^v - 1)^(w-1)`` and the Pfaff
    prefactor ``e^{-m v}`` separately over/underflow for large ``v = y/sigma``.
    """
    Logistic(mu, sigma)
    n, i, w = spec.n, spec.i, spec.w
    log_s2 = math.log(to_real(logistic_scale_factor(spec))) - math.log(sigma)
    a, b = i, n - i + w + 1
    ya = _as_array(y)
    flat = ya.reshape(-1)
    out = np.zeros_like(flat)
    for idx, yv in enumerate(flat):
        if yv < 0 or (yv == 0 and w > 1):
            continue
        v = yv / sigma
        if v == 0.0:
            out[idx] = math.exp(log_s2)
            continue
        log_f = log_hyp2f1_pfaff(a, b, -math.expm1(-v), math.exp(-v), rel_tol)
        log_body = v + (w - 1) * _log_expm1(v)
        out[idx] = math.exp(log_s2 + log_body + log_f)
    return _out(y, out.reshape(ya.shape))


def _log_expm1(v):
    # log(e^v - 1) for v > 0 without overflow
    return v + math.log(-math.expm1(-v)) if v > 1.0 else math.log(math.expm1(v))


def logistic_mean_series_exact(spec: IntervalSpec) -> Fraction:
    """Quadruple-sum mean at unit scale, exact.

    Outer sum over ``k`` with prefactor
    ``n! / ((i-w-1)! (w-1-k)! (n-i+1+k)!) (-1)^(w-1-k)``; the bracket holds
    the digamma-difference term, the ``l``-sum of betas, the single beta with
    coefficient ``(w-1-k)/(n-i+w-1)`` and the double ``(l, j)`` sum. Terms with
    a zero leading coefficient are skipped before their beta is touched.
    """
    n, i, w = spec.n, spec.i, spec.w
    big = n - i + w  # recurring n - i + w
    total = Fraction(0)
    for k in range(w):
        pref = Fraction(factorial(n),
                        factorial(i - w - 1) * factorial(w - 1 - k) * factorial(n - i + 1 + k))
        if (w - 1 - k) % 2:
            pref = -pref
        m = i - k - 1
        bracket = digamma_forward_difference(m) / m
        for l in range(1, big):
            bracket -= Fraction(1, big - l) * beta_int(big + 1 - l, m)
        r = w - 1 - k
        if r != 0:
            bracket -= Fraction(r, big - 1) * _beta_checked(big + 1, i - k - 2)
        for l in range(2, r + 1):
            inner = Fraction(0)
            for j in range(l):
                s3 = Fraction(factorial(r) * factorial(big - l - 1),
                              factorial(r - l) * factorial(big - l + j) * l * factorial(l - 1 - j))
                inner += s3 * _beta_checked(big + 1 + j, i - k - 2 - j)
            bracket += inner if l % 2 == 0 else -inner
        total += pref * bracket
    return total


def _beta_checked(p, q):
    try:
        return beta_int(p, q)
    except ParameterError as exc:
        raise ParameterError(f"logistic mean series reached a beta pole: {exc}") from exc


def logistic_mean_sum_exact(spec: IntervalSpec) -> Fraction:
    n, i, w = spec.n, spec.i, spec.w
    return sum((Fraction(n, (i - j - 1) * (n - i + j + 1)) for j in range(w)), Fraction(0))


def mean_logistic_series(spec: IntervalSpec, mu: float = 0.0, sigma: float = 1.0) -> float:
    Logistic(mu, sigma)
    return sigma * to_real(logistic_mean_series_exact(spec))


def mean_logistic_sum(spec: IntervalSpec, mu: float = 0.0, sigma: float = 1.0) -> float:
    Logistic(mu, sigma)
    n, i, w = spec.n, spec.i, spec.w
    return math.fsum(sigma * n / ((i - j - 1) * (n - i + j + 1)) for j in range(w))


# dispatch --------------------------------------------------------------------

def density(spec: IntervalSpec, model: VariateModel, y):
    if isinstance(model, Uniform):
        return density_uniform(spec, model.a, model.b, y)
    if isinstance(model, Exponential):
        return density_exp(spec, model.lam, y)
    if isinstance(model, Logistic):
        return density_logistic(spec, model.mu, model.sigma, y)
    raise DomainError(f"no closed form for {model!r}")


def mean(spec: IntervalSpec, model: VariateModel) -> float:
    """Closed-form mean using the alternating series for exp and logistic."""
    if isinstance(model, Uniform):
        return mean_uniform(spec, model.a, model.b).mean
    if isinstance(model, Exponential):
        return mean_exp_series(spec, model.lam).value
    if isinstance(model, Logistic):
        return mean_logistic_series(spec, model.mu, model.sigma)
    raise DomainError(f"no closed form for {model!r}")


def variance(spec: IntervalSpec, model: VariateModel) -> Optional[float]:
    """Closed-form variance, or ``None`` for the logistic model (not available)."""
    if isinstance(model, Uniform):
        return var_uniform(spec, model.a, model.b)
    if isinstance(model, Exponential):
        return var_exp(spec, model.lam)
    if isinstance(model, Logistic):
        return None
    raise DomainError(f"no closed form for {model!r}")


def moments(spec: IntervalSpec, model: VariateModel) -> MomentResult:
    return MomentResult(mean(spec, model), variance(spec, model), "closed_form")
