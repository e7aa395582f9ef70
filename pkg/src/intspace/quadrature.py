"""Numeric density and moments of D_{i,w} for any variate model.

This is the oracle path for the closed forms: it integrates the joint
density of the two order statistics ``T_{i-w}`` and ``T_i`` directly. The
lower statistic is parameterized by its probability ``u = F(x)``, taken on
the logit scale ``s = log(u / (1 - u))``, and the integrand is handled in
logs. For large ``y`` the integrand collapses into a narrow peak near
``u = 0`` that a plain adaptive rule on ``u`` misses. On the logit scale
the peak keeps a width of order one, and it is located before integrating.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, optimize

from . import closedform
from .closedform import IntervalSpec, MomentResult
from .errors import DomainError, QuadratureError
from .specfun import factorial, to_real
from .variates import Uniform, VariateModel

__all__ = [
    "QuadratureConfig",
    "density_moment",
    "generic_density",
    "generic_moment",
    "generic_moments",
    "moment_upper_limit",
    "normalization",
    "order_statistic_scale",
]


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not 0 < v <= 1e-2:
                raise DomainError(f"{name} must lie in (0, 1e-2], got {v}")
        if self.max_subdivisions < 10:
            raise DomainError(f"max_subdivisions must be >= 10, got {self.max_subdivisions}")


DEFAULT_CONFIG = QuadratureConfig()


def _scale_factor(spec):
    n, i, w = spec.n, spec.i, spec.w
    return to_real(Fraction(factorial(n), factorial(i - w - 1) * factorial(w - 1) * factorial(n - i)))


def _quad(func, lo, hi, cfg, points=None, what="integral"):
    pts = None
    if points is not None:
        pts = [p for p in points if lo < p < hi] or None
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(func, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                                      limit=cfg.max_subdivisions, points=pts)
        except integrate.IntegrationWarning as exc:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                val, err = integrate.quad(func, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                                          limit=cfg.max_subdivisions, points=pts)
            raise QuadratureError(f"{what}: {exc}", estimate=val, error=err) from None
    if err > max(cfg.abs_tol, cfg.rel_tol * abs(val)):
        raise QuadratureError(f"{what}: error estimate {err:.3g} above tolerance",
                              estimate=val, error=err)
    return val, err


_S_RANGE = 700.0      # logit range searched for the integrand's peak
_GRID = 401
_LOG_DROP = 60.0      # window edge: integrand below e^-60 of its peak


def _log1mexp(a):
    # log(1 - e^a) for a <= 0
    return np.where(a > -0.6931471805599453, np.log(-np.expm1(a)), np.log1p(-np.exp(a)))


def _log_integrand_factory(spec, model, y):
    """Log of the joint-density integrand in ``s = logit(F(x))``.

    ``S1 u^(i-w-1) (F(x+y) - F(x))^(w-1) (1 - F(x+y))^(n-i) f(x+y) u (1-u)``
    with ``u = F(x)``; the last two factors are ``du/ds``.
    """
    n, i, w = spec.n, spec.i, spec.w
    log_s1 = math.log(_scale_factor(spec))
    p_low, p_mid, p_high = i - w - 1, w - 1, n - i

    def log_f(s):
        s = np.asarray(s, dtype=float)
        log_u = -np.logaddexp(0.0, -s)
        x = model.logit_quantile(s)
        log_sf_x = np.asarray(model.logsf(x), dtype=float)
        log_tail = np.asarray(model.logsf(x + y), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            total = log_s1 + (p_low + 1) * log_u + log_sf_x + np.asarray(model.logpdf(x + y), dtype=float)
            if p_high:
                total = total + p_high * log_tail
            if p_mid:
                total = total + p_mid * (log_sf_x + _log1mexp(np.minimum(log_tail - log_sf_x, 0.0)))
        return np.where(np.isnan(total), -np.inf, total)

    return log_f


def _density_with_error(spec, model, y, cfg):
    if y < 0:
        return 0.0, 0.0
    lo_sup, hi_sup = model.support()
    s_hi = _S_RANGE
    if math.isfinite(hi_sup):
        if y >= hi_sup - lo_sup:
            return 0.0, 0.0
        u_max = float(model.cdf(hi_sup - y))
        s_hi = min(s_hi, math.log(u_max) - math.log1p(-u_max)) if u_max < 1 else s_hi
    s_lo = -_S_RANGE
    log_f = _log_integrand_factory(spec, model, y)

    grid = np.linspace(s_lo, s_hi, _GRID)
    vals = log_f(grid)
    k = int(np.argmax(vals))
    if not np.isfinite(vals[k]):
        return 0.0, 0.0
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, _GRID - 1)]
    opt = optimize.minimize_scalar(lambda t: -float(log_f(t)), bounds=(a, b), method="bounded",
                                   options={"xatol": 1e-6})
    s_peak = float(opt.x) if -opt.fun >= vals[k] else float(grid[k])
    log_peak = float(log_f(s_peak))

    def edge(direction, bound):
        step, t = 0.5, s_peak
        while True:
            nxt = t + direction * step
            if (nxt - bound) * direction >= 0:
                return bound
            if float(log_f(nxt)) < log_peak - _LOG_DROP:
                return nxt
            t, step = nxt, step * 1.5

    left, right = edge(-1, s_lo), edge(1, s_hi)
    scale = math.exp(log_peak)
    local = QuadratureConfig(min(cfg.abs_tol / scale, cfg.rel_tol) if scale > 0 else cfg.rel_tol,
                             cfg.rel_tol, cfg.max_subdivisions)
    val, err = _quad(lambda t: math.exp(float(log_f(t)) - log_peak), left, right, local,
                     points=[s_peak], what=f"density at y={y}")
    return val * scale, err * scale


def generic_density(spec: IntervalSpec, model: VariateModel, y, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Density of D_{i,w} at ``y`` by adaptive quadrature over the lower statistic.

    Accepts a scalar or an array of ``y`` values.

    Raises
    ------
    QuadratureError
        If the subdivision limit is exceeded; carries the best estimate.
    """
    if np.ndim(y) == 0:
        return _density_with_error(spec, model, float(y), cfg)[0]
    ya = np.asarray(y, dtype=float)
    return np.array([_density_with_error(spec, model, float(v), cfg)[0]
                     for v in ya.reshape(-1)]).reshape(ya.shape)


def moment_upper_limit(spec: IntervalSpec, model: VariateModel, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Truncation point for the moment integrals.

    ``D_{i,w}`` exceeds ``quantile(1 - eps) - quantile(eps)`` only if the
    sample maximum or minimum falls outside those quantiles, which has
    probability at most ``2 n eps``; ``eps`` is set so that is below
    ``abs_tol / 5``.
    """
    if isinstance(model, Uniform):
        return model.width
    eps = cfg.abs_tol / (10.0 * spec.n)
    return float(model.quantile(1.0 - eps) - model.quantile(eps))


def order_statistic_scale(spec: IntervalSpec, model: VariateModel) -> float:
    """Rough size of D_{i,w} from quantile differences; used as a breakpoint hint."""
    n, i, w = spec.n, spec.i, spec.w
    return float(model.quantile((i - 0.5) / n) - model.quantile((i - w - 0.5) / n))


def _moment_with_error(spec, model, order, cfg):
    if order not in (1, 2):
        raise DomainError(f"moment order must be 1 or 2, got {order}")
    y_max = moment_upper_limit(spec, model, cfg)
    inner = QuadratureConfig(cfg.abs_tol * 1e-2, cfg.rel_tol * 1e-2, cfg.max_subdivisions)
    inner_err = [0.0]

    def integrand(y):
        val, err = _density_with_error(spec, model, y, inner)
        inner_err[0] = max(inner_err[0], err)
        return y**order * val

    scale = order_statistic_scale(spec, model)
    val, err = _quad(integrand, 0.0, y_max, cfg, points=[scale, 3 * scale],
                     what=f"moment of order {order}")
    return val, err + inner_err[0] * y_max ** (order + 1) / (order + 1)


def generic_moment(spec: IntervalSpec, model: VariateModel, order: int,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``E[D_{i,w}**order]`` by nested quadrature over ``[0, y_max]``."""
    return _moment_with_error(spec, model, order, cfg)[0]


def generic_moments(spec: IntervalSpec, model: VariateModel,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> MomentResult:
    m1, e1 = _moment_with_error(spec, model, 1, cfg)
    m2, e2 = _moment_with_error(spec, model, 2, cfg)
    var = m2 - m1 * m1
    return MomentResult(m1, max(var, 0.0), "quadrature", abs_error_estimate=e1 + e2 + 2 * abs(m1) * e1)


def normalization(spec: IntervalSpec, model: VariateModel, density=None,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple:
    """Integral of a density of D_{i,w} over ``[0, y_max]`` and its error estimate.

    ``density(spec, model, y)`` defaults to the closed form. The mass beyond
    :func:`moment_upper_limit` is below ``abs_tol / 5``.
    """
    return density_moment(spec, model, 0, density, cfg)


def density_moment(spec: IntervalSpec, model: VariateModel, order: int, density=None,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple:
    """Integral of ``y**order`` times a density of D_{i,w}, with its error estimate.

    With the default closed-form density and ``order=1`` this is an
    independent quadrature referee for the closed-form mean series.
    """
    if order not in (0, 1, 2):
        raise DomainError(f"moment order must be 0, 1 or 2, got {order}")
    func = closedform.density if density is None else density
    y_max = moment_upper_limit(spec, model, cfg)
    scale = order_statistic_scale(spec, model)
    what = "normalization" if order == 0 else f"moment of order {order}"
    return _quad(lambda y: y**order * float(func(spec, model, y)), 0.0, y_max, cfg,
                 points=[scale, 3 * scale], what=what)
