"""Uniform, exponential and logistic variates.

Each model is a frozen dataclass exposing ``pdf``, ``cdf``, ``sf`` (the
survival function ``1 - cdf`` computed without cancellation) and
``quantile``, plus log-space ``logpdf``/``logsf`` and ``logit_quantile``
(the quantile at probability ``1 / (1 + e^{-s})``, accurate in both tails).
Methods accept scalars or numpy arrays.

The logistic model is parameterized by location ``mu`` and *scale*
``sigma``; its standard deviation is ``sigma * pi / sqrt(3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError

__all__ = [
    "Exponential",
    "Logistic",
    "Uniform",
    "VariateModel",
    "cdf",
    "parse_model",
    "pdf",
    "quantile",
]


def _check_prob(p):
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0) & (arr < 1)):
        raise DomainError("quantile needs probabilities strictly inside (0, 1)")
    return arr


def _out(x, arr):
    return float(arr) if np.ndim(x) == 0 else arr


@dataclass(frozen=True)
class Uniform:
    a: float = 0.0
    b: float = 1.0

    kind = "uniform"

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise DomainError(f"uniform needs finite a < b, got a={self.a}, b={self.b}")

    @property
    def width(self):
        return self.b - self.a

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        inside = (xa >= self.a) & (xa <= self.b)
        return _out(x, np.where(inside, 1.0 / self.width, 0.0))

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _out(x, np.clip((xa - self.a) / self.width, 0.0, 1.0))

    def sf(self, x):
        xa = np.asarray(x, dtype=float)
        return _out(x, np.clip((self.b - xa) / self.width, 0.0, 1.0))

    def quantile(self, p):
        pa = _check_prob(p)
        return _out(p, self.a + pa * self.width)

    def logit_quantile(self, s):
        return _out(s, self.a + self.width * _expit(s))

    def logpdf(self, x):
        xa = np.asarray(x, dtype=float)
        inside = (xa >= self.a) & (xa <= self.b)
        return _out(x, np.where(inside, -math.log(self.width), -np.inf))

    def logsf(self, x):
        with np.errstate(divide="ignore"):
            return _out(x, np.log(np.asarray(self.sf(x), dtype=float)))

    def support(self):
        return self.a, self.b

    def to_string(self):
        return f"uniform:{self.a!r},{self.b!r}"


@dataclass(frozen=True)
class Exponential:
    lam: float = 1.0

    kind = "exp"

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"exponential rate must be positive, got {self.lam}")

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            val = np.where(xa >= 0, self.lam * np.exp(-self.lam * np.maximum(xa, 0.0)), 0.0)
        return _out(x, val)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _out(x, np.where(xa > 0, -np.expm1(-self.lam * np.maximum(xa, 0.0)), 0.0))

    def sf(self, x):
        xa = np.asarray(x, dtype=float)
        return _out(x, np.where(xa > 0, np.exp(-self.lam * np.maximum(xa, 0.0)), 1.0))

    def quantile(self, p):
        pa = _check_prob(p)
        return _out(p, -np.log1p(-pa) / self.lam)

    def logit_quantile(self, s):
        # -log(1 - expit(s)) = log(1 + e^s)
        return _out(s, np.logaddexp(0.0, np.asarray(s, dtype=float)) / self.lam)

    def logpdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _out(x, np.where(xa >= 0, math.log(self.lam) - self.lam * np.maximum(xa, 0.0), -np.inf))

    def logsf(self, x):
        xa = np.asarray(x, dtype=float)
        return _out(x, -self.lam * np.maximum(xa, 0.0))

    def support(self):
        return 0.0, math.inf

    def to_string(self):
        return f"exp:{self.lam!r}"


@dataclass(frozen=True)
class Logistic:
    mu: float = 0.0
    sigma: float = 1.0

    kind = "logistic"

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"logistic needs finite mu and sigma > 0, got {self.mu}, {self.sigma}")

    def pdf(self, x):
        # symmetric form e^{-|z|} / (1 + e^{-|z|})^2, exact under z -> -z
        za = np.abs((np.asarray(x, dtype=float) - self.mu) / self.sigma)
        e = np.exp(-za)
        return _out(x, e / (self.sigma * (1.0 + e) ** 2))

    def cdf(self, x):
        za = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return _out(x, _expit(za))

    def sf(self, x):
        za = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return _out(x, _expit(-za))

    def quantile(self, p):
        pa = _check_prob(p)
        return _out(p, self.mu + self.sigma * (np.log(pa) - np.log1p(-pa)))

    def logit_quantile(self, s):
        return _out(s, self.mu + self.sigma * np.asarray(s, dtype=float))

    def logpdf(self, x):
        za = np.abs((np.asarray(x, dtype=float) - self.mu) / self.sigma)
        return _out(x, -za - 2.0 * np.log1p(np.exp(-za)) - math.log(self.sigma))

    def logsf(self, x):
        za = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return _out(x, -np.logaddexp(0.0, za))

    def support(self):
        return -math.inf, math.inf

    def to_string(self):
        return f"logistic:{self.mu!r},{self.sigma!r}"


def _expit(z):
    z = np.asarray(z, dtype=float)
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


VariateModel = Union[Uniform, Exponential, Logistic]


def pdf(model: VariateModel, x):
    return model.pdf(x)


def cdf(model: VariateModel, x):
    return model.cdf(x)


def quantile(model: VariateModel, p):
    """Closed-form inverse of :func:`cdf`; raises DomainError outside (0, 1)."""
    return model.quantile(p)


def parse_model(text: str) -> VariateModel:
    """Parse ``uniform:a,b``, ``exp:lambda`` or ``logistic:mu,sigma``."""
    name, sep, rest = text.strip().partition(":")
    name = name.strip().lower()
    try:
        args = [float(v) for v in rest.split(",")] if sep and rest.strip() else []
    except ValueError:
        raise DomainError(f"cannot parse distribution parameters in {text!r}") from None
    expected = {"uniform": 2, "exp": 1, "exponential": 1, "logistic": 2}
    if name not in expected:
        raise DomainError(f"unknown distribution {name!r}; use uniform:a,b, exp:lambda or logistic:mu,sigma")
    if len(args) != expected[name]:
        raise DomainError(f"{name} takes {expected[name]} parameter(s), got {len(args)} in {text!r}")
    if name == "uniform":
        return Uniform(*args)
    if name in ("exp", "exponential"):
        return Exponential(*args)
    return Logistic(*args)
