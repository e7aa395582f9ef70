"""Exact and floating special functions behind the closed forms.

Everything with a factorial in it is computed on :class:`fractions.Fraction`
values and only converted to floating point at the boundary via
:func:`to_real`. The Gauss hypergeometric function is evaluated for the
integer-parameter family ``2F1(a, b; a + b; z)`` with ``z <= 0`` that shows
up in the logistic interval-spacing density.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import ConvergenceError, DomainError, ParameterError

ExactRational = Fraction

DEFAULT_PRECISION_BITS = 64
DEFAULT_HYP_REL_TOL = 1e-13
HYP_MAX_TERMS = 10**6
# Above this transformed argument the series in 1 - t is used instead.
_CONNECTION_SWITCH = 0.9

__all__ = [
    "ExactRational",
    "Hyp2F1Params",
    "beta_int",
    "binomial",
    "digamma_forward_difference",
    "factorial",
    "harmonic",
    "hyp2f1",
    "log_hyp2f1_pfaff",
    "precision_bits",
    "to_real",
]


@lru_cache(maxsize=512)
def factorial(m: int) -> int:
    if m < 0:
        raise DomainError(f"factorial of negative integer {m}")
    return math.factorial(m)


def binomial(m: int, k: int) -> Fraction:
    """Exact binomial coefficient ``m! / (k! (m-k)!)``."""
    if m < 0 or k < 0:
        raise DomainError(f"binomial needs nonnegative arguments, got ({m}, {k})")
    if k > m:
        raise DomainError(f"binomial({m}, {k}): k exceeds m")
    return Fraction(math.comb(m, k))


def beta_int(p: int, q: int) -> Fraction:
    """Beta function at positive integers, ``(p-1)! (q-1)! / (p+q-1)!``.

    A nonpositive argument is a pole; :class:`ParameterError` is raised so
    callers can tell an invalid series term from a bad user input.
    """
    if p <= 0 or q <= 0:
        raise ParameterError(f"beta function pole at B({p}, {q})")
    return Fraction(factorial(p - 1) * factorial(q - 1), factorial(p + q - 1))


def digamma_forward_difference(m: int) -> Fraction:
    """``psi(m + 1) - psi(m)``, which the recurrence makes exactly ``1/m``."""
    if m <= 0:
        raise DomainError(f"digamma difference needs m >= 1, got {m}")
    return Fraction(1, m)


@lru_cache(maxsize=1024)
def harmonic(m: int) -> Fraction:
    """Harmonic number ``H_m = sum_{j=1}^m 1/j`` (``H_0 = 0``)."""
    if m < 0:
        raise DomainError(f"harmonic number of negative index {m}")
    total = Fraction(0)
    for j in range(1, m + 1):
        total += Fraction(1, j)
    return total


def precision_bits() -> int:
    """Working precision for rational to real conversion.

    ``INTSPACE_PRECISION_BITS`` overrides the default of 64 bits.
    """
    raw = os.environ.get("INTSPACE_PRECISION_BITS")
    if raw is None or raw.strip() == "":
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise DomainError(f"INTSPACE_PRECISION_BITS must be an integer, got {raw!r}") from None
    if bits < 2:
        raise DomainError(f"INTSPACE_PRECISION_BITS must be >= 2, got {bits}")
    return bits


def to_real(x: Fraction | int, bits: int | None = None) -> float:
    """Round an exact rational to ``bits`` significant bits, then to a float.

    Rounding is to nearest, ties to even, done in integer arithmetic. With
    ``bits >= 53`` the result is the float nearest to the ``bits``-bit value.
    """
    if bits is None:
        bits = precision_bits()
    if bits < 1:
        raise DomainError(f"precision must be positive, got {bits}")
    x = Fraction(x)
    if x == 0:
        return 0.0
    sign = -1 if x < 0 else 1
    p, q = abs(x.numerator), x.denominator
    # choose shift so that 2**(bits-1) <= p * 2**shift / q < 2**bits
    shift = bits - (p.bit_length() - q.bit_length())
    while True:
        num, den = (p << shift, q) if shift >= 0 else (p, q << -shift)
        m, r = divmod(num, den)
        if m >= 1 << bits:
            shift -= 1
        elif m < 1 << (bits - 1):
            shift += 1
        else:
            break
    if 2 * r > den or (2 * r == den and m & 1):
        m += 1
    scaled = Fraction(m, 1 << shift) if shift >= 0 else Fraction(m << -shift)
    return sign * float(scaled)


@dataclass(frozen=True)
class Hyp2F1Params:
    """Arguments of ``2F1(a, b; c; z)`` restricted to the density's family.

    ``a``, ``b``, ``c`` are positive integers with ``c == a + b`` and the
    argument satisfies ``z <= 0``.
    """

    a: int
    b: int
    c: int
    z: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
        if self.c != self.a + self.b:
            raise DomainError(f"need c == a + b, got a={self.a}, b={self.b}, c={self.c}")
        if not self.z <= 0:
            raise DomainError(f"need z <= 0, got {self.z}")


def hyp2f1(params: Hyp2F1Params, rel_tol: float = DEFAULT_HYP_REL_TOL,
           max_terms: int = HYP_MAX_TERMS) -> float:
    """Gauss hypergeometric function for ``c = a + b`` and ``z <= 0``.

    The Pfaff transformation
    ``2F1(a, b; c; z) = (1 - z)**(-a) 2F1(a, c - b; c; z / (z - 1))`` maps the
    argument into ``t = z/(z-1)`` in ``[0, 1)``. It is applied with the
    smaller of the two upper parameters, so the transformed series is
    ``2F1(m, m; m + M; t)`` with ``m = min(a, b)`` and ``M = max(a, b)``.

    Raises
    ------
    ConvergenceError
        If the tolerance is not met within ``max_terms`` terms.
    """
    if not 0 < rel_tol < 1:
        raise DomainError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    if params.z == 0:
        return 1.0
    s = 1.0 - params.z
    return math.exp(log_hyp2f1_pfaff(params.a, params.b, -params.z / s, 1.0 / s,
                                     rel_tol, max_terms))


def log_hyp2f1_pfaff(a, b, t, u, rel_tol=DEFAULT_HYP_REL_TOL, max_terms=HYP_MAX_TERMS):
    """Natural log of ``2F1(a, b; a + b; z)`` given ``t = z/(z-1)``, ``u = 1 - t``.

    Passing ``u`` separately keeps it accurate when ``t`` rounds to one,
    which happens for ``z < -1e16``; the result is then still finite.
    """
    m, big = sorted((a, b))
    log_u = math.log(u) if u < 1.0 else 0.0
    if t <= _CONNECTION_SWITCH:
        series = _series_direct(m, big, t, rel_tol * 0.1, max_terms)
    else:
        series = _series_connection(m, big, u, rel_tol * 0.1, max_terms)
    return m * log_u + math.log(series)


def _series_direct(m, big, t, rel_tol, max_terms):
    """Defining power series of ``2F1(m, m; m + big; t)`` for ``0 <= t < 1``.

    All terms are positive. Once ``(m+k)^2 / ((c+k)(k+1)) <= 1`` holds it
    keeps holding, so every later term ratio is at most ``t`` and the tail is
    bounded by ``term * t / (1 - t)``.
    """
    c = m + big
    if t == 0.0:
        return 1.0
    # past this index the term ratio stays <= t
    k_mono = max(0, math.ceil((m * m - c) / (c + 1 - 2 * m)) + 1)
    term = 1.0
    total = 1.0
    geom = t / (1.0 - t)
    for k in range(max_terms):
        term *= (m + k) * (m + k) / ((c + k) * (k + 1)) * t
        total += term
        if k + 1 >= k_mono and term * geom <= rel_tol * total:
            return total
    raise ConvergenceError(
        f"2F1({m},{m};{c};{t}) did not converge in {max_terms} terms",
        partial=total, cap=max_terms)


def _series_connection(m, big, u, rel_tol, max_terms):
    """``2F1(m, m; m + big; 1 - u)`` from the 1 - t connection formula.

    With ``s = big - m`` the parameter excess ``c - a - b`` is a nonnegative
    integer, which is the logarithmic case::

        F/Gamma(c) = 1/(Gamma(big)^2) sum_{k<s} (m)_k^2 (s-k-1)!/k! (-u)^k
                   - (-u)^s/Gamma(m)^2 sum_{k>=0} (big)_k^2/(k!(k+s)!) u^k
                       [ln u + H(big+k-1) - H(k) + H(big+k-1) - H(k+s)]

    The harmonic differences replace the digamma combination. Terms can
    grow by many orders of magnitude before decaying, so the sum runs in
    mpmath and the working precision is raised until cancellation leaves
    at least 64 good bits.
    """
    value, loss = _connection_float(m, big, u, rel_tol, max_terms)
    if loss <= 8.0:
        return value
    prec = 96
    for _ in range(8):
        value, loss = _connection_at(m, big, u, rel_tol, max_terms, prec)
        if prec - loss >= 64:
            return value
        prec = int(loss) + 96
    raise ConvergenceError(  # pragma: no cover - needs > 8 refinements
        f"2F1({m},{m};{m + big};1-{u}) lost too much precision", partial=value, cap=max_terms)


def _connection_float(m, big, u, rel_tol, max_terms):
    """Double-precision pass of the connection formula plus its cancellation loss.

    Returns ``(nan, inf)`` when anything leaves the float range so the caller
    falls back to the multiprecision pass.
    """
    s = big - m
    c = m + big
    log_u = math.log(u)
    try:
        scale_fin = to_real(Fraction(factorial(c - 1), factorial(big - 1) ** 2), 53)
        scale_log = to_real(Fraction(factorial(c - 1), factorial(m - 1) ** 2 * factorial(s)), 53)
    except OverflowError:
        return math.nan, math.inf
    finite = 0.0
    abs_fin = 0.0
    term = float(factorial(s - 1)) if s > 0 else 0.0
    for k in range(s):
        finite += term
        abs_fin += abs(term)
        if k + 1 < s:
            term *= -(m + k) * (m + k) * u / ((k + 1) * (s - k - 1))
    finite *= scale_fin
    abs_fin *= scale_fin
    # -(-u)^s * scale_log, the u^s part kept in logs against underflow
    sign = -1.0 if s % 2 == 0 else 1.0
    pref = sign * scale_log * math.exp(s * log_u)
    hb = float(harmonic(big - 1))
    hk = 0.0
    hks = float(harmonic(s))
    series = 0.0
    abs_series = 0.0
    coef = 1.0
    for k in range(max_terms):
        dig = 2.0 * hb - hk - hks
        term = coef * (log_u + dig)
        series += term
        abs_series += abs(term)
        ratio = (big + k) * (big + k) * u / ((k + 1) * (k + s + 1))
        if ratio < 0.5 and k > 0:
            estimate = finite + pref * series
            tail = abs(pref) * coef * (abs(log_u) + dig + 2 * math.log(k + 2) + 4) * 2
            if tail <= rel_tol * 1e-2 * abs(estimate):
                total = abs_fin + abs(pref) * abs_series
                if not (estimate > 0.0 and math.isfinite(total)):
                    return math.nan, math.inf
                return estimate, max(math.log2(total / estimate), 0.0)
        coef *= ratio
        if not math.isfinite(coef):
            return math.nan, math.inf
        hb += 1.0 / (big + k)
        hk += 1.0 / (k + 1)
        hks += 1.0 / (k + s + 1)
    return math.nan, math.inf


def _connection_at(m, big, u, rel_tol, max_terms, prec):
    ctx = mpmath.MPContext()
    ctx.prec = prec
    mpf = ctx.mpf
    s = big - m
    c = m + big
    U = mpf(u)
    log_u = ctx.log(U)

    finite = mpf(0)
    abs_sum = mpf(0)
    poch = mpf(1)  # (m)_k
    for k in range(s):
        term = poch * poch * math.factorial(s - k - 1) / ctx.factorial(k) * (-U) ** k
        finite += term
        abs_sum += abs(term)
        poch *= m + k
    scale_fin = ctx.factorial(c - 1) / (ctx.factorial(big - 1) ** 2)
    finite *= scale_fin
    abs_sum *= scale_fin

    scale_log = -ctx.factorial(c - 1) * (-U) ** s / (ctx.factorial(m - 1) ** 2)
    coef = mpf(1) / ctx.factorial(s)  # (big)_k^2 / (k! (k+s)!)
    hb = mpf(harmonic(big - 1).numerator) / harmonic(big - 1).denominator
    hk = mpf(0)
    hks = mpf(harmonic(s).numerator) / harmonic(s).denominator
    series = mpf(0)
    abs_series = mpf(0)
    uk = mpf(1)
    for k in range(max_terms):
        dig = 2 * hb - hk - hks
        term = coef * uk * (log_u + dig)
        series += term
        abs_series += abs(term)
        ratio = (big + k) ** 2 * u / ((k + 1) * (k + s + 1))
        if ratio < 0.5 and k > 0:
            estimate = finite + scale_log * series
            tail = abs(scale_log * coef * uk) * (abs(log_u) + dig + 2 * math.log(k + 2) + 4) * 2
            if tail <= rel_tol * 1e-2 * abs(estimate):
                total = abs_sum + abs(scale_log) * abs_series
                loss = float(ctx.log(total / abs(estimate), 2)) if estimate != 0 else prec
                return float(estimate), max(loss, 0.0)
        coef = coef * (big + k) ** 2 / ((k + 1) * (k + s + 1))
        uk *= U
        hb += mpf(1) / (big + k)
        hk += mpf(1) / (k + 1)
        hks += mpf(1) / (k + s + 1)
    raise ConvergenceError(
        f"2F1({m},{m};{c};1-{u}) did not converge in {max_terms} terms",
        partial=float(finite + scale_log * series), cap=max_terms)
