"""Interval spacing as a rectangular low-pass filter, and its lag structure.

The interval-spacing sequence is the spacing sequence convolved with a
kernel of ``w`` ones, so its DFT is the spacing DFT times the kernel
response, a Dirichlet kernel ``|sin(pi k w / N) / sin(pi k / N)|``.
Overlapping intervals share ``w - l`` spacings at lag ``l``, which makes
their covariance fall off roughly as a triangle of base ``w``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .closedform import IntervalSpec, var_uniform
from .errors import DomainError
from .simulate import SimulationConfig, interval_spacings, sample_matrix, spacings
from .variates import Uniform

__all__ = [
    "AutocovReport",
    "SpectrumReport",
    "autocovariance",
    "dirichlet_response",
    "exact_uniform_autocovariance",
    "expected_lobe_counts",
    "filter_equivalence",
    "kernel_response",
    "lobe_counts",
]

RETAIN_FRACTION = 1e-3
RATIO_RTOL = 0.05
RATIO_ATOL = 1e-9
CONVOLUTION_RTOL = 1e-12


def _next_pow2(m):
    return 1 << max(0, int(m - 1).bit_length())


def kernel_response(w: int, N: int) -> np.ndarray:
    """Magnitude of the ``N``-point DFT of ``w`` ones, zero-padded."""
    if not 1 <= w <= N:
        raise DomainError(f"kernel needs 1 <= w <= N, got w={w}, N={N}")
    return np.abs(np.fft.fft(np.ones(w), N))


def dirichlet_response(w: int, N: int, signed: bool = False) -> np.ndarray:
    """Closed form ``sin(pi k w / N) / sin(pi k / N)`` for ``k = 0..N-1``.

    Bin 0 takes its limit ``w``. With ``signed=False`` the magnitude is
    returned, which equals :func:`kernel_response`.
    """
    if not 1 <= w <= N:
        raise DomainError(f"kernel needs 1 <= w <= N, got w={w}, N={N}")
    k = np.arange(N)
    out = np.full(N, float(w))
    nz = k != 0
    out[nz] = np.sin(np.pi * k[nz] * w / N) / np.sin(np.pi * k[nz] / N)
    return out if signed else np.abs(out)


def lobe_counts(magnitude) -> Tuple[int, int]:
    """Count ``(zeros, side_lobes)`` of a full-length magnitude spectrum.

    Zeros are strict local minima and side lobes strict local maxima over
    bins ``1..N/2``, using the mirrored bin ``N/2 + 1`` as right neighbour.
    Non-finite bins are skipped.
    """
    mag = np.asarray(magnitude, dtype=float)
    half = len(mag) // 2
    zeros = lobes = 0
    prev = mag[0]
    for k in range(1, half + 1):
        cur = mag[k]
        nxt = mag[k + 1] if k + 1 < len(mag) else mag[k - 1]
        if not (math.isfinite(prev) and math.isfinite(cur) and math.isfinite(nxt)):
            prev = cur if math.isfinite(cur) else prev
            continue
        if cur < prev and cur <= nxt:
            zeros += 1
        elif cur > prev and cur >= nxt:
            lobes += 1
        prev = cur
    return zeros, lobes


def expected_lobe_counts(w: int) -> Tuple[int, int]:
    """``(zeros, side_lobes)`` of the Dirichlet kernel over bins ``1..N/2`` when ``N >> w``.

    Zeros sit at ``k = m N / w`` for ``m = 1..floor(w/2)``; one side lobe
    lies between each adjacent pair, plus a lobe centred on ``N/2`` when
    ``w`` is odd.
    """
    return w // 2, (w + 1) // 2 - 1


@dataclass(frozen=True)
class SpectrumReport:
    """One-sided spectra on bins ``0..N/2``.

    ``retained`` marks bins whose spacing-spectrum magnitude exceeds
    ``1e-3`` of its maximum; only those enter the ratio comparison.
    """

    freq_bins: np.ndarray
    spacing_spectrum: np.ndarray
    interval_spectrum: np.ndarray
    ratio: np.ndarray
    kernel_response: np.ndarray
    retained: np.ndarray
    w: int
    n_fft: int
    alignment: str
    convolution_deviation: float
    convolution_ok: bool
    zeros: int
    side_lobes: int

    @property
    def ratio_error(self) -> np.ndarray:
        """``|ratio - R|`` at retained bins."""
        return np.abs(self.ratio[self.retained] - self.kernel_response[self.retained])

    @property
    def max_relative_error(self) -> float:
        r = self.kernel_response[self.retained]
        return float(np.max(self.ratio_error / np.maximum(r, RATIO_ATOL))) if r.size else 0.0

    def ratio_matches(self, rtol=RATIO_RTOL, atol=RATIO_ATOL) -> bool:
        r = self.kernel_response[self.retained]
        return bool(np.all(self.ratio_error <= rtol * r + atol))

    def lobes_match(self) -> bool:
        return (self.zeros, self.side_lobes) == expected_lobe_counts(self.w)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("bin,freq,spacing_spectrum,interval_spectrum,ratio,kernel_response,retained\n")
        for k in range(len(self.freq_bins)):
            row = (self.freq_bins[k], self.spacing_spectrum[k], self.interval_spectrum[k],
                   self.ratio[k], self.kernel_response[k])
            buf.write(f"{k}," + ",".join(repr(float(v)) for v in row) + f",{int(self.retained[k])}\n")
        return buf.getvalue()


def filter_equivalence(sorted_sample, w: int, N: Optional[int] = None,
                       alignment: str = "full") -> SpectrumReport:
    """Compare the interval-spacing spectrum to the filtered spacing spectrum.

    Parameters
    ----------
    sorted_sample : array_like
        Ascending sample of length at least ``w + 2``.
    w : int
        Interval width.
    N : int, optional
        Transform length. Defaults to the next power of two that holds the
        aligned sequences.
    alignment : {"full", "truncated"}
        ``"full"`` transforms the spacings ``D_2..D_n`` and their full
        linear convolution with the kernel, whose interior is exactly
        ``D_{w+1,w}..D_{n,w}``; the ratio then equals the kernel response
        up to roundoff. ``"truncated"`` transforms ``D_{w+1..n}`` and
        ``D_{w+1..n, w}`` over the same index range, which leaves edge terms
        in the ratio.

    Notes
    -----
    The exact part checks the valid-region convolution of the spacings
    against the interval spacings, relative to the largest interval spacing.
    """
    x = np.asarray(sorted_sample, dtype=float)
    if x.ndim != 1 or len(x) < w + 2:
        raise DomainError(f"sample of length >= w+2 = {w + 2} required, got {x.shape}")
    if w < 1:
        raise DomainError(f"w must be >= 1, got {w}")
    d = spacings(x)
    whole = interval_spacings(x, w).values
    kernel = np.ones(w)
    valid = np.convolve(d, kernel, mode="valid")
    scale = float(np.max(np.abs(whole))) or 1.0
    deviation = float(np.max(np.abs(valid - whole))) / scale

    if alignment == "full":
        seq_s = d
        seq_i = np.convolve(d, kernel, mode="full")
    elif alignment == "truncated":
        seq_s = d[w - 1:]
        seq_i = whole
    else:
        raise DomainError(f"alignment must be 'full' or 'truncated', got {alignment!r}")
    need = max(len(seq_s), len(seq_i))
    if N is None:
        N = _next_pow2(need)
    elif N < need:
        raise DomainError(f"N={N} shorter than the aligned sequences ({need})")

    full_s = np.abs(np.fft.fft(seq_s, N))
    full_i = np.abs(np.fft.fft(seq_i, N))
    kern = kernel_response(w, N)
    with np.errstate(divide="ignore", invalid="ignore"):
        full_ratio = np.where(full_s > 0, full_i / full_s, np.nan)
    keep_full = full_s > RETAIN_FRACTION * full_s.max()
    zeros, lobes = lobe_counts(np.where(keep_full, full_ratio, np.nan))

    half = N // 2 + 1
    return SpectrumReport(
        freq_bins=np.arange(half) / N,
        spacing_spectrum=full_s[:half],
        interval_spectrum=full_i[:half],
        ratio=full_ratio[:half],
        kernel_response=kern[:half],
        retained=keep_full[:half],
        w=w,
        n_fft=N,
        alignment=alignment,
        convolution_deviation=deviation,
        convolution_ok=deviation <= CONVOLUTION_RTOL,
        zeros=zeros,
        side_lobes=lobes,
    )


def exact_uniform_autocovariance(n: int, w: int, lag: int, width: float = 1.0) -> float:
    """Exact ``Cov(D_{i,w}, D_{i-lag,w})`` for uniform variates.

    Single uniform spacings have variance ``n / ((n+1)^2 (n+2))`` and
    pairwise covariance ``-1 / ((n+1)^2 (n+2))``; two width-``w`` intervals
    at lag ``l`` share ``max(w - l, 0)`` spacings.
    """
    shared = max(w - lag, 0)
    return width**2 * (shared * (n + 1) - w * w) / ((n + 1) ** 2 * (n + 2))


@dataclass(frozen=True)
class AutocovReport:
    lags: np.ndarray
    empirical_cov: np.ndarray
    predicted: np.ndarray
    standard_error: np.ndarray
    empirical_variance: float
    variance_used: float
    exact_cov: Optional[np.ndarray]
    reps: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("lag,empirical_cov,predicted,exact_cov,standard_error\n")
        for k, lag in enumerate(self.lags):
            exact = "" if self.exact_cov is None else repr(float(self.exact_cov[k]))
            buf.write(f"{int(lag)},{float(self.empirical_cov[k])!r},{float(self.predicted[k])!r},{exact},"
                      f"{float(self.standard_error[k])!r}\n")
        return buf.getvalue()


def _cov(a, b):
    # same operation order as np.var(a, ddof=1) when b is a
    da = a - a.mean()
    db = b - b.mean()
    return float(np.sum(da * db) / (len(a) - 1)), da * db


def autocovariance(cfg: SimulationConfig, i: int, w: int, max_lag: int,
                   samples: Optional[np.ndarray] = None, workers: int = 1) -> AutocovReport:
    """Empirical ``Cov(D_{i,w}, D_{i-l,w})`` across replicates, ``l = 0..max_lag``.

    Parameters
    ----------
    cfg : SimulationConfig
        Model, sample size, replicate count and seed.
    samples : ndarray, optional
        Pre-drawn ``(reps, n)`` sorted samples; drawn from ``cfg`` if omitted.

    Notes
    -----
    The predicted curve is the triangle ``V max(0, 1 - l/w)``. ``V`` is the
    closed-form variance for uniform variates and the empirical variance
    otherwise. For uniform variates the exact covariance is also reported.
    """
    n = cfg.n
    if not 0 <= max_lag <= w + 5:
        raise DomainError(f"max_lag must lie in 0..w+5 = {w + 5}, got {max_lag}")
    if i - max_lag - w < 1:
        raise DomainError(f"need i - max_lag - w >= 1, got {i} - {max_lag} - {w} = {i - max_lag - w}")
    IntervalSpec(n, i, w)
    if samples is None:
        samples = sample_matrix(cfg.model, n, cfg.reps, cfg.seed, workers)
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != n or samples.shape[0] < 2:
        raise DomainError(f"samples must have shape (reps >= 2, {n}), got {samples.shape}")
    reps = samples.shape[0]

    base = samples[:, i - 1] - samples[:, i - w - 1]
    covs, ses = [], []
    for lag in range(max_lag + 1):
        other = samples[:, i - lag - 1] - samples[:, i - lag - w - 1]
        c, prods = _cov(base, other)
        covs.append(c)
        ses.append(float(np.std(prods, ddof=1) / math.sqrt(reps)))
    emp_var = covs[0]

    exact = None
    if isinstance(cfg.model, Uniform):
        v = var_uniform(IntervalSpec(n, i, w), cfg.model.a, cfg.model.b)
        exact = np.array([exact_uniform_autocovariance(n, w, lag, cfg.model.width)
                          for lag in range(max_lag + 1)])
    else:
        v = emp_var
    lags = np.arange(max_lag + 1)
    predicted = v * np.maximum(0.0, 1.0 - lags / w)
    return AutocovReport(lags, np.array(covs), predicted, np.array(ses), emp_var, float(v), exact, reps)
