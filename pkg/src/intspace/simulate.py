"""Seeded Monte Carlo for interval spacings.

Replicate ``r`` draws from its own counter-based stream
(``Philox`` keyed by ``SeedSequence(seed, spawn_key=(r,))``), so a summary
depends only on ``(seed, config)`` and not on how replicates are split
across workers.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .closedform import IntervalSpec
from .errors import ContractError, DomainError
from .variates import VariateModel

__all__ = [
    "DecompositionResult",
    "SimulationConfig",
    "SimulationSummary",
    "SpacingSeries",
    "SpacingStats",
    "decomposition_check",
    "interval_spacings",
    "replicate_stream",
    "run_simulation",
    "sample_matrix",
    "sample_sorted",
    "spacings",
]

HIST_BINS = 100
_U53 = 2.0**-53


@dataclass(frozen=True)
class SimulationConfig:
    model: VariateModel
    n: int
    reps: int
    seed: int
    widths: Tuple[int, ...] = (1,)

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(int(w) for w in self.widths))
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.reps < 1:
            raise DomainError(f"reps must be >= 1, got {self.reps}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        for w in self.widths:
            if not 1 <= w < self.n:
                raise DomainError(f"width {w} must satisfy 1 <= w < n={self.n}")


@dataclass(frozen=True)
class SpacingSeries:
    """``values[k] = D_{k+w+1, w}``: interval spacings labeled i = w+1..n."""

    values: np.ndarray
    n: int
    w: int

    def __post_init__(self):
        if len(self.values) != self.n - self.w:
            raise ContractError(f"series length {len(self.values)} != n - w = {self.n - self.w}")

    @property
    def indices(self):
        return np.arange(self.w + 1, self.n + 1)

    def at(self, i):
        """Value of D_{i,w} for the 1-based upper index ``i``."""
        if not self.w < i <= self.n:
            raise DomainError(f"index {i} outside w+1..n = {self.w + 1}..{self.n}")
        return self.values[i - self.w - 1]


@dataclass(frozen=True)
class SpacingStats:
    empirical_mean: float
    empirical_variance: float
    q25: float
    median: float
    q75: float
    histogram: List[Tuple[float, float, int]] = field(repr=False)

    @property
    def count(self):
        return sum(c for _, _, c in self.histogram)


@dataclass
class SimulationSummary:
    config: SimulationConfig
    stats: Dict[Tuple[int, int], SpacingStats]

    def __getitem__(self, key):
        return self.stats[key]

    def keys(self):
        return sorted(self.stats, key=lambda k: (k[1], k[0]))

    def standard_error(self, i, w):
        return float(np.sqrt(self.stats[(i, w)].empirical_variance / self.config.reps))

    def to_csv(self, closed_means: Optional[Dict[Tuple[int, int], float]] = None) -> str:
        """Columns ``i,w,emp_mean,emp_var,q25,median,q75,closed_mean``."""
        buf = io.StringIO()
        buf.write("i,w,emp_mean,emp_var,q25,median,q75,closed_mean\n")
        for i, w in self.keys():
            s = self.stats[(i, w)]
            closed = "" if closed_means is None or (i, w) not in closed_means else repr(float(closed_means[(i, w)]))
            buf.write(f"{i},{w},{s.empirical_mean!r},{s.empirical_variance!r},"
                      f"{s.q25!r},{s.median!r},{s.q75!r},{closed}\n")
        return buf.getvalue()

    def histogram_csv(self) -> str:
        buf = io.StringIO()
        buf.write("i,w,bin_left,bin_right,count\n")
        for i, w in self.keys():
            for left, right, count in self.stats[(i, w)].histogram:
                buf.write(f"{i},{w},{left!r},{right!r},{count}\n")
        return buf.getvalue()


def replicate_stream(seed: int, r: int) -> np.random.Generator:
    """Independent generator for replicate ``r``; no shared state between replicates."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(r,))))


def _open_uniforms(stream, size):
    # (k + 0.5) / 2^53 lies strictly inside (0, 1)
    return (stream.integers(0, 2**53, size=size, dtype=np.int64) + 0.5) * _U53


def sample_sorted(model: VariateModel, n: int, stream: np.random.Generator) -> np.ndarray:
    """``n`` inverse-CDF draws from ``model``, sorted ascending."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return np.sort(np.asarray(model.quantile(_open_uniforms(stream, n)), dtype=float).reshape(n))


def sample_matrix(model: VariateModel, n: int, reps: int, seed: int, workers: int = 1) -> np.ndarray:
    """``(reps, n)`` array whose row ``r`` is :func:`sample_sorted` on replicate stream ``r``."""
    out = np.empty((reps, n))

    def fill(lo, hi):
        for r in range(lo, hi):
            out[r] = sample_sorted(model, n, replicate_stream(seed, r))

    workers = max(1, int(workers))
    if workers == 1:
        fill(0, reps)
    else:
        bounds = np.linspace(0, reps, workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, bounds[:-1], bounds[1:]))
    return out


def _check_sorted(x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ContractError("expected a one-dimensional sample")
    if np.any(np.diff(x) < 0):
        raise ContractError("sample must be sorted ascending")
    return x


def spacings(sorted_sample) -> np.ndarray:
    """Consecutive differences ``D_i``, i = 2..n."""
    return np.diff(_check_sorted(sorted_sample))


def interval_spacings(sorted_sample, w: int) -> SpacingSeries:
    x = _check_sorted(sorted_sample)
    if not 1 <= w < len(x):
        raise DomainError(f"need 1 <= w < n={len(x)}, got w={w}")
    return SpacingSeries(x[w:] - x[:-w], len(x), w)


class DecompositionResult(NamedTuple):
    ok: bool
    max_deviation: float
    tolerance: float


def decomposition_check(sorted_sample, w: int, rtol: float = 1e-12) -> DecompositionResult:
    """Check that interval spacings decompose into single spacings.

    Verifies ``D_{i,w} = sum_{j<w} D_{i-j}`` for every valid ``i``; for even
    ``w`` the split into two half-width intervals; and for every lag
    ``1 <= l < w`` the overlap cancellation
    ``D_{i,w} - D_{i-l,w} = sum_{k<l} D_{i-k} - sum_{k=w}^{w-1+l} D_{i-k}``.
    The deviation is measured against ``rtol`` times the sample range.
    """
    x = _check_sorted(sorted_sample)
    n = len(x)
    whole = interval_spacings(x, w).values
    d = np.diff(x)  # d[j] = D_{j+2}
    csum = np.concatenate(([0.0], np.cumsum(d)))
    devs = [0.0]
    # running w-sum of single spacings, computed term by term
    summed = np.zeros(n - w)
    for j in range(w):
        summed += d[j:j + n - w]
    devs.append(np.max(np.abs(summed - whole)))
    if w % 2 == 0 and w >= 2:
        h = w // 2
        half = interval_spacings(x, h).values  # half[k] = D_{k+h+1,h}
        # D_{i,h} + D_{i-h,h} for i = w+1..n
        devs.append(np.max(np.abs(half[h:] + half[:-h] - whole)))
    for lag in range(1, w):
        if n - w - lag <= 0:
            break
        lhs = whole[lag:] - whole[:-lag]  # i = w+1+lag .. n
        # 0-based position p of D_i in d is i-2; for i = w+1+lag+q, p = w+lag-1+q
        m = n - w - lag
        p = np.arange(m) + w + lag - 1
        first = csum[p + 1] - csum[p + 1 - lag]          # D_i..D_{i-l+1}
        second = csum[p + 1 - w] - csum[p + 1 - w - lag]  # D_{i-w}..D_{i-w-l+1}
        devs.append(np.max(np.abs(lhs - (first - second))))
    scale = float(x[-1] - x[0]) or 1.0
    tol = rtol * scale
    worst = float(max(devs))
    return DecompositionResult(worst <= tol, worst, tol)


def _quartiles(values):
    # numpy's default "linear" rule is the type-7 definition
    return np.quantile(values, [0.25, 0.5, 0.75])


def _stats(values):
    q25, med, q75 = _quartiles(values)
    hi = float(values.max())
    counts, edges = np.histogram(values, bins=HIST_BINS, range=(0.0, hi if hi > 0 else 1.0))
    hist = [(float(edges[k]), float(edges[k + 1]), int(counts[k])) for k in range(HIST_BINS)]
    var = float(values.var(ddof=1)) if len(values) > 1 else 0.0
    return SpacingStats(float(values.mean()), var, float(q25), float(med), float(q75), hist)


def run_simulation(cfg: SimulationConfig, indices: Optional[Sequence[int]] = None,
                   workers: int = 1) -> SimulationSummary:
    """Summaries of D_{i,w} over ``cfg.reps`` replicates for every width and index.

    With ``indices=None`` every valid ``i`` (``w < i <= n``) is used for each
    width; otherwise every requested ``(i, w)`` pair must be valid.
    """
    pairs = []
    for w in cfg.widths:
        if indices is None:
            pairs.extend((i, w) for i in range(w + 1, cfg.n + 1))
        else:
            for i in indices:
                IntervalSpec(cfg.n, int(i), w)
                pairs.append((int(i), w))
    samples = sample_matrix(cfg.model, cfg.n, cfg.reps, cfg.seed, workers)
    stats = {}
    for i, w in pairs:
        stats[(i, w)] = _stats(samples[:, i - 1] - samples[:, i - w - 1])
    return SimulationSummary(cfg, stats)
