"""Spacing profiles of one-column datasets.

A profile lists ``D_{i,w}`` against the order index ``i`` for several
widths. Large values flag sparse stretches of the data; as ``w`` grows each
interval spans more points and isolated gaps wash out.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, IngestionError
from .simulate import interval_spacings

__all__ = [
    "Dataset",
    "PlantedGaps",
    "SpacingProfile",
    "compute_profile",
    "load_csv",
    "planted_gap_dataset",
]


@dataclass(frozen=True)
class Dataset:
    values: Tuple[float, ...]
    source_name: str = "<memory>"

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        bad = [k for k, v in enumerate(vals) if not math.isfinite(v)]
        if bad:
            raise DomainError(f"dataset {self.source_name!r} has non-finite value at position {bad[0]}")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def load_csv(path: Union[str, os.PathLike], column: Union[int, str] = 0) -> Dataset:
    """Read one numeric column from a comma-separated file.

    Parameters
    ----------
    path : path-like
        UTF-8 CSV file.
    column : int or str
        Zero-based column index, or a header name.

    Notes
    -----
    The first row is a header when its entry in the target column does not
    parse as a number. Blank lines are skipped.

    Raises
    ------
    IngestionError
        If the file cannot be read, the column is missing on some row, a
        value is not numeric or not finite, or no values remain. The
        offending 1-based line number is attached as ``.line``.
    """
    name = os.fspath(path)
    try:
        with open(name, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestionError(f"cannot read {name}: {exc}") from None

    numbered = [(k + 1, row) for k, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not numbered:
        raise IngestionError(f"{name}: no data rows")

    first_line, first_row = numbered[0]
    if isinstance(column, str):
        header = [cell.strip() for cell in first_row]
        if column not in header:
            raise IngestionError(f"{name}: no column named {column!r} in header", line=first_line)
        col = header.index(column)
        body = numbered[1:]
    else:
        col = int(column)
        if col < 0:
            raise IngestionError(f"column index must be nonnegative, got {col}")
        has_header = col < len(first_row) and not _is_number(first_row[col].strip())
        body = numbered[1:] if has_header else numbered

    values: List[float] = []
    for line, row in body:
        if col >= len(row):
            raise IngestionError(f"{name}: line {line} has no column {column!r}", line=line)
        cell = row[col].strip()
        try:
            v = float(cell)
        except ValueError:
            raise IngestionError(f"{name}: line {line}: cannot parse {cell!r} as a number", line=line) from None
        if not math.isfinite(v):
            raise IngestionError(f"{name}: line {line}: non-finite value {cell!r}", line=line)
        values.append(v)
    if not values:
        raise IngestionError(f"{name}: column {column!r} is empty")
    return Dataset(tuple(values), name)


@dataclass(frozen=True)
class SpacingProfile:
    widths: Tuple[int, ...]
    spacings: Dict[int, np.ndarray]
    n: int

    def indices(self, w: int) -> np.ndarray:
        return np.arange(w + 1, self.n + 1)

    def pairs(self, w: int) -> List[Tuple[int, float]]:
        return list(zip(self.indices(w).tolist(), self.spacings[w].tolist()))

    def argmax_index(self, w: int) -> int:
        """Upper index ``i`` of the widest interval at width ``w`` (first on ties)."""
        return int(np.argmax(self.spacings[w])) + w + 1

    def peak_to_median(self, w: int) -> float:
        s = self.spacings[w]
        med = float(np.median(s))
        return math.inf if med == 0 else float(s.max()) / med

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("w,i,spacing\n")
        for w in self.widths:
            for i, s in self.pairs(w):
                buf.write(f"{w},{i},{float(s)!r}\n")
        return buf.getvalue()


def compute_profile(data: Union[Dataset, Sequence[float]], widths: Iterable[int]) -> SpacingProfile:
    """Sort the data ascending and compute ``D_{i,w}`` for each width.

    Ties keep their input order; duplicates give zero spacings.

    Raises
    ------
    DomainError
        If a width is not positive or the data has fewer than
        ``max(widths) + 2`` values.
    """
    if not isinstance(data, Dataset):
        data = Dataset(tuple(data))
    widths = tuple(int(w) for w in widths)
    if not widths:
        raise DomainError("at least one width is required")
    n = len(data)
    for w in widths:
        if w < 1:
            raise DomainError(f"widths must be positive, got {w}")
        if w >= n:
            raise DomainError(f"width {w} must be below the sample size {n}")
    if n < max(widths) + 2:
        raise DomainError(f"need at least max(widths)+2 = {max(widths) + 2} values, got {n}")
    x = np.sort(np.asarray(data.values, dtype=float), kind="stable")
    return SpacingProfile(widths, {w: interval_spacings(x, w).values for w in widths}, n)


@dataclass(frozen=True)
class PlantedGaps:
    """Synthetic dataset with known gaps.

    ``gap_indices[k]`` is the 1-based order index of the first point after
    gap ``k``, so at width 1 the gap is ``D_{gap_index}``.
    """

    dataset: Dataset
    gap_indices: Tuple[int, ...]
    gap_sizes: Tuple[float, ...]

    def interval_covers_gap(self, i: int, w: int, k: int = 0) -> bool:
        g = self.gap_indices[k]
        return i - w < g <= i


def planted_gap_dataset(n: int = 200, gaps: Sequence[Tuple[int, float]] = ((120, 6.0),),
                        jitter: float = 0.2, seed: int = 0) -> PlantedGaps:
    """Jittered unit grid with extra space inserted at chosen order indices.

    Point ``j`` (1-based) sits at ``j + u_j + sum of gaps before it`` with
    ``u_j`` uniform on ``[-jitter/2, jitter/2]``. Keeping ``jitter < 1``
    preserves the order, so each planted gap lands at a known index.
    """
    if not 0 <= jitter < 1:
        raise DomainError(f"jitter must lie in [0, 1), got {jitter}")
    rng = np.random.default_rng(seed)
    pos = np.arange(1, n + 1, dtype=float) + rng.uniform(-jitter / 2, jitter / 2, size=n)
    idx, sizes = [], []
    for g, size in gaps:
        if not 2 <= g <= n:
            raise DomainError(f"gap index must lie in 2..n, got {g}")
        pos[g - 1:] += size
        idx.append(int(g))
        sizes.append(float(size))
    return PlantedGaps(Dataset(tuple(pos), f"planted-gaps(seed={seed})"), tuple(idx), tuple(sizes))
