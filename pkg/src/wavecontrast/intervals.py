"""Random intervals, disjoint pairs, and periodogram contrasts.

Intervals are closed index ranges [s, e] inside 0..T-1. A contrast
compares the average periodogram over two disjoint intervals, scaled so
its weight vector has unit norm:

    C = sqrt(n_p * n_q / (n_p + n_q)) * (mean over L_p - mean over L_q)

which equals the inner product of the periodogram row with a vector that
is positive-constant on L_p, negative-constant on L_q, zero elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InfeasibleConfigError,
    InvalidPairError,
    NoDisjointPairsError,
    SamplingFailureError,
)
from .wavelets import PeriodogramMatrix

MAX_DRAWS = 1_000_000
_BATCH = 4096


@dataclass(frozen=True)
class Interval:
    """Closed index range [s, e], 0-based."""

    s: int
    e: int

    def __post_init__(self):
        if self.s < 0 or self.e < self.s:
            raise InvalidPairError(f"invalid interval [{self.s}, {self.e}]")

    @property
    def n(self) -> int:
        return self.e - self.s + 1

    def disjoint(self, other: "Interval") -> bool:
        return self.e < other.s or other.e < self.s


@dataclass(frozen=True)
class IntervalPairSet:
    """Sampled intervals plus the index pairs (p, q), p < q, that are
    disjoint. pairs has shape (D, 2)."""

    intervals: tuple
    pairs: np.ndarray

    @property
    def D(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class ContrastVector:
    """Dense unit-norm, zero-sum weight vector for one interval pair."""

    pair: tuple
    values: np.ndarray


@dataclass(frozen=True)
class ContrastTable:
    """Contrast values, one row per scale, one column per disjoint pair."""

    pairs: IntervalPairSet
    values: np.ndarray


def sample_intervals(T: int, M: int, m_T: int, rng: np.random.Generator,
                     max_draws: int = MAX_DRAWS) -> list[Interval]:
    """Draw M intervals with endpoints uniform on 0..T-1, conditioned on
    length >= m_T, by rejection sampling.

    Each draw takes two distinct indices and sorts them; draws shorter
    than m_T are rejected. Duplicate intervals are allowed. Raises
    SamplingFailureError once max_draws attempts are spent.
    """
    if M < 2:
        raise InfeasibleConfigError(f"need M >= 2 intervals, got {M}")
    if not 2 <= m_T <= T:
        raise InfeasibleConfigError(f"need 2 <= m_T <= T, got m_T = {m_T}, T = {T}")
    accepted: list[Interval] = []
    attempts = 0
    while len(accepted) < M:
        if attempts >= max_draws:
            raise SamplingFailureError(
                f"accepted {len(accepted)}/{M} intervals after {attempts} draws "
                f"(T = {T}, m_T = {m_T})")
        batch = min(_BATCH, max_draws - attempts)
        draws = rng.integers(0, T, size=(batch, 2))
        attempts += batch
        lo = draws.min(axis=1)
        hi = draws.max(axis=1)
        ok = hi - lo + 1 >= m_T
        ok &= lo != hi
        for s, e in zip(lo[ok], hi[ok]):
            accepted.append(Interval(int(s), int(e)))
            if len(accepted) == M:
                break
    return accepted


def disjoint_pairs(intervals: list[Interval]) -> IntervalPairSet:
    """Collect all index pairs (p, q), p < q, whose intervals are
    disjoint. Raises NoDisjointPairsError when none exist."""
    if len(intervals) < 2:
        raise InfeasibleConfigError("need at least two intervals")
    starts = np.array([iv.s for iv in intervals])
    ends = np.array([iv.e for iv in intervals])
    p_idx, q_idx = np.triu_indices(len(intervals), k=1)
    disjoint = (ends[p_idx] < starts[q_idx]) | (ends[q_idx] < starts[p_idx])
    pairs = np.column_stack([p_idx[disjoint], q_idx[disjoint]])
    if len(pairs) == 0:
        raise NoDisjointPairsError(f"no disjoint pair among {len(intervals)} intervals")
    return IntervalPairSet(intervals=tuple(intervals), pairs=pairs)


def _pair_coefficient(n_p: int, n_q: int) -> float:
    return float(np.sqrt(n_p * n_q / (n_p + n_q)))


def contrast_weights(pair: tuple[Interval, Interval], T: int) -> ContrastVector:
    """Dense weight vector for one disjoint pair on a length-T axis."""
    p, q = pair
    if not p.disjoint(q):
        raise InvalidPairError(f"intervals [{p.s}, {p.e}] and [{q.s}, {q.e}] overlap")
    if p.e >= T or q.e >= T:
        raise InvalidPairError(f"pair exceeds series length {T}")
    coef = _pair_coefficient(p.n, q.n)
    w = np.zeros(T)
    w[p.s : p.e + 1] = coef / p.n
    w[q.s : q.e + 1] = -coef / q.n
    return ContrastVector(pair=(p, q), values=w)


def contrast_stat(row: np.ndarray, pair: tuple[Interval, Interval]) -> float:
    """Contrast of one periodogram row over one disjoint pair.

    Computed from a prefix sum of the mean-centred row; centring removes
    the common level algebraically, so only fluctuations accumulate and
    the result matches the direct inner product to roundoff.
    """
    row = np.asarray(row, dtype=float)
    p, q = pair
    if not p.disjoint(q):
        raise InvalidPairError(f"intervals [{p.s}, {p.e}] and [{q.s}, {q.e}] overlap")
    if p.e >= len(row) or q.e >= len(row):
        raise IndexError(f"pair exceeds row length {len(row)}")
    cs = np.zeros(len(row) + 1)
    np.cumsum(row - row.mean(), out=cs[1:])
    mean_p = (cs[p.e + 1] - cs[p.s]) / p.n
    mean_q = (cs[q.e + 1] - cs[q.s]) / q.n
    return _pair_coefficient(p.n, q.n) * (mean_p - mean_q)


def contrast_all(P: PeriodogramMatrix, pairs: IntervalPairSet) -> ContrastTable:
    """All contrasts for every scale row and every disjoint pair.

    One prefix sum per scale serves every pair, so the cost is
    O(J_star * (T + D)) rather than O(J_star * D * T).
    """
    intervals = pairs.intervals
    starts = np.array([iv.s for iv in intervals])
    ends = np.array([iv.e for iv in intervals])
    if len(intervals) and ends.max() >= P.T:
        raise IndexError(f"interval set exceeds periodogram length {P.T}")
    lens = ends - starts + 1
    p_idx = pairs.pairs[:, 0]
    q_idx = pairs.pairs[:, 1]
    n_p = lens[p_idx]
    n_q = lens[q_idx]
    coef = np.sqrt(n_p * n_q / (n_p + n_q))
    values = np.empty((P.J_star, pairs.D))
    cs = np.zeros(P.T + 1)
    for i in range(P.J_star):
        row = P.values[i]
        np.cumsum(row - row.mean(), out=cs[1:])
        sums = cs[ends + 1] - cs[starts]
        means = sums / lens
        values[i] = coef * (means[p_idx] - means[q_idx])
    return ContrastTable(pairs=pairs, values=values)
