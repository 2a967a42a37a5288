"""Test assembly: the max-contrast statistic, its Bonferroni critical
value, and localisation weight profiles.

The statistic is the largest standardized absolute contrast over all
disjoint pairs and scales. Under the null every standardized contrast
is asymptotically standard normal, so the comparison point is the
(1 - alpha/2 / (D * J_star)) normal quantile.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.stats import norm

from .bootstrap import SigmaTable, bootstrap_sigma
from .errors import (
    DegenerateBootstrapError,
    InfeasibleConfigError,
    InvalidLevelError,
    InvalidPlanError,
    NoDisjointPairsError,
    SeriesTooShortError,
)
from .intervals import ContrastTable, contrast_all, disjoint_pairs, sample_intervals
from .rng import substream
from .wavelets import wavelet_periodogram


def default_m_T(T: int) -> int:
    """Minimum interval length ceil(T**(2/3)), in exact integer
    arithmetic so perfect cubes do not round up."""
    if T < 1:
        raise InfeasibleConfigError(f"need T >= 1, got {T}")
    k = max(1, round((T * T) ** (1.0 / 3.0)))
    while k**3 < T * T:
        k += 1
    while k > 1 and (k - 1) ** 3 >= T * T:
        k -= 1
    return k


def default_J_star(T: int) -> int:
    """Number of scales min(4, floor(log2 T) - 3), at least 1."""
    if T < 2:
        raise InfeasibleConfigError(f"need T >= 2, got {T}")
    return max(1, min(4, T.bit_length() - 1 - 3))


@dataclass(frozen=True)
class TestConfig:
    """Tuning knobs for one test run. m_T and J_star default to None,
    meaning: derive from the series length at run time."""

    alpha: float = 0.05
    M: int = 40
    m_T: int | None = None
    J_star: int | None = None
    B: int = 200
    master_seed: int = 0
    retry_limit: int = 5


@dataclass(frozen=True)
class Localisation:
    """Argmax cell of the standardized contrast table."""

    s_p: int
    e_p: int
    s_q: int
    e_q: int
    scale: int


@dataclass(frozen=True)
class TestResult:
    statistic: float
    critical_value: float
    reject: bool
    alpha: float
    D: int
    J_star: int
    argmax: Localisation
    per_scale_max: np.ndarray
    degenerate_cells: int
    config: TestConfig
    contrasts: ContrastTable | None = None
    sigmas: SigmaTable | None = None


def critical_value(alpha: float, D: int, J_star: int) -> float:
    """Standard normal quantile at 1 - alpha/2 / (D * J_star)."""
    if not 0.0 < alpha < 1.0:
        raise InvalidLevelError(f"alpha must be in (0, 1), got {alpha}")
    if D < 1 or J_star < 1:
        raise InfeasibleConfigError(f"need D >= 1 and J_star >= 1, got D = {D}, J_star = {J_star}")
    return float(norm.isf(0.5 * alpha / (D * J_star)))


def run_test(x: np.ndarray, cfg: TestConfig = TestConfig(),
             keep_tables: bool = True) -> TestResult:
    """Run the stationarity test on one series.

    Pipeline: sample M random intervals (resampling up to retry_limit
    times if no disjoint pair turns up), compute the periodogram and all
    pairwise contrasts, standardize by bootstrap scale estimates, and
    compare the max to the Bonferroni critical value. Cells whose scale
    estimate degenerated are excluded from the max.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("input series must be one-dimensional")
    T = len(x)
    if not 0.0 < cfg.alpha < 1.0:
        raise InvalidLevelError(f"alpha must be in (0, 1), got {cfg.alpha}")
    m_T = cfg.m_T if cfg.m_T is not None else default_m_T(T)
    J_star = cfg.J_star if cfg.J_star is not None else default_J_star(T)
    if m_T > T:
        raise InfeasibleConfigError(f"minimum interval length {m_T} exceeds T = {T}")
    if T < 2**J_star:
        raise SeriesTooShortError(f"need T >= 2**J_star = {2**J_star}, got T = {T}")
    if 2**J_star > m_T:
        warnings.warn(
            f"coarsest filter length {2**J_star} exceeds minimum interval length {m_T}; "
            "contrasts at coarse scales average fewer effective windows than intended",
            stacklevel=2)
    if np.ptp(x) == 0.0:
        raise DegenerateBootstrapError("input series is constant")

    resolved = replace(cfg, m_T=m_T, J_star=J_star)
    pairs = None
    for attempt in range(cfg.retry_limit + 1):
        ivs = sample_intervals(T, cfg.M, m_T, substream(cfg.master_seed, "intervals", attempt))
        try:
            pairs = disjoint_pairs(ivs)
            break
        except NoDisjointPairsError:
            continue
    if pairs is None:
        raise NoDisjointPairsError(
            f"no disjoint pair in {cfg.retry_limit + 1} sampling attempts "
            f"(T = {T}, M = {cfg.M}, m_T = {m_T})")

    P = wavelet_periodogram(x, J_star)
    contrasts = contrast_all(P, pairs)
    sigmas = bootstrap_sigma(x, pairs, J_star, cfg.B, substream(cfg.master_seed, "bootstrap"))

    standardized = np.abs(contrasts.values) / np.where(sigmas.degenerate, 1.0, sigmas.values)
    standardized[sigmas.degenerate] = -np.inf
    flat = int(np.argmax(standardized))
    row, col = divmod(flat, pairs.D)
    statistic = float(standardized[row, col])
    p_iv = pairs.intervals[pairs.pairs[col, 0]]
    q_iv = pairs.intervals[pairs.pairs[col, 1]]
    argmax = Localisation(s_p=p_iv.s, e_p=p_iv.e, s_q=q_iv.s, e_q=q_iv.e,
                          scale=-(row + 1))
    per_scale = np.where((~sigmas.degenerate).any(axis=1),
                         standardized.max(axis=1), np.nan)
    crit = critical_value(cfg.alpha, pairs.D, J_star)
    return TestResult(
        statistic=statistic,
        critical_value=crit,
        reject=bool(statistic > crit),
        alpha=cfg.alpha,
        D=pairs.D,
        J_star=J_star,
        argmax=argmax,
        per_scale_max=per_scale,
        degenerate_cells=int(sigmas.degenerate.sum()),
        config=resolved,
        contrasts=contrasts if keep_tables else None,
        sigmas=sigmas if keep_tables else None,
    )


# Weight profile schemes: "equal" spreads 1/R over every index of both
# argmax intervals; "reciprocal" spreads 1/(R * interval length), so
# each interval contributes total mass 1/R regardless of its length.
PROFILE_SCHEMES = ("equal", "reciprocal")


def weight_profile(results, scheme: str, T: int) -> np.ndarray:
    """Aggregate argmax intervals of many runs into a length-T profile.

    Accepts TestResult objects or bare Localisation records.
    """
    if scheme not in PROFILE_SCHEMES:
        raise InvalidPlanError(f"scheme must be one of {PROFILE_SCHEMES}, got {scheme!r}")
    items = list(results)
    if not items:
        raise InvalidPlanError("cannot build a weight profile from zero results")
    R = len(items)
    w = np.zeros(T)
    for item in items:
        loc = getattr(item, "argmax", item)
        if loc.e_p >= T or loc.e_q >= T:
            raise InvalidPlanError(f"argmax interval exceeds profile length {T}")
        for s, e in ((loc.s_p, loc.e_p), (loc.s_q, loc.e_q)):
            n = e - s + 1
            w[s : e + 1] += 1.0 / R if scheme == "equal" else 1.0 / (R * n)
    return w
