"""AR sieve bootstrap scale estimates for periodogram contrasts.

An autoregression is fitted to the observed series by Yule-Walker with
biased (divide-by-T) autocovariances, the order chosen by AIC. Centred
residuals are resampled i.i.d. and pushed back through the fitted
recursion to produce bootstrap series; the standard deviation of each
contrast across bootstrap series is the scale estimate used to
standardize the observed contrasts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import (
    DegenerateBootstrapError,
    DegenerateSeriesError,
    InfeasibleConfigError,
    OrderTooLargeError,
)
from .intervals import IntervalPairSet, contrast_all
from .wavelets import wavelet_periodogram

# Resampled recursions start at zero and discard this many steps plus
# one per AR coefficient.
BURN_IN = 100

# Scale estimates below this are flagged degenerate and excluded from
# the test statistic.
SIGMA_FLOOR = 1e-12


@dataclass(frozen=True)
class ARFit:
    """Yule-Walker fit: coefficients alpha_1..alpha_p, the innovation
    variance, and the centred residuals from t = p onwards."""

    order: int
    coefficients: np.ndarray
    innovation_variance: float
    residuals: np.ndarray


@dataclass(frozen=True)
class SigmaTable:
    """Bootstrap scale estimates aligned with a ContrastTable: values
    has shape (J_star, D); degenerate flags cells below SIGMA_FLOOR."""

    values: np.ndarray
    degenerate: np.ndarray
    ar_order: int


def _autocovariance(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Biased autocovariances gamma[0..max_lag] (divide by T)."""
    T = len(x)
    xc = x - x.mean()
    gamma = np.empty(max_lag + 1)
    for k in range(max_lag + 1):
        gamma[k] = np.dot(xc[: T - k], xc[k:]) / T
    return gamma


def _levinson(gamma: np.ndarray, order: int):
    """Levinson-Durbin recursion on gamma[0..order].

    Returns (coefficients of the order-`achieved` fit, innovation
    variances for orders 0..achieved, achieved). The recursion stops
    early if an innovation variance hits zero.
    """
    sigma2 = np.empty(order + 1)
    sigma2[0] = gamma[0]
    phi = np.empty(0)
    achieved = 0
    for m in range(1, order + 1):
        prev = sigma2[m - 1]
        if not prev > 0.0:
            break
        k = (gamma[m] - np.dot(phi, gamma[m - 1 : 0 : -1])) / prev
        phi = np.append(phi - k * phi[::-1], k)
        sigma2[m] = prev * (1.0 - k * k)
        achieved = m
    return phi[: achieved], sigma2[: achieved + 1], achieved


def yule_walker(x: np.ndarray, p: int) -> ARFit:
    """Fit an AR(p) by Yule-Walker with biased autocovariances.

    Residuals are x[t] - sum_i alpha_i x[t-i] for t = p..T-1, centred.
    The recursion keeps every partial correlation inside (-1, 1), so the
    fitted polynomial is causal.
    """
    x = np.asarray(x, dtype=float)
    T = len(x)
    if p < 0:
        raise InfeasibleConfigError(f"order must be nonnegative, got {p}")
    if p >= T / 2:
        raise OrderTooLargeError(f"order {p} too large for series length {T}")
    if T == 0 or np.ptp(x) == 0.0:
        raise DegenerateSeriesError("series has zero variance")
    if p == 0:
        resid = x - x.mean()
        return ARFit(order=0, coefficients=np.empty(0),
                     innovation_variance=float(np.dot(resid, resid) / T),
                     residuals=resid)
    gamma = _autocovariance(x, p)
    coef, sigma2, achieved = _levinson(gamma, p)
    if achieved < p:
        raise DegenerateSeriesError(
            f"autocovariance sequence numerically singular at order {achieved + 1}")
    resid = x[p:].copy()
    for i in range(1, p + 1):
        resid -= coef[i - 1] * x[p - i : T - i]
    resid -= resid.mean()
    return ARFit(order=p, coefficients=coef,
                 innovation_variance=float(sigma2[p]), residuals=resid)


def default_max_order(T: int) -> int:
    """AIC search ceiling: min(ceil(10 * log10(T)), 20)."""
    return int(min(int(np.ceil(10.0 * np.log10(T))), 20))


def select_ar_order(x: np.ndarray, p_max: int | None = None) -> int:
    """AIC-minimising Yule-Walker order in 0..p_max.

    AIC(m) = T * log(innovation variance at order m) + 2m, with the
    variances taken from one Levinson-Durbin sweep. Ties keep the
    smaller order.
    """
    x = np.asarray(x, dtype=float)
    T = len(x)
    if p_max is None:
        p_max = default_max_order(T)
    if p_max < 1:
        raise InfeasibleConfigError(f"p_max must be >= 1, got {p_max}")
    p_eff = min(p_max, (T - 1) // 2)
    if T == 0 or np.ptp(x) == 0.0:
        raise DegenerateSeriesError("series has zero variance")
    gamma = _autocovariance(x, p_eff)
    _, sigma2, achieved = _levinson(gamma, p_eff)
    orders = np.arange(achieved + 1)
    aic = T * np.log(sigma2) + 2.0 * orders
    return int(orders[np.argmin(aic)])


def ar_resample(fit: ARFit, T: int, rng: np.random.Generator) -> np.ndarray:
    """One bootstrap series of length T from a fitted autoregression.

    Innovations are i.i.d. draws (with replacement) from the centred
    residuals; the recursion starts at zero and a burn-in of
    BURN_IN + order steps is discarded. Only resampling indices are
    drawn from rng, so rescaling the residuals rescales the output.
    """
    burn = BURN_IN + fit.order
    idx = rng.integers(0, len(fit.residuals), size=T + burn)
    z = fit.residuals[idx]
    if fit.order == 0:
        return z[burn:]
    denom = np.concatenate(([1.0], -fit.coefficients))
    series = lfilter([1.0], denom, z)
    return series[burn:]


def bootstrap_sigma(x: np.ndarray, pairs: IntervalPairSet, J_star: int, B: int,
                    rng: np.random.Generator, order: int | None = None) -> SigmaTable:
    """Bootstrap scale estimate for every (scale, pair) cell.

    Each of the B iterations resamples one series and evaluates every
    contrast on it; sigma is the divide-by-B standard deviation across
    iterations. Iterations use substreams pre-assigned by index, and the
    reduction runs in index order, so the result does not depend on how
    the work is scheduled.
    """
    x = np.asarray(x, dtype=float)
    if B < 2:
        raise InfeasibleConfigError(f"need B >= 2 bootstrap iterations, got {B}")
    try:
        if order is None:
            order = select_ar_order(x)
        fit = yule_walker(x, order)
    except DegenerateSeriesError as exc:
        raise DegenerateBootstrapError(f"cannot fit sieve: {exc}") from exc
    T = len(x)
    streams = rng.spawn(B)
    draws = np.empty((B, J_star, pairs.D))
    for b in range(B):
        xb = ar_resample(fit, T, streams[b])
        Pb = wavelet_periodogram(xb, J_star)
        draws[b] = contrast_all(Pb, pairs).values
    sigma = np.sqrt(np.mean((draws - draws.mean(axis=0)) ** 2, axis=0))
    degenerate = sigma < SIGMA_FLOOR
    if degenerate.all():
        raise DegenerateBootstrapError(
            f"every bootstrap scale estimate fell below {SIGMA_FLOOR}")
    return SigmaTable(values=sigma, degenerate=degenerate, ar_order=fit.order)
