"""Non-decimated Haar wavelet machinery.

Provides the Haar filter bank, circular (periodic-boundary) filtering,
the squared-coefficient periodogram, filter autocorrelation sequences,
and their Gram matrix. Scales are negative integers: scale j has filter
length 2**(-j), so j = -1 is the finest scale. Periodic boundaries give
every location 0..T-1 a coefficient at every scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidScaleError, SeriesTooShortError

# Direct convolution is used while T * L_j stays at or below this many
# multiply-adds; past it the FFT path is cheaper.
FFT_CROSSOVER = 4096


@dataclass(frozen=True)
class WaveletFilter:
    """Haar filter at one scale: 2**(-j-1) positive taps then as many
    negative ones, all of magnitude 2**(j/2). Zero-sum and unit-norm."""

    scale: int
    taps: np.ndarray

    def __len__(self) -> int:
        return len(self.taps)


@dataclass(frozen=True)
class AutocorrWavelet:
    """Autocorrelation sequence of a filter: values[i] holds
    sum_k psi_k psi_(k+lags[i]) for lags -(L-1)..(L-1)."""

    scale: int
    lags: np.ndarray
    values: np.ndarray

    def at(self, tau: int) -> float:
        """Value at a single lag; zero outside the support."""
        length = (len(self.values) + 1) // 2
        if abs(tau) >= length:
            return 0.0
        return float(self.values[tau + length - 1])


@dataclass(frozen=True)
class OperatorMatrix:
    """Gram matrix of the autocorrelation sequences. values[i, l] pairs
    scales -(i+1) and -(l+1)."""

    J_star: int
    values: np.ndarray

    def entry(self, j: int, l: int) -> float:
        return float(self.values[-j - 1, -l - 1])


@dataclass(frozen=True)
class PeriodogramMatrix:
    """Squared wavelet coefficients, one row per scale.

    values[i, k] is the squared coefficient at scale -(i+1), location k.
    """

    J_star: int
    T: int
    values: np.ndarray

    def row(self, j: int) -> np.ndarray:
        if not -self.J_star <= j <= -1:
            raise InvalidScaleError(f"scale {j} outside -1..-{self.J_star}")
        return self.values[-j - 1]


def _check_scale(j: int) -> int:
    if not isinstance(j, (int, np.integer)) or j >= 0:
        raise InvalidScaleError(f"scale must be a negative integer, got {j!r}")
    return int(j)


def haar_filter(j: int) -> WaveletFilter:
    """Return the Haar filter at scale j <= -1."""
    j = _check_scale(j)
    length = 2 ** (-j)
    half = length // 2
    amp = 2.0 ** (j / 2.0)
    taps = np.empty(length)
    taps[:half] = amp
    taps[half:] = -amp
    return WaveletFilter(scale=j, taps=taps)


def circular_filter(x: np.ndarray, taps: np.ndarray, method: str = "auto") -> np.ndarray:
    """Circular convolution out_k = sum_m taps[m] * x[(k - m) mod T].

    method: "auto" picks direct vs FFT by the T * len(taps) crossover,
    "direct" and "fft" force one path. Both paths agree to roundoff.
    """
    x = np.asarray(x, dtype=float)
    T = x.shape[0]
    L = len(taps)
    if L > T:
        raise SeriesTooShortError(f"filter length {L} exceeds series length {T}")
    if method == "auto":
        method = "fft" if T * L > FFT_CROSSOVER else "direct"
    if method == "direct":
        out = np.zeros(T)
        for m in range(L):
            out += taps[m] * np.roll(x, m)
        return out
    if method == "fft":
        kernel = np.zeros(T)
        kernel[:L] = taps
        return np.fft.irfft(np.fft.rfft(x) * np.fft.rfft(kernel), n=T)
    raise ValueError(f"unknown method {method!r}")


def wavelet_periodogram(x: np.ndarray, J_star: int, method: str = "auto") -> PeriodogramMatrix:
    """Squared non-decimated Haar coefficients at scales -1..-J_star.

    The series is mean-centred before filtering. The filters annihilate
    constants, so this is a mathematical no-op; doing it explicitly
    keeps the result stable when the series carries a large offset.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("input series must be one-dimensional")
    if J_star < 1:
        raise InvalidScaleError(f"J_star must be >= 1, got {J_star}")
    T = x.shape[0]
    if T < 2**J_star:
        raise SeriesTooShortError(f"need T >= 2**J_star = {2**J_star}, got T = {T}")
    xc = x - x.mean()
    values = np.empty((J_star, T))
    fx = None
    for i in range(J_star):
        taps = haar_filter(-(i + 1)).taps
        use_fft = method == "fft" or (method == "auto" and T * len(taps) > FFT_CROSSOVER)
        if use_fft:
            if fx is None:
                fx = np.fft.rfft(xc)
            kernel = np.zeros(T)
            kernel[: len(taps)] = taps
            coeff = np.fft.irfft(fx * np.fft.rfft(kernel), n=T)
        else:
            coeff = circular_filter(xc, taps, method="direct")
        values[i] = coeff * coeff
    return PeriodogramMatrix(J_star=J_star, T=T, values=values)


def autocorr_wavelet(j: int) -> AutocorrWavelet:
    """Autocorrelation sequence of the Haar filter at scale j."""
    taps = haar_filter(j).taps
    values = np.correlate(taps, taps, mode="full")
    L = len(taps)
    lags = np.arange(-(L - 1), L)
    return AutocorrWavelet(scale=j, lags=lags, values=values)


def operator_matrix(J_star: int) -> OperatorMatrix:
    """Gram matrix A of the autocorrelation sequences for scales
    -1..-J_star: A[j, l] = sum_tau Psi_j(tau) * Psi_l(tau)."""
    if J_star < 1:
        raise InvalidScaleError(f"J_star must be >= 1, got {J_star}")
    acs = [autocorr_wavelet(-(i + 1)) for i in range(J_star)]
    width = 2 ** J_star - 1
    padded = np.zeros((J_star, 2 * width + 1))
    for i, ac in enumerate(acs):
        half = len(ac.values) // 2
        padded[i, width - half : width + half + 1] = ac.values
    values = padded @ padded.T
    return OperatorMatrix(J_star=J_star, values=values)


def white_noise_contrast_variance(j: int, pair_weights: np.ndarray) -> float:
    """Asymptotic variance of a weighted periodogram contrast under unit
    Gaussian white noise: 2 * A[j, j] * sum_k w_k**2."""
    ac = autocorr_wavelet(j)
    a_jj = float(np.dot(ac.values, ac.values))
    w = np.asarray(pair_weights, dtype=float)
    return 2.0 * a_jj * float(np.dot(w, w))
