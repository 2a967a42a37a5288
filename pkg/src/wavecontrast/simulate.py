"""Simulation models for size and power studies.

S1-S7 are stationary ARMA benchmarks; N1-N12 are non-stationary
departures (time-varying coefficients, wavelet spectra with moving
bumps, variance breaks, and slowly modulated recursions). Recursive
models start at zero and discard a 500-step burn-in run under the t = 1
regime. S-model innovations are configurable; N-model innovations are
always standard normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import (
    InvalidSpectrumError,
    SeriesTooShortError,
    UnknownModelError,
)
from .wavelets import circular_filter, haar_filter

BURN_IN = 500

INNOVATIONS = ("normal", "gamma91_centred", "t5")

S_MODELS = ("S1", "S2", "S3", "S4", "S5", "S6", "S7")
N_MODELS = ("N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "N10", "N11", "N12")
MODEL_TAGS = S_MODELS + N_MODELS


@dataclass(frozen=True)
class ModelSpec:
    """One simulation request. innovations only affects S-models."""

    tag: str
    T: int
    innovations: str = "normal"

    def __post_init__(self):
        if self.tag not in MODEL_TAGS:
            raise UnknownModelError(f"unknown model {self.tag!r}; choose one of {', '.join(MODEL_TAGS)}")
        if self.innovations not in INNOVATIONS:
            raise UnknownModelError(
                f"unknown innovation distribution {self.innovations!r}; choose one of {', '.join(INNOVATIONS)}")
        if self.T < 1:
            raise SeriesTooShortError(f"need T >= 1, got {self.T}")


@dataclass(frozen=True)
class SpectrumSpec:
    """Per-scale spectrum functions on rescaled time z in [0, 1).

    functions maps a negative scale to a callable evaluating S_j(z) on
    arrays; absent scales are identically zero.
    """

    functions: dict

    @property
    def depth(self) -> int:
        return max(-j for j in self.functions)

    def value(self, j: int, z: np.ndarray) -> np.ndarray:
        fn = self.functions.get(j)
        if fn is None:
            return np.zeros_like(np.asarray(z, dtype=float))
        return np.asarray(fn(np.asarray(z, dtype=float)), dtype=float)


def gen_innovations(dist: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. innovations: standard normal, centred Gamma(9, 1)
    (variance 9), or raw Student t5 (variance 5/3)."""
    if dist == "normal":
        return rng.standard_normal(n)
    if dist == "gamma91_centred":
        return rng.gamma(9.0, 1.0, size=n) - 9.0
    if dist == "t5":
        return rng.standard_t(5, size=n)
    raise UnknownModelError(f"unknown innovation distribution {dist!r}; choose one of {', '.join(INNOVATIONS)}")


def lsw_synthesize(spec: SpectrumSpec, T: int, rng: np.random.Generator) -> np.ndarray:
    """Draw one series from a wavelet spectrum.

    For each scale j present in the spec, sqrt(S_j(k/T)) scales an
    i.i.d. standard normal sequence, which is then pushed through the
    Haar filter with periodic wrapping; scales contribute in the fixed
    order -1, -2, ... so the draw layout is reproducible.
    """
    if not spec.functions:
        raise InvalidSpectrumError("spectrum has no scales")
    if T < 2**spec.depth:
        raise SeriesTooShortError(f"need T >= 2**depth = {2**spec.depth}, got T = {T}")
    z = np.arange(T) / T
    x = np.zeros(T)
    for j in sorted(spec.functions, reverse=True):
        S = spec.value(j, z)
        if (S < 0.0).any():
            raise InvalidSpectrumError(f"spectrum at scale {j} takes negative values")
        amplitude = np.sqrt(S)
        xi = rng.standard_normal(T)
        x += circular_filter(amplitude * xi, haar_filter(j).taps)
    return x


def _parabolic(z: np.ndarray) -> np.ndarray:
    return 0.25 - 0.5 * (z - 0.5) ** 2


def _bump(z: np.ndarray) -> np.ndarray:
    return np.exp(-64.0 * (z - 0.5) ** 2)


def spectrum_for(tag: str) -> SpectrumSpec:
    """Wavelet spectra of the spectrum-driven models N2, N3, N4."""
    if tag == "N2":
        return SpectrumSpec(functions={-1: _parabolic})
    if tag == "N3":
        return SpectrumSpec(functions={
            -1: _parabolic,
            -2: lambda z: _parabolic(np.mod(z + 0.5, 1.0)),
        })
    if tag == "N4":
        return SpectrumSpec(functions={
            -1: _bump,
            -3: lambda z: _bump(z - 0.25),
            -4: lambda z: _bump(z + 0.25),
        })
    raise UnknownModelError(f"model {tag!r} has no wavelet spectrum")


# ARMA coefficient tables for the stationary benchmarks: numerator
# (moving-average) and denominator (autoregressive) polynomials in
# lfilter convention.
_S_FILTERS = {
    "S1": ([1.0], [1.0]),
    "S2": ([1.0], [1.0, 0.9]),
    "S3": ([1.0], [1.0, -0.9]),
    "S4": ([1.0, -0.8], [1.0]),
    "S5": ([1.0, 0.8], [1.0]),
    "S6": ([1.0, -0.8, 0.4], [1.0, 0.4]),
    "S7": ([1.0], [1.0, -1.385929, 0.9604]),
}


def _gen_stationary(spec: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    z = gen_innovations(spec.innovations, spec.T + BURN_IN, rng)
    num, den = _S_FILTERS[spec.tag]
    x = lfilter(num, den, z)
    return x[BURN_IN:]


def _recursive(T: int, z: np.ndarray, coef_of_t) -> np.ndarray:
    """x[i] = coef(t) * x[i-1] + z[i] with a burn-in under the t = 1
    coefficient; t runs 1..T over the last T positions."""
    n = BURN_IN + T
    x = np.empty(n)
    c1 = coef_of_t(1)
    x[0] = z[0]
    for i in range(1, BURN_IN):
        x[i] = c1 * x[i - 1] + z[i]
    for t in range(1, T + 1):
        i = BURN_IN + t - 1
        x[i] = coef_of_t(t) * x[i - 1] + z[i]
    return x[BURN_IN:]


def _gen_nonstationary(spec: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    tag, T = spec.tag, spec.T
    if tag in ("N2", "N3", "N4"):
        return lsw_synthesize(spectrum_for(tag), T, rng)
    z = rng.standard_normal(BURN_IN + T)
    t = np.arange(1, T + 1)
    if tag == "N1":
        slope = 1.8 / (T - 1) if T > 1 else 0.0
        return _recursive(T, z, lambda tt: 0.9 - slope * (tt - 1))
    if tag == "N5":
        return (1.0 + t / T) * z[BURN_IN:]
    if tag == "N6":
        return _recursive(T, z, lambda tt: -0.9 * math.sqrt(tt / T))
    if tag == "N7":
        coef = 0.8 * np.cos(1.5 - np.cos(4.0 * np.pi * t / T))
        i = BURN_IN + t - 1
        return coef * z[i - 1] + z[i]
    if tag == "N8":
        coef = 0.8 * np.cos(1.5 - np.cos(4.0 * np.pi * t / T))
        i = BURN_IN + t - 1
        return coef * z[i - 6] + z[i]
    if tag == "N9":
        return _recursive(T, z, lambda tt: 0.6 * math.sin(4.0 * math.pi * tt / T))
    if tag == "N10":
        return _recursive(T, z, lambda tt: 0.5 if tt <= T / 4 or tt > 3 * T / 4 else -0.5)
    if tag == "N11":
        lo, hi = T / 2, T / 2 + T / 64
        n = BURN_IN + T
        x = np.empty(n)
        x[0] = z[0]
        for i in range(1, BURN_IN):
            x[i] = -0.5 * x[i - 1] + z[i]
        for tt in range(1, T + 1):
            i = BURN_IN + tt - 1
            if lo < tt <= hi:
                x[i] = 4.0 * z[i]
            else:
                x[i] = -0.5 * x[i - 1] + z[i]
        return x[BURN_IN:]
    if tag == "N12":
        root = math.sqrt(T)
        edges = [0]
        while edges[-1] < T:
            edges.append(math.floor(len(edges) * root))
        # block m covers [floor(m * sqrt(T)), floor((m+1) * sqrt(T))):
        # even blocks use -0.5, odd blocks +0.5
        def coef(tt: int) -> float:
            m = np.searchsorted(edges, tt, side="right") - 1
            return -0.5 if m % 2 == 0 else 0.5
        return _recursive(T, z, coef)
    raise UnknownModelError(f"unknown model {tag!r}")


def gen_model(spec: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    """Draw one series of length spec.T from the requested model."""
    if spec.tag in S_MODELS:
        return _gen_stationary(spec, rng)
    return _gen_nonstationary(spec, rng)
