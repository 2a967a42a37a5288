"""Filters, periodograms, autocorrelation wavelets, operator matrix."""

import numpy as np
import pytest

from wavecontrast.errors import InvalidScaleError, SeriesTooShortError
from wavecontrast.rng import substream
from wavecontrast.simulate import SpectrumSpec, lsw_synthesize
from wavecontrast.wavelets import (
    autocorr_wavelet,
    circular_filter,
    haar_filter,
    operator_matrix,
    wavelet_periodogram,
    white_noise_contrast_variance,
)


def test_haar_taps_scale_minus_one():
    f = haar_filter(-1)
    a = 2.0 ** -0.5
    assert f.scale == -1
    np.testing.assert_allclose(f.taps, [a, -a])


def test_haar_taps_scale_minus_two():
    f = haar_filter(-2)
    assert len(f) == 4
    np.testing.assert_allclose(f.taps, [0.5, 0.5, -0.5, -0.5])


@pytest.mark.parametrize("j", range(-8, 0))
def test_haar_zero_sum_unit_norm(j):
    taps = haar_filter(j).taps
    assert len(taps) == 2 ** -j
    assert abs(taps.sum()) < 1e-12
    assert abs(taps @ taps - 1.0) < 1e-12


@pytest.mark.parametrize("j", [0, 1, 3])
def test_haar_rejects_nonnegative_scale(j):
    with pytest.raises(InvalidScaleError):
        haar_filter(j)


def test_impulse_periodogram():
    # single impulse at t=0, scale -1: hand convolution gives
    # coefficients (a, a, 0, 0) and squares (0.5, 0.5, 0, 0)
    P = wavelet_periodogram(np.array([1.0, 0.0, 0.0, 0.0]), 1)
    np.testing.assert_allclose(P.values[0], [0.5, 0.5, 0.0, 0.0], atol=1e-15)


def test_circular_filter_matches_brute_force():
    rng = substream(0, "wavelets", "brute")
    x = rng.standard_normal(37)
    for j in (-1, -2, -3):
        taps = haar_filter(j).taps
        L, T = len(taps), len(x)
        brute = np.zeros(T)
        for k in range(T):
            for i in range(L):
                brute[k] += taps[i] * x[(k - i) % T]
        got = circular_filter(x, taps, method="direct")
        np.testing.assert_allclose(got, brute, atol=1e-12)
        np.testing.assert_allclose(circular_filter(x, taps, method="fft"), brute, atol=1e-10)


def test_circular_filter_rejects_long_kernel():
    with pytest.raises(SeriesTooShortError):
        circular_filter(np.ones(4), haar_filter(-3).taps)


def test_periodogram_shape_and_row_lookup():
    x = substream(0, "wavelets", "rows").standard_normal(128)
    P = wavelet_periodogram(x, 3)
    assert P.values.shape == (3, 128)
    assert P.T == 128 and P.J_star == 3
    np.testing.assert_array_equal(P.row(-2), P.values[1])
    with pytest.raises(InvalidScaleError):
        P.row(-4)
    with pytest.raises(InvalidScaleError):
        P.row(0)


def test_periodogram_rejects_short_series():
    with pytest.raises(SeriesTooShortError):
        wavelet_periodogram(np.ones(8) + np.arange(8), 4)


def test_fast_direct_equivalence():
    # 100 random series with assorted lengths, many of them odd
    worst = 0.0
    for r in range(100):
        rng = substream(0, "fastdirect", r)
        T = int(rng.integers(33, 300))
        x = rng.standard_normal(T)
        J = max(1, min(4, T.bit_length() - 1 - 3))
        Pf = wavelet_periodogram(x, J, method="fft").values
        Pd = wavelet_periodogram(x, J, method="direct").values
        worst = max(worst, float(np.max(np.abs(Pf - Pd) / np.abs(Pd))))
    assert worst <= 1e-10


def test_auto_method_matches_both_paths():
    x = substream(0, "wavelets", "auto").standard_normal(96)
    Pa = wavelet_periodogram(x, 2, method="auto").values
    Pd = wavelet_periodogram(x, 2, method="direct").values
    Pf = wavelet_periodogram(x, 2, method="fft").values
    assert np.array_equal(Pa, Pd) or np.array_equal(Pa, Pf)
    np.testing.assert_allclose(Pd, Pf, rtol=1e-10)


def test_mean_shift_leaves_periodogram_bitwise_unchanged():
    # integer-valued series, power-of-two length and integer shift keep
    # every intermediate exactly representable, so equality is bitwise
    rng = substream(0, "wavelets", "shift")
    x = rng.integers(-50, 50, size=64).astype(float)
    P0 = wavelet_periodogram(x, 3).values
    P1 = wavelet_periodogram(x + 1000.0, 3).values
    assert np.array_equal(P0, P1)


def test_autocorr_wavelet_scale_minus_one():
    # Psi_{-1}: 1 at lag 0, -1/2 at lags +-1, zero beyond
    acw = autocorr_wavelet(-1)
    assert acw.at(0) == pytest.approx(1.0, abs=1e-14)
    assert acw.at(1) == pytest.approx(-0.5, abs=1e-14)
    assert acw.at(-1) == pytest.approx(-0.5, abs=1e-14)
    assert acw.at(5) == 0.0


def test_autocorr_wavelet_scale_minus_two():
    # taps are +-1/2 (exactly representable), so the sequence is exact
    acw = autocorr_wavelet(-2)
    expected = {0: 1.0, 1: 0.25, 2: -0.5, 3: -0.25}
    for tau, val in expected.items():
        assert acw.at(tau) == val
        assert acw.at(-tau) == val
    np.testing.assert_array_equal(acw.lags, np.arange(-3, 4))


def test_autocorr_wavelet_zero_total():
    # values sum to zero because the filter is zero-sum
    for j in (-1, -2, -3, -4):
        assert abs(autocorr_wavelet(j).values.sum()) < 1e-12


def test_operator_matrix_hand_values():
    A = operator_matrix(3)
    assert A.entry(-1, -1) == pytest.approx(1.5, abs=1e-12)
    assert A.entry(-2, -2) == pytest.approx(1.75, abs=1e-12)
    assert A.entry(-1, -2) == pytest.approx(0.75, abs=1e-12)
    assert A.entry(-1, -3) == pytest.approx(0.375, abs=1e-12)


def test_operator_matrix_symmetric_diag_nondecreasing():
    A = operator_matrix(6).values
    np.testing.assert_allclose(A, A.T, atol=1e-14)
    d = np.diag(A)
    assert np.all(np.diff(d) >= -1e-14)


def test_white_noise_contrast_variance():
    # unit-norm weights make the variance 2 * A_{j,j}
    w = np.zeros(8)
    coef = np.sqrt(2.0 * 4.0 / 6.0)
    w[0:2] = coef / 2.0
    w[4:8] = -coef / 4.0
    assert white_noise_contrast_variance(-1, w) == pytest.approx(3.0, abs=1e-12)
    assert white_noise_contrast_variance(-2, w) == pytest.approx(3.5, abs=1e-12)


def test_flat_spectrum_mean_periodogram():
    # a flat unit spectrum at scale -1 has variance 1 and expected
    # scale -1 periodogram A_{-1,-1} * 1 = 1.5; frozen Monte Carlo
    # means over 60 seeded draws are 0.994 and 1.483
    vs, mi = [], []
    for r in range(60):
        rng = substream(0, "flat", r)
        x = lsw_synthesize(SpectrumSpec(functions={-1: lambda z: np.ones_like(z)}), 1024, rng)
        vs.append(np.var(x))
        mi.append(wavelet_periodogram(x, 1).values[0].mean())
    assert 0.9 <= np.mean(vs) <= 1.1
    assert 1.35 <= np.mean(mi) <= 1.65


def test_iid_noise_mean_periodogram():
    # i.i.d. noise is not the flat LSW process: its expected scale -1
    # periodogram is 1.0, not 1.5 (frozen Monte Carlo mean 0.992)
    mi = [wavelet_periodogram(substream(0, "iid", r).standard_normal(1024), 1).values[0].mean()
          for r in range(60)]
    assert 0.9 <= np.mean(mi) <= 1.1
