"""Fractional Fourier machinery: exactness, group law, parity, intertwining."""

import math

import numpy as np
import pytest

from gaborcert import (
    DegenerateAngleError,
    PreconditionError,
    SampledFunction,
    TruncationRiskWarning,
    chirp,
    dilate,
    dilate_sampled,
    frac_fourier,
    gaussian,
    hermite,
    intertwining_residual,
    parity_residual,
    sample_window,
    time_frequency_shift,
)


@pytest.fixture(scope="module")
def g_s():
    return sample_window(gaussian())


@pytest.fixture(scope="module")
def h1_s():
    return sample_window(hermite(1))


def max_err(f, g_values):
    return float(np.max(np.abs(f.values - g_values)))


def test_quarter_turn_is_fourier_transform(g_s):
    # the Gaussian is its own transform under this normalization
    out = frac_fourier(g_s, 0.5 * math.pi)
    assert max_err(out, g_s.values) <= 1e-12


def test_hermite_eigenvalues(g_s, h1_s):
    out = frac_fourier(h1_s, 0.5 * math.pi)
    assert max_err(out, -1j * h1_s.values) <= 1e-12
    for r in (math.pi / 3.0, 0.7):
        out = frac_fourier(h1_s, r)
        assert max_err(out, np.exp(-1j * r) * h1_s.values) <= 1e-10
    h2_s = sample_window(hermite(2))
    out = frac_fourier(h2_s, 0.7)
    assert max_err(out, np.exp(-2j * 0.7) * h2_s.values) <= 1e-10


def test_group_law(g_s, h1_s):
    for f in (g_s, h1_s):
        two_step = frac_fourier(frac_fourier(f, math.pi / 4.0), math.pi / 6.0)
        one_step = frac_fourier(f, math.pi / 4.0 + math.pi / 6.0)
        assert max_err(two_step, one_step.values) <= 1e-12


def test_unitarity(g_s, h1_s):
    for f in (g_s, h1_s):
        norm = f.l2_norm()
        out = frac_fourier(f, math.pi / 3.0)
        assert abs(out.l2_norm() - norm) <= 1e-10 * norm


def test_roundtrip(h1_s):
    r = 2.0 * math.pi / 5.0
    back = frac_fourier(frac_fourier(h1_s, r), -r)
    assert max_err(back, h1_s.values) <= 1e-12


def test_special_angles_are_exact(h1_s):
    ident = frac_fourier(h1_s, 0.0)
    assert np.array_equal(ident.values, h1_s.values)
    full_turn = frac_fourier(h1_s, 2.0 * math.pi)
    assert np.array_equal(full_turn.values, h1_s.values)
    flip = frac_fourier(h1_s, math.pi)
    assert np.array_equal(flip.values, h1_s.values[::-1])
    neg_flip = frac_fourier(h1_s, -math.pi)
    assert np.array_equal(neg_flip.values, h1_s.values[::-1])
    # angles within the snap tolerance ride the same exact paths
    snapped = frac_fourier(h1_s, 1e-13)
    assert np.array_equal(snapped.values, h1_s.values)


def test_degenerate_angles_rejected(g_s):
    with pytest.raises(DegenerateAngleError):
        frac_fourier(g_s, 1e-8)
    with pytest.raises(DegenerateAngleError):
        frac_fourier(g_s, math.pi - 1e-7)
    with pytest.raises(PreconditionError):
        frac_fourier(g_s, math.inf)


def test_slow_end_decay_warns():
    wide = sample_window(dilate(gaussian(), 5.0))
    with pytest.warns(TruncationRiskWarning):
        frac_fourier(wide, math.pi / 3.0)


def test_sampled_function_validation():
    good = np.linspace(-8.0, 8.0, 3201)
    vals = np.exp(-good**2)
    SampledFunction(grid=good, values=vals)
    with pytest.raises(PreconditionError):
        SampledFunction(grid=good[:-1], values=vals)
    with pytest.raises(PreconditionError):
        SampledFunction(grid=good + 1.0, values=vals)
    with pytest.raises(PreconditionError):
        SampledFunction(grid=good[::4], values=vals[::4])
    with pytest.raises(PreconditionError):
        SampledFunction(grid=good * 0.25, values=vals)
    with pytest.raises(PreconditionError):
        SampledFunction(grid=good, values=np.where(np.abs(good) < 1.0, np.nan, vals))
    bad = good.copy()
    bad[10] += 1e-6
    with pytest.raises(PreconditionError):
        SampledFunction(grid=bad, values=vals)


def test_parity_preservation(g_s, h1_s):
    assert parity_residual("frac_fourier", g_s, math.pi / 3.0) <= 1e-10
    assert parity_residual("frac_fourier", h1_s, math.pi / 3.0) <= 1e-10
    assert parity_residual("chirp", h1_s, 0.8) <= 1e-12
    assert parity_residual("dilate", h1_s, 1.7) <= 1e-9


def test_parity_residual_rejects_bad_input(g_s):
    with pytest.raises(PreconditionError):
        parity_residual("shear", g_s, 1.0)
    lopsided = g_s.with_values(np.exp(-math.pi * (g_s.grid - 1.0) ** 2))
    with pytest.raises(PreconditionError):
        parity_residual("chirp", lopsided, 1.0)


def test_intertwining_examples(g_s):
    assert intertwining_residual(g_s, 2.0, (0.5, 0.25)) <= 1e-5
    assert intertwining_residual(g_s, 0.5, (0.0, 1.0)) <= 1e-12
    # off-grid shifts go through linear interpolation; tolerance is looser
    assert intertwining_residual(g_s, 2.0, (0.3333, 0.1)) <= 1e-3
    with pytest.raises(PreconditionError):
        intertwining_residual(g_s, -1.0, (0.0, 0.0))


@pytest.mark.parametrize("a", [1.3, 0.8])
def test_dilate_sampled_matches_analytic(g_s, a):
    resampled = dilate_sampled(g_s, a)
    analytic = sample_window(dilate(gaussian(), a))
    assert max_err(resampled, analytic.values) <= 1e-9


def test_operator_input_validation(g_s):
    with pytest.raises(PreconditionError):
        chirp(g_s, math.nan)
    with pytest.raises(PreconditionError):
        dilate_sampled(g_s, -1.0)
    with pytest.raises(PreconditionError):
        time_frequency_shift(g_s, math.inf, 0.0)
    same = chirp(g_s, 0.0)
    assert np.array_equal(same.values, g_s.values)


def test_shift_matches_closed_form(g_s):
    # x = 0.5 lands on the grid, so resampling is exact up to rounding
    out = time_frequency_shift(g_s, 0.5, 0.25)
    expected = np.exp(2j * math.pi * 0.25 * g_s.grid) * np.exp(
        -math.pi * (g_s.grid - 0.5) ** 2
    )
    assert max_err(out, expected) <= 1e-12


def test_gaussian_l2_norm(g_s):
    # integral of exp(-2 pi t^2) is (1/2)^(1/2), so the norm is 2^(-1/4)
    assert abs(g_s.l2_norm() - 2.0**-0.25) <= 1e-10
