import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import sici

from timelike_signals.special import sine_integral
from timelike_signals.udw import (
    UdwParams,
    energy_density,
    energy_profile,
    ground_state_limit,
    total_energy,
)


def test_sine_integral_known_values():
    assert sine_integral(0.0) == 0.0
    assert sine_integral(np.pi) == pytest.approx(1.8519370519824662, abs=1e-13)
    assert sine_integral(np.inf) == pytest.approx(np.pi / 2)
    assert np.isnan(sine_integral(np.nan))


@pytest.mark.parametrize("x", [0.1, 1.0, 3.9, 4.0, 4.1, 7.5, 20.0, 150.0, 1500.0])
def test_sine_integral_against_quadrature(x):
    ref, _ = quad(lambda t: np.sinc(t / np.pi), 0, x, limit=20000, epsabs=1e-13, epsrel=1e-13)
    assert sine_integral(x) == pytest.approx(ref, abs=1e-9)


def test_sine_integral_against_scipy_on_grid():
    x = np.concatenate([np.linspace(-60, 60, 4001), np.logspace(-6, 6, 200)])
    np.testing.assert_allclose(sine_integral(x), sici(x)[0], atol=1e-13)


@given(st.floats(-1e3, 1e3))
def test_sine_integral_is_odd(x):
    assert sine_integral(-x) == -sine_integral(x)


def test_params_validation():
    with pytest.raises(ValueError):
        UdwParams(1.0, 0.1, 0.0)
    with pytest.raises(ValueError):
        UdwParams(1.0, 0.1, 1.0, excited_weight=1.5)
    assert UdwParams(1.0, 0.1, 1.0, 0.25).inversion == pytest.approx(-0.5)


def test_density_vanishes_off_strips(rng):
    p = UdwParams(1.0, 0.3, 25.0, 1.0)
    t = rng.uniform(-50, 80, 10_000)
    x = rng.uniform(-80, 80, 10_000)
    xp, xm = t + x, t - x
    off = ~((xp >= 0) & (xp < 25)) & ~((xm >= 0) & (xm < 25))
    assert off.sum() > 1000
    assert np.all(energy_density(p, t[off], x[off]) == 0.0)


def test_balanced_state_has_flat_strips():
    p = UdwParams(2.0, 0.1, 10.0, 0.5)
    lam2w2 = 0.1**2 * 2.0**2
    assert energy_density(p, 3.0, 1.0) == pytest.approx(lam2w2 * 0.5)  # both strips
    assert energy_density(p, 3.0, 5.0) == pytest.approx(lam2w2 * 0.25)  # one strip


def test_excited_plateau_far_from_onset():
    p = UdwParams(1.0, 1.0, 1e4, 1.0)
    # x_+ = 3000 deep inside the window, x_- = -1000 outside
    val = energy_density(p, 1000.0, 2000.0)
    assert val == pytest.approx(0.5, rel=2e-3)


def test_ground_state_density_goes_negative():
    p = UdwParams(1.0, 1.0, 25.0, 0.0)
    x = np.linspace(-30, 30, 3001)
    assert energy_profile(p, 30.0, x).density.min() < 0


@settings(max_examples=50)
@given(w=st.floats(0, 1), t=st.floats(0, 40), x=st.floats(-40, 40))
def test_density_between_extremes(w, t, x):
    lo = energy_density(UdwParams(1.0, 1.0, 25.0, 0.0), t, x)
    hi = energy_density(UdwParams(1.0, 1.0, 25.0, 1.0), t, x)
    mid = energy_density(UdwParams(1.0, 1.0, 25.0, w), t, x)
    assert min(lo, hi) - 1e-12 <= mid <= max(lo, hi) + 1e-12


def test_total_energy_balanced_and_small_T():
    assert total_energy(UdwParams(3.0, 0.2, 7.0, 0.5)) == pytest.approx(0.2**2 * 9 * 7 / 2)
    # continuity at zero duration
    assert total_energy(UdwParams(1.0, 1.0, 1e-12, 0.0)) == pytest.approx(0.0, abs=1e-11)
    assert total_energy(UdwParams(1.0, 1.0, 1e-12, 1.0)) == pytest.approx(0.0, abs=1e-11)


def test_ground_state_asymptote():
    for wT in (150.0, 500.0, 2000.0):
        p = UdwParams(2.0, 0.1, wT / 2.0, 0.0)
        rel = abs(total_energy(p) / ground_state_limit(2.0, 0.1) - 1)
        assert rel < 0.01


def test_excited_energy_grows_linearly():
    a = total_energy(UdwParams(1.0, 1.0, 1000.0, 1.0))
    b = total_energy(UdwParams(1.0, 1.0, 2000.0, 1.0))
    assert b / a == pytest.approx(2.0, rel=1e-3)


@pytest.mark.parametrize("wT", [5.0, 25.0, 100.0])
@pytest.mark.parametrize("weight", [0.0, 0.5, 1.0])
def test_profile_integrates_to_total_energy(wT, weight):
    p = UdwParams(1.0, 0.2, wT, weight)
    t = wT + 2.0
    x = np.linspace(-t - 1, t + 1, 200_001)
    prof = energy_profile(p, t, x)
    assert prof.integral() == pytest.approx(total_energy(p), rel=1e-2)


def test_fig1_support():
    p = UdwParams(1.0, 1.0, 25.0, 1.0)
    x = np.linspace(-40, 40, 8001)
    dens = energy_profile(p, 30.0, x).density
    ax = np.abs(x)
    assert np.all(dens[(ax < 5 - 1e-9) | (ax > 30 + 1e-9)] == 0)
    assert np.all(dens[(ax > 5 + 1e-9) & (ax < 30 - 1e-9)] != 0)


def test_empty_grid_is_an_error():
    with pytest.raises(ValueError):
        energy_profile(UdwParams(1.0, 1.0, 1.0), 0.0, [])
