import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polelyap import (
    PoleSpectrum,
    UnitSystem,
    VolumeElement,
    VolumeOverflowError,
    escape_factor,
    evolve_volume,
    gamow_spectrum,
    log_volume,
    time_reverse,
)

from oracles import naive_volume

widths = st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=20)
times = st.floats(-10, 10, allow_nan=False)
volumes = st.floats(1e-12, 1.0)


def test_volume_element_bounds():
    assert VolumeElement(1.0).dv0 == 1.0
    assert VolumeElement(1e-3).quasiclassical_parameter == pytest.approx(1e3)
    for bad in (0.0, -1e-3, 1.5):
        with pytest.raises(ValueError):
            VolumeElement(bad)


def test_volume_at_time_zero_is_initial_volume():
    assert evolve_volume(gamow_spectrum(7), VolumeElement(1e-3), 0.0) == 1e-3
    assert log_volume(gamow_spectrum(7), VolumeElement(1e-3), 0.0) == pytest.approx(math.log(1e-3), abs=1e-15)


def test_three_pole_direct_sum():
    s = time_reverse(gamow_spectrum(2))
    got = evolve_volume(s, VolumeElement(1e-3), 1.0)
    # (1e-3/3)(1 + e^2 + e^4) evaluated at 40 digits
    assert got == pytest.approx(0.020995735377358296, rel=1e-14)
    assert got == pytest.approx(naive_volume([0, 1, 2], 1e-3, 1.0), rel=1e-14)


@given(st.floats(-3, 3), volumes, times)
def test_single_pole_closed_form(gamma, dv0, t):
    s = PoleSpectrum.from_gammas([gamma])
    assert evolve_volume(s, VolumeElement(dv0), t) == pytest.approx(dv0 * math.exp(2 * gamma * t), rel=1e-12)


@given(widths, volumes, times)
def test_lse_matches_naive_sum(gammas, dv0, t):
    s = PoleSpectrum.from_gammas(gammas)
    v = VolumeElement(dv0)
    expected = naive_volume(gammas, dv0, t)
    assert evolve_volume(s, v, t) == pytest.approx(expected, rel=1e-12)
    assert math.exp(log_volume(s, v, t)) == pytest.approx(evolve_volume(s, v, t), rel=1e-12)


@given(widths, volumes, times)
def test_time_reversal_duality(gammas, dv0, t):
    s = PoleSpectrum.from_gammas(gammas)
    v = VolumeElement(dv0)
    assert evolve_volume(time_reverse(s), v, t) == pytest.approx(evolve_volume(s, v, -t), rel=1e-12)
    assert escape_factor(time_reverse(s), t).gamma_escape == pytest.approx(
        escape_factor(s, -t).gamma_escape, rel=1e-12, abs=1e-15
    )


@given(st.lists(st.floats(0, 5), min_size=1, max_size=10), st.floats(0.01, 1.0))
def test_monotone_for_sign_definite_spectra(gammas, scale):
    gammas = gammas + [scale]  # at least one strictly positive
    v = VolumeElement(1e-3)
    t = np.linspace(0, 3, 40)
    up = [log_volume(PoleSpectrum.from_gammas(gammas), v, x) for x in t]
    down = [log_volume(PoleSpectrum.from_gammas([-g for g in gammas]), v, x) for x in t]
    assert np.all(np.diff(up) > 0)
    assert np.all(np.diff(down) < 0)


def test_large_spectrum_does_not_overflow():
    s = time_reverse(gamow_spectrum(10000))
    lv = log_volume(s, VolumeElement(1e-12), 1.0)
    assert math.isfinite(lv)
    # dominated by the top pole: 2*10000*1 - log(N+1) + log(dv0) + log(1/(1-e^-2))
    expected = math.log(1e-12) - math.log(10001) + 20000.0 - math.log1p(-math.exp(-2.0))
    assert lv == pytest.approx(expected, rel=1e-12)
    with pytest.raises(VolumeOverflowError) as info:
        evolve_volume(s, VolumeElement(1e-12), 1.0)
    assert info.value.log_volume == lv


def test_gamow_volume_saturates_at_ks_time():
    # T0 for N=100, dV=1e-3 from the geometric-series oracle
    s = time_reverse(gamow_spectrum(100))
    assert log_volume(s, VolumeElement(1e-3), 0.045393448040472212) == pytest.approx(0.0, abs=1e-13)


def test_escape_factor_examples():
    assert escape_factor(PoleSpectrum.from_gammas([0, 0, 0]), 3.7).gamma_escape == 0.0
    e = escape_factor(PoleSpectrum.from_gammas([0.4]), 2.0)
    assert e.gamma_escape == pytest.approx(-1.6, rel=1e-15)
    assert e.contraction == pytest.approx(math.exp(1.6))
    s = PoleSpectrum.from_gammas([0.5], UnitSystem(hbar=2.0))
    assert escape_factor(s, 1.0).gamma_escape == pytest.approx(-0.5)


@given(widths, times, volumes, volumes)
def test_escape_factor_independent_of_volume(gammas, t, dv_a, dv_b):
    s = PoleSpectrum.from_gammas(gammas)
    via_a = -(log_volume(s, VolumeElement(dv_a), t) - math.log(dv_a))
    via_b = -(log_volume(s, VolumeElement(dv_b), t) - math.log(dv_b))
    g = escape_factor(s, t).gamma_escape
    assert via_a == pytest.approx(via_b, rel=1e-14, abs=1e-12)
    assert g == pytest.approx(via_a, rel=1e-14, abs=1e-12)


def test_unit_step_contraction_of_decaying_gamow():
    # the decaying model loses measure each unit step; the reversed one gains it
    s = gamow_spectrum(3)
    assert escape_factor(s, 1.0).gamma_escape > 0
    assert escape_factor(time_reverse(s), 1.0).gamma_escape < 0
