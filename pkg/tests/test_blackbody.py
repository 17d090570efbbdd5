import math

import numpy as np
import pytest

from cvqkd_thermal.blackbody import (
    CONSTANTS,
    SERIES_SWITCH,
    PhysicalConstants,
    ThermalEnvironment,
    WirelessScenario,
    mean_photon_number,
    omega_from_ghz_as_rad_s,
    omega_from_hz,
    thermal_variance,
    wireless_threshold,
)
from cvqkd_thermal.errors import InvalidParameterError


def test_constants_are_si_2019():
    assert CONSTANTS.hbar == 1.054571817e-34
    assert CONSTANTS.k_b == 1.380649e-23


def test_frequency_conventions():
    assert omega_from_ghz_as_rad_s(300) == 3e11
    assert omega_from_hz(1.0) == pytest.approx(2 * math.pi)


@pytest.mark.parametrize("omega,expected", [(1e9, 7.85e4), (3e11, 2.63e2)])
def test_reference_variances(omega, expected):
    v = thermal_variance(ThermalEnvironment(omega=omega, temperature=300.0))
    assert v == pytest.approx(expected, rel=0.01)


def test_vacuum_limit():
    assert thermal_variance(ThermalEnvironment(omega=1e18, temperature=300.0)) == 1.0
    assert mean_photon_number(ThermalEnvironment(omega=1e20, temperature=1.0)) == 0.0


def test_environment_validation():
    with pytest.raises(InvalidParameterError):
        ThermalEnvironment(omega=0.0, temperature=300.0)
    with pytest.raises(InvalidParameterError):
        ThermalEnvironment(omega=1e9, temperature=-1.0)


def test_series_branch_continuous():
    c = CONSTANTS
    omega_switch = SERIES_SWITCH * c.k_b * 300.0 / c.hbar
    below = mean_photon_number(ThermalEnvironment(omega=omega_switch * (1 - 1e-9), temperature=300.0))
    above = mean_photon_number(ThermalEnvironment(omega=omega_switch * (1 + 1e-9), temperature=300.0))
    assert below == pytest.approx(above, rel=1e-8)


def test_monotone_in_omega_and_temperature():
    omegas = np.geomspace(1e6, 1e16, 60)
    vs = [thermal_variance(ThermalEnvironment(omega=float(w), temperature=300.0)) for w in omegas]
    assert all(a >= b for a, b in zip(vs, vs[1:]))
    temps = np.linspace(1.0, 1000.0, 40)
    vt = [thermal_variance(ThermalEnvironment(omega=1e12, temperature=float(t))) for t in temps]
    assert all(a <= b for a, b in zip(vt, vt[1:]))


def test_injected_constants_change_result():
    fake = PhysicalConstants(hbar=2 * CONSTANTS.hbar, k_b=CONSTANTS.k_b)
    env = ThermalEnvironment(omega=1e9, temperature=300.0)
    assert thermal_variance(env, fake) == pytest.approx(thermal_variance(env) / 2, rel=1e-4)


def test_microwave_threshold():
    r = wireless_threshold(WirelessScenario(ThermalEnvironment(omega=3e11, temperature=300.0), v_s=1e8))
    assert 0.9949 <= r.value <= 0.9989


def test_optical_limit_is_three_db():
    r = wireless_threshold(WirelessScenario(ThermalEnvironment(omega=1e16, temperature=300.0), v_s=1e8))
    assert r.value == pytest.approx(0.5, abs=1e-4)


def test_threshold_decreases_with_omega():
    omegas = np.geomspace(1e9, 1e19, 21)
    ts = [wireless_threshold(WirelessScenario(ThermalEnvironment(omega=float(w), temperature=300.0))).value
          for w in omegas]
    assert all(a >= b - 2e-5 for a, b in zip(ts, ts[1:]))


def test_scenario_builds_matched_params():
    sc = WirelessScenario(ThermalEnvironment(omega=1e12, temperature=300.0))
    assert sc.modulation().v_0 == sc.channel(0.9).w == sc.thermal_variance
    assert sc.modulation().v_s == 1e8
