"""
Blackbody background noise and the wireless key-distribution scenario.

Frequencies are angular (rad/s). Figures quoted in gigahertz for the
microwave examples are reproduced by using the number directly as the
angular frequency; :func:`omega_from_ghz_as_rad_s` does that
explicitly, while :func:`omega_from_hz` applies the physical ``2 pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .channel import ChannelParams, ModulationParams
from .errors import InvalidParameterError
from .keyrate import Protocol, ThresholdResult, transmission_threshold


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float  # J s
    k_b: float  # J / K


#: Exact SI 2019 values.
SI_2019 = PhysicalConstants(hbar=1.054571817e-34, k_b=1.380649e-23)

#: Table used when no constants are passed explicitly.
CONSTANTS = SI_2019

#: Below this value of hbar omega / k_B T the series ``1/x - 1/2`` is used.
SERIES_SWITCH = 1e-6
#: Above this value ``exp`` would overflow; the mode is in its ground state.
OVERFLOW_SWITCH = 700.0


@dataclass(frozen=True)
class ThermalEnvironment:
    """A single field mode of angular frequency ``omega`` at ``temperature`` kelvin."""

    omega: float
    temperature: float

    def __post_init__(self):
        for name in ("omega", "temperature"):
            x = getattr(self, name)
            if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
                raise InvalidParameterError(f"{name} must be a positive finite number, got {x!r}")


def omega_from_hz(frequency_hz: float) -> float:
    """Angular frequency of an ordinary frequency, ``2 pi f``."""
    return 2.0 * math.pi * frequency_hz


def omega_from_ghz_as_rad_s(frequency_ghz: float) -> float:
    """
    Map a quoted gigahertz value to ``omega`` without the ``2 pi`` factor.

    This is the convention under which 1 GHz and 300 GHz at 300 K give thermal
    variances of 7.85e4 and 2.63e2.
    """
    return frequency_ghz * 1e9


def _reduced_energy(env: ThermalEnvironment, constants: PhysicalConstants) -> float:
    return constants.hbar * env.omega / (constants.k_b * env.temperature)


def mean_photon_number(env: ThermalEnvironment, constants: PhysicalConstants | None = None) -> float:
    """
    Bose-Einstein occupation ``1 / (exp(hbar omega / k_B T) - 1)``.

    >>> mean_photon_number(ThermalEnvironment(omega=1e20, temperature=1.0))
    0.0
    """
    x = _reduced_energy(env, constants or CONSTANTS)
    if x > OVERFLOW_SWITCH:
        return 0.0
    if x < SERIES_SWITCH:
        return 1.0 / x - 0.5
    return 1.0 / math.expm1(x)


def thermal_variance(env: ThermalEnvironment, constants: PhysicalConstants | None = None) -> float:
    """Quadrature variance ``2 n + 1`` of the thermal mode, in shot-noise units."""
    return 2.0 * mean_photon_number(env, constants) + 1.0


@dataclass(frozen=True)
class WirelessScenario:
    """
    Room-temperature link where Alice's carrier and the channel share one
    thermal background: ``v_0 = W = thermal_variance(env)``.
    """

    env: ThermalEnvironment
    v_s: float = 1e8
    constants: PhysicalConstants | None = field(default=None, compare=False)

    @property
    def thermal_variance(self) -> float:
        return thermal_variance(self.env, self.constants)

    def modulation(self) -> ModulationParams:
        return ModulationParams(v_s=self.v_s, v_0=self.thermal_variance)

    def channel(self, t: float) -> ChannelParams:
        return ChannelParams(t=t, w=self.thermal_variance)


def wireless_threshold(scenario: WirelessScenario, bracket: tuple = (0.01, 1.0),
                       tol: float = 1e-5) -> ThresholdResult:
    """Direct-reconciliation transmission threshold for a :class:`WirelessScenario`."""
    v = scenario.thermal_variance
    return transmission_threshold(Protocol.DIRECT, v_0=v, v_s=scenario.v_s, w=v, bracket=bracket, tol=tol)
