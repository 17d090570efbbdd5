"""
Alice's noisy coherent-state preparation, the lossy channel to Bob, and the
Shannon mutual information of Bob's homodyne data.

Both quadratures are treated symmetrically, so a single variance per role is
stored. Bob homodynes one quadrature chosen at random; the formulas below are
per measured quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError


def _finite(name: str, value) -> float:
    try:
        x = float(value)
    except (TypeError, ValueError) as exc:
        raise InvalidParameterError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(x):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}")
    return x


@dataclass(frozen=True)
class ModulationParams:
    """
    Alice's Gaussian modulation.

    Attributes
    ----------
    v_s : float
        Signal (modulation) variance, >= 0.
    v_0 : float
        Variance of the carrier mode before modulation, >= 1. ``v_0 = 1`` is
        a pure coherent state. ``v_0 - 1`` is the preparation noise: its
        variance is known to everyone, its shot-to-shot value to no one.
    """

    v_s: float
    v_0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "v_s", _finite("v_s", self.v_s))
        object.__setattr__(self, "v_0", _finite("v_0", self.v_0))
        if self.v_s < 0:
            raise InvalidParameterError(f"v_s must be >= 0, got {self.v_s}")
        if self.v_0 < 1:
            raise InvalidParameterError(f"v_0 must be >= 1, got {self.v_0}")

    @classmethod
    def from_beta(cls, v_s: float, beta: float) -> "ModulationParams":
        """Build from the preparation noise ``beta = v_0 - 1``."""
        return cls(v_s=v_s, v_0=1.0 + _finite("beta", beta))

    @property
    def beta(self) -> float:
        return self.v_0 - 1.0

    @property
    def v(self) -> float:
        """Total variance of Alice's mode, signal plus carrier."""
        return self.v_s + self.v_0


@dataclass(frozen=True)
class ChannelParams:
    """
    Entangling-cloner channel.

    Attributes
    ----------
    t : float
        Beamsplitter transmission in [0, 1].
    w : float
        Variance of Eve's EPR source, >= 1. ``w = 1`` is a pure-loss channel.
    """

    t: float
    w: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "t", _finite("t", self.t))
        object.__setattr__(self, "w", _finite("w", self.w))
        if not 0.0 <= self.t <= 1.0:
            raise InvalidParameterError(f"t must lie in [0, 1], got {self.t}")
        if self.w < 1:
            raise InvalidParameterError(f"w must be >= 1, got {self.w}")


def bob_variance(ch: ChannelParams, mod: ModulationParams) -> float:
    """Variance of Bob's measured quadrature, ``(1 - T) W + T V``."""
    return (1.0 - ch.t) * ch.w + ch.t * mod.v


def bob_conditional_variance(ch: ChannelParams, mod: ModulationParams) -> float:
    """
    Variance of Bob's quadrature given Alice's signal value.

    The conditioning is on the classical displacement only; the carrier noise
    ``v_0`` stays unknown, hence ``(1 - T) W + T v_0``.
    """
    return (1.0 - ch.t) * ch.w + ch.t * mod.v_0


def mutual_information_ab(ch: ChannelParams, mod: ModulationParams) -> float:
    """
    Shannon mutual information in bits between Alice's signal and Bob's data.

    ``I = 1/2 log2(b_V / b_1)``. Written with ``log1p`` of ``T V_s / b_1`` so
    that small informations keep full relative precision.

    >>> mutual_information_ab(ChannelParams(1.0, 1.0), ModulationParams(3.0, 1.0))
    1.0
    """
    b1 = bob_conditional_variance(ch, mod)
    return 0.5 * math.log1p(ch.t * mod.v_s / b1) / math.log(2.0)
