import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cvqkd_thermal.channel import (
    ChannelParams,
    ModulationParams,
    bob_conditional_variance,
    bob_variance,
    mutual_information_ab,
)
from cvqkd_thermal.errors import InvalidParameterError


def test_modulation_validation():
    with pytest.raises(InvalidParameterError):
        ModulationParams(v_s=-1.0)
    with pytest.raises(InvalidParameterError):
        ModulationParams(v_s=1.0, v_0=0.9)
    with pytest.raises(InvalidParameterError):
        ModulationParams(v_s=float("inf"))
    with pytest.raises(InvalidParameterError):
        ModulationParams(v_s="lots")


def test_modulation_beta_roundtrip():
    mod = ModulationParams.from_beta(1e5, 9.0)
    assert mod.v_0 == 10.0
    assert mod.beta == 9.0
    assert mod.v == 1e5 + 10.0


def test_channel_validation():
    for bad in (-0.1, 1.1, float("nan")):
        with pytest.raises(InvalidParameterError):
            ChannelParams(t=bad)
    with pytest.raises(InvalidParameterError):
        ChannelParams(t=0.5, w=0.5)


def test_bob_variances():
    ch, mod = ChannelParams(0.25, 3.0), ModulationParams(8.0, 2.0)
    assert bob_variance(ch, mod) == pytest.approx(0.75 * 3 + 0.25 * 10)
    assert bob_conditional_variance(ch, mod) == pytest.approx(0.75 * 3 + 0.25 * 2)


def test_mutual_information_examples():
    assert mutual_information_ab(ChannelParams(1.0), ModulationParams(3.0)) == 1.0
    assert mutual_information_ab(ChannelParams(0.0), ModulationParams(1e5)) == 0.0
    assert mutual_information_ab(ChannelParams(0.7), ModulationParams(0.0)) == 0.0


@given(st.floats(0.0, 1.0), st.floats(1.0, 1e4), st.floats(0.0, 1e8), st.floats(1.0, 1e4))
def test_mutual_information_matches_ratio(t, w, vs, v0):
    ch, mod = ChannelParams(t, w), ModulationParams(vs, v0)
    i = mutual_information_ab(ch, mod)
    assert i >= 0.0
    ref = 0.5 * math.log2(bob_variance(ch, mod) / bob_conditional_variance(ch, mod))
    assert i == pytest.approx(ref, rel=1e-9, abs=1e-12)
