"""
Secret key rates, security thresholds and protocol selection.

Rates are ideal (perfect reconciliation, asymptotic keys) in bits per use of
the channel. Thresholds are found by plain bisection: the rates are
differences of large, nearly equal entropies, and bisection only ever needs
their sign.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .channel import ChannelParams, ModulationParams, mutual_information_ab
from .errors import InvalidParameterError
from .eve import holevo_dr, holevo_rr


class Protocol(str, enum.Enum):
    DIRECT = "direct"
    REVERSE = "reverse"

    @classmethod
    def parse(cls, value) -> "Protocol":
        if isinstance(value, cls):
            return value
        aliases = {"dr": cls.DIRECT, "direct": cls.DIRECT, "rr": cls.REVERSE, "reverse": cls.REVERSE}
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise InvalidParameterError(f"unknown protocol {value!r}; use direct/dr or reverse/rr") from None


@dataclass(frozen=True)
class KeyRateResult:
    protocol: Protocol
    i_ab: float
    holevo: float
    rate: float
    secure: bool


def key_rate(protocol, ch: ChannelParams, mod: ModulationParams, check: bool = False) -> KeyRateResult:
    """
    Secret key rate for one reconciliation direction.

    Reverse reconciliation subtracts Eve's information on Bob's data, direct
    reconciliation her information on Alice's signal. ``check`` enables the
    closed-form versus eigenvalue-oracle diagnostics in the Holevo terms.

    Examples
    --------
    >>> r = key_rate("rr", ChannelParams(t=0.95), ModulationParams(v_s=1e5))
    >>> r.secure
    True
    """
    protocol = Protocol.parse(protocol)
    i_ab = mutual_information_ab(ch, mod)
    if protocol is Protocol.REVERSE:
        holevo = holevo_rr(ch, mod, check=check)
    else:
        holevo = holevo_dr(ch, mod, check=check)
    rate = i_ab - holevo
    return KeyRateResult(protocol=protocol, i_ab=i_ab, holevo=holevo, rate=rate, secure=rate > 0)


def best_protocol(ch: ChannelParams, mod: ModulationParams) -> Protocol:
    """
    The reconciliation direction with the larger rate; ties go to reverse.

    With coherent states reverse always wins. Preparation noise hurts reverse
    far more than direct, so for noisy carriers direct takes over above
    ``T = 0.5``.
    """
    rr = key_rate(Protocol.REVERSE, ch, mod).rate
    dr = key_rate(Protocol.DIRECT, ch, mod).rate
    return Protocol.DIRECT if dr > rr else Protocol.REVERSE


def rr_noise_bound(t: float) -> float:
    """Reverse-reconciliation noise bound ``beta < 1 / (1 - T)``; ``inf`` at ``T = 1``."""
    if not 0.0 <= t <= 1.0:
        raise InvalidParameterError(f"t must lie in [0, 1], got {t}")
    if t == 1.0:
        return math.inf
    return 1.0 / (1.0 - t)


class Verdict(str, enum.Enum):
    THRESHOLD = "threshold"
    ALWAYS_SECURE = "always-secure"
    NEVER_SECURE = "never-secure"


@dataclass(frozen=True)
class ThresholdResult:
    """
    Outcome of a threshold search.

    ``value`` is the threshold when ``verdict`` is ``THRESHOLD``. For
    ``ALWAYS_SECURE`` it is the bracket end that was still secure, for
    ``NEVER_SECURE`` it is ``nan`` for transmission searches and ``0`` for
    noise searches (no preparation noise is tolerable).
    """

    value: float
    verdict: Verdict
    bracket: tuple
    evaluations: int


def _bisect_sign(secure: Callable[[float], bool], insecure_end: float, secure_end: float,
                 tol: float) -> tuple[float, int]:
    # Invariant: secure(secure_end) and not secure(insecure_end).
    n = 0
    while abs(secure_end - insecure_end) > tol:
        mid = 0.5 * (insecure_end + secure_end)
        n += 1
        if secure(mid):
            secure_end = mid
        else:
            insecure_end = mid
    return secure_end, n


def transmission_threshold(protocol, v_0: float, v_s: float, w: float = 1.0,
                           bracket: tuple = (0.01, 1.0), tol: float = 1e-5) -> ThresholdResult:
    """
    Smallest channel transmission with a positive key rate.

    The rate increases with ``T`` at fixed modulation, so the bracket is
    bisected until its width is at most ``tol``; the returned value is the
    secure end of the final bracket.

    Examples
    --------
    >>> r = transmission_threshold("rr", v_0=10, v_s=1e5)
    >>> round(r.value, 3)
    0.889
    """
    protocol = Protocol.parse(protocol)
    mod = ModulationParams(v_s=v_s, v_0=v_0)
    lo, hi = (float(x) for x in bracket)
    if not 0.0 <= lo < hi <= 1.0:
        raise InvalidParameterError(f"transmission bracket must satisfy 0 <= lo < hi <= 1, got {bracket}")

    def secure(t):
        return key_rate(protocol, ChannelParams(t=t, w=w), mod).rate > 0

    if secure(lo):
        return ThresholdResult(lo, Verdict.ALWAYS_SECURE, (lo, hi), 1)
    if not secure(hi):
        return ThresholdResult(math.nan, Verdict.NEVER_SECURE, (lo, hi), 2)
    value, n = _bisect_sign(secure, lo, hi, tol)
    return ThresholdResult(value, Verdict.THRESHOLD, (lo, hi), n + 2)


def noise_threshold(protocol, t: float, v_s: float, w: float = 1.0,
                    bracket: tuple = (1e-4, 1e6), rtol: float = 1e-3) -> ThresholdResult:
    """
    Largest preparation noise ``beta = v_0 - 1`` with a positive key rate.

    The search runs on ``log10(beta)`` so that a bracket spanning many decades
    converges to a relative accuracy ``rtol``.
    """
    protocol = Protocol.parse(protocol)
    ch = ChannelParams(t=t, w=w)
    lo, hi = (float(x) for x in bracket)
    if not 0.0 < lo < hi:
        raise InvalidParameterError(f"noise bracket must satisfy 0 < lo < hi, got {bracket}")

    def secure(log_beta):
        return key_rate(protocol, ch, ModulationParams.from_beta(v_s, 10.0 ** log_beta)).rate > 0

    log_lo, log_hi = math.log10(lo), math.log10(hi)
    if secure(log_hi):
        return ThresholdResult(hi, Verdict.ALWAYS_SECURE, (lo, hi), 1)
    if not secure(log_lo):
        return ThresholdResult(0.0, Verdict.NEVER_SECURE, (lo, hi), 2)
    value, n = _bisect_sign(secure, log_hi, log_lo, math.log10(1.0 + rtol))
    return ThresholdResult(10.0 ** value, Verdict.THRESHOLD, (lo, hi), n + 2)
