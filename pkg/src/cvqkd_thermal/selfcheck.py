"""
Built-in verification: closed forms against the eigenvalue oracle, entropy
identities, and a table of reference values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import blackbody
from .blackbody import PhysicalConstants, ThermalEnvironment, WirelessScenario, thermal_variance, wireless_threshold
from .channel import ChannelParams, ModulationParams
from .eve import (
    dr_conditional_spectrum,
    eve_cm,
    eve_conditional_cm_dr,
    eve_conditional_cm_rr,
    eve_spectrum,
    rr_conditional_spectrum,
)
from .gaussian import (
    epr_cm,
    g_entropy,
    random_physical_cm,
    symplectic_spectrum_closed,
    symplectic_spectrum_generic,
    von_neumann_entropy,
)
from .keyrate import rr_noise_bound, key_rate, noise_threshold, transmission_threshold


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class SelfCheckReport:
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed(self) -> list:
        return [r.name for r in self.results if not r.passed]

    def lines(self) -> list:
        return [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in self.results]


def _max_rel(a, b) -> float:
    return max(abs(x - y) / abs(y) for x, y in zip(a, b))


def check_spectrum_oracle(rtol: float, trials: int, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        m, _ = random_physical_cm(rng)
        worst = max(worst, _max_rel(symplectic_spectrum_closed(m), symplectic_spectrum_generic(m)))
    return CheckResult("spectrum-oracle", worst <= rtol, f"max rel diff {worst:.3g} over {trials} CMs (rtol {rtol:g})")


def check_eve_forms(rtol: float) -> CheckResult:
    worst = 0.0
    for t in np.linspace(0.0, 1.0, 11):
        for w in (1.0, 1.5, 10.0):
            for v0 in (1.0, 10.0, 1e3):
                ch, mod = ChannelParams(t=float(t), w=w), ModulationParams(v_s=1e4, v_0=v0)
                worst = max(worst, _max_rel(eve_spectrum(eve_cm(mod.v, mod.v, ch)),
                                            symplectic_spectrum_generic(eve_cm(mod.v, mod.v, ch).cm)))
                worst = max(worst, _max_rel(dr_conditional_spectrum(ch, mod),
                                            symplectic_spectrum_generic(eve_conditional_cm_dr(ch, mod))))
                worst = max(worst, _max_rel(rr_conditional_spectrum(ch, mod),
                                            symplectic_spectrum_generic(eve_conditional_cm_rr(ch, mod))))
    return CheckResult("eve-closed-forms", worst <= rtol, f"max rel diff {worst:.3g} (rtol {rtol:g})")


def check_entropy_identities() -> CheckResult:
    problems = []
    if g_entropy(1.0) != 0.0:
        problems.append("g(1) != 0")
    if abs(g_entropy(3.0) - 2.0) > 1e-12:
        problems.append(f"g(3) = {g_entropy(3.0)!r}")
    for w in (1.0, 2.0, 10.0, 1e3):
        s = von_neumann_entropy(symplectic_spectrum_generic(epr_cm(w)))
        if s >= 1e-8:
            problems.append(f"S(EPR {w:g}) = {s:.3g}")
    return CheckResult("entropy-identities", not problems, "; ".join(problems) or "g(1)=0, g(3)=2, pure states S=0")


def _within(name: str, value: float, target: float, rel: float) -> CheckResult:
    ok = math.isfinite(value) and abs(value - target) <= rel * abs(target)
    return CheckResult(name, ok, f"{value:.6g} vs {target:g} (+/- {rel:.0%})")


def check_blackbody(constants: PhysicalConstants) -> list:
    v1 = thermal_variance(ThermalEnvironment(omega=1e9, temperature=300.0), constants)
    v2 = thermal_variance(ThermalEnvironment(omega=3e11, temperature=300.0), constants)
    return [_within("blackbody-1GHz", v1, 7.85e4, 0.01), _within("blackbody-300GHz", v2, 2.63e2, 0.01)]


def check_reference_values(constants: PhysicalConstants) -> list:
    out = []
    rr = transmission_threshold("reverse", v_0=10.0, v_s=1e5).value
    out.append(CheckResult("rr-threshold-V0=10", 0.88 <= rr <= 0.90, f"T* = {rr:.5f}, expected in [0.88, 0.90]"))

    bad = []
    for v0 in (1.0, 10.0, 1e2, 1e3, 1e4):
        mod = ModulationParams(v_s=1e5, v_0=v0)
        if not (key_rate("direct", ChannelParams(0.55), mod).rate > 0 > key_rate("direct", ChannelParams(0.45), mod).rate):
            bad.append(f"V0={v0:g}")
    out.append(CheckResult("dr-loss-independence", not bad, ", ".join(bad) or "sign change between T=0.45 and 0.55 for all V0"))

    worst = 0.0
    for t in (0.3, 0.5, 0.7, 0.9):
        beta = noise_threshold("reverse", t=t, v_s=1e5).value
        worst = max(worst, abs(beta - rr_noise_bound(t)) / rr_noise_bound(t))
    out.append(CheckResult("rr-noise-bound", worst <= 0.1, f"max rel deviation {worst:.3g} (limit 0.1)"))

    scenario = WirelessScenario(ThermalEnvironment(omega=3e11, temperature=300.0), v_s=1e8, constants=constants)
    mw = wireless_threshold(scenario).value
    out.append(CheckResult("microwave-window", 0.9949 <= mw <= 0.9989, f"T* = {mw:.5f}, expected in [0.9949, 0.9989]"))
    return out


def run_selfcheck(rtol: float = 1e-8, trials: int = 200, seed: int = 20100,
                  constants: PhysicalConstants | None = None) -> SelfCheckReport:
    """
    Run every check and collect the results.

    ``rtol`` is the relative tolerance of the closed-form versus oracle
    comparisons; ``constants`` replaces the physical-constants table for the
    blackbody-dependent checks.
    """
    constants = constants or blackbody.CONSTANTS
    report = SelfCheckReport()
    report.results.append(check_spectrum_oracle(rtol, trials, seed))
    report.results.append(check_eve_forms(rtol))
    report.results.append(check_entropy_identities())
    report.results.extend(check_blackbody(constants))
    report.results.extend(check_reference_values(constants))
    return report
