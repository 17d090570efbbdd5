"""
Acceptance criteria, one test each. Every test prints a single
``PASS``/``FAIL`` line; the lines are repeated in the terminal summary.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from cvqkd_thermal.blackbody import ThermalEnvironment, WirelessScenario, thermal_variance, wireless_threshold
from cvqkd_thermal.channel import ChannelParams, ModulationParams, mutual_information_ab
from cvqkd_thermal.cli import main
from cvqkd_thermal.eve import (
    dr_conditional_spectrum,
    eve_cm,
    eve_conditional_cm_dr,
    eve_conditional_cm_rr,
    eve_spectrum,
    holevo_dr,
    holevo_rr,
    rr_conditional_spectrum,
)
from cvqkd_thermal.gaussian import (
    epr_cm,
    g_entropy,
    random_physical_cm,
    symplectic_spectrum_closed,
    symplectic_spectrum_generic,
    von_neumann_entropy,
)
from cvqkd_thermal.keyrate import rr_noise_bound, key_rate, noise_threshold, transmission_threshold

RESULTS = []


def report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title} | {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _max_rel(a, b):
    return max(abs(x - y) / abs(y) for x, y in zip(a, b))


def test_01_blackbody_values():
    v1 = thermal_variance(ThermalEnvironment(omega=1e9, temperature=300.0))
    v2 = thermal_variance(ThermalEnvironment(omega=3e11, temperature=300.0))
    e1, e2 = abs(v1 / 7.85e4 - 1), abs(v2 / 2.63e2 - 1)
    report(1, "blackbody variances", e1 <= 0.01 and e2 <= 0.01,
           f"V(1e9)={v1:.6g} ({e1:.2%}), V(3e11)={v2:.6g} ({e2:.2%}), limit 1%")


def test_02_rr_threshold():
    t0 = time.perf_counter()
    r = transmission_threshold("reverse", v_0=10.0, v_s=1e5, w=1.0)
    dt = time.perf_counter() - t0
    report(2, "RR transmission threshold V0=10", 0.88 <= r.value <= 0.90 and dt < 1.0,
           f"T*={r.value:.5f} in [0.88, 0.90], {dt:.3f} s")


def test_03_dr_loss_independence():
    t0 = time.perf_counter()
    bad = []
    for v0 in (1.0, 10.0, 1e2, 1e3, 1e4):
        mod = ModulationParams(v_s=1e5, v_0=v0)
        hi = key_rate("direct", ChannelParams(0.55, 1.0), mod).rate
        lo = key_rate("direct", ChannelParams(0.45, 1.0), mod).rate
        if not (hi > 0 > lo):
            bad.append(f"V0={v0:g}: R(0.55)={hi:.3g}, R(0.45)={lo:.3g}")
    dt = time.perf_counter() - t0
    report(3, "DR loss independence", not bad and dt < 1.0,
           "; ".join(bad) or f"R(0.55)>0>R(0.45) for all five V0, {dt:.3f} s")


def test_04_rr_noise_bound_consistency():
    t0 = time.perf_counter()
    devs = {}
    for t in (0.3, 0.5, 0.7, 0.9):
        beta = noise_threshold("reverse", t=t, v_s=1e5, w=1.0).value
        devs[t] = abs(beta - rr_noise_bound(t)) / rr_noise_bound(t)
    dt = time.perf_counter() - t0
    worst = max(devs.values())
    report(4, "RR noise threshold vs 1/(1-T)", worst <= 0.10 and dt < 5.0,
           f"max rel deviation {worst:.2e} (limit 0.1), {dt:.3f} s")


def test_05_microwave_window():
    t0 = time.perf_counter()
    r = wireless_threshold(WirelessScenario(ThermalEnvironment(omega=3e11, temperature=300.0), v_s=1e8))
    dt = time.perf_counter() - t0
    report(5, "300 GHz wireless threshold", 0.9949 <= r.value <= 0.9989 and dt < 1.0,
           f"T*={r.value:.5f} in [0.9949, 0.9989], {dt:.3f} s")


def test_06_mid_infrared_band():
    t0 = time.perf_counter()
    omegas = np.geomspace(1e13, 1e14, 41)
    ts = [wireless_threshold(WirelessScenario(ThermalEnvironment(omega=float(w), temperature=300.0))).value
          for w in omegas]
    hits = [(w, t) for w, t in zip(omegas, ts) if 0.75 <= t <= 0.85]
    dt = time.perf_counter() - t0
    detail = (f"{len(hits)} of {len(omegas)} omegas in [0.75, 0.85], e.g. omega={hits[0][0]:.3g} -> T*={hits[0][1]:.4f}"
              if hits else f"T* spans [{min(ts):.3f}, {max(ts):.3f}]")
    report(6, "mid-infrared threshold near 0.8", bool(hits) and dt < 10.0, f"{detail}, {dt:.2f} s")


def test_07_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    worst_cm = 0.0
    for _ in range(1000):
        m, _ = random_physical_cm(rng, max_variance=1e5)
        worst_cm = max(worst_cm, _max_rel(symplectic_spectrum_closed(m), symplectic_spectrum_generic(m)))
    worst_eve = 0.0
    for t in np.linspace(0.0, 1.0, 21):
        for w in (1.0, 1.5, 10.0, 100.0):
            for v0 in (1.0, 10.0, 1e3, 1e4):
                ch, mod = ChannelParams(float(t), w), ModulationParams(1e5, v0)
                state = eve_cm(mod.v, mod.v, ch)
                worst_eve = max(worst_eve,
                                _max_rel(eve_spectrum(state), symplectic_spectrum_generic(state.cm)),
                                _max_rel(dr_conditional_spectrum(ch, mod),
                                         symplectic_spectrum_generic(eve_conditional_cm_dr(ch, mod))),
                                _max_rel(rr_conditional_spectrum(ch, mod),
                                         symplectic_spectrum_generic(eve_conditional_cm_rr(ch, mod))))
    dt = time.perf_counter() - t0
    ok = worst_cm <= 1e-8 and worst_eve <= 1e-8 and dt < 5.0
    report(7, "closed forms vs |eig(i Omega V)|", ok,
           f"1000 random CMs max rel {worst_cm:.2e}; Eve forms max rel {worst_eve:.2e}; limit 1e-8, {dt:.2f} s")


def test_08_entropy_identities():
    g1, g3 = g_entropy(1.0), g_entropy(3.0)
    pure = {w: von_neumann_entropy(symplectic_spectrum_generic(epr_cm(w))) for w in (1.0, 2.0, 10.0, 1e3)}
    ok = g1 == 0.0 and abs(g3 - 2.0) <= 1e-12 and max(pure.values()) < 1e-8
    report(8, "entropy identities", ok,
           f"g(1)={g1!r}, |g(3)-2|={abs(g3 - 2.0):.1e}, max EPR entropy {max(pure.values()):.1e} bits")


def test_09_degenerate_points():
    problems = []
    mod = ModulationParams(1e5, 1.0)
    ch = ChannelParams(1.0, 1.0)
    i_ab = mutual_information_ab(ch, mod)
    for name, chi in (("rr", holevo_rr(ch, mod)), ("dr", holevo_dr(ch, mod))):
        if abs(chi) > 1e-6:
            problems.append(f"chi_{name}(T=1)={chi:.2e}")
        if key_rate(name, ch, mod).rate != pytest.approx(i_ab, abs=1e-6):
            problems.append(f"rate_{name}(T=1) != I(A:B)")
    for t in (0.0, 0.3, 0.7, 1.0):
        for v0 in (1.0, 10.0):
            z = ModulationParams(0.0, v0)
            for p in ("rr", "dr"):
                r = key_rate(p, ChannelParams(t), z)
                if r.i_ab != 0.0 or r.rate > 0.0:
                    problems.append(f"Vs=0 {p} T={t} V0={v0}: I={r.i_ab}, R={r.rate}")
    for v0 in (1.0, 10.0, 1e4):
        for p in ("rr", "dr"):
            r = key_rate(p, ChannelParams(0.0), ModulationParams(1e5, v0))
            if r.rate > 0.0:
                problems.append(f"T=0 {p} V0={v0}: R={r.rate}")
    report(9, "degenerate points", not problems, "; ".join(problems) or "T=1, Vs=0 and T=0 all as required")


def test_10_recipe_golden_files(tmp_path):
    root = Path(__file__).resolve().parent.parent
    recipes = sorted((root / "recipes").glob("*.ini"))
    identical = []
    for recipe in recipes:
        outs = []
        for k in range(2):
            path = tmp_path / f"{recipe.stem}-{k}.csv"
            assert main(["sweep", "--config", str(recipe), "--out", str(path)]) == 0
            outs.append(path.read_bytes())
        identical.append(outs[0] == outs[1])
    report(10, "figure recipes byte-identical on rerun", len(recipes) == 4 and all(identical),
           f"{sum(identical)}/{len(recipes)} recipes identical")
