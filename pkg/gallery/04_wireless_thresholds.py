"""
Thermal backgrounds from microwave to optical
=============================================

At room temperature both Alice's carrier and the channel inherit the
blackbody occupation of the mode. ``omega`` is in rad/s; the
gigahertz labels used here correspond to inserting the quoted gigahertz value
directly as ``omega``.
"""

# %%
import numpy as np
from _plotting import plt, save

from cvqkd_thermal import ThermalEnvironment, WirelessScenario, thermal_variance, wireless_threshold
from cvqkd_thermal.blackbody import omega_from_ghz_as_rad_s, omega_from_hz

# %%
for label, omega in (("1 GHz (label)", omega_from_ghz_as_rad_s(1)),
                     ("300 GHz (label)", omega_from_ghz_as_rad_s(300)),
                     ("300 GHz (2 pi f)", omega_from_hz(300e9))):
    env = ThermalEnvironment(omega=omega, temperature=300.0)
    print(f"{label:18s} omega={omega:.3g}  V={thermal_variance(env):10.4g}  "
          f"T*={wireless_threshold(WirelessScenario(env)).value:.5f}")

# %%
omegas = np.geomspace(1e9, 1e15, 121)
thresholds = [wireless_threshold(WirelessScenario(ThermalEnvironment(omega=float(w), temperature=300.0))).value
              for w in omegas]
mid_ir = [(w, t) for w, t in zip(omegas, thresholds) if 1e13 <= w <= 1e14]
print("mid-infrared band T* from {:.3f} to {:.3f}".format(min(t for _, t in mid_ir), max(t for _, t in mid_ir)))

# %%
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx(omegas, thresholds)
    ax.axhline(0.5, color="k", lw=0.5)
    ax.set_xlabel("omega [rad/s]")
    ax.set_ylabel("minimum transmission T*")
    save(fig, "wireless_thresholds.png")
