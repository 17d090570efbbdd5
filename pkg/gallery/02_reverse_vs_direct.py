"""
Preparation noise: reverse versus direct reconciliation
=======================================================

Adding unknown noise to Alice's carrier pushes the reverse-reconciliation
loss threshold toward T = 1. The direct-reconciliation threshold stays at
T = 0.5 and only the rate drops.
"""

# %%
import numpy as np
from _plotting import plt, save

from cvqkd_thermal import ChannelParams, ModulationParams, key_rate, transmission_threshold

ts = np.linspace(0.01, 1.0, 200)

# %%
for protocol, v0s in (("reverse", (1, 10, 100, 1000)), ("direct", (1, 10, 100, 1000, 10000))):
    for v0 in v0s:
        r = transmission_threshold(protocol, v_0=v0, v_s=1e5)
        print(f"{protocol:8s} V0={v0:<6g} {r.verdict.value:14s} T* = {r.value:.4f}")

# %%
if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for ax, protocol, v0s in ((axes[0], "reverse", (1, 10, 100, 1000)),
                              (axes[1], "direct", (1, 10, 100, 1000, 10000))):
        for v0 in v0s:
            mod = ModulationParams(v_s=1e5, v_0=v0)
            rates = [key_rate(protocol, ChannelParams(float(t)), mod).rate for t in ts]
            ax.plot(ts, rates, label=f"V0={v0:g}")
        ax.axhline(0, color="k", lw=0.5)
        ax.set_ylim(-2, 9)
        ax.set_xlabel("T")
        ax.set_title(protocol)
        ax.legend()
    axes[0].set_ylabel("key rate [bits/use]")
    save(fig, "rates_vs_transmission.png")
