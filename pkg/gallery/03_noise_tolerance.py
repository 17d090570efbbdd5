"""
How much preparation noise can each direction tolerate?
=======================================================

For reverse reconciliation the answer tracks beta < 1/(1 - T). For direct
reconciliation nothing is tolerated below T = 0.5 and everything in the
search bracket is tolerated above it.
"""

# %%
import numpy as np
from _plotting import plt, save

from cvqkd_thermal import rr_noise_bound, noise_threshold

ts = np.linspace(0.02, 0.98, 49)
rr = [noise_threshold("rr", t=float(t), v_s=1e5) for t in ts]
dr = [noise_threshold("dr", t=float(t), v_s=1e5) for t in ts]

# %%
for t in (0.3, 0.5, 0.7, 0.9):
    r = noise_threshold("rr", t=t, v_s=1e5).value
    print(f"T={t}: beta*={r:.4f}  1/(1-T)={rr_noise_bound(t):.4f}")
print("direct verdicts:", sorted({r.verdict.value for r in dr}))

# %%
if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ts, [r.value for r in rr], label="reverse")
    ax.semilogy(ts, [max(r.value, 1e-4) for r in dr], label="direct (bracket top 1e6)")
    ax.semilogy(ts, [rr_noise_bound(float(t)) for t in ts], "k--", lw=0.8, label="1/(1-T)")
    ax.set_xlabel("T")
    ax.set_ylabel("largest tolerable beta")
    ax.legend()
    save(fig, "noise_tolerance.png")
