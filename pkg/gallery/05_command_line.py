"""
Driving the command line from Python
====================================

Everything here is also available as ``cvqkd-thermal ...`` in a shell.
"""

# %%
import json
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "cvqkd_thermal", *args], capture_output=True, text=True)
    print(f"$ cvqkd-thermal {' '.join(args)}   (exit {proc.returncode})")
    print(proc.stdout or proc.stderr)
    return proc


# %%
cli("rate", "--protocol", "dr", "--T", "0.6", "--V0", "100", "--verify")
rec = json.loads(cli("threshold", "--json", "--protocol", "rr", "--search", "T", "--V0", "10").stdout)
print("parsed threshold:", rec["outputs"]["threshold"])

# %%
cli("threshold", "--wireless", "--freq-ghz", "300")
head = cli("sweep", "--config", str(ROOT / "recipes" / "fig2_dr_rate.ini")).stdout.splitlines()[:3]
print("\n".join(head))

# %%
cli("selfcheck")
cli("rate", "--T", "1.5")
