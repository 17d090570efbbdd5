"""
Command-line interface.

Subcommands: ``rate``, ``sweep``, ``threshold`` and ``selfcheck``. Global
flags ``--json``, ``--out``, ``--config`` and ``--parallel`` may appear before
or after the subcommand. A config file holds ``key = value`` lines (an INI
section header is optional) whose keys are long flag names; command-line
flags override it.

Exit codes: 0 success, 1 selfcheck failure, 2 usage error, 3 numeric error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .blackbody import ThermalEnvironment, omega_from_ghz_as_rad_s, thermal_variance
from .channel import ChannelParams, ModulationParams
from .errors import CVQKDError, InvalidParameterError
from .eve import cross_check_point
from .keyrate import Protocol, best_protocol, key_rate, noise_threshold, transmission_threshold
from .selfcheck import run_selfcheck

EXIT_OK, EXIT_SELFCHECK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

SIGNIFICANT_DIGITS = 12

#: Command-line defaults; the library itself never assumes a modulation variance.
DEFAULT_VS = 1e5
DEFAULT_VS_WIRELESS = 1e8
DEFAULT_TEMPERATURE = 300.0

INPUT_COLUMNS = ["protocol", "T", "W", "Vs", "V0", "beta", "omega", "temperature"]
RATE_COLUMNS = ["i_ab", "holevo", "rate", "secure"]
THRESHOLD_COLUMNS = ["threshold", "verdict"]
SWEEP_VARIABLES = ["T", "beta", "V0", "W", "Vs", "omega"]
QUANTITIES = ["rate", "noise-threshold", "transmission-threshold"]


class UsageError(Exception):
    pass


def round_sig(x):
    """Round floats to the serialized precision; NaN becomes ``None``."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return x
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def format_value(x) -> str:
    """Text form used in CSV cells and human output."""
    if x is None:
        return "nan"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.{SIGNIFICANT_DIGITS}g}"


@dataclass(frozen=True)
class RunRecord:
    """One evaluated operating point, as emitted by ``rate`` and ``threshold``."""

    command: str
    inputs: dict
    outputs: dict
    version: str = __version__
    selfcheck: str = "not-run"

    @classmethod
    def build(cls, command, inputs, outputs, selfcheck="not-run") -> "RunRecord":
        return cls(command=command,
                   inputs={k: round_sig(v) for k, v in inputs.items()},
                   outputs={k: round_sig(v) for k, v in outputs.items()},
                   selfcheck=selfcheck)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [f"{k} = {format_value(v)}" for k, v in {**self.inputs, **self.outputs}.items()]
        lines.append(f"version = {self.version}")
        lines.append(f"selfcheck = {self.selfcheck}")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# Point evaluation, shared by every subcommand


def _wireless_variance(omega, temperature) -> float:
    return thermal_variance(ThermalEnvironment(omega=omega, temperature=temperature))


def resolve_point(p: dict) -> dict:
    """Fill derived inputs: ``V0``/``beta`` from each other, wireless ``V0 = W``."""
    p = dict(p)
    if p.get("omega") is not None:
        v = _wireless_variance(p["omega"], p["temperature"])
        p["V0"] = p["W"] = v
    elif p.get("beta") is not None:
        p["V0"] = 1.0 + p["beta"]
    if p.get("V0") is not None:
        p["beta"] = p["V0"] - 1.0
    return p


def evaluate_rate(protocol: str, p: dict, verify: bool = False) -> tuple[dict, dict, str]:
    p = resolve_point(p)
    ch = ChannelParams(t=p["T"], w=p["W"])
    mod = ModulationParams(v_s=p["Vs"], v_0=p["V0"])
    chosen = best_protocol(ch, mod) if protocol == "best" else Protocol.parse(protocol)
    res = key_rate(chosen, ch, mod)
    status = "not-run"
    if verify:
        status = "pass" if cross_check_point(ch, mod) else "fail"
    p["protocol"] = chosen.value
    outputs = {"i_ab": res.i_ab, "holevo": res.holevo, "rate": res.rate, "secure": res.secure}
    return p, outputs, status


def evaluate_threshold(protocol: str, search: str, p: dict, bracket=None, tol=None) -> tuple[dict, dict]:
    protocol = Protocol.parse(protocol)
    p = dict(p, protocol=protocol.value)
    if search == "T":
        p = resolve_point(p)
        p["T"] = None
        kwargs = {} if bracket is None else {"bracket": bracket}
        if tol is not None:
            kwargs["tol"] = tol
        res = transmission_threshold(protocol, v_0=p["V0"], v_s=p["Vs"], w=p["W"], **kwargs)
    elif search == "beta":
        p["V0"] = p["beta"] = None
        kwargs = {} if bracket is None else {"bracket": bracket}
        if tol is not None:
            kwargs["rtol"] = tol
        res = noise_threshold(protocol, t=p["T"], v_s=p["Vs"], w=p["W"], **kwargs)
    else:
        raise UsageError(f"unknown search variable {search!r}")
    return p, {"threshold": res.value, "verdict": res.verdict.value}


# --------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class SweepSpec:
    """
    A one-dimensional grid over ``variable``, repeated for every combination
    of the listed ``fixed`` values and every protocol.
    """

    variable: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"
    fixed: dict = field(default_factory=dict)
    protocols: tuple = ("reverse",)
    quantity: str = "rate"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise UsageError(f"--var must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        if self.count < 2:
            raise UsageError("--count must be at least 2")
        if not self.start < self.stop:
            raise UsageError("--start must be smaller than --stop")
        if self.spacing not in ("linear", "log"):
            raise UsageError("--spacing must be linear or log")
        if self.spacing == "log" and self.start <= 0:
            raise UsageError("log spacing requires --start > 0")
        if self.quantity not in QUANTITIES:
            raise UsageError(f"--quantity must be one of {QUANTITIES}")
        if self.quantity != "rate" and "best" in self.protocols:
            raise UsageError("protocol 'best' is only available for --quantity rate")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def points(self) -> list:
        """Deterministic task list: protocol, then fixed-value combination, then grid."""
        names = [k for k in SWEEP_VARIABLES + ["temperature"] if k in self.fixed and k != self.variable]
        combos = [{}]
        for name in names:
            combos = [dict(c, **{name: v}) for c in combos for v in self.fixed[name]]
        tasks = []
        for protocol in self.protocols:
            for combo in combos:
                for x in self.grid():
                    tasks.append((protocol, dict(combo, **{self.variable: float(x)})))
        return tasks


def _sweep_task(args) -> dict:
    quantity, protocol, params = args
    base = {k: params.get(k) for k in INPUT_COLUMNS if k != "protocol"}
    try:
        if quantity == "rate":
            inputs, outputs, _ = evaluate_rate(protocol, params)
        else:
            search = "beta" if quantity == "noise-threshold" else "T"
            inputs, outputs = evaluate_threshold(protocol, search, params)
    except CVQKDError:
        inputs = dict(base, protocol=protocol)
        cols = RATE_COLUMNS if quantity == "rate" else THRESHOLD_COLUMNS
        outputs = {c: None for c in cols}
    row = {c: inputs.get(c) for c in INPUT_COLUMNS}
    row.update(outputs)
    return row


def run_sweep(spec: SweepSpec, parallel: int = 1) -> tuple[list, list]:
    """Evaluate a sweep; returns the column names and one dict per row, in task order."""
    tasks = [(spec.quantity, protocol, params) for protocol, params in spec.points()]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            rows = list(pool.map(_sweep_task, tasks, chunksize=max(1, len(tasks) // (4 * parallel))))
    else:
        rows = [_sweep_task(t) for t in tasks]
    columns = INPUT_COLUMNS + (RATE_COLUMNS if spec.quantity == "rate" else THRESHOLD_COLUMNS)
    return columns, rows


def sweep_csv(columns: list, rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


# --------------------------------------------------------------------------
# Argument parsing


def _float_list(text: str) -> list:
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    d = {"default": argparse.SUPPRESS} if suppress else {}
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV", **d)
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout", **d)
    p.add_argument("--config", metavar="PATH", help="INI-style file of flag defaults", **d)
    p.add_argument("--parallel", type=int, metavar="N", help="worker processes for sweeps", **d)
    return p


def _point_flags(p: argparse.ArgumentParser, number) -> None:
    p.add_argument("--T", type=number, help="channel transmission in [0, 1]")
    p.add_argument("--W", type=number, help="Eve's EPR variance (default 1, pure loss)")
    p.add_argument("--Vs", type=number, help="signal variance (default 1e5, wireless 1e8)")
    p.add_argument("--V0", type=number, help="carrier variance, 1 + beta (default 1)")
    p.add_argument("--beta", type=number, help="preparation noise V0 - 1")
    p.add_argument("--wireless", action="store_true", help="set V0 = W = blackbody variance at --omega-rad-s/--freq-ghz")
    p.add_argument("--freq-ghz", type=number, dest="freq_ghz",
                   help="frequency in GHz, used directly as omega in rad/s (matches the reference variances)")
    p.add_argument("--omega-rad-s", type=number, dest="omega_rad_s", help="angular frequency in rad/s")
    p.add_argument("--temp", type=number, dest="temperature", help="temperature in kelvin (default 300)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cvqkd-thermal", parents=[_global_flags(False)],
                                     description="Key rates and thresholds for thermal-state CV-QKD.")
    sub = parser.add_subparsers(dest="command", metavar="{rate,sweep,threshold,selfcheck}")
    glob = _global_flags(True)

    rate = sub.add_parser("rate", parents=[glob], help="key rate at one operating point")
    rate.add_argument("--protocol", help="dr, rr or best")
    _point_flags(rate, float)
    rate.add_argument("--verify", action="store_true", help="cross-check closed forms against the eigenvalue oracle")

    sweep = sub.add_parser("sweep", parents=[glob], help="CSV over a one-dimensional grid")
    sweep.add_argument("--var", choices=SWEEP_VARIABLES, help="swept variable")
    sweep.add_argument("--start", type=float)
    sweep.add_argument("--stop", type=float)
    sweep.add_argument("--count", type=int)
    sweep.add_argument("--spacing", choices=["linear", "log"])
    sweep.add_argument("--protocol", help="comma-separated list of dr, rr (and best for rates)")
    sweep.add_argument("--quantity", choices=QUANTITIES, help="rate (default) or a threshold per grid point")
    _point_flags(sweep, _float_list)

    thr = sub.add_parser("threshold", parents=[glob], help="transmission or noise security threshold")
    thr.add_argument("--protocol", help="dr or rr")
    thr.add_argument("--search", choices=["T", "beta"], help="variable to solve for")
    _point_flags(thr, float)
    thr.add_argument("--lo", type=float, help="lower end of the search bracket")
    thr.add_argument("--hi", type=float, help="upper end of the search bracket")
    thr.add_argument("--tol", type=float, help="absolute tolerance in T, or relative tolerance in beta")

    chk = sub.add_parser("selfcheck", parents=[glob], help="run built-in verification")
    chk.add_argument("--tol", type=float, default=1e-8, help="relative tolerance of oracle comparisons")
    chk.add_argument("--trials", type=int, default=200, help="random covariance matrices to test")
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    cfg = configparser.ConfigParser(interpolation=None)
    cfg.optionxform = str
    try:
        if not text.lstrip().startswith("["):
            text = "[defaults]\n" + text
        cfg.read_string(text)
    except configparser.Error as exc:
        parser.error(f"malformed config file: {exc}")
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    command = next((a for a in argv if a in subparsers.choices), None)
    if command is None:
        return
    target = subparsers.choices[command]
    by_name = {}
    for action in target._actions:
        for opt in action.option_strings:
            by_name[opt.lstrip("-")] = action
        by_name.setdefault(action.dest, action)
    defaults = {}
    for section in cfg.sections():
        if section not in ("defaults", command):
            continue
        for key, value in cfg.items(section):
            action = by_name.get(key)
            if action is None or action.dest in ("help", "config"):
                parser.error(f"unknown key {key!r} in config file")
            if isinstance(action, argparse._StoreTrueAction):
                defaults[action.dest] = value.strip().lower() in ("1", "true", "yes", "on")
            else:
                defaults[action.dest] = value.strip()
    target.set_defaults(**defaults)


def _options(args) -> dict:
    return {
        "json": getattr(args, "json", False) or False,
        "out": getattr(args, "out", None),
        "parallel": getattr(args, "parallel", None) or 1,
    }


def _point_from_args(args, wireless_default_vs: bool = True) -> dict:
    wireless = args.wireless
    omega = None
    if args.freq_ghz is not None and args.omega_rad_s is not None:
        raise UsageError("give only one of --freq-ghz and --omega-rad-s")
    if args.freq_ghz is not None:
        omega = omega_from_ghz_as_rad_s(args.freq_ghz)
    elif args.omega_rad_s is not None:
        omega = args.omega_rad_s
    if wireless and omega is None:
        raise UsageError("--wireless needs --freq-ghz or --omega-rad-s")
    if not wireless and omega is not None:
        raise UsageError("frequency flags require --wireless")
    if wireless and (args.V0 is not None or args.beta is not None or args.W is not None):
        raise UsageError("--wireless derives V0 and W from the frequency; do not set them")
    if args.V0 is not None and args.beta is not None:
        raise UsageError("give only one of --V0 and --beta")
    vs = args.Vs if args.Vs is not None else (DEFAULT_VS_WIRELESS if wireless and wireless_default_vs else DEFAULT_VS)
    p = {"T": args.T, "W": 1.0 if args.W is None else args.W, "Vs": vs,
         "V0": args.V0, "beta": args.beta, "omega": omega,
         "temperature": (args.temperature or DEFAULT_TEMPERATURE) if wireless else None}
    if p["V0"] is None and p["beta"] is None and not wireless:
        p["V0"] = 1.0
    return p


def _emit(text: str, opts: dict) -> None:
    if opts["out"]:
        with open(opts["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_rate(args, opts) -> int:
    if args.T is None:
        raise UsageError("rate needs --T")
    p = _point_from_args(args)
    inputs, outputs, status = evaluate_rate(args.protocol or "rr", p, verify=args.verify)
    record = RunRecord.build("rate", inputs, outputs, selfcheck=status)
    _emit(record.to_json() if opts["json"] else record.to_text(), opts)
    return EXIT_OK


def cmd_threshold(args, opts) -> int:
    p = _point_from_args(args)
    if args.wireless:
        search = "T"
        protocol = args.protocol or "direct"
    else:
        search = args.search
        protocol = args.protocol
        if search is None or protocol is None:
            raise UsageError("threshold needs --protocol and --search (or --wireless)")
        if search == "beta" and args.T is None:
            raise UsageError("--search beta needs --T")
        if search == "beta" and (args.V0 is not None or args.beta is not None):
            raise UsageError("--search beta solves for the noise; do not set --V0/--beta")
    bracket = None
    if args.lo is not None or args.hi is not None:
        if args.lo is None or args.hi is None:
            raise UsageError("give both --lo and --hi")
        bracket = (args.lo, args.hi)
    inputs, outputs = evaluate_threshold(protocol, search, p, bracket=bracket, tol=args.tol)
    record = RunRecord.build("threshold", inputs, outputs)
    _emit(record.to_json() if opts["json"] else record.to_text(), opts)
    return EXIT_OK


def cmd_sweep(args, opts) -> int:
    missing = [n for n in ("var", "start", "stop", "count") if getattr(args, n) is None]
    if missing:
        raise UsageError("sweep needs " + ", ".join("--" + m for m in missing))
    protocols = tuple(x.strip() for x in (args.protocol or "rr").split(",") if x.strip())
    protocols = tuple(x if x == "best" else Protocol.parse(x).value for x in protocols)
    wireless = bool(args.wireless)
    if args.var == "omega" and not wireless:
        raise UsageError("--var omega requires --wireless")
    if wireless and (args.V0 or args.beta or args.W):
        raise UsageError("--wireless derives V0 and W from the frequency; do not set them")
    fixed = {}
    for name in ("T", "W", "Vs", "V0", "beta"):
        value = getattr(args, name)
        if value is not None:
            fixed[name] = value
    if args.V0 is not None and args.beta is not None:
        raise UsageError("give only one of --V0 and --beta")
    fixed.setdefault("Vs", [DEFAULT_VS_WIRELESS if wireless else DEFAULT_VS])
    if wireless:
        omegas = args.omega_rad_s
        if args.freq_ghz is not None:
            omegas = [omega_from_ghz_as_rad_s(f) for f in args.freq_ghz]
        if omegas is not None:
            fixed["omega"] = omegas
        elif args.var != "omega":
            raise UsageError("--wireless needs --freq-ghz or --omega-rad-s unless sweeping omega")
        fixed["temperature"] = args.temperature or [DEFAULT_TEMPERATURE]
    else:
        fixed.setdefault("W", [1.0])
        if args.var not in ("V0", "beta") and "V0" not in fixed and "beta" not in fixed:
            fixed["V0"] = [1.0]
    quantity = args.quantity or "rate"
    if quantity == "noise-threshold":
        fixed.pop("V0", None)
        fixed.pop("beta", None)
    if quantity == "transmission-threshold":
        fixed.pop("T", None)
    spec = SweepSpec(variable=args.var, start=args.start, stop=args.stop, count=args.count,
                     spacing=args.spacing or "linear", fixed=fixed, protocols=protocols, quantity=quantity)
    columns, rows = run_sweep(spec, parallel=opts["parallel"])
    if opts["json"]:
        text = json.dumps([{c: round_sig(r.get(c)) for c in columns} for r in rows], allow_nan=False)
    else:
        text = sweep_csv(columns, rows)
    _emit(text, opts)
    return EXIT_OK


def cmd_selfcheck(args, opts) -> int:
    report = run_selfcheck(rtol=args.tol, trials=args.trials)
    if opts["json"]:
        text = json.dumps({"passed": report.passed, "checks": [asdict(r) for r in report.results]})
    else:
        text = "\n".join(report.lines() + [f"selfcheck {'passed' if report.passed else 'FAILED: ' + ', '.join(report.failed)}"])
    _emit(text, opts)
    return EXIT_OK if report.passed else EXIT_SELFCHECK


COMMANDS = {"rate": cmd_rate, "sweep": cmd_sweep, "threshold": cmd_threshold, "selfcheck": cmd_selfcheck}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, _options(args))
    except (UsageError, InvalidParameterError) as exc:
        print(f"cvqkd-thermal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CVQKDError as exc:
        print(f"cvqkd-thermal {args.command}: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
