"""
Command-line front end.

Commands: gate, classify, verify, sweep, design. Exit codes: 0 success or
pass, 2 input error, 3 degenerate drive (omega = 0), 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .analysis import (
    HALF_PI,
    classify_gate,
)
from .design import (
    DesignTarget,
    SweepGrid,
    design,
    sweep_entangling_power,
)
from .dfs import (
    AngularParams,
    PulseSet,
    ZenoRegime,
    build_laser_hamiltonian,
    effective_hamiltonian_closed_form,
    from_angular,
    frobenius,
    project_to_dfs,
    to_angular,
    zeno_regime_check,
)
from .errors import DegenerateDriveError, HolozenoError, InvalidInputError, InvalidRegimeError
from .evolution import (
    check_cyclicity,
    check_parallel_transport,
    explicit_gate_matrix,
    holonomy_gate,
    holonomy_run_time,
    propagator_closed_form,
    propagator_oracle,
)
from .report import dumps, fmt_float, to_csv

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE, EXIT_VERIFY = 0, 2, 3, 4

THRESHOLDS = {
    "projection_identity": 1e-13,
    "oracle_vs_closed_form": 1e-12,
    "propagator_unitarity": 1e-12,
    "cyclicity": 1e-10,
    "parallel_transport_max": 1e-10,
    "gate_vs_explicit": 1e-12,
    "gate_unitarity": 1e-12,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# argument parsing

def _floats(text: str, what: str, count=None) -> list[float]:
    try:
        values = [float(x) for x in str(text).split(",")]
    except ValueError as exc:
        raise UsageError(f"{what}: malformed number in {text!r}") from exc
    if not all(math.isfinite(v) for v in values):
        raise UsageError(f"{what}: values must be finite")
    if count is not None and len(values) not in (count if isinstance(count, tuple) else (count,)):
        raise UsageError(f"{what}: expected {count} values, got {len(values)}")
    return values


def _as_number_list(value, what):
    if isinstance(value, str):
        return _floats(value, what)
    if isinstance(value, dict):
        raise UsageError(f"{what}: expected a list")
    out = []
    for v in value:
        if isinstance(v, (list, tuple)):
            out.extend(_as_number_list(v, what))
        elif isinstance(v, bool) or not isinstance(v, (int, float)):
            raise UsageError(f"{what}: malformed number {v!r}")
        else:
            out.append(float(v))
    if not all(math.isfinite(v) for v in out):
        raise UsageError(f"{what}: values must be finite")
    return out


def _pulses_from(values) -> PulseSet:
    v = _as_number_list(values, "pulses")
    if len(v) != 8:
        raise UsageError(f"pulses: expected 8 numbers (re,im x4), got {len(v)}")
    return PulseSet(complex(v[0], v[1]), complex(v[2], v[3]), complex(v[4], v[5]), complex(v[6], v[7]))


_ANGULAR_KEYS = ("omega", "theta", "varphi", "phi1", "phi2", "phi3")


def _angular_from(values) -> AngularParams:
    if isinstance(values, dict):
        unknown = set(values) - set(_ANGULAR_KEYS)
        if unknown:
            raise UsageError(f"angular: unknown keys {sorted(unknown)}")
        values = [values.get(k, 0.0) for k in _ANGULAR_KEYS]
    v = _as_number_list(values, "angular")
    if not 3 <= len(v) <= 6:
        raise UsageError("angular: expected omega,theta,varphi[,phi1,phi2,phi3]")
    try:
        return AngularParams(*v)
    except InvalidInputError as exc:
        raise UsageError(f"angular: {exc}") from exc


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def _merged(args, cfg, key, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def _drive(args, cfg):
    """Resolve (pulses, angular, echo) from flags, falling back to the config file."""
    if args.pulses is not None and args.angular is not None:
        raise UsageError("--pulses and --angular are mutually exclusive")
    if args.pulses is not None or args.angular is not None:
        src = {"pulses": args.pulses} if args.pulses is not None else {"angular": args.angular}
    else:
        src = {k: cfg[k] for k in ("pulses", "angular") if k in cfg}
    if len(src) != 1:
        raise UsageError("exactly one of pulses / angular is required")
    if "pulses" in src:
        pulses = _pulses_from(src["pulses"])
        return pulses, None, {"pulses": list(pulses.as_tuple()), "angular": None}
    params = _angular_from(src["angular"])
    return None, params, {"pulses": None, "angular": list(params.as_tuple())}


def _zeno(args, cfg):
    block = None
    if args.zeno is not None:
        v = _floats(args.zeno, "zeno", (2, 3))
        block = dict(zip(("g", "kappa", "threshold"), v))
    elif "zeno" in cfg:
        block = cfg["zeno"]
        if not isinstance(block, dict):
            raise UsageError("zeno block must be an object {g, kappa, threshold}")
    if block is None:
        return None
    try:
        return ZenoRegime(block["g"], block["kappa"], block.get("threshold", 0.1))
    except KeyError as exc:
        raise UsageError(f"zeno block missing {exc}") from exc
    except (TypeError, ValueError, InvalidRegimeError) as exc:
        raise UsageError(f"zeno: {exc}") from exc


def _int_option(args, cfg, key, default, minimum=None):
    value = _merged(args, cfg, key, default)
    if isinstance(value, bool):
        raise UsageError(f"{key} must be an integer")
    try:
        ivalue = int(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{key} must be an integer") from exc
    if ivalue != value:
        raise UsageError(f"{key} must be an integer")
    if minimum is not None and ivalue < minimum:
        raise UsageError(f"{key} must be >= {minimum}")
    return ivalue


# --------------------------------------------------------------------------
# report assembly

def _angular_dict(p: AngularParams) -> dict:
    return dict(zip(_ANGULAR_KEYS, p.as_tuple()))


def _class_label(report) -> str:
    w = report.weyl
    if report.special_perfect_entangler:
        return "[CNOT]"
    if w.distance((0.0, 0.0, 0.0)) <= 1e-9:
        return "local"
    if w.distance((HALF_PI, HALF_PI, HALF_PI)) <= 1e-9:
        return "[SWAP]"
    return "perfect entangler" if report.perfect_entangler else "non-perfect entangler"


def _classification_dict(report) -> dict:
    row = report.table_row
    return {
        "class": _class_label(report),
        "g1": report.invariants.g1,
        "g2": report.invariants.g2,
        "ep": report.ep,
        "ep_mc": None if report.ep_mc is None else
        {"estimate": report.ep_mc[0], "stderr": report.ep_mc[1]},
        "weyl": list(report.weyl.as_tuple()),
        "perfect_entangler": report.perfect_entangler,
        "special_perfect_entangler": report.special_perfect_entangler,
        "max_concurrence": report.max_concurrence,
        "table_row": None if row is None else {
            "row": row.row, "g1": row.g1, "g2": row.g2, "ep": row.ep,
            "weyl": list(row.weyl), "note": row.note},
        "notes": list(report.notes),
    }


def _zeno_dict(pulses, regime):
    if regime is None:
        return None
    z = zeno_regime_check(pulses, regime)
    return {"g": regime.g, "kappa": regime.kappa, "threshold": z.threshold,
            "rate_scale": z.rate_scale, "ratio": z.ratio, "valid": z.valid}


def _envelope(command, echo, params, pulses):
    return {
        "tool": "holozeno",
        "version": __version__,
        "command": command,
        "input": echo,
        "pulses": list(pulses.as_tuple()),
        "angular": _angular_dict(params),
    }


def _gate_like(args, cfg, command):
    pulses, params, echo = _drive(args, cfg)
    regime = _zeno(args, cfg)
    mc = _int_option(args, cfg, "mc_samples", 100_000, minimum=0)
    if 0 < mc < 1000:
        raise UsageError("mc_samples must be 0 (off) or >= 1000")
    seed = _int_option(args, cfg, "seed", 0)
    echo.update({"zeno": None if regime is None else
                 {"g": regime.g, "kappa": regime.kappa, "threshold": regime.threshold},
                 "mc_samples": mc, "seed": seed})
    if params is None:
        params = to_angular(pulses)  # raises DegenerateDriveError
    else:
        if params.omega <= 0.0:
            raise DegenerateDriveError("omega = 0")
        pulses = from_angular(params)
    report = classify_gate(params, mc_samples=mc or None, seed=seed)
    env = _envelope(command, echo, params, pulses)
    gate = holonomy_gate(params)
    if command != "classify":
        env["gate"] = gate.matrix
    env["classification"] = _classification_dict(report)
    zeno = _zeno_dict(pulses, regime)
    env["zeno"] = zeno
    warnings = []
    if zeno is not None and not zeno["valid"]:
        warnings.append("Zeno regime violated: max Rabi amplitude not much smaller than "
                        "min(kappa, g^2/kappa)")
    env["warnings"] = warnings
    return env, pulses, params, gate


def _verification(pulses, params, gate):
    rng = np.random.default_rng(0)
    h_proj = project_to_dfs(build_laser_hamiltonian(pulses))
    h_closed = effective_hamiltonian_closed_form(pulses)
    tau = holonomy_run_time(params.omega)
    oracle_dev, prop_unit = 0.0, 0.0
    for t in np.concatenate([[0.0, 0.5 * tau, tau], rng.uniform(0.0, 2 * tau, 5)]):
        uc = propagator_closed_form(params, t).matrix
        uo = propagator_oracle(h_closed, t).matrix
        oracle_dev = max(oracle_dev, frobenius(uc - uo))
        prop_unit = max(prop_unit, frobenius(uc.conj().T @ uc - np.eye(5)))
    u = gate.matrix
    values = {
        "projection_identity": frobenius(h_proj - h_closed),
        "oracle_vs_closed_form": oracle_dev,
        "propagator_unitarity": prop_unit,
        "cyclicity": check_cyclicity(params),
        "parallel_transport_max": check_parallel_transport(params, 100),
        "gate_vs_explicit": frobenius(u - explicit_gate_matrix(params)),
        "gate_unitarity": frobenius(u.conj().T @ u - np.eye(4)),
    }
    checks = {k: {"value": v, "threshold": THRESHOLDS[k], "pass": bool(v <= THRESHOLDS[k])}
              for k, v in values.items()}
    return checks, all(c["pass"] for c in checks.values())


def cmd_gate(args, cfg):
    env, *_ = _gate_like(args, cfg, "gate")
    env["status"] = "ok"
    return env, EXIT_OK


def cmd_classify(args, cfg):
    env, *_ = _gate_like(args, cfg, "classify")
    env["status"] = "ok"
    return env, EXIT_OK


def cmd_verify(args, cfg):
    env, pulses, params, gate = _gate_like(args, cfg, "verify")
    checks, ok = _verification(pulses, params, gate)
    env["verification"] = checks
    env["status"] = "pass" if ok else "fail"
    return env, EXIT_OK if ok else EXIT_VERIFY


def _range(args, cfg, key):
    value = _merged(args, cfg, key)
    if value is None:
        return (0.0, math.pi)
    v = _floats(value, key, 2) if isinstance(value, str) else _as_number_list(value, key)
    if len(v) != 2:
        raise UsageError(f"{key}: expected lo,hi")
    return tuple(v)


def cmd_sweep(args, cfg):
    grid_v = _merged(args, cfg, "grid")
    if grid_v is None:
        n_t, n_v = 101, 101
    else:
        g = _floats(grid_v, "grid", 2) if isinstance(grid_v, str) else _as_number_list(grid_v, "grid")
        if len(g) != 2 or any(int(x) != x for x in g):
            raise UsageError("grid: expected two integers nTheta,nVarphi")
        n_t, n_v = int(g[0]), int(g[1])
    try:
        grid = SweepGrid(_range(args, cfg, "theta_range"), _range(args, cfg, "varphi_range"), n_t, n_v)
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from exc
    records = sweep_entangling_power(grid)
    return {"grid": grid, "records": records}, EXIT_OK


def cmd_design(args, cfg):
    omega = float(_merged(args, cfg, "omega", 1.0))
    chosen = []
    for key, kind in (("target_ep", "entangling_power"), ("target_c", "weyl_c"),
                      ("table_row", "table_row")):
        v = _merged(args, cfg, key)
        if v is not None:
            chosen.append((kind, v))
    if _merged(args, cfg, "perfect_entangler", False):
        chosen.append(("perfect_entangler", None))
    if len(chosen) != 1:
        raise UsageError("choose exactly one of --target-ep, --target-c, --perfect-entangler, --table-row")
    kind, value = chosen[0]
    theta = _merged(args, cfg, "theta")
    varphi = _merged(args, cfg, "varphi")
    try:
        if value is not None:
            value = float(value)
        target = DesignTarget(kind, value, omega)
        params = design(target, theta=None if theta is None else float(theta),
                        varphi=None if varphi is None else float(varphi))
    except (InvalidInputError, TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    args.pulses, args.angular = None, list(params.as_tuple())
    env, *_ = _gate_like(args, {k: v for k, v in cfg.items() if k not in ("pulses", "angular")},
                         "design")
    env["target"] = {"kind": kind, "value": value, "omega": omega}
    env["status"] = "ok"
    return env, EXIT_OK


COMMANDS = {"gate": cmd_gate, "classify": cmd_classify, "verify": cmd_verify,
            "sweep": cmd_sweep, "design": cmd_design}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holozeno", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"holozeno {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file; flags override it")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    drive = _Parser(add_help=False)
    drive.add_argument("--pulses", help="re,im x4 for Omega0_1, Omega0_2, Omega1_1, Omega1_2")
    drive.add_argument("--angular", help="omega,theta,varphi[,phi1,phi2,phi3]")
    drive.add_argument("--zeno", help="g,kappa[,threshold] for the Zeno regime check")
    drive.add_argument("--mc-samples", dest="mc_samples", type=int, default=None,
                       help="Monte-Carlo samples for entangling power (0 disables)")
    drive.add_argument("--seed", type=int, default=None)

    for name, helptext in (("gate", "holonomic gate and classification"),
                           ("classify", "classification only"),
                           ("verify", "run the holonomy cross-checks")):
        sub.add_parser(name, parents=[common, drive], help=helptext)

    sw = sub.add_parser("sweep", parents=[common], help="entangling power over (theta, varphi)")
    sw.add_argument("--grid", help="nTheta,nVarphi (default 101,101)")
    sw.add_argument("--theta-range", dest="theta_range", help="lo,hi (default 0,pi)")
    sw.add_argument("--varphi-range", dest="varphi_range", help="lo,hi (default 0,pi)")

    de = sub.add_parser("design", parents=[common, drive], help="pulses for a target")
    de.add_argument("--target-ep", dest="target_ep", type=float, default=None)
    de.add_argument("--target-c", dest="target_c", type=float, default=None)
    de.add_argument("--perfect-entangler", dest="perfect_entangler", action="store_true",
                    default=None)
    de.add_argument("--table-row", dest="table_row", type=int, default=None)
    de.add_argument("--theta", type=float, default=None)
    de.add_argument("--varphi", type=float, default=None)
    de.add_argument("--omega", type=float, default=None)
    return parser


def _render(command, payload, fmt) -> str:
    if command == "sweep":
        if fmt == "json":
            grid = payload["grid"]
            return dumps({"grid": {"theta_range": list(grid.theta_range),
                                   "varphi_range": list(grid.varphi_range),
                                   "n_theta": grid.n_theta, "n_varphi": grid.n_varphi},
                          "records": [list(r) for r in payload["records"]]})
        lines = ["theta,varphi,ep"]
        lines.extend(",".join(fmt_float(x) for x in r) for r in payload["records"])
        return "\n".join(lines) + "\n"
    return to_csv(payload) if fmt == "csv" else dumps(payload)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"holozeno: error: {exc}", file=stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        cfg = _load_config(args.config)
        fmt = args.format or cfg.get("format") or ("csv" if args.command == "sweep" else "json")
        if fmt not in ("json", "csv"):
            raise UsageError(f"unknown format {fmt!r}")
        payload, code = COMMANDS[args.command](args, cfg)
        text = _render(args.command, payload, fmt)
    except UsageError as exc:
        print(f"holozeno: error: {exc}", file=stderr)
        return EXIT_INPUT
    except DegenerateDriveError as exc:
        print(f"holozeno: degenerate drive: {exc}", file=stderr)
        return EXIT_DEGENERATE
    except (InvalidInputError, InvalidRegimeError) as exc:
        print(f"holozeno: error: {exc}", file=stderr)
        return EXIT_INPUT
    except HolozenoError as exc:
        print(f"holozeno: verification error: {exc}", file=stderr)
        return EXIT_VERIFY
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
