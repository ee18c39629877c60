"""Command-line interface: build gates, check families, synthesize, plan lattices.

Usage examples:

    xxz-gatesmith gate --name swap
    xxz-gatesmith gate --name entangler --omega-sum 1.5708
    xxz-gatesmith conditions --gate sqrt-swap --n 0 --p 0
    xxz-gatesmith fidelity --target swap --params '{"J": 1.0, "gamma": 1.0, ...}'
    xxz-gatesmith verify --gate swap --n-min -3 --n-max 3 --p-min -3 --p-max 3
    xxz-gatesmith synth --target iswap --restarts 16 --seed 7
    xxz-gatesmith sweep --target swap --axis1 Jt=0:6.2832:101 \
        --axis2 gamma=0:4:101 --out landscape.csv
    xxz-gatesmith lattice --config lattice.toml --gate swap --gate sqrt-swap

Matrices are exchanged as JSON: a 4x4 (or 2x2) row-major array of [re, im]
pairs.  `--target -` (or `--matrix -`) reads such a payload from stdin.
Output is JSON by default; `--format csv` is available for flat and tabular
payloads (sweeps are always CSV).  Exit codes: 0 success, 1 domain error
(JSON {"error": ...} on stderr), 2 usage error.  XXZ_GATESMITH_SEED sets the
default synthesis seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import catalog, lattice, synthesizer
from .core import NotUnitaryError, ensure_unitary, matrix_from_json, matrix_to_json
from .protocol import ProtocolParams, circuit_unitary, gate_fidelity, phase_optimized_fidelity

SEED_ENV_VAR = "XXZ_GATESMITH_SEED"


class UsageError(Exception):
    """Command line was well-formed JSON-wise but asks something unsupported."""


def _json_loads(text: str, what: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(
            f"malformed {what} JSON at line {e.lineno}, column {e.colno}"
            f" (char {e.pos}): {e.msg}"
        ) from None


def _read_payload(spec: str) -> str:
    return sys.stdin.read() if spec == "-" else spec


def _parse_matrix(spec: str, what: str) -> np.ndarray:
    obj = _json_loads(_read_payload(spec), what)
    return ensure_unitary(matrix_from_json(obj))


def _parse_target(args: argparse.Namespace) -> np.ndarray:
    spec: str = args.target
    if spec in catalog.GATE_NAMES and spec != "custom":
        kind = catalog.gate_kind_from_name(spec)
        return catalog.make_gate(catalog.GateTarget(kind, omega_sum=args.omega_sum))
    return _parse_matrix(spec, "target matrix")


def _gate_target(args: argparse.Namespace) -> catalog.GateTarget:
    kind = catalog.gate_kind_from_name(args.gate)
    if kind is catalog.GateKind.CUSTOM:
        raise ValueError("custom gates have no analytic parameter family")
    return catalog.GateTarget(kind, omega_sum=args.omega_sum)


def _parse_params(text: str) -> ProtocolParams:
    obj = _json_loads(_read_payload(text), "protocol parameters")
    if not isinstance(obj, dict):
        raise ValueError("protocol parameters JSON must be an object")
    try:
        return ProtocolParams.from_dict(obj)
    except KeyError as e:
        raise ValueError(f"protocol parameters JSON is missing key {e}") from None


def _axis(text: str) -> synthesizer.AxisSpec:
    try:
        name, _, rng = text.partition("=")
        lo, hi, steps = rng.split(":")
        return synthesizer.AxisSpec(name, float(lo), float(hi), int(steps))
    except (ValueError, TypeError) as e:
        raise argparse.ArgumentTypeError(
            f"axis must look like NAME=LO:HI:STEPS, got {text!r} ({e})"
        ) from None


def _bound(text: str) -> tuple[str, tuple[float, float]]:
    try:
        name, _, rng = text.partition("=")
        lo, hi = rng.split(":")
        return name, (float(lo), float(hi))
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(
            f"bound must look like NAME=LO:HI, got {text!r}"
        ) from None


def _flatten(obj: dict, prefix: str = "") -> dict:
    out: dict = {}
    for key, value in obj.items():
        full = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, full + "."))
        else:
            out[full] = value
    return out


def _emit_csv(payload: object, stream) -> None:
    if isinstance(payload, list) and all(isinstance(r, dict) for r in payload):
        rows = [_flatten(r) for r in payload]
        header: list[str] = []
        for row in rows:
            for key in row:
                if key not in header:
                    header.append(key)
        stream.write(",".join(header) + "\n")
        for row in rows:
            stream.write(",".join(str(row.get(k, "")) for k in header) + "\n")
        return
    if isinstance(payload, dict):
        flat = _flatten(payload)
        if any(isinstance(v, (list, dict)) for v in flat.values()):
            raise UsageError("this payload is nested; use --format json")
        stream.write("key,value\n")
        for key, value in flat.items():
            stream.write(f"{key},{value}\n")
        return
    raise UsageError("matrix output has no CSV form; use --format json")


def _emit(payload: object, fmt: str) -> None:
    if fmt == "json":
        # matrices stay on one line; structured payloads get indented
        is_matrix = isinstance(payload, list) and payload and isinstance(payload[0], list)
        json.dump(payload, sys.stdout, indent=None if is_matrix else 2)
        sys.stdout.write("\n")
    else:
        _emit_csv(payload, sys.stdout)


def _cmd_gate(args: argparse.Namespace) -> object:
    kind = catalog.gate_kind_from_name(args.name)
    if kind is catalog.GateKind.CUSTOM:
        if args.matrix is None:
            raise ValueError("--name custom requires --matrix")
        matrix = _parse_matrix(args.matrix, "gate matrix")
        target = catalog.GateTarget(kind, matrix=matrix)
    else:
        target = catalog.GateTarget(kind, omega_sum=args.omega_sum)
    if args.format == "csv":
        raise UsageError("matrix output has no CSV form; use --format json")
    return matrix_to_json(catalog.make_gate(target))


def _cmd_fidelity(args: argparse.Namespace) -> object:
    target = _parse_target(args)
    params = _parse_params(args.params)
    opt = phase_optimized_fidelity(target, circuit_unitary(params))
    return {
        "fidelity": gate_fidelity(target, params),
        "phase_optimized_fidelity": opt.fidelity,
        "chi_star": opt.chi_star,
    }


def _cmd_conditions(args: argparse.Namespace) -> object:
    params = catalog.condition_params(_gate_target(args), args.n, args.p, args.j)
    if isinstance(params, catalog.Unrealizable):
        return {"unrealizable": True, "reason": params.reason}
    return params.to_dict()


def _cmd_verify(args: argparse.Namespace) -> object:
    records = catalog.verify_family(
        _gate_target(args),
        range(args.n_min, args.n_max + 1),
        range(args.p_min, args.p_max + 1),
        args.j,
    )
    return [r.to_dict() for r in records]


def _cmd_synth(args: argparse.Namespace) -> object:
    target = _parse_target(args)
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV_VAR)
        seed = int(env) if env else synthesizer.DEFAULT_SEED
    bounds = dict(synthesizer.DEFAULT_BOUNDS)
    for name, interval in args.bounds or []:
        bounds[name] = interval
    config = synthesizer.SearchConfig(
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        seed=seed,
        bounds=bounds,
        tol=args.tol,
        reference_j=args.reference_j,
    )
    result = synthesizer.synthesize(target, config)
    payload = result.to_dict()
    payload["config"] = {
        "restarts": config.restarts,
        "max_iterations": config.max_iterations,
        "seed": config.seed,
        "tol": config.tol,
        "reference_j": config.reference_j,
        "bounds": {k: list(v) for k, v in config.bounds.items()},
    }
    return payload


def _cmd_sweep(args: argparse.Namespace) -> Optional[object]:
    target = _parse_target(args)
    fixed = (
        _parse_params(args.params)
        if args.params
        else ProtocolParams.interaction_only(1.0, 0.0, 0.0)
    )
    grid = synthesizer.fidelity_landscape(target, args.axis1, args.axis2, fixed)
    v1 = args.axis1.values()
    v2 = args.axis2.values()
    lines = ["axis1,axis2,fidelity"]
    for i in range(args.axis1.steps):
        for j in range(args.axis2.steps):
            lines.append(f"{v1[i]:.12g},{v2[j]:.12g},{grid[i, j]:.12g}")
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return None


def _load_config_file(path: str) -> dict:
    if path.endswith(".toml"):
        import tomli

        with open(path, "rb") as fh:
            try:
                obj = tomli.load(fh)
            except tomli.TOMLDecodeError as e:
                raise ValueError(f"malformed TOML config {path}: {e}") from None
    else:
        with open(path, "r", encoding="utf-8") as fh:
            obj = _json_loads(fh.read(), f"config file {path}")
    if not isinstance(obj, dict):
        raise ValueError("lattice config must be a table/object of fields")
    return obj


def _cmd_lattice(args: argparse.Namespace) -> object:
    config = lattice.LatticeConfig.from_dict(_load_config_file(args.config))
    couplings = lattice.effective_couplings(config)
    payload: dict = {"couplings": couplings.to_dict()}
    gates = args.gate or (
        [k.value for k in lattice.MIN_GATE_PHASE] if config.coherence_time else []
    )
    if gates:
        if config.coherence_time is None:
            raise ValueError("feasibility reports need coherence_time in the config")
        payload["feasibility"] = [
            lattice.gate_feasibility(
                couplings,
                catalog.gate_kind_from_name(name),
                config.coherence_time,
                config.rabi_frequency,
            ).to_dict()
            for name in gates
        ]
    return payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xxz-gatesmith",
        description="Two-qubit gates from an XXZ exchange period plus pulsed fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv"), default="json")

    def add_target(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--target",
            required=True,
            help="gate name, inline matrix JSON, or '-' for stdin",
        )
        p.add_argument("--omega-sum", type=float, default=0.0)

    p = sub.add_parser("gate", help="print a catalog gate matrix")
    p.add_argument("--name", required=True, help=f"one of: {', '.join(catalog.GATE_NAMES)}")
    p.add_argument("--omega-sum", type=float, default=0.0)
    p.add_argument("--matrix", help="unitary matrix JSON (with --name custom), or '-'")
    add_format(p)
    p.set_defaults(func=_cmd_gate)

    p = sub.add_parser("fidelity", help="fidelity of a parameter set against a target")
    add_target(p)
    p.add_argument("--params", required=True, help="protocol parameters JSON, or '-'")
    add_format(p)
    p.set_defaults(func=_cmd_fidelity)

    p = sub.add_parser("conditions", help="analytic family member (n, p) for a gate")
    p.add_argument("--gate", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--j", type=float, default=1.0, help="reference coupling (rad/s)")
    p.add_argument("--omega-sum", type=float, default=0.0)
    add_format(p)
    p.set_defaults(func=_cmd_conditions)

    p = sub.add_parser("verify", help="check a family over an (n, p) grid")
    p.add_argument("--gate", required=True)
    p.add_argument("--n-min", type=int, default=-3)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--p-min", type=int, default=-3)
    p.add_argument("--p-max", type=int, default=3)
    p.add_argument("--j", type=float, default=1.0)
    p.add_argument("--omega-sum", type=float, default=0.0)
    add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("synth", help="numerically search parameters for a target")
    add_target(p)
    p.add_argument("--restarts", type=int, default=24)
    p.add_argument("--max-iterations", type=int, default=4000)
    p.add_argument("--seed", type=int, default=None, help=f"default from ${SEED_ENV_VAR}")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--reference-j", type=float, default=1.0)
    p.add_argument(
        "--bounds",
        type=_bound,
        action="append",
        metavar="NAME=LO:HI",
        help="override a search interval (repeatable)",
    )
    add_format(p)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("sweep", help="fidelity landscape over two parameters as CSV")
    add_target(p)
    p.add_argument("--axis1", type=_axis, required=True, metavar="NAME=LO:HI:STEPS")
    p.add_argument("--axis2", type=_axis, required=True, metavar="NAME=LO:HI:STEPS")
    p.add_argument("--params", help="fixed protocol parameters JSON (default: all zero)")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("lattice", help="effective couplings and gate feasibility")
    p.add_argument("--config", required=True, help="TOML or JSON LatticeConfig file")
    p.add_argument("--gate", action="append", help="gate to check (repeatable)")
    add_format(p)
    p.set_defaults(func=_cmd_lattice)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, NotUnitaryError, OSError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 1
    if payload is not None:
        _emit(payload, getattr(args, "format", "json"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
