"""``dwtunnel`` command line.

Subcommands emit plain CSV/JSON tables; ``validate`` runs the invariant sweep.
Exit codes: 0 ok, 1 validation failure, 2 bad input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import ast
import io
import json
import math
import operator
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import figures, validation
from .dynamics import DEFAULT_P_GRID, DEFAULT_S_GRID, DEFAULT_TIMES
from .eigenmodes import ModelParams
from .numerics import Grid

OUTDIR_ENV = "DWTUNNEL_OUTDIR"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

CONFIG_KEYS = ("gamma", "sigma", "eps", "grid", "pgrid", "times", "out", "format")


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# value parsing

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
        return _UNOPS[type(node.op)](_eval_node(node.operand))
    raise InputError("unsupported expression")


def parse_number(text: str) -> float:
    """A real number, optionally an arithmetic expression in ``pi`` (``pi/8``, ``2*pi``)."""
    try:
        value = _eval_node(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, InputError, ZeroDivisionError):
        raise InputError(f"cannot parse number {text!r}") from None
    if not math.isfinite(value):
        raise InputError(f"number {text!r} is not finite")
    return value


def parse_grid(text: str) -> Grid:
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid must be min:max:n, got {text!r}")
    lo, hi = parse_number(parts[0]), parse_number(parts[1])
    try:
        n = int(parts[2])
    except ValueError:
        raise InputError(f"grid point count must be an integer, got {parts[2]!r}") from None
    try:
        return Grid(lo, hi, n)
    except ValueError as exc:
        raise InputError(f"invalid grid {text!r}: {exc}") from None


def parse_times(text: str) -> tuple[float, ...]:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise InputError("times must be a nonempty comma-separated list")
    return tuple(parse_number(t) for t in items)


def read_config_file(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; unknown keys are rejected."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc.strerror}") from None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if not sep:
            raise InputError(f"{path}:{lineno}: expected key = value")
        if key not in CONFIG_KEYS:
            raise InputError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


@dataclass
class RunConfig:
    gamma: float = 1.0
    sigma: float = 1.0
    eps: float = 0.0
    grid: Grid = DEFAULT_S_GRID
    p_grid: Grid = DEFAULT_P_GRID
    times: tuple = DEFAULT_TIMES
    output_path: str | None = None
    format: str = "csv"
    params: ModelParams = field(init=False)

    def __post_init__(self):
        if self.format not in ("csv", "json"):
            raise InputError(f"format must be csv or json, got {self.format!r}")
        try:
            self.params = ModelParams(self.gamma, self.sigma, self.eps)
        except ValueError as exc:
            raise InputError(str(exc)) from None


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = read_config_file(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            raw[key] = flag
    kw = {}
    for key in ("gamma", "sigma", "eps"):
        if key in raw:
            kw[key] = parse_number(str(raw[key]))
    if "grid" in raw:
        kw["grid"] = parse_grid(raw["grid"])
    if "pgrid" in raw:
        kw["p_grid"] = parse_grid(raw["pgrid"])
    if "times" in raw:
        kw["times"] = parse_times(raw["times"])
    if "out" in raw:
        kw["output_path"] = raw["out"]
    if "format" in raw:
        kw["format"] = raw["format"].strip().lower()
    return RunConfig(**kw)


# ---------------------------------------------------------------------------
# serialization

def _fmt(x) -> str:
    if isinstance(x, (str, np.str_)):
        return str(x)
    return format(float(x) + 0.0, ".12g")  # + 0.0 folds -0 into 0


def _json_value(x):
    if isinstance(x, (str, np.str_)):
        return str(x)
    return float(format(float(x) + 0.0, ".12g"))


def render(table: dict, fmt: str) -> str:
    columns = list(table)
    arrays = [np.asarray(table[c]) for c in columns]
    if fmt == "json":
        obj = {c: [_json_value(v) for v in a] for c, a in zip(columns, arrays)}
        return json.dumps(obj, allow_nan=False) + "\n"
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in zip(*arrays):
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _stem(config: RunConfig, command: str) -> Path:
    if config.output_path:
        p = Path(config.output_path)
        return p.with_suffix("") if p.suffix in (".csv", ".json") else p
    return Path(os.environ.get(OUTDIR_ENV, ".")) / command


def _emit_single(config: RunConfig, command: str, table: dict, out):
    text = render(table, config.format)
    if config.output_path is None and OUTDIR_ENV not in os.environ:
        out.write(text)
        return
    path = _stem(config, command).with_suffix("." + config.format)
    _write(path, text)
    print(f"wrote {path}", file=out)


# ---------------------------------------------------------------------------
# subcommands

def cmd_eigen(config: RunConfig, out) -> int:
    _emit_single(config, "eigen", figures.eigen_table(config.params, config.grid), out)
    return EXIT_OK


def cmd_defects(config: RunConfig, out) -> int:
    profiles, curves, charges = figures.defect_tables(config.params, config.grid)
    stem = _stem(config, "defects")
    for suffix, table in (("profiles", profiles), ("curves", curves)):
        path = stem.with_name(f"{stem.name}_{suffix}.{config.format}")
        _write(path, render(table, config.format))
        print(f"wrote {path}", file=out)
    print(f"Q_kink={charges['Q_kink']:.12g} Q_lump={charges['Q_lump']:.12g}", file=out)
    return EXIT_OK


def cmd_evolve(config: RunConfig, out) -> int:
    _emit_single(config, "evolve", figures.evolve_table(config.params, config.grid, config.times), out)
    return EXIT_OK


def cmd_wigner(config: RunConfig, out) -> int:
    stem = _stem(config, "wigner")
    for flavor, k, t, table in figures.wigner_tables(config.params, config.grid, config.p_grid, config.times):
        path = stem.with_name(f"{stem.name}_{flavor}_{k}.{config.format}")
        _write(path, render(table, config.format))
        print(f"wrote {path} ({flavor}, {figures.time_label(t)})", file=out)
    return EXIT_OK


def cmd_validate(config: RunConfig, out, tolerance_scale: float = 1.0) -> int:
    results = validation.run_all(tolerance_scale)
    print(validation.format_report(results), file=out)
    failed = [r for r in results if not r.passed]
    summary = {
        "checks": len(results),
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "failures": [f"{r.criterion}: {r.name} [{r.params}]" for r in failed],
    }
    print("SUMMARY " + json.dumps(summary), file=out)
    if config.output_path:
        table = {k: [getattr(r, k) for r in results]
                 for k in ("criterion", "name", "params", "measured", "threshold", "op", "passed")}
        if config.format == "json":
            _write(Path(config.output_path), json.dumps(table) + "\n")
        else:
            table["passed"] = ["PASS" if p else "FAIL" for p in table["passed"]]
            _write(Path(config.output_path), render(table, "csv"))
    return EXIT_OK if not failed else EXIT_FAIL


COMMANDS = {
    "eigen": (cmd_eigen, "normalized modes and the two potentials on a grid"),
    "defects": (cmd_defects, "kink/lump profiles, parametric potentials and charges"),
    "evolve": (cmd_evolve, "stable and unstable densities at each time"),
    "wigner": (cmd_wigner, "Wigner distributions, one long-format file per (flavor, time)"),
    "validate": (cmd_validate, "run the invariant sweep and report PASS/FAIL"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dwtunnel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--gamma", help="deformation exponent gamma > 0 (default 1)")
        p.add_argument("--sigma", help="width sigma > 0 (default 1)")
        p.add_argument("--eps", help="asymmetry |eps| < 1 (default 0)")
        p.add_argument("--grid", help="s grid min:max:n, n odd (default -8:8:801)")
        p.add_argument("--pgrid", help="p grid min:max:n (default -8:8:201)")
        p.add_argument("--times", help="comma-separated times, pi allowed (default 0,pi/8,pi/4,pi/2,pi)")
        p.add_argument("--out", help=f"output file or stem (default: stdout or ${OUTDIR_ENV})")
        p.add_argument("--format", help="csv (default) or json")
        p.add_argument("--config", help="key = value file; flags override it")
        if name == "validate":
            # negative-control hook: scales every tolerance
            p.add_argument("--corrupt-tolerance", type=float, default=None, help=argparse.SUPPRESS)
    return parser


_VALUE_FLAGS = ("--grid", "--pgrid", "--times", "--gamma", "--sigma", "--eps")


def _join_negative_values(argv):
    # let "--grid -8:8:801" through; argparse would read "-8:8:801" as an option
    argv = list(argv)
    joined = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2] not in ("", "-"):
            joined.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        joined.append(tok)
        i += 1
    return joined


def main(argv=None) -> int:
    out = sys.stdout
    try:
        argv = _join_negative_values(sys.argv[1:] if argv is None else argv)
        args = build_parser().parse_args(argv)
        config = build_config(args)
        func = COMMANDS[args.command][0]
        if args.command == "validate":
            scale = 1.0 if args.corrupt_tolerance is None else args.corrupt_tolerance
            return func(config, out, scale)
        return func(config, out)
    except ArithmeticError as exc:
        print(f"dwtunnel: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, ValueError) as exc:
        msg = " ".join(str(exc).split())
        print(f"dwtunnel: error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
