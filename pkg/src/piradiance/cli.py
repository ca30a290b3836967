"""Command-line front end: ``piradiance derive|spectrum|criteria|table1|jeans-check``.

Exit codes: 0 success, 2 input/parse error, 3 unusable pin choice,
4 unknown radiation law.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .constants import C_LIGHT, SIGMA, WIEN_C
from .constants_fit import FitInputs, verify_table1
from .dimensions import DimensionError, dimensional_matrix, format_fraction
from .laws import (
    LAW_NAMES,
    RadiationLaw,
    RadiationLawError,
    UnknownLaw,
    evaluate_criteria,
    law_from_dict,
    log_grid,
    preset_law,
    sample_spectrum,
    write_spectrum_csv,
)
from .pi_solver import (
    DependentInvariants,
    PiSolverError,
    SingularSubsystem,
    jeans_functional,
    nullspace_basis,
    rank,
    solve_pinned,
)
from .scenarios import (
    PRESETS,
    ScenarioError,
    load_scenario,
    parse_rational_option,
    preset,
)
from .special import DEFAULT_QUAD_TOL

SCHEMA_VERSION = 1
EXIT_OK, EXIT_PARSE, EXIT_SINGULAR, EXIT_UNKNOWN_LAW = 0, 2, 3, 4
DEFAULT_GRID = (1e8, 1e12, 512)
DEFAULT_CRITERIA_TOL = 1e-6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def env_tolerance() -> Optional[float]:
    raw = os.environ.get("PIRADIANCE_TOL")
    if raw is None or raw.strip() == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise CliError(f"PIRADIANCE_TOL is not a number: {raw!r}", EXIT_PARSE) from None
    if not tol > 0:
        raise CliError("PIRADIANCE_TOL must be positive", EXIT_PARSE)
    return tol


def parse_grid(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        grid = float(lo), float(hi), int(n)
    except ValueError:
        raise CliError(f"bad --grid {text!r}; expected lo:hi:n", EXIT_PARSE) from None
    if not (0 < grid[0] < grid[1] and grid[2] >= 2):
        raise CliError(f"bad --grid {text!r}; need 0 < lo < hi and n >= 2", EXIT_PARSE)
    return grid


def _dump_json(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, **obj}, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# derive


def _derive_scenario(args):
    if args.input:
        try:
            return load_scenario(args.input)
        except OSError as exc:
            raise CliError(f"cannot read {args.input}: {exc}", EXIT_PARSE) from exc
    name = args.preset or "rayleigh-jeans"
    if name not in PRESETS:
        raise CliError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}", EXIT_PARSE)
    N = parse_rational_option(args.N) if args.N is not None else -1
    if not N < 3:
        raise CliError("the displacement exponent must satisfy N < 3", EXIT_PARSE)
    return preset(name, N)


def derive_report(scenario) -> dict[str, Any]:
    qs = scenario.quantity_set
    g = dimensional_matrix(qs)
    r = rank(g)
    report: dict[str, Any] = {
        "command": "derive",
        "scenario": scenario.name,
        "basis": list(qs.basis.names),
        "quantities": [
            {"name": q.name, "symbol": q.symbol, "dim": q.dimension.render()}
            for q in qs.quantities
        ],
        "matrix": [[format_fraction(v) for v in row] for row in g],
        "rank": r,
        "num_invariants": len(qs) - r,
        "nullspace_basis": [[format_fraction(v) for v in vec] for vec in nullspace_basis(qs)],
        "invariants": [],
    }
    if scenario.pins is not None:
        system = solve_pinned(qs, scenario.pins)
        report["invariants"] = [
            {"index": i + 1, "powers": inv.as_strings(), "formula": inv.formula}
            for i, inv in enumerate(system.invariants)
        ]
    if scenario.name == "jeans":
        report["jeans_functional_on_nullspace"] = [
            format_fraction(jeans_functional(v)) for v in nullspace_basis(qs)
        ]
    if scenario.note:
        report["note"] = scenario.note
    return report


def format_derive(report: dict[str, Any]) -> str:
    lines = [
        f"scenario: {report['scenario']}",
        "quantities: " + ", ".join(f"{q['symbol']} [{q['dim'] or '1'}]" for q in report["quantities"]),
        f"rank r={report['rank']}, p={report['num_invariants']}",
    ]
    if report["invariants"]:
        for inv in report["invariants"]:
            lines.append(f"π{inv['index']} = {inv['formula']}    powers ({', '.join(inv['powers'])})")
    else:
        for i, vec in enumerate(report["nullspace_basis"], 1):
            lines.append(f"basis {i}: ({', '.join(vec)})")
    if "jeans_functional_on_nullspace" in report:
        vals = ", ".join(report["jeans_functional_on_nullspace"])
        lines.append(f"x_λ - 2 x_U + x_e/2 on nullspace basis: {vals}")
    if report.get("note"):
        lines.append("note: " + report["note"])
    return "\n".join(lines) + "\n"


def cmd_derive(args) -> int:
    scenario = _derive_scenario(args)
    report = derive_report(scenario)
    _emit(_dump_json(report) if args.json else format_derive(report), args.output)
    return EXIT_OK


def cmd_jeans_check(args) -> int:
    args.preset, args.input = "jeans", None
    return cmd_derive(args)


# --------------------------------------------------------------------------
# laws


def _law(args) -> RadiationLaw:
    if args.input:
        try:
            data = json.loads(Path(args.input).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read law file {args.input}: {exc}", EXIT_PARSE) from exc
        return law_from_dict(data)
    name = args.preset or "planck"
    try:
        return preset_law(name)
    except UnknownLaw as exc:
        raise CliError(str(exc.args[0]), EXIT_UNKNOWN_LAW) from None


def cmd_spectrum(args) -> int:
    law = _law(args)
    lo, hi, n = parse_grid(args.grid) if args.grid else DEFAULT_GRID
    samples = sample_spectrum(law, log_grid(lo, hi, n))
    buf = io.StringIO()
    write_spectrum_csv(samples, buf)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def format_criteria(rep) -> str:
    def mark(ok: bool) -> str:
        return "pass" if ok else "FAIL"

    integral = (
        f"{rep.energy_integral_value:.10g}" if rep.energy_integral_value is not None else "n/a"
    )
    peak = f"{rep.peak_X:.10g}" if rep.peak_X is not None else "n/a"
    return "\n".join([
        f"law: {rep.law} (N = {rep.N:g})",
        f"red requirement        {mark(rep.red_pass)}  lim X^-N Φ = {rep.red_limit:.10g}",
        f"violet requirement     {mark(rep.violet_pass)}  X^{rep.violet_limit_exponent_m:g} Φ -> {rep.violet_limit:.4g}",
        f"strengthened violet    {mark(rep.strengthened_violet_pass)}  X^{rep.strengthened_violet_exponent_m:g} Φ -> {rep.strengthened_violet_limit:.4g}",
        f"energy integral        {rep.energy_integral.classification}  value = {integral}",
        f"extreme                {rep.max_kind}  X_max = {peak}",
    ]) + "\n"


def cmd_criteria(args) -> int:
    law = _law(args)
    tol = env_tolerance()
    rep = evaluate_criteria(
        law,
        tol=tol if tol is not None else DEFAULT_CRITERIA_TOL,
        quad_tol=tol if tol is not None else DEFAULT_QUAD_TOL,
    )
    if args.json:
        text = _dump_json({"command": "criteria", **rep.to_dict()})
    else:
        text = format_criteria(rep)
    _emit(text, args.output)
    return EXIT_OK


def cmd_table1(args) -> int:
    inputs = FitInputs(args.sigma, args.C, args.c)
    report = verify_table1(inputs)
    if args.json:
        text = _dump_json({"command": "table1", **report.to_dict()})
    else:
        text = report.format_text() + "\n"
    _emit(text, args.output)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="piradiance",
        description="Dimensional pi-invariants analysis and blackbody radiation laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, preset_help):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--preset", help=preset_help)
        src.add_argument("--input", help="JSON input file")
        p.add_argument("--output", help="write to FILE instead of stdout")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("derive", help="rank and pi-invariants of a quantity set")
    common(p, f"one of {', '.join(PRESETS)}")
    p.add_argument("--N", help="displacement exponent for the generalized preset (default -1)")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("jeans-check", help="Jeans' eight-quantity hypothesis and why it fails")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    p.add_argument("--N", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_jeans_check)

    law_help = f"law name, one of {', '.join(LAW_NAMES)}"
    p = sub.add_parser("spectrum", help="write U/T^3 against nu/T as CSV")
    common(p, law_help)
    p.add_argument("--grid", help="lo:hi:n log-spaced nu/T grid (default 1e8:1e12:512)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("criteria", help="red/violet/energy/maximum checks for a law")
    common(p, law_help)
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("table1", help="re-derive (k, eta) of every law from sigma and C")
    p.add_argument("--sigma", type=float, default=SIGMA)
    p.add_argument("--C", type=float, default=WIEN_C)
    p.add_argument("--c", type=float, default=C_LIGHT)
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", newline="\n")
    argv = list(sys.argv[1:] if argv is None else argv)
    # argparse reads "--N -1/2" as two options; glue the value on
    for i, tok in enumerate(argv[:-1]):
        if tok == "--N" and argv[i + 1].startswith("-"):
            argv[i : i + 2] = [f"--N={argv[i + 1]}"]
            break
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"piradiance: {exc}", file=sys.stderr)
        return exc.code
    except (SingularSubsystem, DependentInvariants) as exc:
        print(f"piradiance: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except UnknownLaw as exc:
        print(f"piradiance: {exc.args[0]}", file=sys.stderr)
        return EXIT_UNKNOWN_LAW
    except (ScenarioError, DimensionError, PiSolverError, RadiationLawError, ValueError) as exc:
        print(f"piradiance: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
