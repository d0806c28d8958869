"""Command-line front end: decompose systems, compute co-information,
run gate censuses, and construct witness distributions.

Systems are described either by a JSON file (keys: "outcomes", optional
"p", "variables" mapping names to block indices per outcome) or inline
via --gate "xor:2x2" / --table "0,1,1,0" --nx 2 --ny 2 shortcuts.
Reports go to stdout as aligned text or, with --json, as a JSON document
with numbers at 12 significant digits; diagnostics go to stderr.

Exit codes: 0 success, 2 parse/validation error, 3 capacity, 4 failed
precondition (for example witness construction on a non-mixed system).
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from dataclasses import dataclass

from . import __version__
from .core import CapacityError, Distribution, OutcomeSpace, Partition, degree
from .contents import coinformation_content, coinformation_numeric, content
from .gates import GateSystem, build_gate, census, named_gate
from .ideals import Ideal
from .measure import entropy, mu_atom, mu_ideal
from .parity import classify_parity, witness_distributions

DECOMPOSE_MAX_N = 16
SYSTEM_KEYS = {"outcomes", "p", "variables"}


class ParseError(Exception):
    """Bad input file or bad command arguments (exit code 2)."""


class PreconditionError(Exception):
    """Structurally valid input that the command cannot act on (exit code 4)."""


@dataclass(frozen=True)
class SystemFile:
    """Parsed form of the JSON system description."""

    outcomes: tuple[str, ...]
    p: tuple[float, ...] | None
    variables: dict[str, tuple[int, ...]]


def parse_system(text: str) -> SystemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("system file must be a JSON object")
    unknown = set(data) - SYSTEM_KEYS
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}")
    outcomes = data.get("outcomes")
    if (
        not isinstance(outcomes, list)
        or not outcomes
        or not all(isinstance(o, str) for o in outcomes)
    ):
        raise ParseError('"outcomes" must be a nonempty array of strings')
    p = data.get("p")
    if p is not None:
        if not isinstance(p, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in p
        ):
            raise ParseError('"p" must be an array of numbers')
        if len(p) != len(outcomes):
            raise ParseError('"p" must have one weight per outcome')
        if any(x < 0 for x in p):
            raise ParseError("weights must be nonnegative")
        p = tuple(float(x) for x in p)
    variables = data.get("variables")
    if not isinstance(variables, dict) or not variables:
        raise ParseError('"variables" must be a nonempty object')
    parsed_vars: dict[str, tuple[int, ...]] = {}
    for name, blocks in variables.items():
        if not isinstance(blocks, list) or not all(
            isinstance(b, int) and not isinstance(b, bool) for b in blocks
        ):
            raise ParseError(f'variable "{name}" must be an array of block indices')
        if len(blocks) != len(outcomes):
            raise ParseError(f'variable "{name}" must assign a block to every outcome')
        parsed_vars[name] = tuple(blocks)
    return SystemFile(outcomes=tuple(outcomes), p=p, variables=parsed_vars)


def serialize_system(sf: SystemFile) -> str:
    doc: dict = {"outcomes": list(sf.outcomes)}
    if sf.p is not None:
        doc["p"] = list(sf.p)
    doc["variables"] = {name: list(blocks) for name, blocks in sf.variables.items()}
    return json.dumps(doc, indent=2) + "\n"


@dataclass(frozen=True)
class System:
    space: OutcomeSpace
    dist: Distribution | None
    variables: dict[str, Partition]


def _system_from_file(path: str) -> System:
    try:
        with open(path, encoding="utf-8") as fh:
            sf = parse_system(fh.read())
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    try:
        space = OutcomeSpace(len(sf.outcomes), labels=sf.outcomes)
        dist = Distribution(space, sf.p) if sf.p is not None else None
        variables = {
            name: Partition(space, blocks) for name, blocks in sf.variables.items()
        }
    except CapacityError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None
    return System(space=space, dist=dist, variables=variables)


def _system_from_gate(gate: GateSystem) -> System:
    return System(
        space=gate.space,
        dist=Distribution.uniform(gate.space),
        variables={"X": gate.x, "Y": gate.y, "Z": gate.z},
    )


def _load_system(args) -> System:
    sources = [s for s in (args.file, args.gate, args.table) if s is not None]
    if len(sources) != 1:
        raise ParseError("give exactly one of --file, --gate, --table")
    if args.file is not None:
        return _system_from_file(args.file)
    if args.gate is not None:
        try:
            return _system_from_gate(named_gate(args.gate))
        except ValueError as e:
            raise ParseError(str(e)) from None
    if args.nx is None or args.ny is None:
        raise ParseError("--table needs --nx and --ny")
    cells = [c.strip() for c in args.table.split(",")]
    try:
        return _system_from_gate(build_gate(args.nx, args.ny, cells))
    except ValueError as e:
        raise ParseError(str(e)) from None


def _pick_variables(system: System, names: list[str] | None) -> list[tuple[str, Partition]]:
    if names is None:
        return list(system.variables.items())
    out = []
    for name in names:
        if name not in system.variables:
            raise ParseError(f"unknown variable name {name!r}")
        out.append((name, system.variables[name]))
    return out


def _require_distribution(system: System) -> Distribution:
    if system.dist is None:
        raise PreconditionError(
            "this command needs a distribution: add a \"p\" array to the system file"
        )
    return system.dist


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _round_floats(obj):
    if isinstance(obj, float):
        return _sig12(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def make_report(command: str, argv: list[str], seed: int | None, results) -> dict:
    return {
        "command": command,
        "argv": argv,
        "version": __version__,
        "seed": seed,
        "results": _round_floats(results),
    }


def _emit(report: dict, as_json: bool, text_lines) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


def _format_generators(ideal: Ideal) -> list[str]:
    return [ideal.space.format_atom(g) for g in ideal.sorted_generators()]


def _table(rows: list[list[str]], header: list[str]) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*["-" * w for w in widths])]
    lines.extend(fmt.format(*row) for row in rows)
    return lines


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_decompose(args, argv) -> dict:
    system = _load_system(args)
    dist = _require_distribution(system)
    space = system.space
    if space.n > DECOMPOSE_MAX_N:
        raise CapacityError(
            f"decompose listing is capped at {DECOMPOSE_MAX_N} outcomes"
        )
    if args.variable is not None:
        chosen = _pick_variables(system, [args.variable])
        atoms = sorted(content(chosen[0][1]).enumerate().atoms)
    else:
        atoms = sorted(
            m for m in range(1, space.full_mask + 1) if m.bit_count() >= 2
        )
    atom_rows = [
        {"atom": space.format_atom(a), "degree": degree(a), "mu": mu_atom(dist, a)}
        for a in atoms
    ]
    totals = {}
    for name, part in system.variables.items():
        totals[name] = {
            "mu_content": mu_ideal(dist, content(part)),
            "entropy": entropy(dist, part),
        }
    results = {"atoms": atom_rows, "totals": totals}
    report = make_report("decompose", argv, None, results)
    rows = [[r["atom"], str(r["degree"]), f"{r['mu']:+.6f}"] for r in atom_rows]
    lines = _table(rows, ["atom", "degree", "mu"])
    lines.append("")
    for name, tot in results["totals"].items():
        lines.append(
            f"{name}: mu(content) = {tot['mu_content']:+.6f}   H = {tot['entropy']:.6f}"
        )
    _emit(report, args.json, lines)
    return report


def cmd_coinfo(args, argv) -> dict:
    system = _load_system(args)
    dist = _require_distribution(system)
    chosen = _pick_variables(system, args.variables)
    if len(chosen) < 2:
        raise ParseError("co-information needs at least two variable names")
    parts = [p for _, p in chosen]
    value = coinformation_numeric(dist, parts)
    results: dict = {
        "variables": [name for name, _ in chosen],
        "coinformation": value,
    }
    lines = [f"co-information({', '.join(results['variables'])}) = {value:+.6f} bits"]
    if args.structure:
        ideal = coinformation_content(parts)
        parity = None if ideal.is_empty else classify_parity(ideal)
        results["structure"] = {
            "generators": _format_generators(ideal),
            "degrees": list(ideal.degree_profile()),
            "parity": parity.tag if parity else None,
            "mu": mu_ideal(dist, ideal),
        }
        lines.append(f"generators: [{', '.join(results['structure']['generators'])}]")
        lines.append(f"degrees: {results['structure']['degrees']}")
        lines.append(f"parity: {results['structure']['parity']}")
        lines.append(f"mu(ideal) = {results['structure']['mu']:+.6f} bits")
    report = make_report("coinfo", argv, None, results)
    _emit(report, args.json, lines)
    return report


def _survey_dict(survey) -> dict:
    return {
        "samples": survey.samples,
        "positive": survey.positive,
        "negative": survey.negative,
        "zero": survey.zero,
        "min": survey.min_value,
        "max": survey.max_value,
    }


def cmd_census(args, argv) -> dict:
    seed = args.seed
    if seed is None:
        seed = secrets.randbits(32)
        print(f"generated seed: {seed}", file=sys.stderr)
    classifications = census(
        args.nx, args.ny, samples=args.samples, seed=seed, threads=args.threads
    )
    rows = []
    for c in classifications:
        row = {
            "table": list(c.table),
            "orbit_size": c.orbit_size,
            "generators": _format_generators(c.ideal),
            "degrees": list(c.degree_profile),
            "parity": c.parity.tag if c.parity else None,
            "survey": _survey_dict(c.survey),
            "verdict": c.verdict,
            "seed": c.seed,
        }
        if c.witness_positive is not None:
            row["witness_positive"] = {
                "p": list(c.witness_positive.weights),
                "mu": mu_ideal(c.witness_positive, c.ideal),
            }
        if c.witness_negative is not None:
            row["witness_negative"] = {
                "p": list(c.witness_negative.weights),
                "mu": mu_ideal(c.witness_negative, c.ideal),
            }
        rows.append(row)
    negatives = sum(1 for c in classifications if c.verdict == "AlwaysNegative")
    results = {
        "nx": args.nx,
        "ny": args.ny,
        "samples": args.samples,
        "classes": rows,
        "always_negative_classes": negatives,
    }
    report = make_report("census", argv, seed, results)
    text_rows = [
        [
            ",".join(str(t) for t in r["table"]),
            ",".join(str(d) for d in r["degrees"]) or "-",
            str(r["parity"]),
            f"+{r['survey']['positive']}/-{r['survey']['negative']}/0:{r['survey']['zero']}",
            r["verdict"],
        ]
        for r in rows
    ]
    lines = _table(text_rows, ["table", "degrees", "parity", "survey", "verdict"])
    lines.append("")
    lines.append(f"AlwaysNegative classes: {negatives}")
    _emit(report, args.json, lines)
    return report


def cmd_witness(args, argv) -> dict:
    system = _load_system(args)
    chosen = _pick_variables(system, args.variables)
    if len(chosen) < 2:
        raise ParseError("witness construction needs at least two variable names")
    parts = [p for _, p in chosen]
    ideal = coinformation_content(parts)
    if ideal.is_empty:
        raise PreconditionError("the co-information ideal is empty; measure is 0")
    parities = ideal.generator_parities()
    if len(parities) != 2:
        kind = "even" if parities == {0} else "odd"
        raise PreconditionError(
            f"co-information ideal is not strongly mixed (pure {kind} generators); "
            "no two-sided witness exists"
        )
    positive, negative = witness_distributions(ideal)
    results = {
        "variables": [name for name, _ in chosen],
        "generators": _format_generators(ideal),
        "positive": {
            "p": list(positive.weights),
            "mu": mu_ideal(positive, ideal),
            "coinformation": coinformation_numeric(positive, parts),
        },
        "negative": {
            "p": list(negative.weights),
            "mu": mu_ideal(negative, ideal),
            "coinformation": coinformation_numeric(negative, parts),
        },
    }
    report = make_report("witness", argv, None, results)
    lines = []
    for side in ("positive", "negative"):
        w = results[side]
        ps = ", ".join(f"{x:.6g}" for x in w["p"])
        lines.append(f"{side} witness: p = [{ps}]   mu = {w['mu']:+.6f} bits")
    _emit(report, args.json, lines)
    return report


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _add_system_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--file", help="JSON system description")
    parser.add_argument("--gate", help='named gate, like "xor:2x2" or "or"')
    parser.add_argument("--table", help='gate output table, like "0,1,1,0"')
    parser.add_argument("--nx", type=int, help="gate rows (with --table)")
    parser.add_argument("--ny", type=int, help="gate columns (with --table)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logdec",
        description="Signed-measure entropy decomposition and co-information structure",
    )
    parser.add_argument("--version", action="version", version=f"logdec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="list atom measures and per-variable totals")
    _add_system_arguments(p)
    p.add_argument("--variable", help="restrict the listing to one variable's content")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("coinfo", help="numeric co-information, optionally with structure")
    _add_system_arguments(p)
    p.add_argument("-v", "--variables", nargs="+", help="variable names (default: all)")
    p.add_argument("--structure", action="store_true", help="also report the ideal")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_coinfo)

    p = sub.add_parser("census", help="classify every gate of a given shape")
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, help="worker count (default: LOGDEC_THREADS or all cores)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("witness", help="distributions giving both co-information signs")
    _add_system_arguments(p)
    p.add_argument("-v", "--variables", nargs="+", help="variable names (default: all)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, argv)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return 3
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return 4
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
