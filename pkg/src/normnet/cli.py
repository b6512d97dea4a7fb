"""Command-line interface.

Exit codes: 0 optimal / valid, 1 infeasible (or node limit hit before
proving optimality), 2 input or validation error, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import NormNetError
from .generate import GeneratorParams, generate_random_net
from .ilp import ProblemConfig, encode_problem, export_lp
from .io import load_norm_net, load_representation, serialize_norm_net
from .net import with_costs
from .solve import SolveOptions, solve
from .sweep import budget_range, rows_to_csv, sweep, weight_grid

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _weights(text: str) -> tuple[Fraction, ...]:
    parts = text.split(",")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("expected wr,wc or wr,wc,wv")
    return tuple(_fraction(p) for p in parts)


def _cost(text: str) -> tuple[str, Fraction]:
    nid, sep, value = text.partition("=")
    if not sep or not nid:
        raise argparse.ArgumentTypeError("expected ID=COST")
    return nid, _fraction(value)


def _range(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected lo:hi:step")
    return tuple(_fraction(p) for p in parts)


def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", type=Path, help="norm-net JSON document")
    p.add_argument("--problem", choices=("mnsp", "mnsplb", "vmnsplb"), required=True)
    p.add_argument(
        "--representation", default="inclusion",
        help="inclusion, generalisation or custom:<file.json> (default: inclusion)",
    )
    p.add_argument("--budget", type=_fraction)
    p.add_argument("--weights", type=_weights, help="wr,wc[,wv] (default 0.5,0.5)")
    p.add_argument("--in-force", dest="in_force", choices=("ignore", "preserve", "flexible"), default="flexible")
    p.add_argument("--cost", action="append", type=_cost, default=[], metavar="ID=COST",
                   help="override a norm's cost (repeatable)")
    p.add_argument("--all-optima", action="store_true", help="report every optimal norm system")
    p.add_argument("--max-optima", type=int, default=64)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="normnet", description="Select norm systems from a norm net.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a norm-net document")
    p.add_argument("file", type=Path)

    p = sub.add_parser("solve", help="solve a selection problem")
    _add_problem_flags(p)
    p.add_argument("--json", action="store_true", help="print the solve report as JSON")

    p = sub.add_parser("export-lp", help="write the 0/1 program in LP text form")
    _add_problem_flags(p)
    p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")

    p = sub.add_parser("gen", help="generate a random norm net")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--branching", type=int, default=2)
    p.add_argument("--px", type=float, default=0.0)
    p.add_argument("--ps", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("sweep", help="solve over a budget range or weight grid, write CSV")
    _add_problem_flags(p)
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--budget-range", type=_range, metavar="LO:HI:STEP")
    grid.add_argument("--weight-grid", type=_fraction, metavar="STEP")
    p.add_argument("-o", "--output", default="-")
    return parser


def _write(target: str, text: str) -> None:
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _load_problem(args):
    net = load_norm_net(args.file)
    if args.cost:
        net = with_costs(net, dict(args.cost))
    rep = args.representation
    if rep.startswith("custom:"):
        rep = load_representation(rep[len("custom:"):])
    elif rep not in ("inclusion", "generalisation"):
        raise _UsageError(f"unknown representation {rep!r}")
    kwargs = {"problem": args.problem, "representation": rep, "budget": args.budget,
              "in_force_mode": args.in_force}
    if args.weights is not None:
        kwargs["weights"] = args.weights
    config = ProblemConfig(**kwargs)
    try:
        options = SolveOptions(
            enumerate_all_optima=args.all_optima,
            max_optima=args.max_optima,
            node_limit=args.node_limit,
            workers=args.workers,
        )
    except ValueError as e:
        raise _UsageError(str(e)) from None
    return net, config, options


def _human(report) -> str:
    d = report.to_dict()
    lines = [f"status: {d['status']}"]
    if d["objective"] is not None:
        lines.append(f"objective: {d['objective_decimal']} ({d['objective']})")
    if report.optima:
        label = "optimum" if len(report.optima) == 1 else f"optima ({len(report.optima)})"
        if report.truncated:
            label += ", truncated"
        lines.append(f"{label}:")
        lines.extend("  {" + ", ".join(s) + "}" for s in d["optima"])
    lines.append(f"nodes: {report.nodes}")
    return "\n".join(lines) + "\n"


def _cmd_validate(args) -> int:
    net = load_norm_net(args.file)
    rel = net.relations
    print(
        f"valid: {len(net)} norms, {len(rel.generalisation)} generalisation, "
        f"{len(rel.exclusivity)} exclusivity, {len(rel.substitutability)} substitutability pairs"
        + (f", in force: {', '.join(sorted(net.in_force))}" if net.in_force else "")
    )
    return EXIT_OK


def _cmd_solve(args) -> int:
    net, config, options = _load_problem(args)
    report = solve(net, config, options)
    sys.stdout.write(report.to_json() + "\n" if args.json else _human(report))
    return EXIT_OK if report.status == "optimal" else EXIT_INFEASIBLE


def _cmd_export(args) -> int:
    net, config, _ = _load_problem(args)
    model = encode_problem(net, config)
    header = f"problem={config.problem} source={args.file.name}"
    _write(args.output, export_lp(model, comment=header))
    return EXIT_OK


def _cmd_gen(args) -> int:
    params = GeneratorParams(args.n, args.depth, args.branching, args.px, args.ps, args.seed)
    _write(args.output, serialize_norm_net(generate_random_net(params)))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    net, config, options = _load_problem(args)
    if args.budget_range is not None:
        rows = sweep(net, config, budgets=budget_range(*args.budget_range), options=options)
    else:
        rows = sweep(net, config, weights=weight_grid(args.weight_grid, config.problem), options=options)
    _write(args.output, rows_to_csv(rows))
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "solve": _cmd_solve,
    "export-lp": _cmd_export,
    "gen": _cmd_gen,
    "sweep": _cmd_sweep,
}


def run_cli(argv: list[str] | None = None) -> int:
    """Run the CLI and return its exit code (diagnostics go to stderr)."""
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (NormNetError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:  # grid construction
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_cli())
