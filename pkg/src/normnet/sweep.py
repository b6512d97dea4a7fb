"""Solve one net over a grid of budgets or weights and tabulate the results.

CSV columns, in order:

``budget, w_r, w_c, w_v``
    the grid point (decimal, 12 significant digits)
``status``
    solver status, or ``error`` when the point could not be solved
``objective``
    decimal rendering of the optimal value (empty unless optimal)
``objective_exact``
    the same value as a rational ``p/q``
``optima``
    canonical optima, systems separated by ``;``, ids within a system by
    a space, e.g. ``n1 n4;n1 n5``
``truncated, nodes``
    solver statistics
``error``
    message for ``status == error``
"""

from __future__ import annotations

import csv
import dataclasses
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NormNetError
from .ilp import ProblemConfig, format_decimal
from .net import NormNet
from .solve import SolveOptions, solve

COLUMNS = (
    "budget", "w_r", "w_c", "w_v", "status", "objective", "objective_exact",
    "optima", "truncated", "nodes", "error",
)


def budget_range(lo, hi, step) -> list[Fraction]:
    """``lo, lo + step, ...`` up to and including ``hi`` (exact)."""
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        raise ValueError("empty budget range")
    count = int((hi - lo) / step)
    return [lo + k * step for k in range(count + 1)]


def weight_grid(step, problem: str) -> list[tuple[Fraction, Fraction, Fraction]]:
    """All weight vectors on a ``step`` lattice summing to 1.

    ``mnsplb`` varies ``w_r`` (``w_c = 1 - w_r``, ``w_v = 0``);
    ``vmnsplb`` varies ``w_r`` then ``w_c`` with ``w_v`` taking the rest.
    """
    step = Fraction(step)
    if step <= 0 or step > 1:
        raise ValueError("step must lie in (0, 1]")
    ticks = [k * step for k in range(int(1 / step) + 1)]
    if problem == "vmnsplb":
        return [(a, b, 1 - a - b) for a in ticks for b in ticks if a + b <= 1]
    return [(a, 1 - a, Fraction(0)) for a in ticks]


@dataclass(frozen=True)
class SweepRow:
    budget: Fraction | None
    weights: tuple[Fraction, Fraction, Fraction]
    status: str
    objective: Fraction | None = None
    optima: tuple[frozenset[str], ...] = ()
    truncated: bool = False
    nodes: int = 0
    error: str = ""

    def as_csv_row(self) -> list[str]:
        fmt = lambda q: "" if q is None else format_decimal(q)  # noqa: E731
        return [
            fmt(self.budget),
            *(format_decimal(w) for w in self.weights),
            self.status,
            fmt(self.objective),
            "" if self.objective is None else str(self.objective),
            ";".join(" ".join(sorted(s)) for s in self.optima),
            str(self.truncated).lower(),
            str(self.nodes),
            self.error,
        ]


def sweep(
    net: NormNet,
    base: ProblemConfig,
    budgets: Iterable | None = None,
    weights: Iterable[Sequence] | None = None,
    options: SolveOptions = SolveOptions(),
) -> list[SweepRow]:
    """Solve ``base`` once per budget (or per weight vector), in grid order.

    Exactly one of ``budgets`` and ``weights`` is given. A point that
    raises is recorded with ``status="error"``; the sweep continues.
    """
    if (budgets is None) == (weights is None):
        raise ValueError("give exactly one of budgets or weights")
    if budgets is not None:
        configs = [dataclasses.replace(base, budget=Fraction(b)) for b in budgets]
    else:
        configs = [dataclasses.replace(base, weights=tuple(w)) for w in weights]
    if not configs:
        raise ValueError("empty grid")
    rows = []
    for cfg in configs:
        try:
            r = solve(net, cfg, options)
        except NormNetError as e:
            rows.append(SweepRow(cfg.budget, cfg.weights, "error", error=str(e)))
            continue
        rows.append(SweepRow(cfg.budget, cfg.weights, r.status, r.objective, r.optima, r.truncated, r.nodes))
    return rows


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        w.writerow(row.as_csv_row())
    return buf.getvalue()
