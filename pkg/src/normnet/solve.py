"""Exact solvers for :class:`~normnet.ilp.IlpModel` instances.

:func:`solve_branch_and_bound` is a depth-first branch-and-bound over the
binary variables. Each row is scaled to integers once, so the search itself
only does integer arithmetic; the objective is mapped back to an exact
:class:`~fractions.Fraction` at the end.

:func:`brute_force_oracle` works from the norm net instead of the model: it
enumerates norm systems, keeps those passing
:func:`~normnet.net.ilp_feasible` and the budget, and scores them with the
problem's objective formula. The two share no constraint or objective code,
which is what makes comparing them meaningful.
"""

from __future__ import annotations

import bisect
import dataclasses
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import NonBinaryVariable, TooLarge
from .ilp import IlpModel, ProblemConfig, format_decimal, prepare
from .net import NormNet, ilp_feasible
from .representation import system_power
from .values import system_value_support

ORACLE_MAX_NORMS = 25
SPLIT_DEPTH = 3


@dataclass(frozen=True)
class SolveOptions:
    enumerate_all_optima: bool = True
    max_optima: int = 64
    node_limit: int | None = None
    workers: int = 1  # >1 solves independent subtrees in separate processes

    def __post_init__(self):
        if self.max_optima < 1:
            raise ValueError("max_optima must be >= 1")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def canonical_key(system: Iterable[str]) -> tuple[int, tuple[str, ...]]:
    ids = tuple(sorted(system))
    return (len(ids), ids)


def canonical_order(systems: Iterable[Iterable[str]]) -> list[frozenset[str]]:
    return [frozenset(k[1]) for k in sorted({canonical_key(s) for s in systems})]


@dataclass(frozen=True)
class SolveReport:
    status: str  # "optimal" | "infeasible" | "node_limit_reached"
    objective: Fraction | None
    optima: tuple[frozenset[str], ...]
    truncated: bool = False
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, include_time: bool = True) -> dict:
        d = {
            "status": self.status,
            "objective": None if self.objective is None else str(self.objective),
            "objective_decimal": None if self.objective is None else format_decimal(self.objective),
            "optima": [sorted(s) for s in self.optima],
            "truncated": self.truncated,
            "stats": {"nodes": self.nodes},
        }
        if include_time:
            d["stats"]["elapsed_seconds"] = round(self.elapsed, 6)
        return d

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> SolveReport:
        return cls(
            status=d["status"],
            objective=None if d["objective"] is None else Fraction(d["objective"]),
            optima=tuple(frozenset(s) for s in d["optima"]),
            truncated=d["truncated"],
            nodes=d["stats"]["nodes"],
            elapsed=d["stats"].get("elapsed_seconds", 0.0),
        )


# -- branch and bound ---------------------------------------------------------

@dataclass
class _Compiled:
    names: list[str]
    norm_ids: list[str | None]
    obj: list[int]  # objective scaled by obj_scale
    obj_scale: int
    obj_constant: Fraction
    rows: list[tuple[list[int], list[int], int]]  # sum(coef*x) <= rhs, integers
    var_rows: list[list[int]]
    order: list[int]  # branching order


def _lcm_of_denominators(values) -> int:
    m = 1
    for v in values:
        m = math.lcm(m, Fraction(v).denominator)
    return m


def _compile(model: IlpModel) -> _Compiled:
    bad = sorted(v for v in model.variables if model.kinds.get(v) != "binary")
    if bad:
        raise NonBinaryVariable(f"non-binary variable(s): {', '.join(bad)}")
    index = {v: i for i, v in enumerate(model.variables)}
    n = len(index)

    obj_frac = [Fraction(0)] * n
    for v, c in model.objective:
        obj_frac[index[v]] += c
    scale = _lcm_of_denominators(obj_frac)
    obj = [int(c * scale) for c in obj_frac]

    rows = []
    for con in model.constraints:
        merged: dict[int, Fraction] = {}
        for v, c in con.terms:
            merged[index[v]] = merged.get(index[v], Fraction(0)) + c
        senses = [1] if con.sense == "<=" else [1, -1]
        for s in senses:
            k = _lcm_of_denominators([*merged.values(), con.rhs])
            idx = sorted(merged)
            rows.append((idx, [int(s * merged[i] * k) for i in idx], int(s * con.rhs * k)))
    var_rows: list[list[int]] = [[] for _ in range(n)]
    for r, (idx, _, _) in enumerate(rows):
        for i in idx:
            var_rows[i].append(r)
    order = sorted(range(n), key=lambda i: (-abs(obj[i]), model.variables[i]))
    norm_ids = [model.norm_of.get(v) for v in model.variables]
    return _Compiled(list(model.variables), norm_ids, obj, scale, model.objective_constant, rows, var_rows, order)


def _propagate(cm: _Compiled, assign: list[int], queue: list[int]) -> bool:
    """Fix variables forced by the rows in ``queue``; False on conflict."""
    pending = set(queue)
    stack = sorted(pending, reverse=True)
    while stack:
        r = stack.pop()
        pending.discard(r)
        idx, coef, rhs = cm.rows[r]
        min_act = 0
        for i, a in zip(idx, coef):
            val = assign[i]
            if val < 0:
                if a < 0:
                    min_act += a
            else:
                min_act += a * val
        if min_act > rhs:
            return False
        for i, a in zip(idx, coef):
            if assign[i] >= 0:
                continue
            if a > 0 and min_act + a > rhs:
                assign[i] = 0
            elif a < 0 and min_act - a > rhs:
                assign[i] = 1
            else:
                continue
            for r2 in cm.var_rows[i]:
                if r2 != r and r2 not in pending:
                    pending.add(r2)
                    stack.append(r2)
    return True


class _NodeLimit(Exception):
    pass


class _Search:
    def __init__(self, cm: _Compiled, options: SolveOptions):
        self.cm = cm
        self.opts = options
        self.best: int | None = None
        self.optima: list[tuple[int, tuple[str, ...]]] = []
        self.truncated = False
        self.nodes = 0
        # single-optimum mode still keeps the canonically smallest optimum,
        # so the answer cannot depend on exploration order
        self.cap = options.max_optima if options.enumerate_all_optima else 1

    def run(self, assign: list[int]) -> None:
        try:
            self._dfs(assign)
        except _NodeLimit:
            self.hit_limit = True
        else:
            self.hit_limit = False

    def _record(self, value: int, assign: list[int]) -> None:
        cm = self.cm
        key = canonical_key(cm.norm_ids[i] for i, v in enumerate(assign) if v == 1 and cm.norm_ids[i] is not None)
        if self.best is None or value > self.best:
            self.best, self.optima, self.truncated = value, [key], False
        elif value == self.best:
            pos = bisect.bisect_left(self.optima, key)
            if pos < len(self.optima) and self.optima[pos] == key:
                return
            self.optima.insert(pos, key)
            if len(self.optima) > self.cap:
                self.optima.pop()
                self.truncated = True

    def _dfs(self, assign: list[int]) -> None:
        self.nodes += 1
        if self.opts.node_limit is not None and self.nodes > self.opts.node_limit:
            raise _NodeLimit
        cm = self.cm
        value = bound = 0
        branch = -1
        for i in cm.order:
            v = assign[i]
            if v < 0:
                if branch < 0:
                    branch = i
                if cm.obj[i] > 0:
                    bound += cm.obj[i]
            elif v:
                value += cm.obj[i]
        bound += value
        if self.best is not None and bound < self.best:
            return
        if branch < 0:
            self._record(value, assign)
            return
        for val in (1, 0):
            child = assign.copy()
            child[branch] = val
            if _propagate(cm, child, cm.var_rows[branch]):
                self._dfs(child)


def _solve_subtree(cm: _Compiled, assign: list[int], options: SolveOptions):
    s = _Search(cm, options)
    s.run(assign)
    return s.best, s.optima, s.truncated, s.nodes, s.hit_limit


def _split(cm: _Compiled, assign: list[int], depth: int) -> list[list[int]]:
    """Partial assignments covering the search space, in DFS order."""
    free = [i for i in cm.order if assign[i] < 0]
    if depth == 0 or not free:
        return [assign]
    out = []
    for val in (1, 0):
        child = assign.copy()
        child[free[0]] = val
        if _propagate(cm, child, cm.var_rows[free[0]]):
            out.extend(_split(cm, child, depth - 1))
    return out


def solve_branch_and_bound(model: IlpModel, options: SolveOptions = SolveOptions()) -> SolveReport:
    """Maximise ``model`` exactly over all 0/1 points.

    With ``enumerate_all_optima`` every optimal support set is collected
    (capped at ``max_optima``, smallest canonical ones kept, ``truncated``
    set when some were dropped); otherwise only the canonically smallest
    optimum is reported.

    The search space is always cut into the same subtrees (the first
    ``SPLIT_DEPTH`` branching decisions), each searched on its own. With
    ``workers > 1`` they run in a process pool, so the report, node count
    included, is identical for every worker count. A ``node_limit`` is a
    global count and forces sequential search.
    """
    start = time.perf_counter()
    cm = _compile(model)
    root = [-1] * len(cm.names)
    if not _propagate(cm, root, list(range(len(cm.rows)))):
        return SolveReport("infeasible", None, (), False, 1, time.perf_counter() - start)

    parts = _split(cm, root, SPLIT_DEPTH)
    if options.node_limit is not None:
        results, left = [], options.node_limit
        for part in parts:
            if left < 1:
                results.append((None, [], False, 0, True))
                break
            r = _solve_subtree(cm, part, dataclasses.replace(options, node_limit=left))
            results.append(r)
            left -= r[3]
            if r[4]:
                break
    elif options.workers > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=min(options.workers, len(parts))) as pool:
            results = list(pool.map(_solve_subtree, [cm] * len(parts), parts, [options] * len(parts)))
    else:
        results = [_solve_subtree(cm, part, options) for part in parts]

    nodes = sum(r[3] for r in results)
    hit_limit = any(r[4] for r in results)
    found = [r for r in results if r[0] is not None]
    if not found:
        status = "node_limit_reached" if hit_limit else "infeasible"
        return SolveReport(status, None, (), False, nodes, time.perf_counter() - start)
    best = max(r[0] for r in found)
    cap = options.max_optima if options.enumerate_all_optima else 1
    keys = sorted({k for r in found if r[0] == best for k in r[1]})
    truncated = any(r[2] for r in found if r[0] == best) or len(keys) > cap
    keys = keys[:cap]
    objective = Fraction(best, cm.obj_scale) + cm.obj_constant
    status = "node_limit_reached" if hit_limit else "optimal"
    return SolveReport(
        status,
        objective if status == "optimal" else None,
        tuple(frozenset(k[1]) for k in keys),
        truncated,
        nodes,
        time.perf_counter() - start,
    )


# -- oracle ---------------------------------------------------------------------

def _objective_formula(prep, omega: frozenset[str]) -> Fraction:
    cfg = prep.config
    rho = system_power(prep.power, omega)
    if not cfg.scalarised:
        return rho
    if not omega:
        return Fraction(0)
    w_r, w_c, w_v = cfg.weights
    score = w_r / prep.r_max * rho + w_c * (1 - prep.net.cost(omega) / cfg.budget)
    if prep.support is not None:
        score += w_v / prep.v_max * system_value_support(prep.support, omega)
    return score


def brute_force_oracle(
    net: NormNet, config: ProblemConfig, options: SolveOptions = SolveOptions()
) -> SolveReport:
    """Reference solver: enumerate norm systems, filter, score, keep the best.

    Every constraint (soundness, the children rule, a budget with
    non-negative costs) is closed under taking subsets, so extending only
    feasible systems one norm at a time (in id order) reaches every
    feasible system exactly once without testing their infeasible
    supersets. In-force pins are applied as a final filter.
    """
    start = time.perf_counter()
    prep = prepare(net, config)
    net = prep.net
    if len(net) > ORACLE_MAX_NORMS:
        raise TooLarge(f"oracle is limited to {ORACLE_MAX_NORMS} norms, net has {len(net)}")
    ids = net.ids
    budget = config.budget if config.scalarised else None

    best: Fraction | None = None
    optima: list[frozenset[str]] = []
    examined = 0
    stack: list[tuple[frozenset[str], int]] = [(frozenset(), 0)]
    while stack:
        omega, nxt = stack.pop()
        examined += 1
        if prep.pinned <= omega:
            score = _objective_formula(prep, omega)
            if best is None or score > best:
                best, optima = score, [omega]
            elif score == best:
                optima.append(omega)
        for i in range(len(ids) - 1, nxt - 1, -1):
            cand = omega | {ids[i]}
            if budget is not None and net.cost(cand) > budget:
                continue
            if ilp_feasible(net, cand):
                stack.append((cand, i + 1))

    elapsed = time.perf_counter() - start
    if best is None:
        return SolveReport("infeasible", None, (), False, examined, elapsed)
    ordered = canonical_order(optima)
    cap = options.max_optima if options.enumerate_all_optima else 1
    return SolveReport("optimal", best, tuple(ordered[:cap]), len(ordered) > cap, examined, elapsed)


def solve(net: NormNet, config: ProblemConfig, options: SolveOptions = SolveOptions()) -> SolveReport:
    """Encode and solve with branch-and-bound."""
    from .ilp import encode_problem

    return solve_branch_and_bound(encode_problem(net, config), options)
