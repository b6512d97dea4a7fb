"""0/1 linear programs for the three norm-selection problems.

:func:`encode_problem` turns a norm net and a :class:`ProblemConfig` into an
:class:`IlpModel`: one binary ``x_<id>`` per norm, plus a binary ``y`` that
flags a non-empty selection whenever the objective carries a cost term.

Constraint families and their names:

==================  ========================================================
``g2_<p>_<c>``      a norm and a direct child are not both selected
``g3_<p>``          not every child of ``p`` (when it has two or more)
``g4_<n>_<a>``      a norm and a non-parent ancestor are not both selected
``x_<a>_<b>``       exclusive norms are not both selected
``s_<a>_<b>``       substitution-connected norms are not both selected
``budget``          total cost within the budget
``ind_lo/ind_hi``   ``y <= sum x <= M*y`` with ``M = |N| + 1``
``pin_<n>``         in-force norm ``n`` is selected (``preserve`` mode)
==================  ========================================================

Pairwise constraints that coincide after canonicalisation are emitted once,
under the first family in the order above.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    ConfigInvariantViolation,
    MissingEntry,
    MissingRepresentation,
    ZeroRMax,
    ZeroVMax,
)
from .net import NormNet, without_norms
from .representation import (
    RepresentationAssignment,
    max_representation,
    representation_for,
    validate_representation,
)
from .values import max_value_support, norm_value_support, value_utilities

PROBLEMS = ("mnsp", "mnsplb", "vmnsplb")
IN_FORCE_MODES = ("ignore", "preserve", "flexible")

Term = tuple[str, Fraction]


@dataclass(frozen=True)
class ProblemConfig:
    """What to optimise and under which parameters.

    ``weights`` is ``(w_r, w_c)`` or ``(w_r, w_c, w_v)``; a missing value
    weight is 0. Numbers are converted to :class:`~fractions.Fraction`
    (strings such as ``"0.5"`` are read exactly).
    """

    problem: str = "mnsp"
    representation: str | RepresentationAssignment = "inclusion"
    budget: Fraction | None = None
    weights: tuple[Fraction, Fraction, Fraction] = (Fraction(1, 2), Fraction(1, 2), Fraction(0))
    in_force_mode: str = "flexible"

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) == 2:
            weights += (Fraction(0),)
        if len(weights) != 3:
            raise ConfigInvariantViolation(f"expected 2 or 3 weights, got {len(weights)}")
        object.__setattr__(self, "weights", weights)
        if self.budget is not None:
            object.__setattr__(self, "budget", Fraction(self.budget))

    @property
    def scalarised(self) -> bool:
        return self.problem != "mnsp"

    def validate(self) -> None:
        if self.problem not in PROBLEMS:
            raise ConfigInvariantViolation(f"unknown problem {self.problem!r}")
        if self.in_force_mode not in IN_FORCE_MODES:
            raise ConfigInvariantViolation(f"unknown in-force mode {self.in_force_mode!r}")
        if self.problem == "mnsp":
            return
        if self.budget is None or self.budget <= 0:
            raise ConfigInvariantViolation(f"{self.problem} needs a positive budget, got {self.budget}")
        w_r, w_c, w_v = self.weights
        if any(not 0 <= w <= 1 for w in self.weights):
            raise ConfigInvariantViolation(f"weights must lie in [0, 1], got {self._fmt_weights()}")
        if self.problem == "mnsplb" and (w_v != 0 or w_r + w_c != 1):
            raise ConfigInvariantViolation(
                f"mnsplb needs w_r + w_c = 1 and w_v = 0, got {self._fmt_weights()}"
            )
        if self.problem == "vmnsplb" and w_r + w_c + w_v != 1:
            raise ConfigInvariantViolation(
                f"vmnsplb needs w_r + w_c + w_v = 1, got {self._fmt_weights()}"
            )

    def _fmt_weights(self):
        return ", ".join(str(w) for w in self.weights)


@dataclass(frozen=True)
class PreparedProblem:
    """Net and per-norm scores after applying the in-force mode.

    Shared by the encoder and the brute-force oracle; neither constraint
    generation nor objective assembly happens here.
    """

    net: NormNet
    config: ProblemConfig
    power: RepresentationAssignment
    r_max: Fraction | None
    support: Mapping[str, int] | None
    v_max: int | None
    pinned: frozenset[str]


def prepare(net: NormNet, config: ProblemConfig) -> PreparedProblem:
    config.validate()
    if config.in_force_mode == "ignore" and net.in_force:
        net = without_norms(net, net.in_force)
    power = representation_for(net, config.representation)
    try:
        validate_representation(net, power)
    except MissingEntry as e:
        raise MissingRepresentation(str(e), ids=e.ids) from e
    r_max = support = v_max = None
    if config.scalarised:
        r_max = max_representation(net, power)
        if r_max == 0:
            raise ZeroRMax("maximum representation power is 0 (empty net)")
    if config.problem == "vmnsplb" and config.weights[2] > 0:
        support = norm_value_support(net, value_utilities(net.value_order))
        v_max = max_value_support(support)
        if v_max == 0:
            raise ZeroVMax("maximum value support is 0")
    pinned = net.in_force if config.in_force_mode == "preserve" else frozenset()
    return PreparedProblem(net, config, power, r_max, support, v_max, pinned)


def norm_score(prep: PreparedProblem, norm_id: str) -> Fraction:
    """Objective contribution of selecting one norm (``y`` excluded)."""
    r = prep.power[norm_id]
    cfg = prep.config
    if not cfg.scalarised:
        return r
    w_r, w_c, w_v = cfg.weights
    score = w_r / prep.r_max * r - w_c / cfg.budget * prep.net.norms[norm_id].cost
    if prep.support is not None:
        score += Fraction(w_v, prep.v_max) * prep.support[norm_id]
    return score


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[Term, ...]
    sense: str  # "<=" or "="
    rhs: Fraction

    def activity(self, assignment: Mapping[str, int]) -> Fraction:
        return sum((c * assignment[v] for v, c in self.terms), Fraction(0))

    def satisfied(self, assignment: Mapping[str, int]) -> bool:
        lhs = self.activity(assignment)
        return lhs <= self.rhs if self.sense == "<=" else lhs == self.rhs

    def key(self):
        return (tuple(sorted(self.terms)), self.sense, self.rhs)


@dataclass(frozen=True)
class IlpModel:
    variables: tuple[str, ...]
    objective: tuple[Term, ...]
    constraints: tuple[Constraint, ...]
    objective_constant: Fraction = Fraction(0)
    norm_of: Mapping[str, str] = field(default_factory=dict)
    indicator: str | None = None
    big_m: int | None = None
    kinds: Mapping[str, str] | None = None  # defaults to all binary
    sense: str = "maximize"

    def __post_init__(self):
        object.__setattr__(self, "norm_of", MappingProxyType(dict(self.norm_of)))
        kinds = self.kinds or dict.fromkeys(self.variables, "binary")
        object.__setattr__(self, "kinds", MappingProxyType(dict(kinds)))

    def assignment_for(self, omega: Iterable[str]) -> dict[str, int]:
        """The 0/1 point selecting ``omega`` (with ``y`` set accordingly)."""
        omega = frozenset(omega)
        point = {v: int(n in omega) for v, n in self.norm_of.items()}
        if self.indicator is not None:
            point[self.indicator] = int(bool(omega))
        return point

    def is_feasible(self, assignment: Mapping[str, int]) -> bool:
        return all(c.satisfied(assignment) for c in self.constraints)

    def objective_value(self, assignment: Mapping[str, int]) -> Fraction:
        return self.objective_constant + sum(
            (c * assignment[v] for v, c in self.objective), Fraction(0)
        )

    def selected(self, assignment: Mapping[str, int]) -> frozenset[str]:
        return frozenset(n for v, n in self.norm_of.items() if assignment[v])


def var(norm_id: str) -> str:
    return f"x_{norm_id}"


def _pair(name, a, b) -> Constraint:
    return Constraint(name, ((var(a), Fraction(1)), (var(b), Fraction(1))), "<=", Fraction(1))


def soundness_constraints(net: NormNet) -> list[Constraint]:
    """Generalisation, exclusivity and substitutability constraints, deduplicated."""
    out: list[Constraint] = []
    for p in net.ids:
        for c in sorted(net.children[p]):
            out.append(_pair(f"g2_{p}_{c}", p, c))
    for p in net.ids:
        kids = sorted(net.children[p])
        if len(kids) >= 2:
            out.append(
                Constraint(
                    f"g3_{p}",
                    tuple((var(c), Fraction(1)) for c in kids),
                    "<=",
                    Fraction(len(kids) - 1),
                )
            )
    for n in net.ids:
        for a in sorted(net.ancestor_sets[n]):
            out.append(_pair(f"g4_{n}_{a}", n, a))
    for a, b in sorted(net.relations.exclusivity):
        out.append(_pair(f"x_{a}_{b}", a, b))
    for a, b in sorted(net.substitution):
        out.append(_pair(f"s_{a}_{b}", a, b))
    return dedupe(out)


def dedupe(constraints: Iterable[Constraint]) -> list[Constraint]:
    seen = set()
    kept = []
    for c in constraints:
        k = c.key()
        if k not in seen:
            seen.add(k)
            kept.append(c)
    return kept


def encode_problem(net: NormNet, config: ProblemConfig) -> IlpModel:
    """Encode a norm-selection problem as a 0/1 linear program (maximise)."""
    prep = prepare(net, config)
    net = prep.net
    ids = net.ids
    xs = [var(n) for n in ids]
    constraints = soundness_constraints(net)
    objective = [(var(n), norm_score(prep, n)) for n in ids]
    indicator = big_m = None
    if config.scalarised:
        constraints.append(
            Constraint("budget", tuple((var(n), net.norms[n].cost) for n in ids), "<=", config.budget)
        )
        indicator, big_m = "y", len(ids) + 1
        ones = tuple((x, Fraction(1)) for x in xs)
        constraints.append(Constraint("ind_lo", ((indicator, Fraction(1)),) + tuple((x, Fraction(-1)) for x in xs), "<=", Fraction(0)))
        constraints.append(Constraint("ind_hi", ones + ((indicator, Fraction(-big_m)),), "<=", Fraction(0)))
        objective.append((indicator, config.weights[1]))
    for n in sorted(prep.pinned):
        constraints.append(Constraint(f"pin_{n}", ((var(n), Fraction(1)),), "=", Fraction(1)))
    variables = tuple(xs) + ((indicator,) if indicator else ())
    return IlpModel(
        variables=variables,
        objective=tuple(objective),
        constraints=tuple(sorted(dedupe(constraints), key=lambda c: c.name)),
        norm_of={var(n): n for n in ids},
        indicator=indicator,
        big_m=big_m,
    )


# -- LP text ---------------------------------------------------------------

def format_decimal(q: Fraction, digits: int = 12) -> str:
    """Render ``q`` with ``digits`` significant digits (integers exactly)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return f"{d:.{digits}g}"


def _linear(terms: Iterable[Term]) -> str:
    parts = []
    for i, (v, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = v if mag == 1 else f"{format_decimal(mag)} {v}"
        if i == 0:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def export_lp(model: IlpModel, comment: str | None = None) -> str:
    """Serialise ``model`` in a small line-oriented LP dialect."""
    lines = []
    if comment:
        lines.extend(f"\\ {line}" for line in comment.splitlines())
    if model.big_m is not None:
        lines.append(f"\\ big-M = {model.big_m}")
    lines.append("MAXIMIZE")
    obj = _linear(model.objective)
    if model.objective_constant:
        c = model.objective_constant
        const = f"{format_decimal(abs(c))} one"
        obj = f"{obj} {'-' if c < 0 else '+'} {const}" if obj else ("- " if c < 0 else "") + const
    lines.append(f" obj: {obj}" if obj else " obj:")
    if model.constraints:
        lines.append("SUBJECT TO")
        for c in model.constraints:
            lhs = _linear(c.terms) or "0"
            lines.append(f" {c.name}: {lhs} {c.sense} {format_decimal(c.rhs)}")
    lines.append("BINARY")
    lines.append(" " + " ".join(model.variables))
    lines.append("END")
    return "\n".join(lines) + "\n"


def _parse_linear(text: str) -> tuple[list[Term], Fraction]:
    terms, const = [], Fraction(0)
    # the writer separates signs, coefficients and names by single spaces
    sign, coef = 1, None
    for tok in text.split():
        if tok in ("+", "-"):
            sign = -1 if tok == "-" else 1
        elif _is_number(tok):
            coef = Fraction(tok)
        else:
            value = sign * (coef if coef is not None else Fraction(1))
            if tok == "one":
                const += value
            else:
                terms.append((tok, value))
            sign, coef = 1, None
    return terms, const


def _is_number(tok: str) -> bool:
    try:
        Fraction(tok)
    except ValueError:
        return False
    return True


def parse_lp(text: str) -> IlpModel:
    """Read back the dialect written by :func:`export_lp`.

    Coefficients come back as the decimals that were written, so the
    result equals the original model up to 12-digit rounding.
    """
    section = None
    objective: list[Term] = []
    constant = Fraction(0)
    constraints: list[Constraint] = []
    variables: list[str] = []
    big_m = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            m = re.match(r"\\\s*big-M\s*=\s*(\d+)", line)
            if m:
                big_m = int(m.group(1))
            continue
        upper = line.upper()
        if upper in ("MAXIMIZE", "SUBJECT TO", "BINARY", "END"):
            section = upper
            continue
        if section == "MAXIMIZE":
            _, _, body = line.partition(":")
            objective, constant = _parse_linear(body)
        elif section == "SUBJECT TO":
            name, _, body = line.partition(":")
            m = re.match(r"(.*?)(<=|=)\s*(\S+)$", body.strip())
            if not m:
                raise ValueError(f"cannot parse constraint line {raw!r}")
            terms, _ = _parse_linear(m.group(1))
            constraints.append(Constraint(name.strip(), tuple(terms), m.group(2), Fraction(m.group(3))))
        elif section == "BINARY":
            variables.extend(line.split())
    norm_of = {v: v[2:] for v in variables if v.startswith("x_")}
    indicator = "y" if "y" in variables else None
    return IlpModel(
        variables=tuple(variables),
        objective=tuple(objective),
        constraints=tuple(constraints),
        objective_constant=constant,
        norm_of=norm_of,
        indicator=indicator,
        big_m=big_m,
    )
