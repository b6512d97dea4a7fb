"""Representation power of norms and norm systems.

Two built-in power functions are provided:

``inclusion_power``
    1 for a norm that generalises nothing, otherwise 1 plus the summed
    inclusion power of its children (so a root scores 1 + its number of
    descendants).
``generalisation_power``
    roots score 1 and each group of siblings splits its parent's score
    evenly, level by level down the forest.

Any other assignment is accepted as ``kind="custom"`` provided every power
is positive and no norm outscores one of its ancestors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import AncestorMonotonicityViolation, MissingEntry, NonPositivePower, ValidationError
from .net import NormNet

KINDS = ("inclusion", "generalisation", "custom")


@dataclass(frozen=True)
class RepresentationAssignment:
    kind: str
    power: Mapping[str, Fraction]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown representation kind {self.kind!r}")
        object.__setattr__(
            self, "power", MappingProxyType({k: Fraction(v) for k, v in self.power.items()})
        )

    def __getitem__(self, norm_id):
        try:
            return self.power[norm_id]
        except KeyError:
            raise MissingEntry(f"no representation power for {norm_id!r}", ids=(norm_id,)) from None

    def scaled(self, factor) -> RepresentationAssignment:
        return RepresentationAssignment("custom", {k: v * factor for k, v in self.power.items()})


def _top_down(net: NormNet) -> list[str]:
    # parents before children; deterministic
    order, frontier = [], sorted(net.roots)
    while frontier:
        order.extend(frontier)
        frontier = sorted(c for p in frontier for c in net.children[p])
    return order


def inclusion_power(net: NormNet) -> RepresentationAssignment:
    power: dict[str, Fraction] = {}
    for n in reversed(_top_down(net)):
        power[n] = Fraction(1 + sum(power[c] for c in net.children[n]))
    return RepresentationAssignment("inclusion", power)


def generalisation_power(net: NormNet) -> RepresentationAssignment:
    g: dict[str, Fraction] = {}
    pending = set(net.norms)
    for n in net.roots:
        g[n] = Fraction(1)
    pending -= net.roots
    while pending:
        # sibling groups: pending norms whose parent already has a value
        groups: dict[str, list[str]] = {}
        for n in sorted(pending):
            p = net.parent[n]
            if p not in pending:
                groups.setdefault(p, []).append(n)
        for p, siblings in groups.items():
            for n in siblings:
                g[n] = g[p] / len(siblings)
            pending.difference_update(siblings)
    return RepresentationAssignment("generalisation", g)


def representation_for(net: NormNet, choice) -> RepresentationAssignment:
    """Resolve ``"inclusion"``, ``"generalisation"`` or an assignment."""
    if isinstance(choice, RepresentationAssignment):
        return choice
    if choice == "inclusion":
        return inclusion_power(net)
    if choice == "generalisation":
        return generalisation_power(net)
    raise ValidationError(f"unknown representation {choice!r}")


def validate_representation(net: NormNet, assignment: RepresentationAssignment) -> None:
    """Raise unless every norm has a positive power not above any ancestor's."""
    for n in net.ids:
        if n not in assignment.power:
            raise MissingEntry(f"no representation power for {n!r}", ids=(n,))
        if assignment.power[n] <= 0:
            raise NonPositivePower(f"power of {n!r} is {assignment.power[n]}", ids=(n,))
    for n in net.ids:
        for a in sorted(net.ancestor_sets[n]):
            if assignment.power[n] > assignment.power[a]:
                raise AncestorMonotonicityViolation(n, a)


def system_power(assignment: RepresentationAssignment, omega: Iterable[str]) -> Fraction:
    return sum((assignment[n] for n in omega), Fraction(0))


def max_representation(net: NormNet, assignment: RepresentationAssignment) -> Fraction:
    """Sum of the powers of the norms nothing generalises."""
    return system_power(assignment, net.roots)
