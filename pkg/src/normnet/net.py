"""Norms, norm nets and the soundness predicates defined over them.

A norm net is built once through :func:`build_norm_net`, which validates
the three relation sets and precomputes children, ancestors, the
substitution closure and the set of roots. Nets are immutable afterwards;
every function here is pure.

Relation pairs use two conventions:

* generalisation pairs are ordered ``(general, specific)``;
* exclusivity and substitutability pairs are unordered and stored as a
  sorted 2-tuple (see :func:`upair`).
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    DuplicateId,
    GeneralisationCycle,
    IdCollision,
    MultipleParents,
    NegativeCost,
    OverlappingRelationSets,
    SelfRelation,
    UnknownEndpoint,
    UnknownId,
    ValidationError,
)

NormSystem = frozenset  # a set of norm ids; frozenset[str]


class Modality(str, enum.Enum):
    OBLIGATION = "obligation"
    PERMISSION = "permission"
    PROHIBITION = "prohibition"


def upair(a: str, b: str) -> tuple[str, str]:
    """Canonical key for an unordered pair."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Norm:
    """One deontic rule plus the attributes the selection problems use.

    ``cost`` accepts anything :class:`fractions.Fraction` does (ints,
    ``"3/2"``, ``"0.5"``) and is stored exactly.
    """

    id: str
    modality: Modality
    addressee: str
    action: str
    cost: Fraction = Fraction(0)
    values: frozenset[str] = frozenset()

    def __post_init__(self):
        for name in ("id", "addressee", "action"):
            v = getattr(self, name)
            if not isinstance(v, str) or not v:
                raise ValidationError(f"norm {name} must be a non-empty string, got {v!r}")
        try:
            modality = Modality(self.modality)
        except ValueError:
            raise ValidationError(
                f"norm {self.id}: unknown modality {self.modality!r}", ids=(self.id,)
            ) from None
        object.__setattr__(self, "modality", modality)
        object.__setattr__(self, "cost", Fraction(self.cost))
        object.__setattr__(self, "values", frozenset(self.values))


@dataclass(frozen=True)
class RelationSet:
    generalisation: frozenset[tuple[str, str]] = frozenset()
    exclusivity: frozenset[tuple[str, str]] = frozenset()
    substitutability: frozenset[tuple[str, str]] = frozenset()

    @classmethod
    def of(cls, generalisation=(), exclusivity=(), substitutability=()) -> RelationSet:
        """Build from any iterables of pairs, canonicalising unordered ones."""
        return cls(
            frozenset((a, b) for a, b in generalisation),
            frozenset(upair(a, b) for a, b in exclusivity),
            frozenset(upair(a, b) for a, b in substitutability),
        )

    def union(self, other: RelationSet) -> RelationSet:
        return RelationSet(
            self.generalisation | other.generalisation,
            self.exclusivity | other.exclusivity,
            self.substitutability | other.substitutability,
        )

    def __iter__(self):
        yield "generalisation", self.generalisation
        yield "exclusivity", self.exclusivity
        yield "substitutability", self.substitutability


@dataclass(frozen=True, eq=False)
class NormNet:
    """A validated norm net. Construct with :func:`build_norm_net`."""

    norms: Mapping[str, Norm]
    relations: RelationSet
    in_force: frozenset[str]
    value_order: tuple[str, ...]
    # derived
    children: Mapping[str, frozenset[str]] = field(repr=False)
    parent: Mapping[str, str | None] = field(repr=False)
    ancestor_sets: Mapping[str, frozenset[str]] = field(repr=False)
    substitution: frozenset[tuple[str, str]] = field(repr=False)
    roots: frozenset[str] = field(repr=False)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.norms))

    def __len__(self):
        return len(self.norms)

    def __contains__(self, norm_id):
        return norm_id in self.norms

    def __eq__(self, other):
        if not isinstance(other, NormNet):
            return NotImplemented
        return (
            dict(self.norms) == dict(other.norms)
            and self.relations == other.relations
            and self.in_force == other.in_force
            and self.value_order == other.value_order
        )

    __hash__ = None

    def cost(self, omega: Iterable[str]) -> Fraction:
        return sum((self.norms[n].cost for n in omega), Fraction(0))


def build_norm_net(
    norms: Iterable[Norm],
    relations: RelationSet = RelationSet(),
    in_force: Iterable[str] = (),
    value_order: Iterable[str] = (),
) -> NormNet:
    """Validate norms and relations and return a :class:`NormNet`.

    Raises one of the :class:`~normnet.errors.ValidationError` subclasses
    (``DuplicateId``, ``NegativeCost``, ``UnknownEndpoint``,
    ``SelfRelation``, ``OverlappingRelationSets``, ``MultipleParents``,
    ``GeneralisationCycle``) or ``UnknownId`` for an in-force id that is
    not a norm of the net.
    """
    table: dict[str, Norm] = {}
    for norm in norms:
        if norm.id in table:
            raise DuplicateId(f"duplicate norm id {norm.id!r}", ids=(norm.id,))
        if norm.cost < 0:
            raise NegativeCost(f"norm {norm.id!r} has negative cost {norm.cost}", ids=(norm.id,))
        table[norm.id] = norm

    for kind, pairs in relations:
        for a, b in sorted(pairs):
            for end in (a, b):
                if end not in table:
                    raise UnknownEndpoint(
                        f"{kind} pair ({a}, {b}) refers to unknown norm {end!r}", ids=(a, b)
                    )
            if a == b:
                raise SelfRelation(f"{kind} pair relates {a!r} to itself", ids=(a, b))

    seen: dict[tuple[str, str], str] = {}
    for kind, pairs in relations:
        keys = {upair(a, b) for a, b in pairs}
        for key in sorted(keys):
            if key in seen:
                raise OverlappingRelationSets(
                    f"pair {key} appears in both {seen[key]} and {kind}", ids=key
                )
        for key in keys:
            seen[key] = kind

    parent: dict[str, str | None] = dict.fromkeys(table)
    children: dict[str, set[str]] = {n: set() for n in table}
    for general, specific in sorted(relations.generalisation):
        if (specific, general) in relations.generalisation:
            raise GeneralisationCycle(
                f"{general} and {specific} generalise each other", ids=(general, specific)
            )
        if parent[specific] is not None:
            raise MultipleParents(
                f"{specific} is generalised by both {parent[specific]} and {general}",
                ids=(parent[specific], specific, general),
            )
        parent[specific] = general
        children[general].add(specific)

    ancestor_sets: dict[str, frozenset[str]] = {}
    for n in sorted(table):
        chain: list[str] = []
        p = parent[n]
        while p is not None:
            if p == n or p in chain:
                raise GeneralisationCycle(
                    f"generalisation cycle through {n}", ids=tuple([n, *chain])
                )
            chain.append(p)
            p = parent[p]
        ancestor_sets[n] = frozenset(chain)

    in_force = frozenset(in_force)
    for n in sorted(in_force):
        if n not in table:
            raise UnknownId(f"in-force id {n!r} is not a norm of the net")

    return NormNet(
        norms=MappingProxyType(table),
        relations=relations,
        in_force=in_force,
        value_order=tuple(value_order),
        children=MappingProxyType({n: frozenset(c) for n, c in children.items()}),
        parent=MappingProxyType(parent),
        ancestor_sets=MappingProxyType(ancestor_sets),
        substitution=_chain_closure(relations.substitutability),
        roots=frozenset(n for n, p in parent.items() if p is None),
    )


def _chain_closure(pairs: frozenset[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    # Pairs connected by a chain of substitutabilities are exactly the
    # pairs inside one connected component of the substitutability graph.
    root: dict[str, str] = {}

    def find(x):
        while root.setdefault(x, x) != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            root[max(ra, rb)] = min(ra, rb)
    groups: dict[str, list[str]] = {}
    for x in list(root):
        groups.setdefault(find(x), []).append(x)
    return frozenset(
        upair(a, b) for members in groups.values() for a, b in itertools.combinations(members, 2)
    )


def _check_ids(net: NormNet, ids: Iterable[str]) -> frozenset[str]:
    ids = frozenset(ids)
    unknown = sorted(ids - net.norms.keys())
    if unknown:
        raise UnknownId(f"unknown norm id(s): {', '.join(unknown)}")
    return ids


def ancestors(net: NormNet, norm_id: str) -> frozenset[str]:
    """All norms that generalise ``norm_id`` directly or indirectly."""
    if norm_id not in net.norms:
        raise UnknownId(f"unknown norm id {norm_id!r}")
    return net.ancestor_sets[norm_id]


def substitution_closure(net: NormNet) -> frozenset[tuple[str, str]]:
    return net.substitution


@dataclass(frozen=True)
class SoundnessReport:
    conflict_free: bool
    non_redundant: bool
    witnesses: tuple[tuple[tuple[str, str], str], ...] = ()

    @property
    def sound(self) -> bool:
        return self.conflict_free and self.non_redundant


def soundness_report(net: NormNet, omega: Iterable[str]) -> SoundnessReport:
    """Check a norm system for conflicts and redundancy.

    Each witness is ``(pair, relation)`` where relation is one of
    ``"exclusivity"``, ``"generalisation"`` (direct), ``"ancestor"``
    (indirect generalisation) or ``"substitutability"`` (chain-connected).
    Generalisation and ancestor pairs are given as ``(general, specific)``.
    """
    omega = _check_ids(net, omega)
    rel = net.relations
    witnesses = []
    conflict_free = non_redundant = True
    for a, b in itertools.combinations(sorted(omega), 2):
        key = (a, b)
        if key in rel.exclusivity:
            conflict_free = False
            witnesses.append((key, "exclusivity"))
        for g, s in ((a, b), (b, a)):
            if (g, s) in rel.generalisation:
                non_redundant = False
                witnesses.append(((g, s), "generalisation"))
            elif g in net.ancestor_sets[s]:
                non_redundant = False
                witnesses.append(((g, s), "ancestor"))
        if key in net.substitution:
            non_redundant = False
            witnesses.append((key, "substitutability"))
    return SoundnessReport(conflict_free, non_redundant, tuple(witnesses))


def is_sound(net: NormNet, omega: Iterable[str]) -> bool:
    return soundness_report(net, omega).sound


def ilp_feasible(net: NormNet, omega: Iterable[str]) -> bool:
    """Sound, and never all children (of a norm with two or more) selected.

    This is the exact feasible set of the encoded 0/1 program.
    """
    omega = _check_ids(net, omega)
    if not soundness_report(net, omega).sound:
        return False
    return not any(len(c) >= 2 and c <= omega for c in net.children.values())


def exists_sound_nonempty(net: NormNet) -> bool:
    # every singleton is sound since all relations are irreflexive
    return len(net) > 0


def extend_with_in_force(
    net: NormNet, in_force_norms: Iterable[Norm], relations: RelationSet = RelationSet()
) -> NormNet:
    """Merge norms already in force (and their relations) into ``net``.

    The result's ``in_force`` is exactly the ids of ``in_force_norms``.
    """
    in_force_norms = list(in_force_norms)
    clash = sorted(n.id for n in in_force_norms if n.id in net.norms)
    if clash:
        raise IdCollision(f"in-force ids already in the net: {', '.join(clash)}", ids=clash)
    return build_norm_net(
        [*net.norms.values(), *in_force_norms],
        net.relations.union(relations),
        in_force=[n.id for n in in_force_norms],
        value_order=net.value_order,
    )


def without_norms(net: NormNet, drop: Iterable[str]) -> NormNet:
    """Sub-net with ``drop`` removed, together with every relation touching them."""
    drop = _check_ids(net, drop)
    keep = lambda pairs: frozenset(p for p in pairs if not (set(p) & drop))  # noqa: E731
    rel = net.relations
    return build_norm_net(
        [n for i, n in net.norms.items() if i not in drop],
        RelationSet(keep(rel.generalisation), keep(rel.exclusivity), keep(rel.substitutability)),
        in_force=net.in_force - drop,
        value_order=net.value_order,
    )


def with_costs(net: NormNet, costs: Mapping[str, object]) -> NormNet:
    """Copy of ``net`` with some norm costs replaced."""
    _check_ids(net, costs)
    return build_norm_net(
        [
            dataclasses.replace(n, cost=Fraction(costs[i])) if i in costs else n
            for i, n in net.norms.items()
        ],
        net.relations,
        in_force=net.in_force,
        value_order=net.value_order,
    )
