"""Random norm nets for hardness experiments.

Generation is fully determined by :class:`GeneratorParams` and uses
SplitMix64 (64-bit state, increment ``0x9E3779B97F4A7C15``) so any
implementation can reproduce a net from its seed. Draw helpers:

* ``below(m)``: ``next() % m``
* ``uniform()``: ``(next() >> 11) * 2**-53``, in ``[0, 1)``
* ``chance(p)``: ``uniform() < p``

Norms are ``n1 .. n<n>`` (index ``i`` is 0-based below). Draw order:

1. For each ``i`` in order: the parent candidates are the earlier norms at
   level ``< depth - 1`` with fewer than ``branching`` children (roots are
   level 0). Draw ``k = below(len(candidates) + 1)``; ``k ==
   len(candidates)`` makes norm ``i`` a root, otherwise its parent is
   ``candidates[k]``. Then the cost ``below(10)`` and the value set
   ``[{v1}, {v2}, {v1, v2}][below(3)]``. Modalities cycle through
   obligation, permission, prohibition by index.
2. For each pair ``i < j`` (lexicographic) not joined by a generalisation
   pair: exclusivity if ``chance(p_x)``.
3. For each pair ``i < j`` still unrelated: substitutability if
   ``chance(p_s)``.

A draw is consumed for every eligible pair even when the probability is
0 or 1. The value order is ``["v1", "v2"]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidParams
from .net import Modality, Norm, NormNet, RelationSet, build_norm_net

_MASK = (1 << 64) - 1
_MODALITIES = (Modality.OBLIGATION, Modality.PERMISSION, Modality.PROHIBITION)
_VALUE_SETS = (("v1",), ("v2",), ("v1", "v2"))


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK:
            raise InvalidParams(f"seed must fit in 64 unsigned bits, got {seed}")
        self.state = seed

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        return self.next() % m

    def uniform(self) -> float:
        return (self.next() >> 11) * 2.0**-53

    def chance(self, p: float) -> bool:
        return self.uniform() < p


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    depth: int = 1
    branching: int = 2
    p_x: float = 0.0
    p_s: float = 0.0
    seed: int = 0

    def validate(self):
        if self.n < 0:
            raise InvalidParams(f"n must be >= 0, got {self.n}")
        if self.depth < 1:
            raise InvalidParams(f"depth must be >= 1, got {self.depth}")
        if self.branching < 0:
            raise InvalidParams(f"branching must be >= 0, got {self.branching}")
        for name in ("p_x", "p_s"):
            p = getattr(self, name)
            if not 0 <= p <= 1:
                raise InvalidParams(f"{name} must lie in [0, 1], got {p}")
        if not 0 <= self.seed <= _MASK:
            raise InvalidParams(f"seed must fit in 64 unsigned bits, got {self.seed}")


def generate_random_net(params: GeneratorParams) -> NormNet:
    params.validate()
    rng = SplitMix64(params.seed)
    ids = [f"n{i + 1}" for i in range(params.n)]
    level: list[int] = []
    nkids = [0] * params.n
    gen: set[tuple[str, str]] = set()
    norms = []
    for i, nid in enumerate(ids):
        candidates = [
            j for j in range(i) if level[j] < params.depth - 1 and nkids[j] < params.branching
        ]
        k = rng.below(len(candidates) + 1)
        if k < len(candidates):
            p = candidates[k]
            gen.add((ids[p], nid))
            nkids[p] += 1
            level.append(level[p] + 1)
        else:
            level.append(0)
        cost = rng.below(10)
        values = _VALUE_SETS[rng.below(3)]
        norms.append(Norm(nid, _MODALITIES[i % 3], "agents", f"action_{i + 1}", cost, values))

    related = {frozenset(p) for p in gen}
    excl = []
    for a, b in itertools.combinations(ids, 2):
        if frozenset((a, b)) not in related and rng.chance(params.p_x):
            excl.append((a, b))
    related |= {frozenset(p) for p in excl}
    subs = []
    for a, b in itertools.combinations(ids, 2):
        if frozenset((a, b)) not in related and rng.chance(params.p_s):
            subs.append((a, b))
    return build_norm_net(norms, RelationSet.of(gen, excl, subs), value_order=("v1", "v2"))
