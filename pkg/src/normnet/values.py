"""Value utilities and value support.

Values are ranked most preferred first. Each value's utility is one more
than the utilities of all less preferred values combined, so a single
better value always outweighs any bundle of worse ones.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import DuplicateValueId, EmptyOrder, MissingEntry, NormWithoutValues, UnknownValueId
from .net import NormNet


def value_utilities(order: Sequence[str]) -> dict[str, int]:
    """Map each value of ``order`` (most preferred first) to its utility."""
    if not order:
        raise EmptyOrder("value order is empty")
    if len(set(order)) != len(order):
        dup = sorted({v for v in order if order.count(v) > 1})
        raise DuplicateValueId(f"duplicate value id(s) in order: {', '.join(dup)}")
    utility: dict[str, int] = {}
    tail = 0
    for v in reversed(order):
        utility[v] = 1 + tail
        tail += utility[v]
    return {v: utility[v] for v in order}


def norm_value_support(net: NormNet, utility: Mapping[str, int]) -> dict[str, int]:
    support = {}
    for n in net.ids:
        vals = net.norms[n].values
        if not vals:
            raise NormWithoutValues(f"norm {n!r} supports no value", ids=(n,))
        unknown = sorted(vals - utility.keys())
        if unknown:
            raise UnknownValueId(f"norm {n!r} supports unknown value(s) {', '.join(unknown)}", ids=(n,))
        support[n] = sum(utility[v] for v in vals)
    return support


def system_value_support(support: Mapping[str, int], omega: Iterable[str]) -> int:
    total = 0
    for n in omega:
        if n not in support:
            raise MissingEntry(f"no value support for {n!r}", ids=(n,))
        total += support[n]
    return total


def max_value_support(support: Mapping[str, int]) -> int:
    """Value support of the whole net; the normalisation constant."""
    return sum(support.values())
