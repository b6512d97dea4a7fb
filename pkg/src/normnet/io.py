"""JSON documents for norm nets and custom representation assignments.

A norm-net document looks like::

    {
      "schema_version": 1,
      "norms": [
        {"id": "n1", "modality": "permission", "addressee": "all_passengers",
         "action": "cross_border", "cost": 0, "values": ["free_movement"]},
        ...
      ],
      "generalisation": [["n3", "n4"], ["n3", "n5"]],   # [general, specific]
      "exclusivity": [["n1", "n2"], ["n1", "n3"]],
      "substitutability": [["n2", "n3"]],
      "value_order": ["free_movement", "safety"],       # most preferred first
      "in_force": []
    }

``cost`` and ``values`` are optional (defaulting to 0 and no values), as
are the relation lists, ``value_order`` and ``in_force``. Costs may be
integers, decimal numbers or strings such as ``"3/2"``; they are read as
exact rationals.

:func:`serialize_norm_net` writes the canonical form: UTF-8, sorted keys,
norms sorted by id, id lists and pair lists sorted (``value_order`` keeps
its order), every optional field present.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import MalformedJson, SchemaViolation, ValidationError
from .net import Norm, NormNet, RelationSet, build_norm_net, upair
from .representation import RepresentationAssignment

SCHEMA_VERSION = 1
_TOP_KEYS = {
    "schema_version", "norms", "generalisation", "exclusivity",
    "substitutability", "value_order", "in_force",
}
_NORM_KEYS = {"id", "modality", "addressee", "action", "cost", "values"}
_RELATIONS = ("generalisation", "exclusivity", "substitutability")


def _rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise SchemaViolation(f"expected a number or rational string, got {value!r}", path)
    try:
        return Fraction(str(value)) if isinstance(value, float) else Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaViolation(f"not a rational number: {value!r}", path) from None


def _rational_out(q: Fraction) -> int | str:
    return q.numerator if q.denominator == 1 else str(q)


def _id_list(value: Any, path: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        raise SchemaViolation("expected a list of non-empty strings", path)
    return value


def _locate(doc: dict, ids: tuple[str, ...]) -> str:
    """Best JSON path for an error naming ``ids``."""
    wanted = set(ids)
    hit = None
    for rel in _RELATIONS:
        for i, pair in enumerate(doc.get(rel, [])):
            if len(wanted) > 1 and set(pair) <= wanted:
                hit = f"$.{rel}[{i}]"
    if hit:
        return hit
    for i, norm in enumerate(doc.get("norms", [])):
        if norm.get("id") in wanted:
            return f"$.norms[{i}]"
    return "$"


def norm_net_from_dict(doc: Any) -> NormNet:
    if not isinstance(doc, dict):
        raise SchemaViolation("document must be a JSON object")
    extra = sorted(doc.keys() - _TOP_KEYS)
    if extra:
        raise SchemaViolation(f"unknown key(s): {', '.join(extra)}")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaViolation(
            f"schema_version must be {SCHEMA_VERSION}, got {doc.get('schema_version')!r}",
            "$.schema_version",
        )
    if not isinstance(doc.get("norms"), list):
        raise SchemaViolation("norms must be a list", "$.norms")

    norms = []
    for i, item in enumerate(doc["norms"]):
        path = f"$.norms[{i}]"
        if not isinstance(item, dict):
            raise SchemaViolation("norm must be an object", path)
        extra = sorted(item.keys() - _NORM_KEYS)
        if extra:
            raise SchemaViolation(f"unknown key(s): {', '.join(extra)}", path)
        for key in ("id", "modality", "addressee", "action"):
            if not isinstance(item.get(key), str) or not item[key]:
                raise SchemaViolation(f"{key} must be a non-empty string", f"{path}.{key}")
        cost = _rational(item.get("cost", 0), f"{path}.cost")
        values = _id_list(item.get("values", []), f"{path}.values")
        try:
            norms.append(Norm(item["id"], item["modality"], item["addressee"], item["action"], cost, values))
        except ValidationError as e:
            raise SchemaViolation(str(e), path, cause=e) from e

    pairs = {}
    for rel in _RELATIONS:
        raw = doc.get(rel, [])
        if not isinstance(raw, list):
            raise SchemaViolation(f"{rel} must be a list", f"$.{rel}")
        for i, pair in enumerate(raw):
            _id_list(pair, f"$.{rel}[{i}]")
            if len(pair) != 2:
                raise SchemaViolation("a pair must have exactly two ids", f"$.{rel}[{i}]")
        pairs[rel] = [tuple(p) for p in raw]
    value_order = _id_list(doc.get("value_order", []), "$.value_order")
    in_force = _id_list(doc.get("in_force", []), "$.in_force")

    try:
        return build_norm_net(norms, RelationSet.of(**pairs), in_force, value_order)
    except (ValidationError, KeyError) as e:
        ids = getattr(e, "ids", ())
        path = _locate(doc, ids) if ids else ("$.in_force" if isinstance(e, KeyError) else "$")
        e.path = path
        e.args = (f"{path}: {e}",)
        raise


def parse_norm_net(text: str | bytes) -> NormNet:
    """Parse and validate a norm-net JSON document.

    Structural problems raise :class:`~normnet.errors.SchemaViolation` or
    :class:`~normnet.errors.MalformedJson`; net validation errors keep
    their own type and gain a ``path`` attribute and message prefix.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJson(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from e
    return norm_net_from_dict(doc)


def norm_net_to_dict(net: NormNet) -> dict:
    rel = net.relations
    return {
        "schema_version": SCHEMA_VERSION,
        "norms": [
            {
                "id": n.id,
                "modality": n.modality.value,
                "addressee": n.addressee,
                "action": n.action,
                "cost": _rational_out(n.cost),
                "values": sorted(n.values),
            }
            for n in (net.norms[i] for i in net.ids)
        ],
        "generalisation": [list(p) for p in sorted(rel.generalisation)],
        "exclusivity": [list(upair(*p)) for p in sorted(rel.exclusivity)],
        "substitutability": [list(upair(*p)) for p in sorted(rel.substitutability)],
        "value_order": list(net.value_order),
        "in_force": sorted(net.in_force),
    }


def serialize_norm_net(net: NormNet) -> str:
    return json.dumps(norm_net_to_dict(net), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_norm_net(path: str | Path) -> NormNet:
    return parse_norm_net(Path(path).read_text(encoding="utf-8"))


def save_norm_net(net: NormNet, path: str | Path) -> None:
    Path(path).write_text(serialize_norm_net(net), encoding="utf-8")


def parse_representation(text: str | bytes) -> RepresentationAssignment:
    """Read a custom assignment: ``{"power": {"n1": 1, "n2": "1/2"}}``.

    A bare ``{"n1": 1, ...}`` mapping is accepted too.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedJson(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})") from e
    if isinstance(doc, dict) and "power" in doc:
        if doc.get("kind", "custom") != "custom":
            raise SchemaViolation("only custom assignments can be loaded", "$.kind")
        doc = doc["power"]
        base = "$.power"
    else:
        base = "$"
    if not isinstance(doc, dict):
        raise SchemaViolation("power must be an object mapping norm ids to numbers", base)
    return RepresentationAssignment(
        "custom", {k: _rational(v, f"{base}.{k}") for k, v in doc.items()}
    )


def load_representation(path: str | Path) -> RepresentationAssignment:
    return parse_representation(Path(path).read_text(encoding="utf-8"))
