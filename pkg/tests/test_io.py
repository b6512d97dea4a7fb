import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from normnet import datasets
from normnet.errors import (
    GeneralisationCycle,
    MalformedJson,
    MultipleParents,
    SchemaViolation,
    UnknownEndpoint,
    UnknownId,
)
from normnet.io import (
    load_norm_net,
    norm_net_to_dict,
    parse_norm_net,
    parse_representation,
    save_norm_net,
    serialize_norm_net,
)

from conftest import generated_nets


def doc(**extra):
    d = {
        "schema_version": 1,
        "norms": [
            {"id": "n3", "modality": "obligation", "addressee": "a", "action": "x"},
            {"id": "n4", "modality": "obligation", "addressee": "b", "action": "x"},
        ],
    }
    d.update(extra)
    return d


def parse(d):
    return parse_norm_net(json.dumps(d))


def test_airport_file():
    net = load_norm_net(datasets.data_path("airport.json"))
    assert len(net) == 5
    assert [net.norms[n].cost for n in net.ids] == [0, 2, 5, 2, 2]
    assert net.relations.generalisation == {("n3", "n4"), ("n3", "n5")}
    assert net.value_order == ("free_movement", "safety")


def test_shipped_files_are_canonical():
    for name in ("airport.json", "airport_extended.json"):
        text = datasets.data_path(name).read_text("utf-8")
        assert serialize_norm_net(parse_norm_net(text)) == text


def test_reversed_pair_cycle():
    with pytest.raises(GeneralisationCycle) as ei:
        parse(doc(generalisation=[["n3", "n4"], ["n4", "n3"]]))
    assert ei.value.path.startswith("$.generalisation[")


def test_default_costs():
    net = parse(doc())
    assert all(net.norms[n].cost == 0 for n in net.ids)
    assert all(net.norms[n].values == frozenset() for n in net.ids)


def test_rational_costs():
    d = doc()
    d["norms"][0]["cost"] = "3/2"
    d["norms"][1]["cost"] = 0.25
    net = parse(d)
    assert net.norms["n3"].cost == F(3, 2)
    assert net.norms["n4"].cost == F(1, 4)
    out = norm_net_to_dict(net)
    assert [n["cost"] for n in out["norms"]] == ["3/2", "1/4"]


def test_unknown_endpoint_path():
    with pytest.raises(UnknownEndpoint) as ei:
        parse(doc(exclusivity=[["n3", "n4"], ["n3", "n9"]]))
    assert ei.value.path == "$.exclusivity[1]"
    assert str(ei.value).startswith("$.exclusivity[1]: ")
    assert "n9" in str(ei.value)


def test_multiple_parents_path():
    d = doc()
    d["norms"].append({"id": "n5", "modality": "obligation", "addressee": "c", "action": "x"})
    with pytest.raises(MultipleParents) as ei:
        parse(dict(d, generalisation=[["n3", "n5"], ["n4", "n5"]]))
    assert ei.value.path.startswith("$.")


def test_unknown_in_force():
    with pytest.raises(UnknownId) as ei:
        parse(doc(in_force=["n7"]))
    assert ei.value.path == "$.in_force"


@pytest.mark.parametrize(
    "d, path",
    [
        ({"schema_version": 2, "norms": []}, "$.schema_version"),
        ({"schema_version": 1}, "$.norms"),
        ({"schema_version": 1, "norms": [], "colour": 1}, "$"),
        (doc(exclusivity=[["n3"]]), "$.exclusivity[0]"),
        (doc(exclusivity="n3"), "$.exclusivity"),
        ({"schema_version": 1, "norms": [{"id": "a", "modality": "maybe", "addressee": "b", "action": "c"}]},
         "$.norms[0]"),
        ({"schema_version": 1, "norms": [{"id": "a", "addressee": "b", "action": "c"}]},
         "$.norms[0].modality"),
        ({"schema_version": 1, "norms": [{"id": "a", "modality": "obligation", "addressee": "b",
                                          "action": "c", "cost": True}]}, "$.norms[0].cost"),
    ],
)
def test_schema_violations(d, path):
    with pytest.raises(SchemaViolation) as ei:
        parse(d)
    assert ei.value.path == path
    assert str(ei.value).startswith(path + ": ")


def test_malformed():
    with pytest.raises(MalformedJson):
        parse_norm_net("{ not json")


def test_canonical_output(airport):
    text = serialize_norm_net(airport)
    assert text.endswith("\n")
    d = json.loads(text)
    assert list(d) == sorted(d)
    assert [n["id"] for n in d["norms"]] == sorted(n["id"] for n in d["norms"])


@settings(max_examples=200)
@given(generated_nets(max_n=16))
def test_round_trip(net):
    text = serialize_norm_net(net)
    back = parse_norm_net(text)
    assert back == net
    assert serialize_norm_net(back) == text


def test_save_load(tmp_path, airport_extended):
    p = tmp_path / "net.json"
    save_norm_net(airport_extended, p)
    assert load_norm_net(p) == airport_extended


def test_representation_documents():
    a = parse_representation('{"power": {"n1": 1, "n2": "1/2"}}')
    assert a.kind == "custom" and a["n2"] == F(1, 2)
    assert parse_representation('{"n1": 2}')["n1"] == 2
    with pytest.raises(SchemaViolation):
        parse_representation('{"power": {"n1": "abc"}}')
    with pytest.raises(SchemaViolation):
        parse_representation("[1, 2]")
