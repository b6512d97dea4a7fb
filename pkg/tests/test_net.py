import itertools

import pytest
from hypothesis import given, settings

from normnet.errors import (
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
from normnet.net import (
    Norm,
    RelationSet,
    ancestors,
    build_norm_net,
    exists_sound_nonempty,
    extend_with_in_force,
    ilp_feasible,
    soundness_report,
    substitution_closure,
    without_norms,
)

from conftest import all_subsets, generated_nets, make_net


def naive_closure(pairs):
    """Symmetric-transitive expansion to a fixpoint, self-pairs dropped."""
    rel = {(a, b) for a, b in pairs} | {(b, a) for a, b in pairs}
    while True:
        new = {(a, d) for a, b in rel for c, d in rel if b == c and a != d} - rel
        if not new:
            break
        rel |= new
    return {tuple(sorted(p)) for p in rel}


def naive_ancestors(gen, n):
    found = set()
    frontier = {n}
    while frontier:
        frontier = {g for g, s in gen if s in frontier} - found
        found |= frontier
    return found


class TestBuild:
    def test_airport(self, airport):
        assert airport.children["n3"] == {"n4", "n5"}
        assert airport.roots == {"n1", "n2", "n3"}
        assert len(airport) == 5
        assert airport.in_force == frozenset()

    def test_self_relation(self):
        with pytest.raises(SelfRelation):
            make_net(["n1", "n2"], excl=[("n1", "n1")])

    def test_overlap(self):
        with pytest.raises(OverlappingRelationSets):
            make_net(["n2", "n3"], excl=[("n2", "n3")], subs=[("n3", "n2")])

    def test_overlap_generalisation_exclusivity(self):
        with pytest.raises(OverlappingRelationSets):
            make_net(["a", "b"], gen=[("a", "b")], excl=[("b", "a")])

    @pytest.mark.parametrize(
        "kwargs, error",
        [
            (dict(gen=[("a", "b"), ("b", "a")]), GeneralisationCycle),
            (dict(gen=[("a", "b"), ("b", "c"), ("c", "a")]), GeneralisationCycle),
            (dict(gen=[("a", "c"), ("b", "c")]), MultipleParents),
            (dict(excl=[("a", "zz")]), UnknownEndpoint),
        ],
    )
    def test_structural_errors(self, kwargs, error):
        with pytest.raises(error):
            make_net(["a", "b", "c"], **kwargs)

    def test_intransitive_generalisation_rejected(self):
        # a -> b -> c plus a -> c gives c two parents
        with pytest.raises(MultipleParents):
            make_net(["a", "b", "c"], gen=[("a", "b"), ("b", "c"), ("a", "c")])

    def test_duplicate_and_negative_cost(self):
        n = Norm("a", "obligation", "x", "y")
        with pytest.raises(DuplicateId):
            build_norm_net([n, n])
        with pytest.raises(NegativeCost):
            build_norm_net([Norm("a", "obligation", "x", "y", cost=-1)])

    def test_bad_modality(self):
        with pytest.raises(ValidationError):
            Norm("a", "suggestion", "x", "y")

    def test_unknown_in_force(self):
        with pytest.raises(UnknownId):
            make_net(["a"], in_force=["b"])

    def test_costs_exact(self):
        n = Norm("a", "permission", "x", "y", cost="1/3")
        assert n.cost * 3 == 1


class TestAncestors:
    def test_airport(self, airport):
        assert ancestors(airport, "n4") == {"n3"}
        assert ancestors(airport, "n1") == frozenset()

    def test_chain(self):
        net = make_net(["a", "b", "c"], gen=[("a", "b"), ("b", "c")])
        assert ancestors(net, "c") == {"a", "b"}

    def test_unknown(self, airport):
        with pytest.raises(UnknownId):
            ancestors(airport, "n9")

    @settings(max_examples=200)
    @given(generated_nets(max_n=14))
    def test_matches_naive_and_terminates(self, net):
        gen = net.relations.generalisation
        for n in net.ids:
            assert ancestors(net, n) == naive_ancestors(gen, n)
        for a, b in gen:
            assert a in ancestors(net, b)
            assert b not in ancestors(net, a) | {a}


class TestClosure:
    def test_airport(self, airport):
        assert substitution_closure(airport) == {("n2", "n3")}

    def test_chain(self):
        net = make_net(["a", "b", "c"], subs=[("a", "b"), ("b", "c")])
        assert substitution_closure(net) == {("a", "b"), ("b", "c"), ("a", "c")}

    def test_empty(self):
        assert substitution_closure(make_net(["a", "b"])) == frozenset()

    @settings(max_examples=200)
    @given(generated_nets(max_n=12))
    def test_matches_fixpoint(self, net):
        s = substitution_closure(net)
        assert s == naive_closure(net.relations.substitutability)
        assert net.relations.substitutability <= s
        assert all(a != b for a, b in s)
        for (a, b), (c, d) in itertools.product(s, s):
            shared = {a, b} & {c, d}
            if len(shared) == 1:
                x, y = ({a, b} | {c, d}) - shared
                assert tuple(sorted((x, y))) in s


class TestSoundness:
    def test_sound_pair(self, airport):
        assert soundness_report(airport, {"n1", "n4"}).sound

    def test_exclusive_pair(self, airport):
        r = soundness_report(airport, {"n1", "n2"})
        assert not r.conflict_free and r.non_redundant
        assert r.witnesses == ((("n1", "n2"), "exclusivity"),)

    def test_generalisation_pair(self, airport):
        r = soundness_report(airport, {"n3", "n4"})
        assert r.conflict_free and not r.non_redundant
        assert r.witnesses == ((("n3", "n4"), "generalisation"),)

    def test_substitutable_pair(self, airport):
        r = soundness_report(airport, {"n2", "n3"})
        assert not r.non_redundant
        assert r.witnesses == ((("n2", "n3"), "substitutability"),)

    def test_indirect_ancestor(self):
        net = make_net(["a", "b", "c"], gen=[("a", "b"), ("b", "c")])
        r = soundness_report(net, {"a", "c"})
        assert r.witnesses == ((("a", "c"), "ancestor"),)

    def test_unknown_member(self, airport):
        with pytest.raises(UnknownId):
            soundness_report(airport, {"n1", "n8"})

    def test_witnesses_iff_unsound(self, airport):
        for omega in all_subsets(airport.ids):
            r = soundness_report(airport, omega)
            assert (r.witnesses == ()) == r.sound


class TestIlpFeasible:
    def test_all_children(self, airport):
        assert not ilp_feasible(airport, {"n4", "n5"})
        # sound by the pairwise definitions nonetheless
        assert soundness_report(airport, {"n4", "n5"}).sound

    def test_cases(self, airport):
        assert ilp_feasible(airport, {"n1", "n4"})
        assert ilp_feasible(airport, set())

    def test_single_child_is_selectable(self):
        net = make_net(["a", "b"], gen=[("a", "b")])
        assert ilp_feasible(net, {"b"})

    @settings(max_examples=100)
    @given(generated_nets(max_n=9))
    def test_properties(self, net):
        for n in net.ids:
            assert ilp_feasible(net, {n})
        for omega in all_subsets(net.ids):
            rep = soundness_report(net, omega)
            feasible = ilp_feasible(net, omega)
            if feasible:
                assert rep.sound
            covers = any(len(c) >= 2 and c <= omega for c in net.children.values())
            assert (rep.sound and not feasible) == (rep.sound and covers)
            if rep.sound:
                for k in range(len(omega)):
                    for sub in itertools.combinations(sorted(omega), k):
                        assert soundness_report(net, sub).sound


class TestExistsSound:
    def test_cases(self, airport):
        assert exists_sound_nonempty(airport)
        assert not exists_sound_nonempty(build_norm_net([]))
        assert exists_sound_nonempty(make_net(["a"]))


class TestExtend:
    N6 = Norm("n6", "prohibition", "all_passengers", "unattend_luggage", 1, {"safety"})
    N7 = Norm("n7", "obligation", "all_passengers", "passport_control", 1, {"safety"})

    def test_extended_airport(self, airport, airport_extended):
        ext = extend_with_in_force(airport, [self.N6, self.N7], RelationSet.of(exclusivity=[("n7", "n1")]))
        assert len(ext) == 7
        assert ext.in_force == {"n6", "n7"}
        assert ("n1", "n7") in ext.relations.exclusivity
        assert ext == airport_extended

    def test_identity(self, airport):
        ext = extend_with_in_force(airport, [])
        assert ext == airport
        assert ext.in_force == frozenset()

    def test_overlap(self, airport):
        r0 = RelationSet.of(exclusivity=[("n7", "n1")], substitutability=[("n1", "n7")])
        with pytest.raises(OverlappingRelationSets):
            extend_with_in_force(airport, [self.N7], r0)

    def test_collision(self, airport):
        with pytest.raises(IdCollision):
            extend_with_in_force(airport, [Norm("n1", "obligation", "a", "b")])

    def test_without(self, airport_extended):
        net = without_norms(airport_extended, airport_extended.in_force)
        assert net.ids == ("n1", "n2", "n3", "n4", "n5")
        assert ("n1", "n7") not in net.relations.exclusivity
