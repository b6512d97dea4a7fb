import itertools

import pytest
from hypothesis import strategies as st

from normnet import datasets
from normnet.generate import GeneratorParams, generate_random_net
from normnet.net import Norm, RelationSet, build_norm_net


@pytest.fixture
def airport():
    return datasets.airport()


@pytest.fixture
def airport_extended():
    return datasets.airport_extended()


def make_net(ids, gen=(), excl=(), subs=(), **kw):
    norms = [Norm(i, "obligation", "agents", f"act_{i}", kw.pop(f"c_{i}", 0), {"v"}) for i in ids]
    return build_norm_net(norms, RelationSet.of(gen, excl, subs), value_order=["v"], **kw)


@st.composite
def generated_nets(draw, max_n=10):
    params = GeneratorParams(
        n=draw(st.integers(0, max_n)),
        depth=draw(st.integers(1, 4)),
        branching=draw(st.integers(0, 4)),
        p_x=draw(st.sampled_from([0.0, 0.1, 0.3, 0.6])),
        p_s=draw(st.sampled_from([0.0, 0.1, 0.3])),
        seed=draw(st.integers(0, 2**64 - 1)),
    )
    return generate_random_net(params)


def all_subsets(ids):
    ids = sorted(ids)
    for k in range(len(ids) + 1):
        for combo in itertools.combinations(ids, k):
            yield frozenset(combo)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
