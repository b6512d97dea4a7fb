import random

import pytest

from normnet.errors import InvalidParams
from normnet.generate import GeneratorParams, SplitMix64, generate_random_net
from normnet.io import serialize_norm_net


def test_splitmix_vectors():
    rng = SplitMix64(0)
    assert [f"{rng.next():016x}" for _ in range(3)] == [
        "e220a8397b1dcdaf",
        "6e789e6aa1b965f4",
        "06c45d188009454f",
    ]


def test_uniform_range():
    rng = SplitMix64(123)
    xs = [rng.uniform() for _ in range(2000)]
    assert all(0 <= x < 1 for x in xs)
    assert 0.45 < sum(xs) / len(xs) < 0.55


def test_isolated():
    net = generate_random_net(GeneratorParams(5, depth=1))
    assert len(net) == 5
    assert not any(pairs for _, pairs in net.relations)


def test_empty():
    assert len(generate_random_net(GeneratorParams(0))) == 0


def test_deterministic():
    p = GeneratorParams(12, depth=3, branching=3, p_x=0.2, p_s=0.1, seed=42)
    assert serialize_norm_net(generate_random_net(p)) == serialize_norm_net(generate_random_net(p))
    other = GeneratorParams(12, depth=3, branching=3, p_x=0.2, p_s=0.1, seed=43)
    assert serialize_norm_net(generate_random_net(p)) != serialize_norm_net(generate_random_net(other))


def test_shape_limits():
    p = GeneratorParams(40, depth=3, branching=2, p_x=0.3, p_s=0.3, seed=9)
    net = generate_random_net(p)
    assert all(len(k) <= 2 for k in net.children.values())
    assert all(len(net.ancestor_sets[n]) <= 2 for n in net.ids)
    for n in net.ids:
        norm = net.norms[n]
        assert 0 <= norm.cost <= 9 and norm.values and norm.values <= {"v1", "v2"}
    assert net.value_order == ("v1", "v2")


@pytest.mark.parametrize(
    "kw",
    [dict(n=-1), dict(n=3, depth=0), dict(n=3, branching=-1), dict(n=3, p_x=1.5),
     dict(n=3, p_s=-0.1), dict(n=3, seed=2**64), dict(n=3, seed=-1)],
)
def test_invalid(kw):
    with pytest.raises(InvalidParams):
        generate_random_net(GeneratorParams(**kw))


def test_validity_over_many_draws():
    rng = random.Random(2024)
    for _ in range(10_000):
        p = GeneratorParams(
            n=rng.randint(0, 20),
            depth=rng.randint(1, 5),
            branching=rng.randint(0, 5),
            p_x=rng.random(),
            p_s=rng.random(),
            seed=rng.getrandbits(64),
        )
        generate_random_net(p)  # build_norm_net raises on any invalid net
