import pytest

from source.lattice.geometry import dot
from source.lattice.monoid import (
    MonoidStatus,
    generates_monoid,
    minimal_multiplier,
    semigroup_generators_for,
)


def test_semigroup_generators_for():
    generators = semigroup_generators_for((-1, -1), (1, 1))
    assert generators.vectors == ((1, 0), (0, 1), (0, 1), (1, 0))

    generators = semigroup_generators_for((-2, 1), (1, 1))
    assert generators.vectors == ((1, 0), (3, -2), (0, 1), (4, -3))
    assert generators.multipliers == (0, 2, 0, 2)
    assert all(dot((1, 1), v) > 0 for v in generators.vectors)

    generators = semigroup_generators_for((-1,), (1,))
    assert generators.vectors == ((1,), (1,))
    assert generators.max_multiplier == 2

    with pytest.raises(ValueError):
        semigroup_generators_for((1, 1), (1, 1))


def test_minimal_multiplier():
    assert minimal_multiplier((1, 1), (1, 0), (-2, 1)) == 0
    assert minimal_multiplier((1, 1), (-1, 0), (-2, 1)) == 2


def test_generates_monoid():
    generation = generates_monoid([(-1, -1), (1, 0), (0, 1)], 4)
    assert generation.generates
    assert generation.status == MonoidStatus.GENERATES
    assert generation.witness_length((-1, 0)) == 2

    generation = generates_monoid([(1, 0), (0, 1)], 4)
    assert not generation.generates
    assert generation.status == MonoidStatus.PROVEN_FALSE
    assert generation.unreachable == (-1, 0)
    assert all(dot(generation.separator, s) >= 0 for s in [(1, 0), (0, 1)])
    assert dot(generation.separator, (-1, 0)) < 0

    assert generates_monoid([(2, 1), (1, 2), (-1, -1)], 10).generates

    with pytest.raises(ValueError):
        generates_monoid([], 4)


def test_generated_by_semigroup_generators():
    generators = semigroup_generators_for((-2, 1), (1, 1))
    bound = 2 * (1 + generators.max_multiplier) * 2
    assert generates_monoid(generators.generating_set(), bound).generates
