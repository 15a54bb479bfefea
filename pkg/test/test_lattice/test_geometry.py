import pytest
import numpy as np
from fractions import Fraction

from source.lattice.geometry import (
    Box,
    HalfSpace,
    Order,
    UnimodularBasis,
    apply_basis,
    componentwise_order,
    dot,
    exceeds,
    halfspace_classify,
)


def test_dot():
    assert dot((1, 0), (0, 1)) == 0
    assert dot((2, -1, 3), (1, 1, 1)) == 4
    assert dot((1, 1), (-3, 1)) == -2
    assert dot((Fraction(1, 2), 1), (3, 1)) == Fraction(5, 2)

    with pytest.raises(ValueError):
        dot((1, 0), (1, 0, 0))


def test_halfspace_classify():
    assert halfspace_classify((1, 0), (0, 5)) == HalfSpace.ZERO
    assert halfspace_classify((1, 1), (2, -1)) == HalfSpace.PLUS
    assert halfspace_classify((3, -2), (2, 3)) == HalfSpace.ZERO
    assert halfspace_classify((1, 1), (-3, 1)) == HalfSpace.MINUS
    assert str(HalfSpace.PLUS) == "+"

    with pytest.raises(ValueError):
        halfspace_classify((0, 0), (1, 1))


def test_componentwise_order():
    assert componentwise_order((3, 3), (2, 2)) == Order.GT
    assert componentwise_order((2, 1), (1, 2)) == Order.INCOMPARABLE
    assert componentwise_order((1, 1, 1), (1, 1, 1)) == Order.EQ
    assert componentwise_order((1, 2), (2, 2)) == Order.LEQ
    assert exceeds((3, 4), 2)
    assert not exceeds((3, 2), 2)


def test_unimodular_basis():
    identity = UnimodularBasis.identity(3)
    assert apply_basis(identity, (4, -1, 2)) == (4, -1, 2)

    basis = UnimodularBasis(((3, 2), (4, 3)))
    assert basis.determinant == 1
    assert apply_basis(basis, (3, 2)) == (1, 0)
    assert apply_basis(basis, (7, 5)) == (1, 1)
    assert basis.to_ambient(apply_basis(basis, (-2, 5))) == (-2, 5)

    with pytest.raises(ValueError):
        UnimodularBasis(((2, 0), (0, 1)))


def test_box():
    box = Box.cube(2, 1)
    assert box.size == 9
    assert list(box.points())[0] == (-1, -1)
    assert box.contains((1, 0))
    assert not box.contains((2, 0))
    assert box.on_edge((1, 0))
    assert not box.on_edge((0, 0))
    assert Box.from_json(box.to_json()) == box

    with pytest.raises(ValueError):
        Box((1, 0), (0, 0))


@pytest.mark.parametrize(
    "rows",
    [
        ((2, 1), (1, 1)),
        ((3, 2), (4, 3)),
        ((1, 2, 3), (0, 1, 4), (0, 0, 1)),
        ((2, 1, 1), (3, 2, 1), (2, 1, 2)),
    ],
)
def test_apply_basis_round_trip(rows):
    M = UnimodularBasis(rows)
    rng = np.random.default_rng(len(rows))
    for _ in range(100):
        x = tuple(int(c) for c in rng.integers(-20, 21, size=M.n))
        assert M.to_ambient(apply_basis(M, x)) == x
        assert apply_basis(M, M.to_ambient(x)) == x
