import sympy
import pytest

from source.witt.algebra import (
    SubalgebraSpec,
    WittElement,
    basis_bracket,
    bracket,
    commutator_on,
    formal_gamma,
    in_subalgebra,
    vir_bracket_coefficient,
    vir_element,
)


def test_bracket_with_cartan():
    x = WittElement.partial(0, 2)
    y = WittElement.monomial((2, 3), (1, 5))
    assert bracket(x, y) == WittElement.monomial((2, 3), (2, 10))


def test_bracket_mixed_directions():
    x = WittElement.basis((1, 0), 1)
    y = WittElement.basis((0, 1), 0)
    assert bracket(x, y) == WittElement.monomial((1, 1), (1, -1))
    assert bracket(x, y) + bracket(y, x) == WittElement.zero(2)
    assert bracket(x, x).is_zero()


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        bracket(WittElement.partial(0, 1), WittElement.partial(0, 2))


def test_basis_bracket():
    terms = basis_bracket((1, 0), 1, (0, 1), 0)
    assert terms == [((1, 1), 0, 1), ((1, 1), 1, -1)]
    assert basis_bracket((1, 2), 0, (1, 2), 0) == []


def test_canonical_form():
    x = WittElement.from_terms(2, [((1, 0), (1, 0)), ((0, 1), (0, 1)), ((1, 0), (-1, 0))])
    assert x.grades() == ((0, 1),)
    assert x.to_json() == [{"alpha": [0, 1], "u": ["0", "1"]}]
    assert WittElement.from_json(x.to_json()) == x


def test_derivation_oracle():
    x = WittElement.monomial((1, -2), ("1/2", 3))
    y = WittElement.monomial((0, 3), (-1, "2/3"))
    polynomial = {(2, 1): sympy.Integer(1), (-1, 4): sympy.Rational(3, 5)}
    assert commutator_on(x, y, polynomial) == bracket(x, y).apply(polynomial)


def test_in_subalgebra():
    gamma = formal_gamma(2)
    assert in_subalgebra(WittElement.partial(0, 2), SubalgebraSpec("cartan"))
    assert in_subalgebra(vir_element(gamma, (1, 1)), SubalgebraSpec("vir_gamma", gamma=gamma))
    assert not in_subalgebra(WittElement.basis((1, 1), 0), SubalgebraSpec("vir_gamma", gamma=gamma))

    spec = SubalgebraSpec("g_of_G", G=((0, 1),))
    assert in_subalgebra(WittElement.basis((0, 2), 0), spec)
    assert not in_subalgebra(WittElement.basis((1, 0), 0), spec)

    with pytest.raises(ValueError):
        SubalgebraSpec("g_of_G", G=((1, 1), (2, 2)))


def test_vir_bracket_coefficient():
    assert vir_bracket_coefficient((1,), (1,), (2,)) == 1
    assert vir_bracket_coefficient((1,), (3,), (3,)) == 0

    gamma = formal_gamma(2)
    coefficient = vir_bracket_coefficient(gamma, (0, 1), (1, 0))
    assert sympy.expand(coefficient - (gamma[0] - gamma[1])) == 0

    x, y = vir_element(gamma, (0, 1)), vir_element(gamma, (1, 0))
    assert bracket(x, y) == vir_element(gamma, (1, 1)).scale(coefficient)
