import sympy
import pytest
from fractions import Fraction

from source.witt.scalars import (
    is_zero,
    scalar_to_str,
    to_scalar,
    to_scalar_vector,
)


def test_to_scalar():
    assert to_scalar("1/2") == sympy.Rational(1, 2)
    assert to_scalar(Fraction(-3, 6)) == sympy.Rational(-1, 2)
    assert to_scalar(4) == 4
    assert scalar_to_str(to_scalar("6/4")) == "3/2"

    with pytest.raises(ValueError):
        to_scalar(0.5)
    with pytest.raises(ValueError):
        to_scalar("0.5")


def test_formal_vectors():
    gamma = to_scalar_vector("γ", 2)
    assert gamma == (sympy.Symbol("gamma1"), sympy.Symbol("gamma2"))
    assert to_scalar_vector("lambda", 3)[2] == sympy.Symbol("lam3")
    assert to_scalar_vector("1/3", 2) == (sympy.Rational(1, 3), sympy.Rational(1, 3))

    with pytest.raises(ValueError):
        to_scalar_vector([1, 2, 3], 2)


def test_rational_functions_cancel():
    b = sympy.Symbol("b")
    assert is_zero(to_scalar("(b**2 - 1)/(b - 1) - b - 1"))
    assert not is_zero(b)
