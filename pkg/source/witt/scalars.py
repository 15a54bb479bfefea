import re
import sympy
from fractions import Fraction
from typing import Sequence

Scalar = sympy.Expr

FORMAL_VECTOR_NAMES = {"γ": "gamma", "gamma": "gamma", "λ": "lam", "lambda": "lam"}


def parameter_symbols(name: str, n: int) -> tuple[sympy.Symbol, ...]:
    """
    Formal parameters name1, ..., namen, linearly independent over Q by construction.
    """
    return tuple(sympy.Symbol(f"{name}{i + 1}") for i in range(n))


def normalize(value) -> Scalar:
    """
    Canonical form: Rationals stay Rationals, rational functions are cancelled.
    """
    value = sympy.sympify(value)
    if value.is_Rational:
        return value
    return sympy.cancel(sympy.together(value))


def _parse_scalar_string(text: str) -> Scalar:
    text = text.replace("γ", "gamma").replace("λ", "lam")
    if re.search(r"\d\.\d|\d\.|\.\d", text):
        raise ValueError(f"Floating point literal in scalar {text!r}; use p/q.")
    identifiers = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text))
    local_dict = {name: sympy.Symbol(name) for name in identifiers}
    try:
        value = sympy.sympify(text, locals=local_dict, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise ValueError(f"Could not parse scalar {text!r}: {e}") from e
    return value


def to_scalar(value) -> Scalar:
    """
    Convert ints, Fractions, "p/q" strings, polynomial strings and sympy values to a Scalar.

    Args:
        value: The value to convert.

    Returns:
        Scalar: Normalized exact scalar.
    """
    if isinstance(value, bool):
        raise ValueError(f"Booleans are not scalars: {value!r}.")
    if isinstance(value, float):
        raise ValueError(f"Refusing to read floating point value {value} as exact.")
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, str):
        value = _parse_scalar_string(value)
    return normalize(value)


def to_scalar_vector(value, n: int) -> tuple[Scalar, ...]:
    """
    Parse an n-vector of scalars.

    Accepts a list of scalars, a single scalar (repeated n times), or a formal
    vector name ("γ", "gamma", "λ", "lambda") meaning (name1, ..., namen).
    """
    if isinstance(value, str) and value.strip() in FORMAL_VECTOR_NAMES:
        return parameter_symbols(FORMAL_VECTOR_NAMES[value.strip()], n)
    if isinstance(value, (list, tuple)):
        if len(value) != n:
            raise ValueError(f"Expected {n} scalars, got {value!r}.")
        return tuple(to_scalar(v) for v in value)
    return tuple(to_scalar(value) for _ in range(n))


def scalar_to_str(value: Scalar) -> str:
    value = normalize(value)
    if value.is_Rational:
        return str(value)
    return sympy.sstr(value)


def is_zero(value: Scalar) -> bool:
    return normalize(value) == 0


def is_integer(value: Scalar) -> bool:
    return bool(normalize(value).is_Integer)


def is_rational(value: Scalar) -> bool:
    return bool(normalize(value).is_Rational)


def scalar_dot(u: Sequence, v: Sequence) -> Scalar:
    if len(u) != len(v):
        raise ValueError(f"Dimension mismatch: {len(u)} vs {len(v)}.")
    return normalize(sum((sympy.sympify(a) * b for a, b in zip(u, v)), sympy.Integer(0)))


def is_integer_vector(vector: Sequence) -> bool:
    return all(is_integer(c) for c in vector)
