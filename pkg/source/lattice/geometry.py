import itertools
import sympy
from enum import Enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

LatticeVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


class HalfSpace(Enum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    def __str__(self):
        return {-1: "-", 0: "0", 1: "+"}[self.value]


class Order(Enum):
    GT = "gt"
    GEQ = "geq"
    EQ = "eq"
    LT = "lt"
    LEQ = "leq"
    INCOMPARABLE = "incomparable"


def as_lattice_vector(x: Sequence[int]) -> LatticeVector:
    vector = tuple(x)
    for c in vector:
        if isinstance(c, bool) or int(c) != c:
            raise ValueError(f"Lattice vectors have integer entries, got {x!r}.")
    if len(vector) == 0:
        raise ValueError("Lattice vectors need dimension n >= 1.")
    return tuple(int(c) for c in vector)


def as_rational_vector(a: Sequence) -> RationalVector:
    vector = tuple(Fraction(c) for c in a)
    if len(vector) == 0:
        raise ValueError("Rational vectors need dimension n >= 1.")
    return vector


def check_dimensions(*vectors: Sequence) -> int:
    """
    Check that all vectors have the same dimension and return it.
    """
    dimensions = {len(v) for v in vectors}
    if len(dimensions) != 1:
        raise ValueError(
            f"Dimension mismatch: got vectors of dimensions {sorted(dimensions)}."
        )
    return dimensions.pop()


def add(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    check_dimensions(x, y)
    return tuple(a + b for a, b in zip(x, y))


def sub(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    check_dimensions(x, y)
    return tuple(a - b for a, b in zip(x, y))


def scale(k: int, x: LatticeVector) -> LatticeVector:
    return tuple(k * c for c in x)


def unit_vector(i: int, n: int, sign: int = 1) -> LatticeVector:
    return tuple(sign if j == i else 0 for j in range(n))


def l1_norm(x: Sequence) -> int:
    return sum(abs(c) for c in x)


def dot(a: Sequence, x: Sequence) -> Fraction:
    """
    Exact dot product sum_i a_i x_i.

    Args:
        a: Rational n-vector.
        x: Lattice vector (or any rational n-vector).

    Returns:
        Fraction: The dot product.
    """
    check_dimensions(a, x)
    return sum((Fraction(ai) * Fraction(xi) for ai, xi in zip(a, x)), Fraction(0))


def halfspace_classify(a: Sequence, x: LatticeVector) -> HalfSpace:
    """
    Classify x into Z^(a)_-, Z^(a)_0 or Z^(a)_+.

    Args:
        a: Nonzero rational normal.
        x: Lattice vector.

    Returns:
        HalfSpace: Sign of dot(a, x).
    """
    if all(Fraction(c) == 0 for c in a):
        raise ValueError(f"Degenerate normal {tuple(a)}: a must be nonzero.")
    value = dot(a, x)
    if value < 0:
        return HalfSpace.MINUS
    if value > 0:
        return HalfSpace.PLUS
    return HalfSpace.ZERO


def componentwise_order(x: LatticeVector, y: LatticeVector) -> Order:
    """
    Compare two lattice vectors in the componentwise partial order.
    """
    check_dimensions(x, y)
    if tuple(x) == tuple(y):
        return Order.EQ
    if all(a > b for a, b in zip(x, y)):
        return Order.GT
    if all(a >= b for a, b in zip(x, y)):
        return Order.GEQ
    if all(a < b for a, b in zip(x, y)):
        return Order.LT
    if all(a <= b for a, b in zip(x, y)):
        return Order.LEQ
    return Order.INCOMPARABLE


def exceeds(alpha: LatticeVector, N: int) -> bool:
    """
    True iff alpha > (N, ..., N) componentwise.
    """
    return all(c > N for c in alpha)


@dataclass(frozen=True)
class UnimodularBasis:
    """
    A Z-basis of Z^n given by the rows of an integer matrix of determinant +-1.
    """

    rows: tuple[LatticeVector, ...]

    def __post_init__(self):
        rows = tuple(as_lattice_vector(r) for r in self.rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError(f"A basis of Z^n needs n rows of length n, got {rows}.")
        determinant = sympy.Matrix(rows).det()
        if abs(determinant) != 1:
            raise ValueError(f"Rows {rows} have determinant {determinant}, not +-1.")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def determinant(self) -> int:
        return int(sympy.Matrix(self.rows).det())

    @classmethod
    def identity(cls, n: int) -> "UnimodularBasis":
        return cls(tuple(unit_vector(i, n) for i in range(n)))

    def inverse(self) -> "UnimodularBasis":
        inverse = sympy.Matrix(self.rows).inv()
        return UnimodularBasis(
            tuple(tuple(int(inverse[i, j]) for j in range(self.n)) for i in range(self.n))
        )

    def to_ambient(self, coordinates: LatticeVector) -> LatticeVector:
        """
        Map coordinates in this basis back to Z^n: sum_i c_i row_i.
        """
        check_dimensions(coordinates, self.rows[0])
        return tuple(
            sum(c * row[j] for c, row in zip(coordinates, self.rows))
            for j in range(self.n)
        )


def apply_basis(M: UnimodularBasis, x: LatticeVector) -> LatticeVector:
    """
    Coordinates of x with respect to the rows of M.

    Args:
        M (UnimodularBasis): The new basis.
        x (LatticeVector): A lattice vector in standard coordinates.

    Returns:
        LatticeVector: c with x = sum_i c_i M_i.
    """
    check_dimensions(x, M.rows[0])
    return M.inverse().to_ambient(x)


@dataclass(frozen=True)
class Box:
    """
    Axis-parallel box of lattice points, bounds inclusive.
    """

    lower: LatticeVector
    upper: LatticeVector

    def __post_init__(self):
        check_dimensions(self.lower, self.upper)
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError(f"Empty box: lower {self.lower} exceeds upper {self.upper}.")

    @classmethod
    def cube(cls, n: int, radius: int) -> "Box":
        return cls(tuple([-radius] * n), tuple([radius] * n))

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def size(self) -> int:
        size = 1
        for lo, hi in zip(self.lower, self.upper):
            size *= hi - lo + 1
        return size

    def contains(self, x: LatticeVector) -> bool:
        check_dimensions(x, self.lower)
        return all(lo <= c <= hi for lo, c, hi in zip(self.lower, x, self.upper))

    def within(self, other: "Box") -> bool:
        return other.contains(self.lower) and other.contains(self.upper)

    def on_edge(self, x: LatticeVector) -> bool:
        return any(c in (lo, hi) for lo, c, hi in zip(self.lower, x, self.upper))

    def points(self) -> Iterator[LatticeVector]:
        """
        Iterate the box in lexicographic order.
        """
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.lower, self.upper)]
        return itertools.product(*ranges)

    def to_json(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper)}

    @classmethod
    def from_json(cls, payload: dict) -> "Box":
        return cls(tuple(payload["lower"]), tuple(payload["upper"]))
