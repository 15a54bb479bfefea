import sympy
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from source.lattice.geometry import (
    LatticeVector,
    add,
    as_lattice_vector,
    sub,
    unit_vector,
)
from source.witt.scalars import (
    Scalar,
    is_zero,
    normalize,
    scalar_dot,
    scalar_to_str,
    to_scalar,
    to_scalar_vector,
)


@dataclass(frozen=True, eq=False)
class WittElement:
    """
    Finite sum of graded pieces t^alpha d_u in W_n, d_u = sum_i u_i d_i.

    Terms are kept sorted lexicographically by alpha, with zero u-vectors pruned,
    so equality is structural.

    Attributes:
        n: Rank of the algebra.
        terms: Pairs (alpha, u) with alpha in Z^n and u a Scalar n-vector.
    """

    n: int
    terms: tuple[tuple[LatticeVector, tuple[Scalar, ...]], ...]

    @classmethod
    def from_terms(
        cls, n: int, pairs: Iterable[tuple[Sequence[int], Sequence]]
    ) -> "WittElement":
        collected = {}
        for alpha, u in pairs:
            alpha = as_lattice_vector(alpha)
            if len(alpha) != n or len(u) != n:
                raise ValueError(
                    f"Dimension mismatch: term ({alpha}, {tuple(u)}) in W_{n}."
                )
            previous = collected.get(alpha, (sympy.Integer(0),) * n)
            collected[alpha] = tuple(p + to_scalar(c) for p, c in zip(previous, u))

        terms = []
        for alpha in sorted(collected):
            u = tuple(normalize(c) for c in collected[alpha])
            if not all(c == 0 for c in u):
                terms.append((alpha, u))
        return cls(n, tuple(terms))

    @classmethod
    def zero(cls, n: int) -> "WittElement":
        return cls(n, ())

    @classmethod
    def monomial(cls, alpha: Sequence[int], u: Sequence) -> "WittElement":
        return cls.from_terms(len(alpha), [(alpha, u)])

    @classmethod
    def basis(cls, alpha: Sequence[int], j: int) -> "WittElement":
        """
        The basis element t^alpha d_j (j is 0-based).
        """
        n = len(alpha)
        return cls.monomial(alpha, unit_vector(j, n))

    @classmethod
    def partial(cls, i: int, n: int) -> "WittElement":
        return cls.basis((0,) * n, i)

    def __add__(self, other: "WittElement") -> "WittElement":
        if self.n != other.n:
            raise ValueError(f"Dimension mismatch: W_{self.n} + W_{other.n}.")
        return WittElement.from_terms(self.n, list(self.terms) + list(other.terms))

    def __neg__(self) -> "WittElement":
        return self.scale(-1)

    def __sub__(self, other: "WittElement") -> "WittElement":
        return self + (-other)

    def scale(self, c) -> "WittElement":
        c = to_scalar(c)
        return WittElement.from_terms(
            self.n, [(alpha, tuple(c * x for x in u)) for alpha, u in self.terms]
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittElement) or other.n != self.n:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.n, self.grades()))

    def is_zero(self) -> bool:
        return len(self.terms) == 0

    def grades(self) -> tuple[LatticeVector, ...]:
        return tuple(alpha for alpha, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len(self.terms) <= 1

    def grade(self) -> LatticeVector:
        if len(self.terms) != 1:
            raise ValueError(
                f"Element with grades {self.grades()} is not homogeneous of a single grade."
            )
        return self.terms[0][0]

    def component(self, alpha: Sequence[int]) -> tuple[Scalar, ...]:
        alpha = tuple(alpha)
        for beta, u in self.terms:
            if beta == alpha:
                return u
        return (sympy.Integer(0),) * self.n

    def project(self, alpha: Sequence[int]) -> "WittElement":
        return WittElement.monomial(tuple(alpha), self.component(alpha))

    def apply(self, polynomial: dict) -> dict:
        """
        Act as a derivation on a Laurent polynomial {exponent: coefficient}.

        t^alpha d_u sends t^m to (u . m) t^(alpha + m).
        """
        result = {}
        for m, coefficient in polynomial.items():
            for alpha, u in self.terms:
                value = scalar_dot(u, m) * coefficient
                target = add(alpha, m)
                result[target] = normalize(result.get(target, 0) + value)
        return {m: c for m, c in result.items() if c != 0}

    def to_json(self) -> list:
        return [
            {"alpha": list(alpha), "u": [scalar_to_str(c) for c in u]}
            for alpha, u in self.terms
        ]

    @classmethod
    def from_json(cls, payload: list, n: Optional[int] = None) -> "WittElement":
        if not payload:
            if n is None:
                raise ValueError("Cannot infer the rank of an empty element.")
            return cls.zero(n)
        n = n or len(payload[0]["alpha"])
        return cls.from_terms(
            n, [(term["alpha"], [to_scalar(c) for c in term["u"]]) for term in payload]
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"t^{alpha}d({', '.join(scalar_to_str(c) for c in u)})"
            for alpha, u in self.terms
        )


def bracket(x: WittElement, y: WittElement) -> WittElement:
    """
    Lie bracket in W_n.

    [t^alpha d_u, t^beta d_v] = t^(alpha+beta) ((u . beta) d_v - (v . alpha) d_u).

    Args:
        x (WittElement): Left argument.
        y (WittElement): Right argument.

    Returns:
        WittElement: The bracket [x, y].
    """
    if x.n != y.n:
        raise ValueError(f"Dimension mismatch: bracket of W_{x.n} and W_{y.n} elements.")
    pairs = []
    for alpha, u in x.terms:
        for beta, v in y.terms:
            u_beta = scalar_dot(u, beta)
            v_alpha = scalar_dot(v, alpha)
            pairs.append(
                (add(alpha, beta), tuple(u_beta * vi - v_alpha * ui for ui, vi in zip(u, v)))
            )
    return WittElement.from_terms(x.n, pairs)


def basis_bracket(
    alpha: LatticeVector, i: int, beta: LatticeVector, j: int
) -> list[tuple[LatticeVector, int, Scalar]]:
    """
    [t^alpha d_i, t^beta d_j] as a list of (grade, index, coefficient) basis terms.
    """
    grade = add(alpha, beta)
    if i == j:
        terms = [(grade, j, beta[i] - alpha[i])]
    else:
        terms = [(grade, j, beta[i]), (grade, i, -alpha[j])]
    return [(g, k, sympy.Integer(c)) for g, k, c in terms if c != 0]


def commutator_on(x: WittElement, y: WittElement, polynomial: dict) -> dict:
    """
    x(y(p)) - y(x(p)) computed by direct differentiation.
    """
    first = x.apply(y.apply(polynomial))
    second = y.apply(x.apply(polynomial))
    result = dict(first)
    for m, c in second.items():
        result[m] = normalize(result.get(m, 0) - c)
    return {m: c for m, c in result.items() if c != 0}


@dataclass(frozen=True)
class SubalgebraSpec:
    """
    One of the distinguished subalgebras: full, cartan, vir_gamma or g_of_G.
    """

    kind: str
    gamma: Optional[tuple[Scalar, ...]] = None
    G: Optional[tuple[LatticeVector, ...]] = None

    def __post_init__(self):
        if self.kind not in ["full", "cartan", "vir_gamma", "g_of_G"]:
            raise ValueError(f"Subalgebra kind {self.kind} not recognized.")
        if self.kind == "vir_gamma":
            if self.gamma is None or all(is_zero(c) for c in self.gamma):
                raise ValueError("vir_gamma needs a nonzero gamma vector.")
        if self.kind == "g_of_G":
            if self.G is None:
                raise ValueError("g_of_G needs a basis G.")
            G = tuple(as_lattice_vector(g) for g in self.G)
            if G and sympy.Matrix(G).rank() != len(G):
                raise ValueError(f"Basis {G} is not linearly independent over Q.")
            object.__setattr__(self, "G", G)


def in_subgroup(alpha: LatticeVector, G: Sequence[LatticeVector]) -> bool:
    """
    Whether alpha lies in the subgroup of Z^n generated by the independent vectors G.
    """
    if not G:
        return all(c == 0 for c in alpha)
    basis = sympy.Matrix(G).T
    try:
        solution, parameters = basis.gauss_jordan_solve(sympy.Matrix(alpha))
    except ValueError:
        return False
    if parameters.shape[0] != 0:
        raise ValueError(f"Basis {G} is not linearly independent.")
    return all(c.is_Integer for c in solution)


def in_subalgebra(x: WittElement, S: SubalgebraSpec) -> bool:
    """
    Membership of x in the subalgebra described by S.
    """
    if S.kind == "full":
        return True
    if S.kind == "cartan":
        return all(all(c == 0 for c in alpha) for alpha in x.grades())
    if S.kind == "g_of_G":
        return all(in_subgroup(alpha, S.G) for alpha in x.grades())
    # vir_gamma: every u is proportional to gamma
    gamma = S.gamma
    for _, u in x.terms:
        if len(u) != len(gamma):
            raise ValueError(f"Dimension mismatch between u={u} and gamma={gamma}.")
        for i in range(len(u)):
            for j in range(i + 1, len(u)):
                if not is_zero(u[i] * gamma[j] - u[j] * gamma[i]):
                    return False
    return True


def vir_element(gamma: Sequence, beta: Sequence[int]) -> WittElement:
    """
    t^beta (gamma . d), a basis element of Vir(gamma).
    """
    return WittElement.monomial(tuple(beta), tuple(to_scalar(c) for c in gamma))


def vir_bracket_coefficient(gamma: Sequence, alpha: LatticeVector, beta: LatticeVector) -> Scalar:
    """
    The c with [t^alpha(gamma.d), t^beta(gamma.d)] = c t^(alpha+beta)(gamma.d); c = gamma.(beta - alpha).
    """
    return scalar_dot(tuple(to_scalar(c) for c in gamma), sub(tuple(beta), tuple(alpha)))


def formal_gamma(n: int) -> tuple[Scalar, ...]:
    return to_scalar_vector("gamma", n)
