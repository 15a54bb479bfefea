import itertools
import sympy
from collections import Counter
from typing import Optional, Sequence

from source.lattice.exact_lp import normalize_certificate
from source.lattice.geometry import (
    Box,
    LatticeVector,
    UnimodularBasis,
    add,
    as_lattice_vector,
    sub,
    unit_vector,
)
from source.wmod.tensor import tensor_action_coefficient
from source.wmod.weight_module import ActionMatrix, WeightModule
from source.witt.algebra import WittElement, basis_bracket
from source.witt.scalars import (
    is_zero,
    normalize,
    scalar_to_str,
    to_scalar,
    to_scalar_vector,
)

VERMA_X_KINDS = ["trivial", "tensor"]

# A negative generator t^(g.G - d beta) d_j is keyed (d, g, j); monomials are
# tuples of keys in weakly decreasing order, basis vectors are (monomial, h).
GeneratorKey = tuple[int, tuple[int, ...], int]
Monomial = tuple[GeneratorKey, ...]


def _norm(g: Sequence[int]) -> int:
    return max((abs(c) for c in g), default=0)


class TruncatedVerma(WeightModule):
    """
    Box truncation of the generalized Verma module M(G, beta, X).

    Weights are tracked in frame coordinates (g, k) with respect to the basis
    [G; beta] of Z^n: an offset mu has mu - top_offset = g.G + k beta. The
    module lives at k <= 0; the top level k = 0 carries X and the negative
    generators t^(g.G - d beta) d_j, 1 <= d <= K, |g|_inf <= B, act freely.
    Weight spaces keep only monomials with all generators in range whose total
    weight satisfies |g|_inf <= B and k >= -K.

    X is either the trivial module of weight 0 or the restriction of the tensor
    module F(lambda_X, b) to the coset lambda_X + G, truncated to |h|_inf <= B.
    """

    def __init__(
        self,
        G: Sequence[Sequence[int]],
        beta: Sequence[int],
        X: str = "trivial",
        K: int = 4,
        B: int = 4,
        lam: Optional[Sequence] = None,
        b=0,
        top_offset: Optional[Sequence[int]] = None,
    ) -> None:
        beta = as_lattice_vector(beta)
        self.n = len(beta)
        self.G = tuple(as_lattice_vector(g) for g in G)
        if len(self.G) != self.n - 1 or any(len(g) != self.n for g in self.G):
            raise ValueError(
                f"G must be a basis of a corank-1 subgroup of Z^{self.n}, got {self.G}."
            )
        try:
            self.frame = UnimodularBasis(self.G + (beta,))
        except ValueError as e:
            raise ValueError(
                f"Z^{self.n} is not the direct sum of <G> = {self.G} and Z beta = {beta}: {e}"
            ) from e
        self.beta = beta
        self._inverse = self.frame.inverse()

        if K < 1 or B < 0 or (self.n > 1 and B < 1):
            raise ValueError(f"Box K={K}, B={B} is too small to hold a level below the top.")
        self.K, self.B = K, B

        if X not in VERMA_X_KINDS:
            raise ValueError(f"Verma X kind {X} not recognized.")
        self.X = X
        self.family = "verma"
        self.top_offset = (
            tuple([0] * self.n) if top_offset is None else as_lattice_vector(top_offset)
        )
        if len(self.top_offset) != self.n:
            raise ValueError(f"top_offset {self.top_offset} does not have dimension {self.n}.")

        if X == "tensor":
            if lam is None:
                raise ValueError("A coset tensor X needs lambda.")
            self.lam = to_scalar_vector(lam, self.n)
            self.b = to_scalar(b)
            self.coset_rep = tuple(
                normalize(l - c) for l, c in zip(self.lam, self.top_offset)
            )
        else:
            self.lam = tuple(sympy.Integer(0) for _ in range(self.n))
            self.b = sympy.Integer(0)
            self.coset_rep = tuple(sympy.Integer(-c) for c in self.top_offset)

        if not self.window_fits(Box.cube(self.n, 0)):
            raise ValueError(
                f"Offset 0 lies outside the construction box for top_offset {self.top_offset}."
            )

        self.generators = sorted(
            (d, g, j)
            for d in range(1, K + 1)
            for g in self._g_range()
            for j in range(self.n)
        )
        self._layers = self._count_monomials()
        self._monomial_cache = {}
        self._basis_cache = {}
        self._straightening = {}

    def _g_range(self):
        return itertools.product(range(-self.B, self.B + 1), repeat=self.n - 1)

    def _ambient(self, g: Sequence[int], k: int) -> LatticeVector:
        return self.frame.to_ambient(tuple(g) + (k,))

    def frame_coordinates(self, offset: Sequence[int]) -> tuple[tuple[int, ...], int]:
        """
        Split offset - top_offset into (g, k) with respect to [G; beta].
        """
        coordinates = self._inverse.to_ambient(sub(tuple(offset), self.top_offset))
        return tuple(coordinates[:-1]), coordinates[-1]

    def _grade_coordinates(self, alpha: Sequence[int]) -> tuple[tuple[int, ...], int]:
        coordinates = self._inverse.to_ambient(tuple(alpha))
        return tuple(coordinates[:-1]), coordinates[-1]

    def _in_box(self, g: Sequence[int], k: int) -> bool:
        return -self.K <= k <= 0 and _norm(g) <= self.B

    def depth(self, offset: Sequence[int]) -> int:
        return -self.frame_coordinates(offset)[1]

    def _count_monomials(self) -> list[Counter]:
        # unbounded knapsack over generator types, layered by depth
        layers = [Counter() for _ in range(self.K + 1)]
        layers[0][tuple([0] * (self.n - 1))] = 1
        for d, g, _ in self.generators:
            for depth in range(d, self.K + 1):
                for g_sum, count in list(layers[depth - d].items()):
                    layers[depth][add(g_sum, g)] += count
        return layers

    def dim(self, offset: LatticeVector) -> int:
        g, k = self.frame_coordinates(offset)
        if not self._in_box(g, k):
            return 0
        layer = self._layers[-k]
        if self.X == "trivial":
            return layer.get(g, 0)
        return sum(layer.get(sub(g, h), 0) for h in self._g_range())

    def dimension_is_exact(self, offset: LatticeVector) -> bool:
        g, k = self.frame_coordinates(offset)
        if k > 0:
            return True
        if not self._in_box(g, k):
            return False
        if self.n == 1:
            return True
        if self.X == "trivial":
            return k >= -1
        return k == 0

    def near_truncation_edge(self, offset: LatticeVector) -> bool:
        g, _ = self.frame_coordinates(offset)
        return _norm(g) > self.B - 1

    def _monomials(self, depth: int, g_target: tuple, max_index: int) -> tuple[Monomial, ...]:
        key = (depth, g_target, max_index)
        if key in self._monomial_cache:
            return self._monomial_cache[key]

        if depth == 0:
            result = ((),) if _norm(g_target) == 0 else ()
        else:
            result = []
            for index in range(max_index, -1, -1):
                d, g, j = self.generators[index]
                if d > depth:
                    continue
                remainder = sub(g_target, g)
                if _norm(remainder) > self.B * (depth - d):
                    continue
                for tail in self._monomials(depth - d, remainder, index):
                    result.append(((d, g, j),) + tail)
            result = tuple(result)

        self._monomial_cache[key] = result
        return result

    def basis(self, offset: LatticeVector) -> list[tuple[Monomial, tuple[int, ...]]]:
        """
        PBW basis (monomial, h) of the truncated weight space at offset, sorted.
        """
        offset = tuple(offset)
        if offset in self._basis_cache:
            return self._basis_cache[offset]

        g, k = self.frame_coordinates(offset)
        basis = []
        if self._in_box(g, k):
            top = len(self.generators) - 1
            levels = [tuple([0] * (self.n - 1))] if self.X == "trivial" else list(self._g_range())
            for h in levels:
                for monomial in self._monomials(-k, sub(g, h), top):
                    basis.append((monomial, h))
        basis = sorted(basis)
        self._basis_cache[offset] = basis
        return basis

    def _weight(self, monomial: Monomial, h: tuple) -> tuple[tuple[int, ...], int]:
        g_sum, depth = h, 0
        for d, g, _ in monomial:
            g_sum = add(g_sum, g)
            depth += d
        return g_sum, -depth

    def _apply(self, g: tuple, k: int, j: int, monomial: Monomial, h: tuple):
        key = (g, k, j, monomial, h)
        if key not in self._straightening:
            self._straightening[key] = self._straighten(g, k, j, monomial, h)
        return self._straightening[key]

    def _straighten(self, g: tuple, k: int, j: int, monomial: Monomial, h: tuple):
        """
        Normal form of t^(g.G + k beta) d_j applied to monomial (x) w_h.

        Returns:
            tuple: ({(monomial, h): coefficient}, exact) where exact is False
                once a term was discarded for leaving the box.
        """
        weight_g, weight_k = self._weight(monomial, h)
        target_g, target_k = add(weight_g, g), weight_k + k
        if target_k > 0:
            return {}, True
        if not self._in_box(target_g, target_k):
            return {}, False

        if k < 0:
            key = (-k, g, j)
            if not monomial or key >= monomial[0]:
                if _norm(g) > self.B:
                    return {}, False
                return {((key,) + monomial, h): sympy.Integer(1)}, True

        if not monomial:
            # k == 0: the level algebra acts on X
            if self.X == "trivial":
                return {}, True
            c = tensor_action_coefficient(
                self.lam,
                self.b,
                self._ambient(g, 0),
                unit_vector(j, self.n),
                self._ambient(h, 0),
            )
            if is_zero(c):
                return {}, True
            h_new = add(h, g)
            if _norm(h_new) > self.B:
                return {}, False
            return {((), h_new): c}, True

        # e y1 rest = y1 (e rest) + [e, y1] rest
        (d1, g1, j1), rest = monomial[0], monomial[1:]
        result = {}
        inner, exact = self._apply(g, k, j, rest, h)
        for (m, h_inner), c in inner.items():
            outer, outer_exact = self._apply(g1, -d1, j1, m, h_inner)
            exact = exact and outer_exact
            for vector, c_outer in outer.items():
                result[vector] = result.get(vector, 0) + c * c_outer

        terms = basis_bracket(self._ambient(g, k), j, self._ambient(g1, -d1), j1)
        for grade, index, coefficient in terms:
            g_bracket, k_bracket = self._grade_coordinates(grade)
            image, image_exact = self._apply(g_bracket, k_bracket, index, rest, h)
            exact = exact and image_exact
            for vector, c in image.items():
                result[vector] = result.get(vector, 0) + coefficient * c

        result = {vector: normalize(c) for vector, c in result.items()}
        return {vector: c for vector, c in result.items() if c != 0}, exact

    def act(self, x: WittElement, offset: LatticeVector) -> ActionMatrix:
        alpha = x.grade()
        u = x.component(alpha)
        target = add(offset, alpha)
        source_basis = self.basis(offset)
        target_index = {vector: i for i, vector in enumerate(self.basis(target))}
        matrix = sympy.zeros(len(target_index), len(source_basis))

        g, k = self._grade_coordinates(alpha)
        exact = True
        for column, (monomial, h) in enumerate(source_basis):
            for j, u_j in enumerate(u):
                if is_zero(u_j):
                    continue
                image, image_exact = self._apply(g, k, j, monomial, h)
                exact = exact and image_exact
                for vector, c in image.items():
                    if vector not in target_index:
                        raise RuntimeError(
                            f"Straightening produced {vector} outside the basis at {target}."
                        )
                    matrix[target_index[vector], column] += u_j * c

        return ActionMatrix(offset, target, matrix.applyfunc(normalize), exact)

    def window_fits(self, box: Box) -> bool:
        # the construction region |g|_inf <= B, k >= -K is convex: check vertices
        for vertex in itertools.product(*zip(box.lower, box.upper)):
            g, k = self.frame_coordinates(vertex)
            if k < -self.K or _norm(g) > self.B:
                return False
        return True

    def max_window_radius(self) -> int:
        radius = 0
        while self.window_fits(Box.cube(self.n, radius + 1)):
            radius += 1
        return radius

    def analytic_certificate(self) -> tuple[LatticeVector, LatticeVector]:
        """
        (a, b) with a . (mu - b) = k(mu): the support lies in b + Z^(a)_{-0}.
        """
        a = normalize_certificate([row[-1] for row in self._inverse.rows])
        return a, self.top_offset

    def top_level_offsets(self) -> list[LatticeVector]:
        return [self.offset_of(g, 0) for g in self._g_range()]

    def offset_of(self, g: Sequence[int], k: int) -> LatticeVector:
        return add(self._ambient(g, k), self.top_offset)

    def descriptor(self) -> dict:
        descriptor = {
            "family": self.family,
            "n": self.n,
            "G": [list(g) for g in self.G],
            "beta": list(self.beta),
            "X": self.X,
            "K": self.K,
            "B": self.B,
            "top_offset": list(self.top_offset),
        }
        if self.X == "tensor":
            descriptor["lambda"] = [scalar_to_str(c) for c in self.lam]
            descriptor["b"] = scalar_to_str(self.b)
        return descriptor


def build_truncated_verma(
    G: Sequence[Sequence[int]],
    beta: Sequence[int],
    X: str = "trivial",
    K: int = 4,
    B: int = 4,
    lam: Optional[Sequence] = None,
    b=0,
) -> TruncatedVerma:
    return TruncatedVerma(G, beta, X=X, K=K, B=B, lam=lam, b=b)


def build_shifted_verma(
    G: Sequence[Sequence[int]],
    beta: Sequence[int],
    top_offset: Sequence[int],
    X: str = "trivial",
    K: int = 4,
    B: int = 4,
    lam: Optional[Sequence] = None,
    b=0,
) -> TruncatedVerma:
    """
    Truncated Verma module whose top level sits at top_offset instead of 0.
    """
    return TruncatedVerma(G, beta, X=X, K=K, B=B, lam=lam, b=b, top_offset=top_offset)


def partition_counts(K: int) -> list[int]:
    """
    Number of partitions of 0..K by direct enumeration of nonincreasing part lists.
    """

    def count(remaining: int, largest: int) -> int:
        if remaining == 0:
            return 1
        return sum(count(remaining - part, part) for part in range(min(largest, remaining), 0, -1))

    return [count(k, k) for k in range(K + 1)]
