import sympy
from dataclasses import dataclass
from typing import Optional, Sequence

from source.lattice.geometry import (
    Box,
    LatticeVector,
    UnimodularBasis,
    add,
    as_lattice_vector,
    sub,
    unit_vector,
)
from source.utils.utils import format_lattice_vector
from source.wmod.tensor import TensorModule
from source.wmod.weight_module import WeightModule, action_kernel, action_matrix
from source.witt.algebra import WittElement
from source.witt.scalars import scalar_to_str


@dataclass(frozen=True)
class GhwWitness:
    """
    A vector v in V_{lambda+offset} killed by every grade alpha > (N, ..., N).

    scope is "symbolic" for tensor families (window independent) and "window"
    when the claim was only checked on the grades reachable inside window.
    """

    offset: LatticeVector
    vector: sympy.Matrix
    N: int
    basis: UnimodularBasis
    window: Box
    scope: str

    def to_json(self) -> dict:
        return {
            "offset": format_lattice_vector(self.offset),
            "N": self.N,
            "basis": [list(row) for row in self.basis.rows],
            "scope": self.scope,
            "vector": [scalar_to_str(c) for c in self.vector],
        }


def _window_grades(mu: LatticeVector, window: Box) -> list[LatticeVector]:
    # grades alpha > (0, ..., 0) whose target stays in the window
    return [
        alpha
        for alpha in (sub(x, mu) for x in window.points())
        if all(c >= 1 for c in alpha)
    ]


def is_ghw(V: WeightModule, mu: Sequence[int], v: sympy.Matrix, window: Box) -> Optional[int]:
    """
    Least N such that every window grade alpha > (N, ..., N) annihilates v.

    Grades whose action is not exact under truncation are not evaluated. For
    tensor modules the answer is symbolic and does not depend on the window.

    Args:
        V (WeightModule): The module.
        mu (Sequence[int]): Offset of v.
        v (sympy.Matrix): Nonzero column vector in the basis of V_{lambda+mu}.
        window (Box): Window bounding the grades that are tested.

    Returns:
        int | None: The bound, or None if even the largest window N fails.
    """
    mu = as_lattice_vector(mu)
    if v.shape != (V.dim(mu), 1):
        raise ValueError(f"Vector of shape {v.shape} is not in V at offset {mu}.")
    if all(sympy.cancel(c) == 0 for c in v):
        raise ValueError(f"The zero vector at offset {mu} is not a GHW candidate.")

    if isinstance(V, TensorModule):
        return V.symbolic_ghw_bound(mu)

    failing, evaluated = [], []
    for alpha in _window_grades(mu, window):
        for j in range(V.n):
            result = action_matrix(V, WittElement.basis(alpha, j), mu)
            if not result.exact:
                continue
            evaluated.append(alpha)
            image = (result.matrix * v).applyfunc(sympy.cancel)
            if any(c != 0 for c in image):
                failing.append(alpha)
                break

    if not failing:
        return 0
    N = max(min(alpha) for alpha in failing)
    if not any(min(alpha) > N for alpha in evaluated):
        return None
    return N


def ghw_propagate_bound(N: int, beta: Sequence[int]) -> int:
    """
    N' = N + sum_i |beta_i| + 1.

    If g_alpha v = 0 for all alpha > (N, ..., N), then g_alpha g_beta v = 0 for
    all alpha > (N', ..., N').
    """
    if N < 0:
        raise ValueError(f"GHW bound must be nonnegative, got {N}.")
    return N + sum(abs(c) for c in beta) + 1


def combined_bound(N_beta: int, N_pm: Sequence[int]) -> int:
    """
    N_beta + sum(N_pm) + 2n + 1 for the annihilation bounds along beta and the
    2n semigroup generators.
    """
    if len(N_pm) == 0 or len(N_pm) % 2 != 0:
        raise ValueError(f"Expected 2n bounds for the semigroup generators, got {len(N_pm)}.")
    if N_beta < 0 or any(N < 0 for N in N_pm):
        raise ValueError("Annihilation bounds must be nonnegative.")
    return N_beta + sum(N_pm) + len(N_pm) + 1


def lemma1_basis(k: int, n: int) -> UnimodularBasis:
    """
    e'_1 = (k+1) e_1 + e_2, e'_2 = k e_1 + e_2 and e'_j = e'_1 + e_j for j >= 3.

    Args:
        k (int): Nonnegative shift along e_1.
        n (int): Rank, at least 2.

    Returns:
        UnimodularBasis: The new basis (determinant 1).
    """
    if n < 2:
        raise ValueError(f"The e_1/e_2 basis change needs n >= 2, got {n}.")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}.")
    first = tuple([k + 1, 1] + [0] * (n - 2))
    second = tuple([k, 1] + [0] * (n - 2))
    rows = [first, second] + [add(first, unit_vector(j, n)) for j in range(2, n)]
    return UnimodularBasis(tuple(rows))


def lemma5_basis(p: int, n: int) -> UnimodularBasis:
    """
    e'_1 = (p+1, p, ..., p), e'_2 = (p+2, p+1, p, ..., p), e'_i = e'_1 + e_i for i >= 3.
    """
    if n < 2:
        raise ValueError(f"The normalizing basis needs n >= 2, got {n}.")
    if p < 1:
        raise ValueError(f"p must be positive, got {p}.")
    first = tuple([p + 1] + [p] * (n - 1))
    second = tuple([p + 2, p + 1] + [p] * (n - 2))
    rows = [first, second] + [add(first, unit_vector(i, n)) for i in range(2, n)]
    return UnimodularBasis(tuple(rows))


def rank2_candidate_bases() -> list[UnimodularBasis]:
    """
    {e_1, e_1 + e_2} and {alpha + beta, alpha + 2 beta} with alpha = e_1, beta = 2 e_1 + e_2.
    """
    return [
        UnimodularBasis(((1, 0), (1, 1))),
        UnimodularBasis(((3, 1), (5, 2))),
    ]


def candidate_bases(n: int, max_k: int = 3) -> list[UnimodularBasis]:
    bases = [UnimodularBasis.identity(n)]
    if n >= 2:
        bases += [lemma1_basis(k, n) for k in range(1, max_k + 1)]
    if n == 2:
        bases += rank2_candidate_bases()
    return bases


def find_ghw_vector(V: WeightModule, window: Box, max_k: int = 3) -> Optional[GhwWitness]:
    """
    Search the window for a vector killed by g_{e'_i}, i = 1..n, that is a GHW element.

    Candidate bases are the identity, the e_1/e_2 basis changes for k = 1..max_k
    and, for n = 2, the two rank-2 bases. Offsets are scanned by increasing
    dimension, ties broken by decreasing lexicographic order; kernels are only
    trusted where every action involved is exact.

    Args:
        V (WeightModule): The module.
        window (Box): Offsets to scan and grades to test.
        max_k (int): Largest k for the e_1/e_2 basis changes.

    Returns:
        GhwWitness | None: The first witness found.
    """
    if not V.window_fits(window):
        raise ValueError(f"Window {window.to_json()} exceeds the construction box.")
    scope = "symbolic" if isinstance(V, TensorModule) else "window"

    offsets = [x for x in window.points() if V.dim(x) > 0]
    offsets.sort(key=lambda x: tuple(-c for c in x))
    offsets.sort(key=V.dim)

    for basis in candidate_bases(V.n, max_k):
        S = [WittElement.basis(row, j) for row in basis.rows for j in range(V.n)]
        for mu in offsets:
            if not all(action_matrix(V, x, mu).exact for x in S):
                continue
            kernel = action_kernel(V, mu, S)
            if not kernel:
                continue
            v = kernel[0]
            N = is_ghw(V, mu, v, window)
            if N is not None:
                return GhwWitness(mu, v, N, basis, window, scope)
    return None
