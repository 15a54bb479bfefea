import math
from enum import Enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from source.lattice.geometry import (
    LatticeVector,
    as_lattice_vector,
    as_rational_vector,
    check_dimensions,
    dot,
    sub,
    scale,
    unit_vector,
)
from source.lattice.exact_lp import cone_separator, minimal_nonnegative_combination


class MonoidStatus(Enum):
    GENERATES = "generates"
    PROVEN_FALSE = "proven-false"
    BOUND_EXHAUSTED = "bound-exhausted"


@dataclass(frozen=True)
class SemigroupGenerators:
    """
    The vectors beta_i^{+-} = +-e_i - k beta, listed as (1,+), (1,-), (2,+), ...
    """

    beta: LatticeVector
    normal: tuple[Fraction, ...]
    vectors: tuple[LatticeVector, ...]
    multipliers: tuple[int, ...]

    @property
    def max_multiplier(self) -> int:
        return max(self.multipliers)

    def generating_set(self) -> list[LatticeVector]:
        return [self.beta] + list(self.vectors)


@dataclass(frozen=True)
class MonoidGeneration:
    generates: bool
    status: MonoidStatus
    generators: tuple[LatticeVector, ...]
    witnesses: dict = field(default_factory=dict)
    unreachable: Optional[LatticeVector] = None
    separator: Optional[LatticeVector] = None

    def witness_length(self, target: LatticeVector) -> int:
        return sum(self.witnesses[target])


def minimal_multiplier(a: Sequence, alpha: LatticeVector, beta: LatticeVector) -> int:
    """
    Least k >= 0 with dot(a, alpha - k beta) > 0, given dot(a, beta) < 0.
    """
    drop = -dot(a, beta)
    value = dot(a, alpha)
    if value > 0:
        return 0
    # value + k * drop > 0
    return math.floor(-value / drop) + 1


def semigroup_generators_for(beta: LatticeVector, a: Sequence) -> SemigroupGenerators:
    """
    Build the 2n vectors beta_i^{+-} = +-e_i - k beta lying in Z^(a)_+.

    Args:
        beta (LatticeVector): Vector with dot(a, beta) < 0.
        a: Rational normal.

    Returns:
        SemigroupGenerators: The vectors with their minimal multipliers k.
    """
    beta = as_lattice_vector(beta)
    a = as_rational_vector(a)
    n = check_dimensions(beta, a)
    if dot(a, beta) >= 0:
        raise ValueError(f"Need dot(a, beta) < 0, got {dot(a, beta)} for a={a}, beta={beta}.")

    vectors, multipliers = [], []
    for i in range(n):
        for sign in (1, -1):
            e = unit_vector(i, n, sign)
            k = minimal_multiplier(a, e, beta)
            vector = sub(e, scale(k, beta))
            assert dot(a, vector) > 0
            vectors.append(vector)
            multipliers.append(k)

    return SemigroupGenerators(beta, a, tuple(vectors), tuple(multipliers))


def generates_monoid(
    S: Sequence[LatticeVector], search_bound: int, max_nodes: int = 2000
) -> MonoidGeneration:
    """
    Decide whether S generates Z^n as a monoid.

    Every +-e_i is searched as a nonnegative integer combination of S of total
    length at most search_bound. A target outside the rational cone of S is
    proven unreachable by an exact separating functional.

    Args:
        S: Nonempty finite set of lattice vectors.
        search_bound: Cap on the word length per target.
        max_nodes: Cap on the branch and bound tree per target.

    Returns:
        MonoidGeneration: Verdict, status and per-target witness counts
            (aligned with the sorted generator list).
    """
    generators = tuple(sorted(set(as_lattice_vector(s) for s in S)))
    if not generators:
        raise ValueError("generates_monoid needs a nonempty set S.")
    if search_bound < 1:
        raise ValueError(f"search_bound must be positive, got {search_bound}.")
    n = check_dimensions(*generators)

    witnesses = {}
    exhausted_target = None
    for i in range(n):
        for sign in (1, -1):
            target = unit_vector(i, n, sign)
            separator = cone_separator(generators, target)
            if separator is not None:
                return MonoidGeneration(
                    False,
                    MonoidStatus.PROVEN_FALSE,
                    generators,
                    witnesses,
                    unreachable=target,
                    separator=separator,
                )

            solution = minimal_nonnegative_combination(
                generators, target, search_bound, max_nodes
            )
            if solution.counts is None:
                exhausted_target = exhausted_target or target
                continue
            witnesses[target] = solution.counts

    if exhausted_target is not None:
        return MonoidGeneration(
            False,
            MonoidStatus.BOUND_EXHAUSTED,
            generators,
            witnesses,
            unreachable=exhausted_target,
        )
    return MonoidGeneration(True, MonoidStatus.GENERATES, generators, witnesses)
