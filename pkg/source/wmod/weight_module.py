import sympy
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Sequence

from source.lattice.geometry import Box, LatticeVector, add, as_lattice_vector
from source.witt.algebra import WittElement
from source.witt.scalars import Scalar, is_integer_vector, scalar_to_str


@dataclass(frozen=True)
class ActionMatrix:
    """
    Matrix of a single-grade element acting V_{lambda+source} -> V_{lambda+target}.

    Attributes:
        source: Offset of the domain weight space.
        target: Offset of the codomain weight space (source + grade).
        matrix: Exact sympy matrix of shape (dim(target), dim(source)).
        exact: False when truncation may have discarded terms.
    """

    source: LatticeVector
    target: LatticeVector
    matrix: sympy.Matrix
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "matrix": [
                [scalar_to_str(self.matrix[i, j]) for j in range(self.matrix.cols)]
                for i in range(self.matrix.rows)
            ],
            "exact": self.exact,
        }


class WeightModule(ABC):
    """
    A weight module over W_n with support in the coset coset_rep + Z^n.

    Weight spaces are addressed by their offset mu, i.e. V_{coset_rep + mu}.
    Subclasses provide the dimension of every weight space and the action of
    homogeneous elements in fixed bases.
    """

    n: int
    family: str
    coset_rep: tuple[Scalar, ...]

    @abstractmethod
    def dim(self, offset: LatticeVector) -> int:
        pass

    @abstractmethod
    def act(self, x: WittElement, offset: LatticeVector) -> ActionMatrix:
        pass

    def is_exact(self, x: WittElement, offset: LatticeVector) -> bool:
        return self.act(x, offset).exact

    def dimension_is_exact(self, offset: LatticeVector) -> bool:
        return True

    def near_truncation_edge(self, offset: LatticeVector) -> bool:
        return False

    def max_window_radius(self) -> Optional[int]:
        """
        Largest r such that the cube [-r, r]^n is inside the construction box, or None if unbounded.
        """
        return None

    def window_fits(self, box: Box) -> bool:
        return True

    def analytic_certificate(self) -> Optional[tuple[LatticeVector, LatticeVector]]:
        """
        A global cut certificate (a, b) known from the construction, if any.
        """
        return None

    @property
    def zero_weight_offset(self) -> Optional[LatticeVector]:
        """
        The offset mu0 with coset_rep + mu0 = 0, present iff coset_rep is integral.
        """
        if not is_integer_vector(self.coset_rep):
            return None
        return tuple(-int(c) for c in self.coset_rep)

    def descriptor(self) -> dict:
        return {"family": self.family, "n": self.n}


def _check_offset(V: WeightModule, offset: Sequence[int]) -> LatticeVector:
    offset = as_lattice_vector(offset)
    if len(offset) != V.n:
        raise ValueError(f"Offset {offset} does not match module rank {V.n}.")
    return offset


def action_matrix(V: WeightModule, x: WittElement, mu: Sequence[int]) -> ActionMatrix:
    """
    Matrix of the action of x on V_{lambda+mu}.

    Args:
        V (WeightModule): The module.
        x (WittElement): Homogeneous element of a single grade alpha.
        mu (Sequence[int]): Offset of the source weight space.

    Returns:
        ActionMatrix: Map V_{lambda+mu} -> V_{lambda+mu+alpha} in the stored bases.
    """
    mu = _check_offset(V, mu)
    if x.n != V.n:
        raise ValueError(f"Element of W_{x.n} cannot act on a module over W_{V.n}.")
    alpha = x.grade()

    result = V.act(x, mu)
    target = add(mu, alpha)
    if result.target != target or result.matrix.shape != (V.dim(target), V.dim(mu)):
        raise RuntimeError(
            f"Action of grade {alpha} on offset {mu} produced shape {result.matrix.shape} "
            f"into {result.target}."
        )
    return result


def apply_to_vector(
    V: WeightModule, x: WittElement, mu: Sequence[int], v: sympy.Matrix
) -> tuple[LatticeVector, sympy.Matrix, bool]:
    """
    Apply x to the column vector v in V_{lambda+mu}.

    Returns:
        tuple: (target offset, image vector, exactness flag).
    """
    result = action_matrix(V, x, mu)
    if v.shape != (result.matrix.cols, 1):
        raise ValueError(f"Vector of shape {v.shape} is not in V at offset {tuple(mu)}.")
    image = (result.matrix * v).applyfunc(sympy.cancel)
    return result.target, image, result.exact


def action_kernel(
    V: WeightModule, mu: Sequence[int], S: Sequence[WittElement]
) -> list[sympy.Matrix]:
    """
    Exact basis of {v in V_{lambda+mu} : x v = 0 for all x in S}.

    Args:
        V (WeightModule): The module.
        mu (Sequence[int]): Offset of the weight space.
        S (Sequence[WittElement]): Homogeneous elements.

    Returns:
        list[sympy.Matrix]: Column vectors spanning the common kernel.
    """
    mu = _check_offset(V, mu)
    dimension = V.dim(mu)
    if dimension == 0:
        return []

    blocks = [action_matrix(V, x, mu).matrix for x in S]
    blocks = [block for block in blocks if block.rows > 0]
    if not blocks:
        return [sympy.eye(dimension)[:, i] for i in range(dimension)]

    stacked = sympy.Matrix.vstack(*blocks)
    return [v.applyfunc(sympy.cancel) for v in stacked.nullspace(simplify=True)]
