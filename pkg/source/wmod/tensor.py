import sympy
from dataclasses import dataclass
from typing import Optional, Sequence

from source.lattice.geometry import LatticeVector, add
from source.wmod.weight_module import ActionMatrix, WeightModule
from source.witt.algebra import WittElement
from source.witt.scalars import (
    Scalar,
    is_integer_vector,
    is_zero,
    normalize,
    scalar_dot,
    scalar_to_str,
    to_scalar,
)

TENSOR_VARIANTS = ["full", "quotient_by_trivial", "punctured_submodule"]


def tensor_action_coefficient(
    lam: Sequence, b, alpha: LatticeVector, u: Sequence, beta_off: LatticeVector
) -> Scalar:
    """
    Coefficient c with t^alpha d_u w_{beta_off} = c w_{beta_off + alpha}.

    c = u . (lambda + beta_off) + b (u . alpha)

    Args:
        lam: Coset representative lambda (Scalar n-vector).
        b: Scalar parameter.
        alpha (LatticeVector): Grade of the acting element.
        u: Direction of the derivation d_u.
        beta_off (LatticeVector): Offset of the basis vector acted on.

    Returns:
        Scalar: The exact coefficient.
    """
    shifted = [to_scalar(l) + c for l, c in zip(lam, beta_off)]
    return normalize(scalar_dot(u, shifted) + to_scalar(b) * scalar_dot(u, alpha))


@dataclass(frozen=True)
class TensorFamily:
    """
    Parameters of a rank-one tensor module F(lambda, b) and the variant to build.

    The two punctured variants require an integral lambda, which is shifted to 0.
    """

    lam: tuple[Scalar, ...]
    b: Scalar
    variant: str = "full"

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(to_scalar(c) for c in self.lam))
        object.__setattr__(self, "b", to_scalar(self.b))

        if self.variant not in TENSOR_VARIANTS:
            raise ValueError(f"Tensor variant {self.variant} not recognized.")
        if self.variant == "full":
            return
        if not is_integer_vector(self.lam):
            raise ValueError(
                f"Variant {self.variant} needs an integral lambda, got "
                f"{[scalar_to_str(c) for c in self.lam]}."
            )
        expected_b = 0 if self.variant == "quotient_by_trivial" else 1
        if not is_zero(self.b - expected_b):
            raise ValueError(
                f"Variant {self.variant} needs b = {expected_b}, got {scalar_to_str(self.b)}."
            )

    @property
    def n(self) -> int:
        return len(self.lam)


class TensorModule(WeightModule):
    """
    F(lambda, b): one-dimensional weight spaces w_mu, mu in Z^n, with
    t^alpha d_u w_mu = (u . (lambda + mu) + b (u . alpha)) w_{mu + alpha}.

    The punctured variants drop w_0 (quotient by the trivial submodule for b = 0,
    the submodule spanned by w_mu, mu != 0, for b = 1).
    """

    def __init__(self, family: TensorFamily) -> None:
        self.tensor_family = family
        self.n = family.n
        self.family = "tensor"
        self.b = family.b
        if family.variant == "full":
            self.coset_rep = family.lam
        else:
            self.coset_rep = tuple(sympy.Integer(0) for _ in range(self.n))

    @property
    def punctured(self) -> bool:
        return self.tensor_family.variant != "full"

    def dim(self, offset: LatticeVector) -> int:
        if self.punctured and all(c == 0 for c in offset):
            return 0
        return 1

    def coefficient(self, alpha: LatticeVector, u: Sequence, mu: LatticeVector) -> Scalar:
        return tensor_action_coefficient(self.coset_rep, self.b, alpha, u, mu)

    def act(self, x: WittElement, offset: LatticeVector) -> ActionMatrix:
        alpha = x.grade()
        target = add(offset, alpha)
        rows, cols = self.dim(target), self.dim(offset)
        if rows == 0 or cols == 0:
            return ActionMatrix(offset, target, sympy.zeros(rows, cols))
        c = self.coefficient(alpha, x.component(alpha), offset)
        return ActionMatrix(offset, target, sympy.Matrix([[c]]))

    def symbolic_ghw_bound(self, offset: LatticeVector) -> Optional[int]:
        """
        Least N with t^alpha d_u w_offset = 0 for all alpha > (N, ..., N) and all u.

        The coefficient vanishes for every u and all large alpha iff b = 0 and
        lambda + offset = 0, in which case every element kills w_offset.
        """
        if self.dim(offset) == 0:
            raise ValueError(f"Weight space at offset {offset} is zero.")
        if is_zero(self.b) and all(
            is_zero(l + c) for l, c in zip(self.coset_rep, offset)
        ):
            return 0
        return None

    def descriptor(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "variant": self.tensor_family.variant,
            "lambda": [scalar_to_str(c) for c in self.tensor_family.lam],
            "b": scalar_to_str(self.b),
        }


def build_tensor_module(family: TensorFamily) -> TensorModule:
    return TensorModule(family)
