import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from source.lattice.exact_lp import maximize_bounded_normal, normalize_certificate
from source.lattice.geometry import LatticeVector, dot, l1_norm, sub
from source.supports.window import SupportWindow
from source.utils.utils import format_lattice_vector, parse_lattice_vector

VERDICTS = ["Dense", "Punctured", "Cut", "Unknown"]
SCOPES = ["window", "analytic"]


@dataclass(frozen=True)
class Classification:
    """
    Verdict on a support window; Cut verdicts carry the certificate (a, b) and its scope.
    """

    verdict: str
    a: Optional[LatticeVector] = None
    b: Optional[LatticeVector] = None
    scope: Optional[str] = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"Verdict {self.verdict} not recognized.")
        if (self.verdict == "Cut") != (self.a is not None):
            raise ValueError("Exactly the Cut verdict carries a certificate.")
        if self.scope is not None and self.scope not in SCOPES:
            raise ValueError(f"Certificate scope {self.scope} not recognized.")

    def certificate_json(self) -> Optional[dict]:
        if self.verdict != "Cut":
            return None
        return {
            "a": format_lattice_vector(self.a),
            "b": format_lattice_vector(self.b),
            "scope": self.scope,
        }

    @classmethod
    def from_json(cls, verdict: str, certificate: Optional[dict]) -> "Classification":
        if certificate is None:
            return cls(verdict)
        return cls(
            verdict,
            parse_lattice_vector(certificate["a"]),
            parse_lattice_vector(certificate["b"]),
            certificate["scope"],
        )


def required_margin(W: SupportWindow) -> int:
    return math.ceil(W.box.size / 4)


def certificate_holds(W: SupportWindow, a: Sequence, b: Sequence[int]) -> bool:
    """
    Whether every supported offset x of W satisfies dot(a, x - b) <= 0.
    """
    return all(dot(a, sub(x, tuple(b))) <= 0 for x in W.support())


def certificate_margin(W: SupportWindow, a: Sequence, b: Sequence[int]) -> int:
    return sum(1 for x in W.complement() if dot(a, sub(x, tuple(b))) > 0)


def _certifies(W: SupportWindow, a: Sequence, b: Sequence[int]) -> bool:
    return certificate_holds(W, a, b) and certificate_margin(W, a, b) >= required_margin(W)


def _small_vectors(n: int, bound: int, norm_cap: Optional[int] = None) -> list[LatticeVector]:
    vectors = itertools.product(range(-bound, bound + 1), repeat=n)
    if norm_cap is not None:
        vectors = (v for v in vectors if l1_norm(v) <= norm_cap)
    return sorted(vectors, key=lambda v: (l1_norm(v), v))


def _primitive_normals(n: int, max_entry: int) -> list[LatticeVector]:
    return [
        a
        for a in _small_vectors(n, max_entry)
        if any(a) and math.gcd(*a) == 1
    ]


def cut_certificate(
    W: SupportWindow, max_shift: int = 2, max_entry: int = 3
) -> Optional[tuple[LatticeVector, LatticeVector]]:
    """
    Find (a, b) with supp(W) inside b + Z^(a)_{-0} and enough unsupported
    offsets strictly on the positive side.

    Shifts b are tried by increasing l1 norm, b = 0 first. For each shift the
    primitive normals with entries in [-max_entry, max_entry] are scanned, then
    an exact LP over the bounded normals is used as a fallback.

    Args:
        W (SupportWindow): The window.
        max_shift (int): Largest l1 norm of b considered.
        max_entry (int): Largest absolute entry of scanned normals.

    Returns:
        tuple | None: A certificate (a, b), or None if none has the margin.
    """
    if not W.complement():
        return None
    shifts = _small_vectors(W.n, max_shift, max_shift)
    normals = _primitive_normals(W.n, max_entry)

    for b in shifts:
        for a in normals:
            if _certifies(W, a, b):
                return a, b

    support = W.support()
    complement = W.complement()
    for b in shifts:
        a = maximize_bounded_normal(
            [sub(x, b) for x in support] or [tuple([0] * W.n)],
            [sub(x, b) for x in complement],
        )
        if a is None:
            continue
        a = normalize_certificate(a)
        if _certifies(W, a, b):
            return a, b
    return None


def classify_support(
    W: SupportWindow, max_shift: int = 2, max_entry: int = 3
) -> Classification:
    """
    Classify the support of a window as Dense, Punctured, Cut or Unknown.

    Args:
        W (SupportWindow): The window.
        max_shift (int): Passed on to cut_certificate.
        max_entry (int): Passed on to cut_certificate.

    Returns:
        Classification: Exactly one verdict. A construction certificate that
            verifies on the window gives analytic scope.
    """
    complement = W.complement()
    if not complement:
        return Classification("Dense")
    if W.zero_weight_offset is not None and complement == [W.zero_weight_offset]:
        return Classification("Punctured")

    if W.family_certificate is not None:
        a, b = W.family_certificate
        if _certifies(W, a, b):
            return Classification("Cut", tuple(a), tuple(b), "analytic")

    certificate = cut_certificate(W, max_shift, max_entry)
    if certificate is not None:
        a, b = certificate
        return Classification("Cut", a, b, "window")
    return Classification("Unknown")
