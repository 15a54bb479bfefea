from dataclasses import dataclass
from typing import Optional, Sequence

from source.lattice.exact_lp import convex_hull_contains
from source.lattice.geometry import Box, LatticeVector
from source.supports.checks import CheckResult
from source.supports.classify import classify_support
from source.supports.window import SupportWindow
from source.utils.utils import format_lattice_vector
from source.wmod.families import build_module

TAGS = ["fin", "inf", "boundary-undetermined"]


@dataclass(frozen=True)
class MixedSupport:
    """
    Finite/infinite tagging of the offsets of a box, from two truncation radii.

    An offset is "fin" when its dimension agrees at both radii (zero dimensions
    included), "inf" when it strictly grows, and "boundary-undetermined" when it
    sits at the edge of the smaller truncation.
    """

    box: Box
    radii: tuple[int, int]
    tags: dict
    zero_weight_offset: Optional[LatticeVector] = None

    def __post_init__(self):
        for offset, tag in self.tags.items():
            if tag not in TAGS:
                raise ValueError(f"Tag {tag} at offset {offset} not recognized.")

    def tagged(self, tag: str) -> list[LatticeVector]:
        return sorted(x for x, t in self.tags.items() if t == tag)

    def has_both(self) -> bool:
        return bool(self.tagged("fin")) and bool(self.tagged("inf"))

    def to_json(self) -> dict:
        return {
            "radii": list(self.radii),
            "tags": [
                {"offset": format_lattice_vector(x), "tag": self.tags[x]}
                for x in sorted(self.tags)
            ],
        }


def mixed_refine(descriptor: dict, box: Box, radii: Sequence[int]) -> MixedSupport:
    """
    Tag every offset of the box by comparing the family at two G-radii.

    Args:
        descriptor (dict): Family descriptor; its "B" is replaced by each radius.
        box (Box): Offsets to tag; must fit the smaller truncation.
        radii (Sequence[int]): B1 < B2.

    Returns:
        MixedSupport: The tagging.
    """
    B1, B2 = (int(r) for r in radii)
    if not B1 < B2:
        raise ValueError(f"Radii must satisfy B1 < B2, got {B1}, {B2}.")

    small = build_module({**descriptor, "B": B1})
    large = build_module({**descriptor, "B": B2})
    if not small.window_fits(box):
        raise ValueError(f"Window {box.to_json()} exceeds the truncation at radius {B1}.")

    tags = {}
    for x in box.points():
        d1, d2 = small.dim(x), large.dim(x)
        if small.near_truncation_edge(x) or d2 < d1:
            tags[x] = "boundary-undetermined"
        elif d2 > d1:
            tags[x] = "inf"
        else:
            tags[x] = "fin"
    return MixedSupport(box, (B1, B2), tags, small.zero_weight_offset)


def finsupp_convexity_check(M: MixedSupport, W: SupportWindow) -> CheckResult:
    """
    An inf-tagged offset in the convex hull of fin-tagged offsets must be the zero weight.
    """
    if M.box != W.box:
        raise ValueError("Mixed tagging and window cover different boxes.")
    result = CheckResult("finsupp-convexity")
    finite = M.tagged("fin")
    if not finite:
        return result

    lower = [min(x[i] for x in finite) for i in range(W.n)]
    upper = [max(x[i] for x in finite) for i in range(W.n)]
    for mu in M.tagged("inf"):
        if W.is_zero_weight(mu):
            continue
        if any(not lo <= c <= hi for lo, c, hi in zip(lower, mu, upper)):
            continue
        if convex_hull_contains(finite, mu):
            result.fail({"offset": format_lattice_vector(mu), "tag": "inf"})
    return result


def mixed_punctured_check(M: MixedSupport, W: SupportWindow) -> CheckResult:
    """
    For n = 2, a punctured window with an inf tag must have every supported,
    non-boundary offset inf-tagged.
    """
    result = CheckResult("mixed-punctured")
    if W.n != 2 or not M.tagged("inf"):
        return result
    if classify_support(W).verdict != "Punctured":
        return result
    for x in W.support():
        if x in W.boundary or M.tags.get(x) == "boundary-undetermined":
            continue
        if M.tags.get(x) != "inf":
            result.fail({"offset": format_lattice_vector(x), "tag": M.tags.get(x)})
    return result
