import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from source.lattice.exact_lp import convex_hull_contains
from source.lattice.geometry import (
    LatticeVector,
    Order,
    UnimodularBasis,
    add,
    apply_basis,
    componentwise_order,
    dot,
    scale,
    sub,
)
from source.supports.window import SupportWindow
from source.utils.utils import format_lattice_vector

MIN_RAY_POINTS = 5


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    violations: list = field(default_factory=list)

    def fail(self, violation: dict) -> None:
        self.passed = False
        self.violations.append(violation)

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "violations": self.violations}


def _reliable_complement(W: SupportWindow) -> list[LatticeVector]:
    # a zero dimension on the truncation boundary may be an artifact
    return [x for x in W.complement() if x not in W.boundary]


def complement_convexity_check(W: SupportWindow) -> CheckResult:
    """
    Every offset in the convex hull of the complement must be in the complement
    or be the zero weight.

    Args:
        W (SupportWindow): The window; unsupported offsets on the truncation
            boundary are left out of the complement.

    Returns:
        CheckResult: Violations list the supported offsets inside the hull.
    """
    result = CheckResult("complement-convexity")
    holes = _reliable_complement(W)
    if not holes:
        return result

    lower = [min(x[i] for x in holes) for i in range(W.n)]
    upper = [max(x[i] for x in holes) for i in range(W.n)]
    for mu in W.support():
        if W.is_zero_weight(mu):
            continue
        if any(not lo <= c <= hi for lo, c, hi in zip(lower, mu, upper)):
            continue
        if convex_hull_contains(holes, mu):
            result.fail({"offset": format_lattice_vector(mu), "dim": W.dim(mu)})
    return result


@dataclass(frozen=True)
class RayProfile:
    """
    Shape of {x : mu + x alpha supported} inside the window.

    kind is "UpBounded" (supported exactly for x <= m), "AllWindow" or "Irregular";
    pattern lists (x, supported) over the window points of the ray.
    """

    kind: str
    m: Optional[int]
    pattern: tuple[tuple[int, bool], ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "pattern": [[x, supported] for x, supported in self.pattern],
        }


def ray_points(W: SupportWindow, mu: LatticeVector, alpha: LatticeVector) -> list[int]:
    """
    The integers x with mu + x alpha inside the window, in increasing order.
    """
    low, high = None, None
    for c, a, lo, hi in zip(mu, alpha, W.box.lower, W.box.upper):
        if a == 0:
            if not lo <= c <= hi:
                return []
            continue
        first, last = sorted((Fraction(lo - c, a), Fraction(hi - c, a)))
        first, last = math.ceil(first), math.floor(last)
        low = first if low is None else max(low, first)
        high = last if high is None else min(high, last)
    if low is None or low > high:
        return []
    return list(range(low, high + 1))


def ray_profile(W: SupportWindow, mu: LatticeVector, alpha: LatticeVector) -> RayProfile:
    """
    Profile of the ray mu + Z alpha through a supported offset.

    Args:
        W (SupportWindow): The window.
        mu (LatticeVector): A supported offset.
        alpha (LatticeVector): Direction with all components positive.

    Returns:
        RayProfile: UpBounded(m), AllWindow or Irregular with the pattern.
    """
    mu, alpha = tuple(mu), tuple(alpha)
    if len(alpha) != W.n or any(c < 1 for c in alpha):
        raise ValueError(f"Ray direction {alpha} must have all components positive.")
    if not W.supported(mu):
        raise ValueError(f"Offset {mu} is not supported in the window.")

    points = ray_points(W, mu, alpha)
    if len(points) < MIN_RAY_POINTS:
        raise ValueError(
            f"Ray from {mu} along {alpha} meets the window in {len(points)} points, "
            f"need {MIN_RAY_POINTS}."
        )

    pattern = tuple((x, W.supported(add(mu, scale(x, alpha)))) for x in points)
    supported = [x for x, s in pattern if s]
    if len(supported) == len(pattern):
        return RayProfile("AllWindow", None, pattern)
    m = max(supported)
    if all(s == (x <= m) for x, s in pattern):
        return RayProfile("UpBounded", m, pattern)
    return RayProfile("Irregular", None, pattern)


def upset_complement_check(
    W: SupportWindow, basis: Optional[UnimodularBasis] = None
) -> CheckResult:
    """
    For offsets x <= y (compared in the coordinates of basis), an unsupported x
    forces y to be unsupported.

    Args:
        W (SupportWindow): The window.
        basis (UnimodularBasis, optional): Coordinates to compare in; identity by default.

    Returns:
        CheckResult: Violations list the pairs (x, y).
    """
    result = CheckResult("upset-complement")
    reliable = [x for x in W.offsets() if W.supported(x) or x not in W.boundary]
    coordinates = {
        x: x if basis is None else apply_basis(basis, x) for x in reliable
    }
    holes = [x for x in reliable if not W.supported(x)]
    support = [x for x in reliable if W.supported(x)]
    for x in holes:
        for y in support:
            if componentwise_order(coordinates[x], coordinates[y]) in (
                Order.LT,
                Order.LEQ,
            ):
                result.fail(
                    {"unsupported": format_lattice_vector(x), "supported": format_lattice_vector(y)}
                )
    return result


def ray_meets_support(
    W: SupportWindow, nu: LatticeVector, beta: LatticeVector
) -> Optional[LatticeVector]:
    """
    First supported offset among nu + k beta, k = 1, 2, ..., inside the window.
    """
    if not any(beta):
        raise ValueError("Ray direction beta must be nonzero.")
    point = add(tuple(nu), tuple(beta))
    while W.box.contains(point):
        if W.supported(point):
            return point
        point = add(point, tuple(beta))
    return None


def halfspace_propagation_check(W: SupportWindow, a: Sequence) -> CheckResult:
    """
    Unsupported offsets propagate against the normal: if mu is unsupported and
    dot(a, beta) < 0, then mu - beta is unsupported as well.

    Args:
        W (SupportWindow): The window; unsupported boundary offsets are skipped.
        a (Sequence): Cut normal.

    Returns:
        CheckResult: Violations carry mu, beta and the first supported offset on
            the ray mu - k beta.
    """
    result = CheckResult("halfspace-propagation")
    offsets = W.offsets()
    for mu in _reliable_complement(W):
        level = dot(a, mu)
        for nu in offsets:
            if dot(a, nu) <= level or not W.supported(nu):
                continue
            beta = sub(mu, nu)
            witness = ray_meets_support(W, mu, scale(-1, beta))
            result.fail(
                {
                    "offset": format_lattice_vector(mu),
                    "beta": format_lattice_vector(beta),
                    "first_supported": None
                    if witness is None
                    else format_lattice_vector(witness),
                }
            )
    return result
