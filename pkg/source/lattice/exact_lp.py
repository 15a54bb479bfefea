import math
from enum import Enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from source.lattice.geometry import (
    LatticeVector,
    RationalVector,
    check_dimensions,
    dot,
    sub,
)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pivot_value = tableau[row][col]
    tableau[row] = [v / pivot_value for v in tableau[row]]
    for i, other in enumerate(tableau):
        if i != row and other[col] != 0:
            factor = other[col]
            tableau[i] = [v - factor * p for v, p in zip(other, tableau[row])]
    basis[row] = col


def _run_simplex(
    tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction], allowed: range
) -> LPStatus:
    # Bland's rule: smallest entering index, smallest leaving basis index on ties.
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            reduced_cost = cost[j] - sum(
                cost[basis[i]] * tableau[i][j] for i in range(len(basis))
            )
            if reduced_cost < 0:
                entering = j
                break
        if entering is None:
            return LPStatus.OPTIMAL

        leaving = None
        best = None
        for i, row in enumerate(tableau):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    best, leaving = ratio, i
        if leaving is None:
            return LPStatus.UNBOUNDED

        _pivot(tableau, basis, leaving, entering)


def solve_lp(
    cost: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """
    Minimize cost.x subject to A_ub x <= b_ub, A_eq x = b_eq and x >= 0, exactly.

    Two-phase tableau simplex over Fraction with Bland's anti-cycling rule.

    Args:
        cost: Objective coefficients, one per variable.
        A_ub, b_ub: Inequality rows and right hand sides.
        A_eq, b_eq: Equality rows and right hand sides.

    Returns:
        LPResult: Status, optimal point and optimal value.
    """
    n_vars = len(cost)
    n_slack = len(A_ub)
    width = n_vars + n_slack

    rows = []
    for k, (row, rhs) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(1)
        rows.append(([Fraction(v) for v in row] + slack, Fraction(rhs)))
    for row, rhs in zip(A_eq, b_eq):
        rows.append(([Fraction(v) for v in row] + [Fraction(0)] * n_slack, Fraction(rhs)))

    for row, _ in rows:
        if len(row) != width:
            raise ValueError(f"Constraint row has {len(row) - n_slack} entries, expected {n_vars}.")

    m = len(rows)
    tableau = []
    for i, (row, rhs) in enumerate(rows):
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        artificial = [Fraction(0)] * m
        artificial[i] = Fraction(1)
        tableau.append(row + artificial + [rhs])
    basis = [width + i for i in range(m)]

    # phase 1: minimize the sum of the artificial variables
    phase_one_cost = [Fraction(0)] * width + [Fraction(1)] * m
    _run_simplex(tableau, basis, phase_one_cost, range(width + m))
    infeasibility = sum(tableau[i][-1] for i in range(m) if basis[i] >= width)
    if infeasibility > 0:
        return LPResult(LPStatus.INFEASIBLE)

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tableau):
        if basis[i] >= width:
            column = next((j for j in range(width) if tableau[i][j] != 0), None)
            if column is None:
                del tableau[i]
                del basis[i]
                continue
            _pivot(tableau, basis, i, column)
        i += 1
    tableau = [row[:width] + [row[-1]] for row in tableau]

    phase_two_cost = [Fraction(c) for c in cost] + [Fraction(0)] * n_slack
    status = _run_simplex(tableau, basis, phase_two_cost, range(width))
    if status == LPStatus.UNBOUNDED:
        return LPResult(LPStatus.UNBOUNDED)

    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = tableau[i][-1]
    x = tuple(x[:n_vars])
    value = sum((Fraction(c) * v for c, v in zip(cost, x)), Fraction(0))
    return LPResult(LPStatus.OPTIMAL, x, value)


def _free_variable_rows(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    # a = a_plus - a_minus with both parts nonnegative
    return [[Fraction(v) for v in row] + [-Fraction(v) for v in row] for row in rows]


def _recombine(x: Sequence[Fraction], n: int) -> RationalVector:
    return tuple(x[i] - x[n + i] for i in range(n))


def normalize_certificate(a: Sequence) -> LatticeVector:
    """
    Scale a rational normal by a positive factor to a primitive integer vector.

    Only positive scaling is applied, so every strict or closed inequality the
    normal satisfies survives normalization.

    Args:
        a: Nonzero rational vector.

    Returns:
        LatticeVector: Primitive integer vector pointing in the same direction.
    """
    a = [Fraction(c) for c in a]
    if all(c == 0 for c in a):
        raise ValueError("Cannot normalize the zero vector.")
    denominator = math.lcm(*(c.denominator for c in a))
    integral = [int(c * denominator) for c in a]
    divisor = math.gcd(*integral)
    return tuple(c // divisor for c in integral)


def convex_hull_contains(points: Sequence[LatticeVector], q: LatticeVector) -> bool:
    """
    Decide whether q is a convex rational combination of points (boundary inclusive).

    Args:
        points: Nonempty finite set of lattice points.
        q: Query point.

    Returns:
        bool: True iff q lies in the convex hull of points.
    """
    points = sorted(set(tuple(p) for p in points))
    if not points:
        raise ValueError("convex_hull_contains needs at least one point.")
    n = check_dimensions(*points, q)

    A_eq = [[p[i] for p in points] for i in range(n)] + [[1] * len(points)]
    b_eq = list(q) + [1]
    result = solve_lp([0] * len(points), A_eq=A_eq, b_eq=b_eq)
    return result.status == LPStatus.OPTIMAL


def separating_hyperplane(
    A: Sequence[LatticeVector], mu: LatticeVector
) -> Optional[LatticeVector]:
    """
    Find a with dot(a, x - mu) > 0 for all x in A, or None.

    The LP minimizes the l1 norm of a subject to dot(a, x - mu) >= 1, which
    keeps the certificate small; the result is then scaled to a primitive
    integer vector and re-verified exactly.

    Args:
        A: Nonempty finite set of lattice points.
        mu: The point to separate from A.

    Returns:
        LatticeVector | None: A strict separating normal, or None if mu lies in
            the convex hull of A.
    """
    A = sorted(set(tuple(x) for x in A))
    if not A:
        raise ValueError("separating_hyperplane needs a nonempty set A.")
    n = check_dimensions(*A, mu)

    differences = [sub(x, mu) for x in A]
    A_ub = _free_variable_rows([[-c for c in d] for d in differences])
    b_ub = [-1] * len(differences)
    result = solve_lp([1] * (2 * n), A_ub=A_ub, b_ub=b_ub)
    if result.status != LPStatus.OPTIMAL:
        return None

    a = normalize_certificate(_recombine(result.x, n))
    if not all(dot(a, d) > 0 for d in differences):
        raise RuntimeError(f"Separator {a} failed exact re-verification.")
    return a


def cone_separator(
    generators: Sequence[LatticeVector], target: LatticeVector
) -> Optional[LatticeVector]:
    """
    Find a with dot(a, s) >= 0 for every generator s and dot(a, target) < 0.

    Such an a proves that target lies outside the rational cone spanned by the
    generators, hence outside the monoid they generate.
    """
    n = check_dimensions(*generators, target)
    rows = [[-c for c in s] for s in generators] + [list(target)]
    A_ub = _free_variable_rows(rows)
    b_ub = [0] * len(generators) + [-1]
    result = solve_lp([1] * (2 * n), A_ub=A_ub, b_ub=b_ub)
    if result.status != LPStatus.OPTIMAL:
        return None
    a = normalize_certificate(_recombine(result.x, n))
    if not (all(dot(a, s) >= 0 for s in generators) and dot(a, target) < 0):
        raise RuntimeError(f"Cone separator {a} failed exact re-verification.")
    return a


def maximize_bounded_normal(
    closed_side: Sequence[Sequence], objective_points: Sequence[Sequence]
) -> Optional[RationalVector]:
    """
    Maximize sum_y dot(a, y) over -1 <= a_i <= 1 subject to dot(a, x) <= 0.

    Args:
        closed_side: Vectors x that must satisfy dot(a, x) <= 0.
        objective_points: Vectors y whose total a-value is maximized.

    Returns:
        RationalVector | None: An optimal nonzero a, or None if only a = 0 is optimal.
    """
    n = check_dimensions(*closed_side, *objective_points)
    total = [sum(Fraction(y[i]) for y in objective_points) for i in range(n)]
    cost = [-c for c in total] + list(total)

    rows = [list(x) for x in closed_side]
    bound_rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        bound_rows.append(e)
        bound_rows.append([-c for c in e])
    A_ub = _free_variable_rows(rows + bound_rows)
    b_ub = [0] * len(rows) + [1] * (2 * n)
    result = solve_lp(cost, A_ub=A_ub, b_ub=b_ub)
    if result.status != LPStatus.OPTIMAL:
        return None
    a = _recombine(result.x, n)
    if all(c == 0 for c in a):
        return None
    return a


@dataclass(frozen=True)
class IntegerSolution:
    counts: Optional[tuple[int, ...]]
    exhausted: bool
    relaxation_feasible: bool


def minimal_nonnegative_combination(
    generators: Sequence[LatticeVector],
    target: LatticeVector,
    max_length: int,
    max_nodes: int = 2000,
) -> IntegerSolution:
    """
    Find nonnegative integers c minimizing sum(c) with sum_s c_s s = target.

    Branch and bound over the exact LP relaxation; the total word length is
    capped at max_length and the search tree at max_nodes.

    Args:
        generators: Finite list of lattice vectors.
        target: Lattice vector to express.
        max_length: Cap on sum(c).
        max_nodes: Cap on the number of LP relaxations solved.

    Returns:
        IntegerSolution: counts (or None), whether a cap stopped the search, and
            whether the root relaxation was feasible at all.
    """
    n = check_dimensions(*generators, target)
    k = len(generators)
    A_eq = [[s[i] for s in generators] for i in range(n)]
    b_eq = list(target)
    base_ub = [[1] * k]
    base_rhs = [max_length]

    best = None
    best_value = None
    exhausted = False
    root_feasible = False
    nodes = 0

    queue = deque([((), ())])
    while queue:
        if nodes >= max_nodes:
            exhausted = True
            break
        extra_rows, extra_rhs = queue.pop()
        nodes += 1
        result = solve_lp(
            [1] * k,
            A_ub=base_ub + list(extra_rows),
            b_ub=base_rhs + list(extra_rhs),
            A_eq=A_eq,
            b_eq=b_eq,
        )
        if result.status != LPStatus.OPTIMAL:
            continue
        root_feasible = True
        if best_value is not None and math.ceil(result.value) >= best_value:
            continue

        fractional = next(
            (i for i, v in enumerate(result.x) if v.denominator != 1), None
        )
        if fractional is None:
            best = tuple(int(v) for v in result.x)
            best_value = sum(best)
            continue

        value = result.x[fractional]
        down = [0] * k
        down[fractional] = 1
        up = [0] * k
        up[fractional] = -1
        queue.append((extra_rows + (tuple(up),), extra_rhs + (-math.ceil(value),)))
        queue.append((extra_rows + (tuple(down),), extra_rhs + (math.floor(value),)))

    return IntegerSolution(best, exhausted, root_feasible)
