import sympy
import numpy as np
from fractions import Fraction
from joblib import Parallel, delayed

from source.lattice.geometry import Box, add, dot, exceeds, scale, sub
from source.lattice.monoid import (
    MonoidStatus,
    generates_monoid,
    semigroup_generators_for,
)
from source.ghw.ghw import find_ghw_vector, ghw_propagate_bound, is_ghw, lemma5_basis
from source.supports.checks import (
    MIN_RAY_POINTS,
    complement_convexity_check,
    halfspace_propagation_check,
    ray_points,
    ray_profile,
    upset_complement_check,
)
from source.supports.classify import certificate_holds, classify_support
from source.supports.conjecture import conjecture_search
from source.supports.mixed import finsupp_convexity_check, mixed_refine
from source.supports.window import SupportWindow, support_window
from source.cli.report import SuiteResult
from source.utils.utils import format_lattice_vector, parse_lattice_vector
from source.wmod.families import build_module, default_window, load_catalog
from source.wmod.tensor import TensorFamily, build_tensor_module
from source.wmod.verma import TruncatedVerma, partition_counts
from source.wmod.weight_module import WeightModule, action_matrix, apply_to_vector
from source.witt.algebra import WittElement, basis_bracket, bracket, commutator_on
from source.witt.scalars import to_scalar, to_scalar_vector


def random_rational(rng: np.random.Generator, bound: int = 9) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_grade(rng: np.random.Generator, n: int, bound: int) -> tuple[int, ...]:
    return tuple(int(c) for c in rng.integers(-bound, bound + 1, size=n))


def random_element(
    rng: np.random.Generator, n: int, bound: int, max_terms: int = 2
) -> WittElement:
    terms = [
        (random_grade(rng, n, bound), [random_rational(rng) for _ in range(n)])
        for _ in range(int(rng.integers(1, max_terms + 1)))
    ]
    return WittElement.from_terms(n, terms)


def random_homogeneous(rng: np.random.Generator, n: int, bound: int) -> WittElement:
    return WittElement.monomial(random_grade(rng, n, bound), [random_rational(rng) for _ in range(n)])


def _rank(rng: np.random.Generator, config: dict) -> int:
    return int(rng.integers(1, config["max_rank"] + 1))


def suite_antisymmetry(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("antisymmetry")
    for _ in range(config["samples"]["antisymmetry"]):
        n = _rank(rng, config)
        x = random_element(rng, n, config["exponent_bound"])
        y = random_element(rng, n, config["exponent_bound"])
        result.checked += 1
        if not (bracket(x, y) + bracket(y, x)).is_zero():
            result.fail({"x": x.to_json(), "y": y.to_json()})
    return result


def suite_jacobi(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("jacobi")
    for _ in range(config["samples"]["jacobi"]):
        n = _rank(rng, config)
        x, y, z = (random_element(rng, n, config["exponent_bound"]) for _ in range(3))
        total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        result.checked += 1
        if not total.is_zero():
            result.fail({"x": x.to_json(), "y": y.to_json(), "z": z.to_json()})
    result.details["triples"] = f"{result.checked - len(result.counterexamples)}/{result.checked}"
    return result


def suite_derivation_oracle(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("derivation-oracle")
    for _ in range(config["samples"]["derivation-oracle"]):
        n = _rank(rng, config)
        x = random_homogeneous(rng, n, config["exponent_bound"])
        y = random_homogeneous(rng, n, config["exponent_bound"])
        polynomial = {
            random_grade(rng, n, config["exponent_bound"]): to_scalar(random_rational(rng))
            for _ in range(3)
        }
        polynomial = {m: c for m, c in polynomial.items() if c != 0}
        result.checked += 1
        if commutator_on(x, y, polynomial) != bracket(x, y).apply(polynomial):
            result.fail({"x": x.to_json(), "y": y.to_json()})
    return result


def suite_grading_ranks(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("grading-ranks")
    for sample in range(config["samples"]["grading-ranks"]):
        n = _rank(rng, config)
        alpha = random_grade(rng, n, config["exponent_bound"])
        if sample % 4 == 0 and any(alpha):
            beta = alpha
        else:
            beta = random_grade(rng, n, config["exponent_bound"])
            while beta == alpha:
                beta = random_grade(rng, n, config["exponent_bound"])

        vectors = []
        for i in range(n):
            for j in range(n):
                u = [0] * n
                for _, index, coefficient in basis_bracket(alpha, i, beta, j):
                    u[index] += coefficient
                vectors.append(u)
        rank = sympy.Matrix(vectors).rank()

        result.checked += 1
        if alpha != beta:
            if rank != n:
                result.fail({"alpha": list(alpha), "beta": list(beta), "rank": rank})
        elif rank != n - 1 or any(sum(u[k] * alpha[k] for k in range(n)) != 0 for u in vectors):
            result.fail({"alpha": list(alpha), "beta": list(beta), "rank": rank})
    return result


def module_axiom_residual(
    V: WeightModule, x: WittElement, y: WittElement, mu: tuple
) -> tuple[sympy.Matrix, bool]:
    """
    action([x, y]) - (x y - y x) on V_{lambda+mu}, with the combined exactness flag.
    """
    alpha, beta = x.grade(), y.grade()
    x_after_y = action_matrix(V, x, tuple(a + b for a, b in zip(mu, beta)))
    y_only = action_matrix(V, y, mu)
    y_after_x = action_matrix(V, y, tuple(a + b for a, b in zip(mu, alpha)))
    x_only = action_matrix(V, x, mu)
    right = x_after_y.matrix * y_only.matrix - y_after_x.matrix * x_only.matrix
    exact = all(m.exact for m in [x_after_y, y_only, y_after_x, x_only])

    z = bracket(x, y)
    if z.is_zero():
        left = sympy.zeros(*right.shape)
    else:
        z_action = action_matrix(V, z, mu)
        exact = exact and z_action.exact
        left = z_action.matrix
    return (left - right).applyfunc(sympy.cancel), exact


def _random_tensor_family(rng: np.random.Generator, config: dict) -> TensorFamily:
    n = int(rng.integers(1, 3))
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return TensorFamily(to_scalar_vector("lambda", n), to_scalar("b"))
    if kind == 1:
        return TensorFamily([0] * n, 0, "quotient_by_trivial")
    if kind == 2:
        return TensorFamily([0] * n, 1, "punctured_submodule")
    n = _rank(rng, config)
    return TensorFamily([random_rational(rng) for _ in range(n)], random_rational(rng))


def suite_module_axiom_tensor(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("module-axiom-tensor")
    bound = config["exponent_bound"]
    for _ in range(config["samples"]["module-axiom-tensor"]):
        family = _random_tensor_family(rng, config)
        V = build_tensor_module(family)
        x = random_homogeneous(rng, V.n, bound)
        y = random_homogeneous(rng, V.n, bound)
        if x.is_zero() or y.is_zero():
            continue
        mu = random_grade(rng, V.n, bound)
        residual, _ = module_axiom_residual(V, x, y, mu)
        result.checked += 1
        if any(c != 0 for c in residual):
            result.fail({"family": V.descriptor(), "x": x.to_json(), "y": y.to_json(), "mu": list(mu)})
    return result


def _verma_fixtures() -> list[TruncatedVerma]:
    return [
        TruncatedVerma([], [1], K=5, B=1),
        TruncatedVerma([[0, 1]], [1, 0], K=3, B=2),
        TruncatedVerma([[1, 1]], [1, 0], K=3, B=2),
        TruncatedVerma([[0, 1]], [1, 0], K=3, B=2, top_offset=[1, 0]),
        TruncatedVerma([[0, 1]], [1, 0], X="tensor", K=2, B=2, lam=["1/2", "1/3"], b=1),
    ]


def _nearby_offset(rng: np.random.Generator, V: TruncatedVerma) -> tuple:
    g = tuple(int(c) for c in rng.integers(-1, 2, size=V.n - 1))
    return V.offset_of(g, -int(rng.integers(0, 2)))


def suite_module_axiom_verma(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("module-axiom-verma")
    fixtures = _verma_fixtures()
    skipped = 0
    for _ in range(config["samples"]["module-axiom-verma"]):
        V = fixtures[int(rng.integers(0, len(fixtures)))]
        x = WittElement.basis(random_grade(rng, V.n, 1), int(rng.integers(0, V.n)))
        y = WittElement.basis(random_grade(rng, V.n, 1), int(rng.integers(0, V.n)))
        mu = _nearby_offset(rng, V)
        residual, exact = module_axiom_residual(V, x, y, mu)
        if not exact:
            skipped += 1
            continue
        result.checked += 1
        if any(c != 0 for c in residual):
            result.fail({"family": V.descriptor(), "x": x.to_json(), "y": y.to_json(), "mu": list(mu)})
    result.details["skipped_inexact"] = skipped
    if result.checked == 0:
        result.fail("no exact samples")
    return result


def suite_punctured_shape(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("punctured-shape")
    box = Box.cube(2, 6)
    for variant, b in [("quotient_by_trivial", 0), ("punctured_submodule", 1)]:
        W = support_window(build_tensor_module(TensorFamily([0, 0], b, variant)), box)
        result.checked += 1
        shape = all(W.dim(x) == (0 if x == (0, 0) else 1) for x in box.points())
        verdict = classify_support(W).verdict
        if not shape or verdict != "Punctured":
            result.fail({"variant": variant, "verdict": verdict})
    return result


def suite_verma_partitions(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("verma-partitions")
    for K in range(1, config["verma_partitions_max_K"] + 1):
        V = TruncatedVerma([], [1], K=K, B=1)
        dims = [V.dim((-depth,)) for depth in range(K + 1)]
        result.checked += 1
        if dims != partition_counts(K):
            result.fail({"K": K, "dims": dims, "oracle": partition_counts(K)})
        if K == 7:
            result.details["dims"] = dims
    return result


def suite_cut_certificate(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("cut-certificate")
    cases = [
        (TruncatedVerma([[0, 1]], [1, 0], K=5, B=5), (1, 0), (0, 0)),
        (TruncatedVerma([[0, 1]], [1, 0], K=5, B=5, top_offset=[1, 0]), (1, 0), (1, 0)),
    ]
    for V, a, b in cases:
        W = support_window(V, default_window(V))
        classification = classify_support(W)
        result.checked += 1
        if (
            classification.verdict != "Cut"
            or (classification.a, classification.b) != (a, b)
            or not certificate_holds(W, classification.a, classification.b)
        ):
            result.fail({"family": V.descriptor(), "certificate": classification.certificate_json()})

        upset = upset_complement_check(W, lemma5_basis(2, 2))
        result.checked += 1
        if not upset.passed:
            result.fail({"family": V.descriptor(), "upset": upset.violations[:3]})
    return result


def negative_control_window() -> SupportWindow:
    """
    Synthetic window with holes at (1,0) and (3,0) and (2,0) supported.
    """
    box = Box.cube(2, 3)
    dims = {x: 0 if x in [(1, 0), (3, 0)] else 1 for x in box.points()}
    return SupportWindow(box, dims, (sympy.Rational(1, 2), sympy.Rational(1, 3)))


def _catalog_windows(config: dict) -> list[tuple[str, SupportWindow]]:
    windows = []
    for instance in load_catalog(config).instances:
        V = build_module(instance)
        windows.append((instance["name"], support_window(V, default_window(V, instance))))
    return windows


def suite_convexity(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("convexity")
    windows = _catalog_windows(config)
    if config.get("inject_negative_control"):
        windows.append(("negative-control", negative_control_window()))
    for name, W in windows:
        check = complement_convexity_check(W)
        result.checked += 1
        for violation in check.violations:
            result.fail({"instance": name, **violation})
    return result


def suite_semigroup_generators(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("semigroup-generators")
    while result.checked < config["samples"]["semigroup-generators"]:
        n = int(rng.integers(2, 4))
        a = [int(c) for c in rng.integers(-3, 4, size=n)]
        beta = random_grade(rng, n, 5)
        if dot(a, beta) >= 0:
            continue
        generators = semigroup_generators_for(beta, a)
        bound = 2 * (1 + generators.max_multiplier) * n
        generation = generates_monoid(generators.generating_set(), bound)
        result.checked += 1
        if generation.status != MonoidStatus.GENERATES or any(
            generation.witness_length(target) > bound for target in generation.witnesses
        ):
            result.fail({"beta": list(beta), "a": a, "status": generation.status.value})
    return result


def suite_ray_shape(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("ray-shape")
    V = TruncatedVerma([[0, 1]], [1, 0], K=5, B=5)
    W = support_window(V, default_window(V))

    top = ray_profile(W, (0, 0), (1, 1))
    result.checked += 1
    if (top.kind, top.m) != ("UpBounded", 0):
        result.fail({"offset": [0, 0], "alpha": [1, 1], "profile": top.to_json()})

    support = W.support()
    for _ in range(config["samples"]["ray-shape"]):
        mu = support[int(rng.integers(0, len(support)))]
        alpha = tuple(int(c) for c in rng.integers(1, 4, size=2))
        points = ray_points(W, mu, alpha)
        if len(points) < MIN_RAY_POINTS:
            continue
        # the ray has to leave the module inside the window
        if not any(V.depth(add(mu, scale(x, alpha))) < 0 for x in points):
            continue
        profile = ray_profile(W, mu, alpha)
        result.checked += 1
        if profile.kind != "UpBounded":
            result.fail({"offset": list(mu), "alpha": list(alpha), "profile": profile.to_json()})
    return result


def suite_ghw_propagation(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("ghw-propagation")
    V = TruncatedVerma([[0, 1]], [1, 0], K=3, B=3)
    window = default_window(V)
    witness = find_ghw_vector(V, window)
    if witness is None:
        result.fail("no GHW witness in the Verma window")
        return result
    result.details["witness"] = witness.to_json()

    closure_inconclusive = 0
    seen = set()
    for _ in range(config["samples"]["ghw-propagation"]):
        beta = random_grade(rng, 2, 2)
        j = int(rng.integers(0, 2))
        if (beta, j) in seen:
            continue
        seen.add((beta, j))
        y = WittElement.basis(beta, j)
        target, w, exact = apply_to_vector(V, y, witness.offset, witness.vector)
        if not exact or not window.contains(target) or all(c == 0 for c in w):
            continue
        bound = ghw_propagate_bound(witness.N, beta)

        result.checked += 1
        for x in window.points():
            alpha = sub(x, target)
            if not exceeds(alpha, bound):
                continue
            for j in range(2):
                _, image, image_exact = apply_to_vector(V, WittElement.basis(alpha, j), target, w)
                if image_exact and any(c != 0 for c in image):
                    result.fail({"beta": list(beta), "alpha": list(alpha), "bound": bound})

        N = is_ghw(V, target, w, window)
        if N is None:
            closure_inconclusive += 1
        elif N > bound:
            result.fail({"beta": list(beta), "closure_bound": N, "bound": bound})

    result.details["closure_inconclusive"] = closure_inconclusive
    return result


def _classify_instance(instance: dict) -> dict:
    V = build_module(instance)
    W = support_window(V, default_window(V, instance))
    classification = classify_support(W)
    return {
        "name": instance["name"],
        "expected": instance.get("expected"),
        "verdict": classification.verdict,
        "certificate": classification.certificate_json(),
        "window": W,
    }


def _classify_catalog(config: dict) -> list[dict]:
    return Parallel(n_jobs=config["num_workers"])(
        delayed(_classify_instance)(instance) for instance in load_catalog(config).instances
    )


def suite_trichotomy(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("trichotomy")
    verdicts = {}
    for outcome in _classify_catalog(config):
        verdicts[outcome["name"]] = outcome["verdict"]
        result.checked += 1
        if outcome["verdict"] not in ["Dense", "Punctured", "Cut"] or (
            outcome["expected"] is not None and outcome["verdict"] != outcome["expected"]
        ):
            result.fail({k: v for k, v in outcome.items() if k != "window"})
    result.details["verdicts"] = verdicts
    return result


def suite_mixed(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("mixed")
    radii = config["mixed_radii"]
    descriptor = {
        "family": "verma",
        "G": [[0, 1]],
        "beta": [1, 0],
        "X": "tensor",
        "lambda": ["1/2", "1/3"],
        "b": 1,
        "K": 4,
        "B": radii[0],
    }
    V = build_module(descriptor)
    W = support_window(V, default_window(V))
    M = mixed_refine(descriptor, W.box, radii)
    a, b = V.analytic_certificate()

    for x, tag in sorted(M.tags.items()):
        if tag == "boundary-undetermined":
            continue
        result.checked += 1
        depth = V.depth(x)
        expected = "inf" if depth >= 1 else "fin"
        if tag != expected:
            result.fail({"offset": list(x), "tag": tag, "expected": expected})
        if tag == "inf" and dot(a, sub(x, b)) >= 0:
            result.fail({"offset": list(x), "tag": tag, "half_space": "not strictly inside"})

    check = finsupp_convexity_check(M, W)
    result.checked += 1
    if not check.passed:
        result.fail({"finsupp_convexity": check.violations[:3]})

    for other in [
        {"family": "verma", "G": [], "beta": [1], "K": 5},
        {"family": "tensor", "n": 2, "lambda": ["1/2", "1/3"], "b": 2},
    ]:
        M_other = mixed_refine(other, default_window(build_module({**other, "B": radii[0]})), radii)
        result.checked += 1
        if M_other.tagged("inf"):
            result.fail({"family": other["family"], "inf": [format_lattice_vector(x) for x in M_other.tagged("inf")]})
    return result


def suite_halfspace_propagation(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("halfspace-propagation")
    for outcome in _classify_catalog(config):
        if outcome["verdict"] != "Cut":
            continue
        a = parse_lattice_vector(outcome["certificate"]["a"])
        check = halfspace_propagation_check(outcome["window"], a)
        result.checked += 1
        for violation in check.violations[:3]:
            result.fail({"instance": outcome["name"], **violation})
    return result


def suite_conjecture(config: dict, rng: np.random.Generator) -> SuiteResult:
    result = SuiteResult("conjecture")
    outcome = conjecture_search(load_catalog(config), config["conjecture_radii"])
    result.checked = len(outcome["instances"])
    result.details = outcome
    if outcome["status"] != "none":
        for instance in outcome["instances"]:
            if instance["counterexample"]:
                result.fail(instance)
    return result


SUITES = {
    "antisymmetry": suite_antisymmetry,
    "jacobi": suite_jacobi,
    "derivation-oracle": suite_derivation_oracle,
    "grading-ranks": suite_grading_ranks,
    "module-axiom-tensor": suite_module_axiom_tensor,
    "module-axiom-verma": suite_module_axiom_verma,
    "punctured-shape": suite_punctured_shape,
    "verma-partitions": suite_verma_partitions,
    "cut-certificate": suite_cut_certificate,
    "convexity": suite_convexity,
    "semigroup-generators": suite_semigroup_generators,
    "ray-shape": suite_ray_shape,
    "ghw-propagation": suite_ghw_propagation,
    "trichotomy": suite_trichotomy,
    "mixed": suite_mixed,
    "halfspace-propagation": suite_halfspace_propagation,
    "conjecture": suite_conjecture,
}


def run_suite(name: str, config: dict) -> SuiteResult:
    """
    Run one suite with a generator seeded by (seed, suite position), so results
    do not depend on which suites run or in which order.
    """
    if name not in SUITES:
        raise ValueError(f"Suite {name} not recognized.")
    rng = np.random.default_rng([config["seed"], list(SUITES).index(name)])
    return SUITES[name](config, rng)
