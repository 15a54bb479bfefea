import sympy
import pytest

from source.ghw.ghw import lemma5_basis
from source.lattice.geometry import Box
from source.supports.checks import (
    complement_convexity_check,
    halfspace_propagation_check,
    ray_meets_support,
    ray_points,
    ray_profile,
    upset_complement_check,
)
from source.supports.window import SupportWindow, support_window
from source.wmod.tensor import TensorFamily, build_tensor_module
from source.wmod.verma import build_truncated_verma


def verma_window():
    V = build_truncated_verma([[0, 1]], [1, 0], K=5, B=5)
    return support_window(V, Box.cube(2, 5))


def synthetic_window(holes, radius=3, coset=("1/2", "1/3"), zero=None):
    box = Box.cube(2, radius)
    dims = {x: 0 if x in holes else 1 for x in box.points()}
    return SupportWindow(box, dims, tuple(sympy.Rational(c) for c in coset), zero)


def test_complement_convexity():
    W = synthetic_window([(1, 0), (3, 0)])
    result = complement_convexity_check(W)
    assert not result.passed
    assert result.violations == [{"offset": [2, 0], "dim": 1}]

    W = synthetic_window([(1, 0), (1, 2)], radius=2, coset=(-1, -1), zero=(1, 1))
    assert complement_convexity_check(W).passed

    punctured = support_window(
        build_tensor_module(TensorFamily((0, 0), 0, "quotient_by_trivial")), Box.cube(2, 4)
    )
    assert complement_convexity_check(punctured).passed
    assert complement_convexity_check(verma_window()).passed


def test_ray_points():
    W = synthetic_window([], radius=4)
    assert ray_points(W, (0, 0), (1, 1)) == list(range(-4, 5))
    assert ray_points(W, (1, 0), (2, 1)) == [-2, -1, 0, 1]


def test_ray_profile():
    profile = ray_profile(verma_window(), (0, 0), (1, 1))
    assert (profile.kind, profile.m) == ("UpBounded", 0)

    dense = synthetic_window([], radius=4)
    assert ray_profile(dense, (1, -2), (1, 2)).kind == "AllWindow"

    punctured = synthetic_window([(0, 0)], radius=4, coset=(0, 0), zero=(0, 0))
    assert ray_profile(punctured, (-2, -2), (1, 1)).kind == "Irregular"

    with pytest.raises(ValueError):
        ray_profile(dense, (0, 0), (3, 3))
    with pytest.raises(ValueError):
        ray_profile(dense, (0, 0), (1, 0))


def test_upset_complement():
    W = verma_window()
    assert upset_complement_check(W, lemma5_basis(2, 2)).passed
    assert not upset_complement_check(W).passed
    assert upset_complement_check(synthetic_window([])).passed

    result = upset_complement_check(synthetic_window([(1, 0)]))
    assert {"unsupported": [1, 0], "supported": [2, 0]} in result.violations


def test_halfspace_propagation():
    W = verma_window()
    assert halfspace_propagation_check(W, (1, 0)).passed
    assert ray_meets_support(W, (1, 0), (-1, 0)) == (0, 0)
    assert ray_meets_support(W, (1, 3), (1, 0)) is None

    W = synthetic_window([(0, 0)])
    result = halfspace_propagation_check(W, (1, 0))
    assert not result.passed
    assert result.violations[0]["offset"] == [0, 0]
