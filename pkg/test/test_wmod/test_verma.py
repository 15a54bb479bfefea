import sympy
import itertools
import pytest

from source.lattice.geometry import Box
from source.wmod.verma import (
    TruncatedVerma,
    build_shifted_verma,
    build_truncated_verma,
    partition_counts,
)
from source.wmod.weight_module import action_kernel, action_matrix
from source.witt.algebra import WittElement, bracket


def test_partition_dims():
    V = build_truncated_verma([], [1], K=7, B=1)
    assert [V.dim((-depth,)) for depth in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partition_counts(7) == [1, 1, 2, 3, 5, 7, 11, 15]
    assert V.dim((1,)) == 0
    assert V.dim((-8,)) == 0


def test_rank_two_dims():
    small = build_truncated_verma([[0, 1]], [1, 0], K=2, B=1)
    large = build_truncated_verma([[0, 1]], [1, 0], K=2, B=2)
    assert small.dim((0, 0)) == 1
    assert small.dim((0, 1)) == 0
    assert small.dim((1, 0)) == 0
    assert small.dim((-1, 1)) == 2
    assert small.dim((-2, 0)) == 9
    assert large.dim((-2, 0)) == 13
    assert len(small.basis((-2, 0))) == 9


def test_invalid_frames():
    with pytest.raises(ValueError):
        TruncatedVerma([[1, 1]], [1, 1])
    with pytest.raises(ValueError):
        TruncatedVerma([[2, 0]], [0, 1])
    with pytest.raises(ValueError):
        TruncatedVerma([], [1, 0])
    with pytest.raises(ValueError):
        TruncatedVerma([[0, 1]], [1, 0], X="tensor")


def test_lowering_action():
    V = build_truncated_verma([], [1], K=4, B=1)
    result = action_matrix(V, WittElement.basis((-1,), 0), (0,))
    assert result.matrix.shape == (1, 1)
    assert result.matrix[0, 0] != 0
    assert result.exact


def test_top_level_is_killed():
    V = build_truncated_verma([[0, 1]], [1, 0], K=2, B=2)
    S = [WittElement.basis(alpha, j) for alpha in [(1, 0), (0, 1), (1, 1)] for j in range(2)]
    kernel = action_kernel(V, (0, 0), S)
    assert len(kernel) == 1


def test_cartan_acts_by_weight():
    V = build_truncated_verma([[0, 1]], [1, 0], K=3, B=2)
    mu = (-2, 1)
    for j in range(2):
        result = action_matrix(V, WittElement.partial(j, 2), mu)
        assert result.matrix == mu[j] * sympy.eye(V.dim(mu))


def test_module_axiom_on_partitions():
    V = build_truncated_verma([], [1], K=5, B=1)
    x, y = WittElement.basis((1,), 0), WittElement.basis((-2,), 0)
    mu = (-2,)
    left = action_matrix(V, bracket(x, y), mu).matrix
    right = (
        action_matrix(V, x, (-4,)).matrix * action_matrix(V, y, mu).matrix
        - action_matrix(V, y, (-1,)).matrix * action_matrix(V, x, mu).matrix
    )
    assert (left - right).is_zero_matrix


def test_exactness():
    V = build_truncated_verma([[0, 1]], [1, 0], K=5, B=5)
    assert V.dimension_is_exact((1, 3))
    assert V.dimension_is_exact((0, 2))
    assert V.dimension_is_exact((-1, 2))
    assert not V.dimension_is_exact((-2, 0))
    assert not V.dimension_is_exact((-6, 0))
    assert V.near_truncation_edge((-1, 5))
    assert not V.near_truncation_edge((-1, 4))

    one = build_truncated_verma([], [1], K=5, B=1)
    assert one.dimension_is_exact((-5,))


def test_windows():
    assert build_truncated_verma([[0, 1]], [1, 0], K=5, B=5).max_window_radius() == 5
    assert build_truncated_verma([[1, 1]], [1, 0], K=6, B=6).max_window_radius() == 3
    assert build_truncated_verma([[1, 2]], [0, 1], K=6, B=6).max_window_radius() == 2

    V = build_truncated_verma([[0, 1]], [1, 0], K=3, B=4)
    assert V.window_fits(Box.cube(2, 3))
    assert not V.window_fits(Box.cube(2, 4))


def test_analytic_certificate():
    assert build_truncated_verma([[0, 1]], [1, 0]).analytic_certificate() == ((1, 0), (0, 0))
    assert build_truncated_verma([[1, 0]], [0, 1]).analytic_certificate() == ((0, 1), (0, 0))
    assert build_truncated_verma([[0, 1]], [-1, 0]).analytic_certificate() == ((-1, 0), (0, 0))
    assert build_truncated_verma([[1, 1]], [1, 0]).analytic_certificate() == ((1, -1), (0, 0))

    shifted = build_shifted_verma([[0, 1]], [1, 0], [1, 0], K=5, B=5)
    assert shifted.analytic_certificate() == ((1, 0), (1, 0))
    assert shifted.dim((1, 0)) == 1
    assert shifted.dim((0, 0)) == 2
    assert shifted.coset_rep == (-1, 0)
    assert shifted.zero_weight_offset == (1, 0)


def test_tensor_top_level():
    V = TruncatedVerma([[0, 1]], [1, 0], X="tensor", K=2, B=2, lam=["1/2", "1/3"], b=1)
    assert [V.dim((0, g)) for g in range(-2, 3)] == [1, 1, 1, 1, 1]
    assert V.dimension_is_exact((0, 1))
    assert not V.dimension_is_exact((-1, 0))
    assert V.zero_weight_offset is None

    result = action_matrix(V, WittElement.basis((0, 1), 1), (0, 0))
    assert result.exact
    assert result.matrix == sympy.Matrix([[sympy.Rational(1, 3) + 1]])


def test_trivial_top_level_in_rank_two():
    V = build_truncated_verma([[0, 1]], [1, 0], K=3, B=3)
    for mu in [(0, 0), (-1, 0), (-1, 1), (-2, -1)]:
        assert len(V.basis(mu)) == V.dim(mu)
        for alpha in itertools.product([-1, 0, 1], repeat=2):
            for j in range(2):
                result = action_matrix(V, WittElement.basis(alpha, j), mu)
                target = tuple(m + a for m, a in zip(mu, alpha))
                assert result.matrix.shape == (V.dim(target), V.dim(mu))
