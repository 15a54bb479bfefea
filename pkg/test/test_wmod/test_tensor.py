import sympy
import pytest

from source.lattice.geometry import Box
from source.wmod.tensor import TensorFamily, build_tensor_module, tensor_action_coefficient
from source.wmod.weight_module import action_kernel, action_matrix
from source.witt.algebra import WittElement
from source.witt.scalars import to_scalar_vector


def test_tensor_action_coefficient():
    lam, b = sympy.Symbol("lam1"), sympy.Symbol("b")
    c = tensor_action_coefficient((lam,), b, (2,), (1,), (3,))
    assert sympy.expand(c - (lam + 3 + 2 * b)) == 0

    assert tensor_action_coefficient((0, 0), 1, (2, 1), (1, 1), (-2, -1)) == 0
    assert tensor_action_coefficient((0, 0), 0, (4, -3), (2, 5), (0, 0)) == 0


def test_tensor_family_validation():
    with pytest.raises(ValueError):
        TensorFamily((0, 0), 1, "quotient_by_trivial")
    with pytest.raises(ValueError):
        TensorFamily(("1/2", 0), 0, "quotient_by_trivial")
    with pytest.raises(ValueError):
        TensorFamily((0, 0), 0, "twisted")


def test_full_support_is_dense():
    V = build_tensor_module(TensorFamily(("1/2", "1/3"), 2))
    assert all(V.dim(x) == 1 for x in Box.cube(2, 4).points())
    assert V.zero_weight_offset is None


def test_punctured_variants():
    box = Box.cube(2, 6)
    for variant, b in [("quotient_by_trivial", 0), ("punctured_submodule", 1)]:
        V = build_tensor_module(TensorFamily((0, 0), b, variant))
        holes = [x for x in box.points() if V.dim(x) == 0]
        assert holes == [(0, 0)]
        assert V.zero_weight_offset == (0, 0)

    shifted = build_tensor_module(TensorFamily((2, -3), 0, "quotient_by_trivial"))
    assert shifted.dim((0, 0)) == 0
    assert shifted.dim((-2, 3)) == 1


def test_action_matrix():
    V = build_tensor_module(TensorFamily(("1/2", "1/3"), 2))
    x = WittElement.monomial((1, 2), (1, -1))
    result = action_matrix(V, x, (3, 0))
    expected = tensor_action_coefficient(V.coset_rep, 2, (1, 2), (1, -1), (3, 0))
    assert result.matrix == sympy.Matrix([[expected]])
    assert result.target == (4, 2)
    assert result.exact

    punctured = build_tensor_module(TensorFamily((0, 0), 0, "quotient_by_trivial"))
    result = action_matrix(punctured, WittElement.basis((1, 0), 0), (-1, 0))
    assert result.matrix.shape == (0, 1)

    with pytest.raises(ValueError):
        action_matrix(V, WittElement.basis((1, 0), 0) + WittElement.basis((0, 1), 0), (0, 0))


def test_action_kernel():
    V = build_tensor_module(TensorFamily(to_scalar_vector("lambda", 2), 1))
    assert action_kernel(V, (2, -1), [WittElement.basis((1, 0), 0)]) == []

    punctured = build_tensor_module(TensorFamily((0, 0), 0, "quotient_by_trivial"))
    S = [WittElement.basis((1, 0), 0), WittElement.basis((1, 0), 1)]
    assert len(action_kernel(punctured, (-1, 0), S)) == 1


def test_symbolic_ghw_bound():
    V = build_tensor_module(TensorFamily(to_scalar_vector("lambda", 2), 0))
    assert V.symbolic_ghw_bound((0, 0)) is None

    punctured = build_tensor_module(TensorFamily((0, 0), 0, "quotient_by_trivial"))
    assert punctured.symbolic_ghw_bound((-1, -1)) is None
    with pytest.raises(ValueError):
        punctured.symbolic_ghw_bound((0, 0))
