import sympy
import pytest

from source.lattice.geometry import Box
from source.supports.window import SupportWindow, support_window
from source.wmod.tensor import TensorFamily, build_tensor_module
from source.wmod.verma import build_truncated_verma


def test_dense_window():
    V = build_tensor_module(TensorFamily(("1/2", "1/3"), 2))
    W = support_window(V, Box.cube(2, 4))
    assert len(W.support()) == 81
    assert W.complement() == []
    assert W.boundary == frozenset()
    assert W.coset_rep == (sympy.Rational(1, 2), sympy.Rational(1, 3))


def test_punctured_window():
    V = build_tensor_module(TensorFamily((0, 0), 0, "quotient_by_trivial"))
    W = support_window(V, Box.cube(2, 4))
    assert W.complement() == [(0, 0)]
    assert W.zero_weight_offset == (0, 0)
    assert W.is_zero_weight((0, 0))


def test_verma_window():
    V = build_truncated_verma([[0, 1]], [1, 0], K=3, B=3)
    W = support_window(V, Box.cube(2, 3))
    assert all(W.dim(x) == 0 for x in W.offsets() if x[0] > 0)
    assert W.dim((0, 0)) == 1
    assert (-2, 0) in W.boundary
    assert (-1, 0) not in W.boundary
    assert W.family_certificate == ((1, 0), (0, 0))

    with pytest.raises(ValueError):
        support_window(V, Box.cube(2, 4))
    with pytest.raises(ValueError):
        support_window(V, Box.cube(3, 1))


def test_window_serialization():
    V = build_truncated_verma([[0, 1]], [1, 0], K=2, B=2)
    W = support_window(V, Box.cube(2, 2))
    payload = W.to_json()
    assert payload["box"] == {"lower": [-2, -2], "upper": [2, 2]}
    assert {"offset": [0, 0], "dim": 1} in payload["dims"]
    assert all(entry["dim"] > 0 for entry in payload["dims"])

    parsed = SupportWindow.from_json(payload)
    assert parsed.dims == W.dims
    assert parsed.boundary == W.boundary
    assert parsed.zero_weight_offset == (0, 0)

    df = W.to_dataframe()
    assert list(df.columns) == ["offset_1", "offset_2", "dim", "boundary"]
    assert len(df) == 25


def test_invalid_window():
    with pytest.raises(ValueError):
        SupportWindow(Box.cube(1, 1), {(2,): 1}, (sympy.Integer(0),))
    with pytest.raises(ValueError):
        SupportWindow(Box.cube(1, 1), {(0,): -1}, (sympy.Integer(0),))
