import pytest

from source.lattice.geometry import Box
from source.utils.utils import load_config
from source.wmod.families import build_module, default_window, load_catalog
from source.wmod.tensor import TensorModule
from source.wmod.verma import TruncatedVerma

config = load_config("config/default.yaml")


def test_build_module():
    V = build_module({"family": "tensor", "λ": ["1/2", "1/3"], "b": 2})
    assert isinstance(V, TensorModule)
    assert V.n == 2

    V = build_module({"family": "tensor", "n": 3, "lambda": "γ", "b": "1/2"})
    assert V.n == 3

    V = build_module({"family": "verma", "G": [[0, 1]], "beta": [1, 0], "K": 3, "B": 2})
    assert isinstance(V, TruncatedVerma)
    assert (V.K, V.B) == (3, 2)

    with pytest.raises(ValueError):
        build_module({"family": "loop", "beta": [1]})
    with pytest.raises(ValueError):
        build_module({"family": "tensor", "b": 1})


def test_default_window():
    tensor = build_module({"family": "tensor", "lambda": [0, 0], "b": 1})
    assert default_window(tensor) == Box.cube(2, 4)
    assert default_window(tensor, {"box": 6}) == Box.cube(2, 6)

    verma = build_module({"family": "verma", "G": [[1, 1]], "beta": [1, 0], "K": 6, "B": 6})
    assert default_window(verma) == Box.cube(2, 3)


def test_load_catalog():
    catalog = load_catalog(config)
    assert len(catalog) == 14
    assert catalog.get("verma-shifted")["top_offset"] == [1, 0]
    assert sorted(i["expected"] for i in catalog.instances).count("Cut") == 6

    for instance in catalog.instances:
        build_module(instance)

    with pytest.raises(ValueError):
        catalog.get("missing")
