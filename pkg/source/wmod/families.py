from dataclasses import dataclass, field
from typing import Optional

from source.lattice.geometry import Box
from source.wmod.tensor import TensorFamily, build_tensor_module
from source.wmod.verma import TruncatedVerma
from source.wmod.weight_module import WeightModule
from source.witt.scalars import to_scalar_vector

LAMBDA_KEYS = ["lambda", "λ", "lam"]
DEFAULT_RANK = 2


def _lambda_of(descriptor: dict):
    for key in LAMBDA_KEYS:
        if key in descriptor:
            return descriptor[key]
    return None


def _rank_of(descriptor: dict) -> int:
    if "n" in descriptor:
        return int(descriptor["n"])
    if "beta" in descriptor:
        return len(descriptor["beta"])
    lam = _lambda_of(descriptor)
    if isinstance(lam, (list, tuple)):
        return len(lam)
    return DEFAULT_RANK


def build_module(descriptor: dict) -> WeightModule:
    """
    Build a weight module from a family descriptor.

    Tensor descriptors: {family: tensor, n, lambda, b, variant}.
    Verma descriptors: {family: verma, G, beta, X, K, B, lambda, b, top_offset},
    where lambda and b parametrize a coset tensor X.

    Args:
        descriptor (dict): Family descriptor; "λ" and "lam" are accepted for "lambda".

    Returns:
        WeightModule: The constructed module.
    """
    family = descriptor.get("family")
    n = _rank_of(descriptor)

    if family == "tensor":
        lam = _lambda_of(descriptor)
        if lam is None:
            raise ValueError(f"Tensor descriptor {descriptor} has no lambda.")
        return build_tensor_module(
            TensorFamily(
                to_scalar_vector(lam, n),
                descriptor.get("b", 0),
                descriptor.get("variant", "full"),
            )
        )
    elif family == "verma":
        if "beta" not in descriptor:
            raise ValueError(f"Verma descriptor {descriptor} has no beta.")
        return TruncatedVerma(
            descriptor.get("G", []),
            descriptor["beta"],
            X=descriptor.get("X", "trivial"),
            K=int(descriptor.get("K", 4)),
            B=int(descriptor.get("B", 4)),
            lam=_lambda_of(descriptor),
            b=descriptor.get("b", 0),
            top_offset=descriptor.get("top_offset"),
        )
    else:
        raise ValueError(f"Module family {family} not recognized.")


def default_window(V: WeightModule, descriptor: Optional[dict] = None) -> Box:
    """
    The window requested by the descriptor's "box" radius, else the largest cube
    fitting the construction box (radius 4 for unbounded families).
    """
    radius = None if descriptor is None else descriptor.get("box")
    if radius is None:
        radius = V.max_window_radius()
    if radius is None:
        radius = 4
    return Box.cube(V.n, int(radius))


@dataclass(frozen=True)
class FamilyCatalog:
    """
    Named list of family descriptors, each carrying its expected verdict.
    """

    name: str
    instances: tuple[dict, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.instances)

    def names(self) -> list[str]:
        return [instance["name"] for instance in self.instances]

    def get(self, name: str) -> dict:
        for instance in self.instances:
            if instance["name"] == name:
                return instance
        raise ValueError(f"Catalog instance {name} not recognized.")


def load_catalog(config: dict) -> FamilyCatalog:
    """
    Read the family catalog from the "catalog" section of the configuration.
    """
    section = config["catalog"]
    instances = []
    for instance in section["instances"]:
        if "name" not in instance or "family" not in instance:
            raise ValueError(f"Catalog instance {instance} needs a name and a family.")
        instances.append(dict(instance))
    return FamilyCatalog(section.get("name", "catalog"), tuple(instances))
