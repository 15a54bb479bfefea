import os
import pandas as pd
from dataclasses import dataclass, field
from typing import Optional

from source.lattice.geometry import Box, LatticeVector
from source.utils.utils import format_lattice_vector, parse_lattice_vector
from source.wmod.weight_module import WeightModule
from source.witt.scalars import Scalar, scalar_to_str, to_scalar


@dataclass(frozen=True)
class SupportWindow:
    """
    Snapshot of the weight-space dimensions of a module over a box of offsets.

    Attributes:
        box: Offsets covered by the snapshot.
        dims: Map offset -> dim V_{coset_rep + offset} for every offset in the box.
        coset_rep: The coset representative lambda.
        zero_weight_offset: mu0 with lambda + mu0 = 0, if 0 lies in the coset.
        boundary: Offsets whose dimension the truncation may understate.
        family_certificate: Global cut certificate (a, b) known from the construction.
    """

    box: Box
    dims: dict
    coset_rep: tuple[Scalar, ...]
    zero_weight_offset: Optional[LatticeVector] = None
    boundary: frozenset = field(default_factory=frozenset)
    family_certificate: Optional[tuple[LatticeVector, LatticeVector]] = None

    def __post_init__(self):
        for offset, dimension in self.dims.items():
            if not self.box.contains(offset):
                raise ValueError(f"Offset {offset} lies outside the window {self.box}.")
            if dimension < 0:
                raise ValueError(f"Negative dimension {dimension} at offset {offset}.")

    @property
    def n(self) -> int:
        return self.box.n

    def dim(self, offset: LatticeVector) -> int:
        return self.dims.get(tuple(offset), 0)

    def supported(self, offset: LatticeVector) -> bool:
        return self.dim(offset) > 0

    def offsets(self) -> list[LatticeVector]:
        return list(self.box.points())

    def support(self) -> list[LatticeVector]:
        return [x for x in self.offsets() if self.supported(x)]

    def complement(self) -> list[LatticeVector]:
        return [x for x in self.offsets() if not self.supported(x)]

    def is_zero_weight(self, offset: LatticeVector) -> bool:
        return self.zero_weight_offset is not None and tuple(offset) == self.zero_weight_offset

    def to_json(self) -> dict:
        return {
            "box": self.box.to_json(),
            "coset": [scalar_to_str(c) for c in self.coset_rep],
            "zero_weight_offset": None
            if self.zero_weight_offset is None
            else format_lattice_vector(self.zero_weight_offset),
            "dims": [
                {"offset": format_lattice_vector(x), "dim": self.dims[x]}
                for x in sorted(self.dims)
                if self.dims[x] > 0
            ],
            "boundary": [format_lattice_vector(x) for x in sorted(self.boundary)],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "SupportWindow":
        box = Box.from_json(payload["box"])
        dims = {x: 0 for x in box.points()}
        for entry in payload["dims"]:
            dims[parse_lattice_vector(entry["offset"], box.n)] = int(entry["dim"])
        zero = payload.get("zero_weight_offset")
        return cls(
            box,
            dims,
            tuple(to_scalar(c) for c in payload["coset"]),
            None if zero is None else parse_lattice_vector(zero, box.n),
            frozenset(parse_lattice_vector(x, box.n) for x in payload["boundary"]),
        )

    def to_dataframe(self) -> pd.DataFrame:
        rows = []
        for x in self.offsets():
            row = {f"offset_{i + 1}": c for i, c in enumerate(x)}
            row["dim"] = self.dim(x)
            row["boundary"] = x in self.boundary
            rows.append(row)
        return pd.DataFrame(rows)

    def to_csv(self, path: str | os.PathLike) -> None:
        self.to_dataframe().to_csv(path, index=False)


def support_window(V: WeightModule, box: Box) -> SupportWindow:
    """
    Compute the dimension of every weight space of V over the box.

    Args:
        V (WeightModule): The module.
        box (Box): Offsets to scan; must lie inside the construction box of a
            truncated family.

    Returns:
        SupportWindow: The snapshot with boundary flags and zero-weight offset.
    """
    if box.n != V.n:
        raise ValueError(f"Window of dimension {box.n} for a module over W_{V.n}.")
    if not V.window_fits(box):
        raise ValueError(
            f"Window {box.to_json()} exceeds the construction box "
            f"(largest fitting radius {V.max_window_radius()})."
        )

    dims = {x: V.dim(x) for x in box.points()}
    boundary = frozenset(x for x in dims if not V.dimension_is_exact(x))
    return SupportWindow(
        box,
        dims,
        tuple(V.coset_rep),
        V.zero_weight_offset,
        boundary,
        V.analytic_certificate(),
    )
