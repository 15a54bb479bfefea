from tqdm import tqdm
from typing import Optional, Sequence

from source.lattice.geometry import Box
from source.supports.classify import classify_support
from source.supports.mixed import mixed_refine
from source.supports.window import support_window
from source.wmod.families import FamilyCatalog, build_module


def conjecture_search(
    catalog: FamilyCatalog, radii: Sequence[int], box: Optional[Box] = None
) -> dict:
    """
    Look for a mixed family that is not cut.

    Every catalog family is tagged at the two radii; families carrying both fin
    and inf tags are classified on the smaller truncation and reported if the
    verdict is anything but Cut.

    Args:
        catalog (FamilyCatalog): Families to scan.
        radii (Sequence[int]): The two G-radii B1 < B2.
        box (Box, optional): Window; the largest fitting cube by default.

    Returns:
        dict: {"status": "none" | "found", "instances": [...]} with one entry per mixed family.
    """
    instances = []
    for instance in tqdm(catalog.instances, desc="Conjecture search", unit="family", leave=False):
        descriptor = {**instance, "B": int(radii[0])}
        V = build_module(descriptor)
        window_box = box
        if window_box is None:
            radius = V.max_window_radius()
            window_box = Box.cube(V.n, 4 if radius is None else radius)

        M = mixed_refine(instance, window_box, radii)
        if not M.has_both():
            continue
        verdict = classify_support(support_window(V, window_box)).verdict
        instances.append(
            {"name": instance["name"], "verdict": verdict, "counterexample": verdict != "Cut"}
        )

    status = "found" if any(i["counterexample"] for i in instances) else "none"
    return {"status": status, "instances": instances}
