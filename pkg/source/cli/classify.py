import sys
import json
import yaml
import argparse
from tqdm import tqdm

from source.lattice.geometry import Box
from source.ghw.ghw import find_ghw_vector, lemma5_basis
from source.supports.checks import (
    complement_convexity_check,
    halfspace_propagation_check,
    upset_complement_check,
)
from source.supports.classify import classify_support
from source.supports.mixed import (
    finsupp_convexity_check,
    mixed_punctured_check,
    mixed_refine,
)
from source.supports.window import support_window
from source.cli.report import build_support_report
from source.utils.utils import dump_json, get_report_path, load_config, read_descriptor
from source.wmod.families import build_module, default_window

CHECKS = ["convexity", "upset", "propagation", "mixed", "ghw"]


def parse_int_list(value) -> list[int]:
    if isinstance(value, str):
        return [int(v) for v in value.split(",") if v.strip()]
    return [int(v) for v in value]


def parse_name_list(value) -> list[str]:
    if isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]
    return list(value)


def run_checks(config: dict, descriptor: dict, V, W, classification) -> dict:
    """
    Run the selected checkers on a window.

    Returns:
        dict: {"checks": [CheckResult], "mixed": MixedSupport | None, "ghw": dict | None}.
    """
    checks, mixed, ghw = [], None, None
    selected = parse_name_list(config["checks"])
    for name in selected:
        if name not in CHECKS:
            raise ValueError(f"Check {name} not recognized.")

    if "convexity" in selected:
        checks.append(complement_convexity_check(W))
    if "upset" in selected:
        p = config.get("upset_p")
        basis = None if p is None else lemma5_basis(int(p), V.n)
        checks.append(upset_complement_check(W, basis))
    if "propagation" in selected and classification.verdict == "Cut":
        checks.append(halfspace_propagation_check(W, classification.a))
    if "mixed" in selected:
        if not config.get("radii"):
            raise ValueError("The mixed check needs --radii B1,B2.")
        mixed = mixed_refine(descriptor, W.box, parse_int_list(config["radii"]))
        checks.append(finsupp_convexity_check(mixed, W))
        checks.append(mixed_punctured_check(mixed, W))
    if "ghw" in selected:
        witness = find_ghw_vector(V, W.box)
        ghw = None if witness is None else witness.to_json()

    return {"checks": checks, "mixed": mixed, "ghw": ghw, "ghw_requested": "ghw" in selected}


def cmd_classify(config: dict) -> int:
    """
    Build a family, scan its support window, classify it and write the report.

    Args:
        config (dict): Configuration dictionary with the classify section merged in.

    Returns:
        int: 0 on success, 2 on check violations, 1 on input errors.
    """
    try:
        descriptor = read_descriptor(config["family"])
        V = build_module(descriptor)
        if config.get("box") is not None:
            box = Box.cube(V.n, int(config["box"]))
        else:
            box = default_window(V, descriptor)
        W = support_window(V, box)
        classification = classify_support(W, config["max_shift"], config["max_entry"])
        results = run_checks(config, descriptor, V, W, classification)
    except (ValueError, KeyError, TypeError, json.JSONDecodeError, yaml.YAMLError) as e:
        tqdm.write(f"classify: {e}", file=sys.stderr)
        return 1

    report = build_support_report(
        V, W, classification, results["checks"], results["mixed"], results["ghw"]
    )
    if results["ghw_requested"]:
        report["ghw"] = results["ghw"]

    stem = descriptor.get("name", f"{V.family}_support")
    report_path = get_report_path(config, stem)
    dump_json(report, report_path)
    if config.get("format") == "csv":
        W.to_csv(report_path.with_suffix(".csv"))

    failed = [check.name for check in results["checks"] if not check.passed]
    for name in failed:
        tqdm.write(f"classify: check {name} reported violations", file=sys.stderr)
    return 2 if failed else 0


def main(config):
    """
    Classify the support of the configured family.

    Args:
        config (dict): Configuration dictionary. See load_config() in
            source/utils/utils.py for more information.

    Returns:
        int: Exit code.
    """
    config.update(config["classify"])

    return cmd_classify(config)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Classify the support of a weight module.")
    parser.add_argument("--config", default="config/default.yaml", help="Path to the config file.")
    parser.add_argument("--family", help="Path to a JSON/YAML family descriptor, or inline JSON.")
    parser.add_argument("--box", type=int, help="Window radius.")
    parser.add_argument("--radii", help="Two G-radii B1,B2 for the mixed check.")
    parser.add_argument("--checks", help="Comma separated checks: " + ", ".join(CHECKS) + ".")
    parser.add_argument("--out", help="Path of the JSON report.")
    parser.add_argument("--format", choices=["json", "csv"], help="Also write the dims as CSV.")
    args = parser.parse_args()

    config = load_config(args.config)
    config["classify"].update(
        {k: v for k, v in vars(args).items() if v is not None and k != "config"}
    )

    sys.exit(main(config))
