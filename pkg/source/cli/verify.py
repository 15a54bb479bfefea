import sys
import argparse
from tqdm import tqdm

from source.cli.classify import parse_name_list
from source.cli.report import build_suite_report
from source.cli.suites import SUITES, run_suite
from source.utils.utils import dump_json, get_report_path, load_config


def selected_suites(value) -> list[str]:
    names = parse_name_list(value)
    if names == ["all"]:
        return list(SUITES)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"Suite {name} not recognized; choose from {', '.join(SUITES)}.")
    return names


def cmd_verify(config: dict) -> int:
    """
    Run the selected property suites and write the suite report.

    Args:
        config (dict): Configuration dictionary with the verify section merged in.

    Returns:
        int: 0 when every suite passes, 2 on failures, 1 on input errors.
    """
    try:
        names = selected_suites(config["suites"])
    except ValueError as e:
        tqdm.write(f"verify: {e}", file=sys.stderr)
        return 1

    results = []
    for name in tqdm(names, desc="Verifying", unit="suite"):
        result = run_suite(name, config)
        if not result.passed:
            tqdm.write(f"verify: suite {name} failed", file=sys.stderr)
        results.append(result)

    report = build_suite_report(results, config["seed"])
    dump_json(report, get_report_path(config, "verify"))
    return 0 if report["pass"] else 2


def main(config):
    """
    Run the verification suites.

    Args:
        config (dict): Configuration dictionary. See load_config() in
            source/utils/utils.py for more information.

    Returns:
        int: Exit code.
    """
    config.update(config["verify"])

    return cmd_verify(config)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Run the algebra and support property suites.")
    parser.add_argument("--config", default="config/default.yaml", help="Path to the config file.")
    parser.add_argument("--suites", help="Comma separated suite names, or all.")
    parser.add_argument("--seed", type=int, help="Seed of the random samples.")
    parser.add_argument("--out", help="Path of the JSON suite report.")
    parser.add_argument(
        "--inject-negative-control",
        dest="inject_negative_control",
        action="store_true",
        default=None,
        help="Add a window with a non-convex complement to the convexity suite.",
    )
    args = parser.parse_args()

    config = load_config(args.config)
    config["verify"].update(
        {k: v for k, v in vars(args).items() if v is not None and k != "config"}
    )

    sys.exit(main(config))
