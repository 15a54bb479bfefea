import copy
import pytest

from source.cli.report import SUITE_SCHEMA, load_suite_report
from source.cli.suites import SUITES, negative_control_window, run_suite
from source.cli.verify import cmd_verify, selected_suites
from source.supports.checks import complement_convexity_check
from source.utils.utils import load_config

config = load_config("config/default.yaml")


def verify_config(tmp_path=None, **overrides):
    run_config = copy.deepcopy(config)
    run_config.update(copy.deepcopy(config["verify"]))
    for name in run_config["samples"]:
        run_config["samples"][name] = min(run_config["samples"][name], 20)
    if tmp_path is not None:
        run_config["out"] = str(tmp_path / "verify.json")
    run_config.update(overrides)
    return run_config


def test_selected_suites():
    assert selected_suites("all") == list(SUITES)
    assert selected_suites("jacobi, trichotomy") == ["jacobi", "trichotomy"]
    with pytest.raises(ValueError):
        selected_suites("jacobi,unknown")


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes(name):
    result = run_suite(name, verify_config())
    assert result.name == name
    assert result.passed, result.counterexamples
    assert result.checked > 0


def test_suite_details():
    run_config = verify_config()
    assert run_suite("verma-partitions", run_config).details["dims"] == [1, 1, 2, 3, 5, 7, 11, 15]

    verdicts = run_suite("trichotomy", run_config).details["verdicts"]
    assert verdicts["verma-shifted"] == "Cut"
    assert verdicts["quotient-shifted-coset"] == "Punctured"

    assert run_suite("ghw-propagation", run_config).details["witness"]["N"] == 0


def test_ray_shape_skips_rays_inside_the_support():
    result = run_suite("ray-shape", verify_config(samples={"ray-shape": 200}))
    assert result.passed, result.counterexamples


def test_negative_control():
    check = complement_convexity_check(negative_control_window())
    assert [v["offset"] for v in check.violations] == [[2, 0]]

    result = run_suite("convexity", verify_config(inject_negative_control=True))
    assert not result.passed
    assert result.counterexamples == [{"instance": "negative-control", "offset": [2, 0], "dim": 1}]


def test_cmd_verify(tmp_path):
    run_config = verify_config(tmp_path, suites="antisymmetry,verma-partitions")
    assert cmd_verify(run_config) == 0

    report = load_suite_report(tmp_path / "verify.json")
    assert report["schema"] == SUITE_SCHEMA
    assert report["seed"] == 7
    assert [suite["name"] for suite in report["suites"]] == ["antisymmetry", "verma-partitions"]

    first = (tmp_path / "verify.json").read_bytes()
    assert cmd_verify(run_config) == 0
    assert (tmp_path / "verify.json").read_bytes() == first


def test_cmd_verify_failures(tmp_path):
    run_config = verify_config(tmp_path, suites="convexity", inject_negative_control=True)
    assert cmd_verify(run_config) == 2
    assert load_suite_report(tmp_path / "verify.json")["pass"] is False

    assert cmd_verify(verify_config(tmp_path, suites="unknown")) == 1
