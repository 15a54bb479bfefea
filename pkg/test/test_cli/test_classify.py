import json

from source.cli.classify import cmd_classify, parse_int_list, parse_name_list
from source.cli.report import REPORT_SCHEMA, load_report
from source.utils.utils import load_config

config = load_config("config/default.yaml")

VERMA = {"name": "verma", "family": "verma", "G": [[0, 1]], "beta": [1, 0], "K": 3, "B": 3}
PUNCTURED = {
    "name": "punctured",
    "family": "tensor",
    "variant": "quotient_by_trivial",
    "lambda": [0, 0],
    "b": 0,
}


def classify_config(tmp_path, descriptor, **overrides):
    run_config = dict(config)
    run_config.update(config["classify"])
    run_config["family"] = json.dumps(descriptor)
    run_config["out"] = str(tmp_path / "report.json")
    run_config.update(overrides)
    return run_config


def test_parse_lists():
    assert parse_int_list("4,6") == [4, 6]
    assert parse_int_list([4, 6]) == [4, 6]
    assert parse_name_list("convexity, ghw") == ["convexity", "ghw"]


def test_classify_verma(tmp_path):
    run_config = classify_config(tmp_path, VERMA)
    assert cmd_classify(run_config) == 0

    report = load_report(tmp_path / "report.json")
    assert report["schema"] == REPORT_SCHEMA
    assert report["verdict"] == "Cut"
    assert report["certificate"] == {"a": [1, 0], "b": [0, 0], "scope": "analytic"}
    assert [check["name"] for check in report["checks"]] == [
        "complement-convexity",
        "halfspace-propagation",
    ]
    assert report["box"] == {"lower": [-3, -3], "upper": [3, 3]}


def test_classify_punctured_csv(tmp_path):
    run_config = classify_config(tmp_path, PUNCTURED, format="csv", box=2)
    assert cmd_classify(run_config) == 0

    report = load_report(tmp_path / "report.json")
    assert report["verdict"] == "Punctured"
    assert report["certificate"] is None
    assert report["zero_weight_offset"] == [0, 0]
    assert (tmp_path / "report.csv").exists()


def test_classify_with_ghw(tmp_path):
    run_config = classify_config(tmp_path, VERMA, checks="convexity,upset,ghw")
    assert cmd_classify(run_config) == 0

    report = load_report(tmp_path / "report.json")
    assert report["ghw"]["N"] == 0
    assert report["ghw"]["offset"] == [0, 0]


def test_classify_violations(tmp_path):
    run_config = classify_config(tmp_path, VERMA, checks="upset", upset_p=None)
    assert cmd_classify(run_config) == 2

    report = load_report(tmp_path / "report.json")
    assert report["checks"][0]["pass"] is False


def test_classify_input_errors(tmp_path):
    assert cmd_classify(classify_config(tmp_path, {"family": "loop"})) == 1
    assert cmd_classify(classify_config(tmp_path, VERMA, checks="shape")) == 1
    assert cmd_classify(classify_config(tmp_path, VERMA, box=5)) == 1
    assert cmd_classify(classify_config(tmp_path, VERMA, checks="mixed")) == 1
    assert not (tmp_path / "report.json").exists()


def test_reports_are_deterministic(tmp_path):
    first = classify_config(tmp_path, VERMA, out=str(tmp_path / "first.json"))
    second = classify_config(tmp_path, VERMA, out=str(tmp_path / "second.json"))
    assert cmd_classify(first) == 0
    assert cmd_classify(second) == 0
    assert (tmp_path / "first.json").read_bytes() == (tmp_path / "second.json").read_bytes()


def test_classify_formal_tensor_is_dense(tmp_path):
    descriptor = {"name": "formal", "family": "tensor", "λ": "γ", "b": "1/2", "variant": "full"}
    assert cmd_classify(classify_config(tmp_path, descriptor, box=5)) == 0

    report = load_report(tmp_path / "report.json")
    assert report["verdict"] == "Dense"
    assert report["certificate"] is None
    assert report["coset"] == ["gamma1", "gamma2"]
    assert len(report["dims"]) == 121


def test_classify_malformed_yaml(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("family: tensor\nlambda: [0, 0\n")
    run_config = classify_config(tmp_path, VERMA)
    run_config["family"] = str(path)
    assert cmd_classify(run_config) == 1
    assert not (tmp_path / "report.json").exists()
