import os
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from source.supports.checks import CheckResult
from source.supports.classify import Classification, certificate_holds
from source.supports.mixed import MixedSupport
from source.supports.window import SupportWindow
from source.wmod.weight_module import WeightModule

REPORT_SCHEMA = "witt-support-report/1"
SUITE_SCHEMA = "witt-suite-report/1"


def build_support_report(
    V: WeightModule,
    W: SupportWindow,
    classification: Classification,
    checks: list[CheckResult],
    mixed: Optional[MixedSupport] = None,
    ghw: Optional[dict] = None,
) -> dict:
    """
    Assemble the JSON report of a classify run.

    Args:
        V (WeightModule): The module that was built.
        W (SupportWindow): Its support window.
        classification (Classification): Verdict on the window.
        checks (list[CheckResult]): Results of the selected checkers.
        mixed (MixedSupport, optional): Finite/infinite tagging.
        ghw (dict, optional): Serialized GHW witness, or None.

    Returns:
        dict: The report; contains no timestamps.
    """
    report = {
        "schema": REPORT_SCHEMA,
        "family": V.descriptor(),
        **W.to_json(),
        "verdict": classification.verdict,
        "certificate": classification.certificate_json(),
        "checks": [check.to_json() for check in sorted(checks, key=lambda c: c.name)],
    }
    if mixed is not None:
        report["mixed"] = mixed.to_json()
    if ghw is not None:
        report["ghw"] = ghw
    return report


def load_report(path: str | os.PathLike) -> dict:
    """
    Re-parse a classify report and re-verify its cut certificate.

    Args:
        path (str | os.PathLike): Path to the JSON report.

    Returns:
        dict: The report, extended with the parsed "window" and "classification".
    """
    with open(Path(path)) as f:
        report = json.load(f)
    if report.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"Report {path} has schema {report.get('schema')}, expected {REPORT_SCHEMA}.")

    window = SupportWindow.from_json(report)
    classification = Classification.from_json(report["verdict"], report["certificate"])
    if classification.verdict == "Cut" and not certificate_holds(
        window, classification.a, classification.b
    ):
        raise ValueError(
            f"Certificate a={classification.a}, b={classification.b} in {path} "
            "does not hold on the stored dims."
        )
    return {**report, "window": window, "classification": classification}


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, counterexample, keep: int = 10) -> None:
        self.passed = False
        if len(self.counterexamples) < keep:
            self.counterexamples.append(counterexample)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
            "details": self.details,
        }


def build_suite_report(results: list[SuiteResult], seed: int) -> dict:
    return {
        "schema": SUITE_SCHEMA,
        "seed": seed,
        "pass": all(result.passed for result in results),
        "suites": [result.to_json() for result in sorted(results, key=lambda r: r.name)],
    }


def load_suite_report(path: str | os.PathLike) -> dict:
    with open(Path(path)) as f:
        report = json.load(f)
    if report.get("schema") != SUITE_SCHEMA:
        raise ValueError(f"Report {path} has schema {report.get('schema')}, expected {SUITE_SCHEMA}.")
    if report["pass"] != all(suite["pass"] for suite in report["suites"]):
        raise ValueError(f"Overall verdict in {path} disagrees with its suites.")
    return report
