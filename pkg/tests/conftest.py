"""Shared fixtures and the acceptance-criteria result banner."""

from __future__ import annotations

import re
import sys

import pytest

import helpers


@pytest.fixture
def demo_site():
    return helpers.demo_site()


@pytest.fixture
def demo_site_doc():
    return helpers.demo_site_doc()


# ---------------------------------------------------------------------------
# Acceptance banner: one PASS/FAIL line per criterion at the end of the run.

_CRITERION_ID = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")

_outcomes: dict = {}


def pytest_runtest_logreport(report):
    m = _CRITERION_ID.search(report.nodeid)
    if not m:
        return
    number = int(m.group(1))
    if report.when == "call":
        _outcomes[number] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.skipped:
        _outcomes[number] = "SKIP"
    elif report.when == "setup" and report.failed:
        _outcomes[number] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    module = sys.modules.get("test_acceptance")
    titles = getattr(module, "CRITERIA", {}) if module else {}
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        title = titles.get(number, "")
        terminalreporter.write_line(
            f"criterion {number:02d} {_outcomes[number]} - {title}"
        )
