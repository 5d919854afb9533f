"""Shared test configuration.

Every randomized test draws from a ``random.Random`` seeded through the
``--seed`` command line option, so failures replay exactly.
"""

from __future__ import annotations

import random

import pytest

DEFAULT_SEED = 20260819


def pytest_addoption(parser):
    parser.addoption(
        "--seed", action="store", type=int, default=DEFAULT_SEED,
        help="seed for randomized property tests")


@pytest.fixture
def rng(request) -> random.Random:
    return random.Random(request.config.getoption("--seed"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in name:
                short = name.split("::")[-1]
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines[short] = verdict
    if lines:
        terminalreporter.section("acceptance criteria")
        for name in sorted(lines):
            terminalreporter.write_line(f"{name}: {lines[name]}")
