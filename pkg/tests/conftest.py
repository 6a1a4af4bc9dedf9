import sys
from importlib import resources
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# lets test modules import helpers from this file
sys.path.insert(0, str(Path(__file__).parent))


def data_path(name: str) -> Path:
    return Path(str(resources.files("vaguespace") / "data" / f"{name}.json"))


def fixture_path(name: str) -> Path:
    return FIXTURES / name


# Acceptance lines are collected by tests/test_acceptance.py and printed once at the end.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
