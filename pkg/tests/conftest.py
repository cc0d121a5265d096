import json
from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ORACLE_FILE = Path(__file__).with_name("oracle_values.json")


@pytest.fixture(scope="session")
def oracle():
    """Reference values frozen by scripts/freeze_oracles.py (mpmath, 40 digits)."""
    return json.loads(ORACLE_FILE.read_text())


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per criterion and fail the test on FAIL."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    def report(number: int, title: str, ok: bool, detail: str):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        print(line)
        lines.append(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
