import sys
from pathlib import Path

import pytest

from tacit_audit.validate import load_model

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def model(src: str, filename: str = "m.dsl"):
    """Parse and validate inline DSL, failing the test on any error."""
    return load_model(src, filename)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
