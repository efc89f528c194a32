import json
from pathlib import Path

import pytest

ORACLE_FILE = Path(__file__).with_name("oracle_values.json")


@pytest.fixture(scope="session")
def oracle():
    return json.loads(ORACLE_FILE.read_text())


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, acceptance_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(acceptance_line(RESULTS[key]))
