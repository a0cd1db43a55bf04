import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from nilmult import catalog  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# filled by tests/test_acceptance.py: criterion -> (passed, seconds, note)
ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


@pytest.fixture(scope="session")
def q2():
    return catalog.get("q2")


@pytest.fixture(scope="session")
def g_a():
    return catalog.get("g_a")


@pytest.fixture(scope="session")
def g_b():
    return catalog.get("g_b")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, note = ACCEPTANCE[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({secs:.2f} s)"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)
