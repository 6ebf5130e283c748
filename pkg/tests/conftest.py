import pytest

from confspace.fpgroup import GroupSpec

# acceptance outcomes, filled by test_acceptance.py and printed after the run
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def g0():
    return GroupSpec(0)


@pytest.fixture
def g1():
    return GroupSpec(1)


@pytest.fixture
def g2():
    return GroupSpec(2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        name, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} ({name}): {'PASS' if ok else 'FAIL'}")
