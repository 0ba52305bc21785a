import pytest

from rabispec.figures import fixture

CRITERIA: list[str] = []


def record(number: int, description: str, passed: bool, detail: str = "") -> bool:
    status = "PASS" if passed else "FAIL"
    line = f"[{status}] criterion {number:>2}: {description}" + (f" ({detail})" if detail else "")
    CRITERIA.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture
def two_level():
    return fixture("two_level")


@pytest.fixture
def ladder():
    return fixture("ladder")


@pytest.fixture
def chain4():
    return fixture("chain4")
