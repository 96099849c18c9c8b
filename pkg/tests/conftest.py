import pytest

# Joint encoding table of the (3, 2, 2) toy code as printed:
# PAPER_TABLE[second][first] = programmed levels of cells 1..3.
PAPER_TABLE = {
    "00": {"00": "200", "01": "021", "10": "012", "11": "011"},
    "01": {"00": "201", "01": "020", "10": "102", "11": "101"},
    "10": {"00": "210", "01": "120", "10": "002", "11": "110"},
    "11": {"00": "211", "01": "121", "10": "112", "11": "000"},
}

# Decoding table as printed: each read and its complement map to one info word.
PAPER_DECODE = {
    "011": "00", "100": "00",
    "010": "01", "101": "01",
    "001": "10", "110": "10",
    "000": "11", "111": "11",
}

_acceptance_lines = []


@pytest.fixture
def paper_table():
    return PAPER_TABLE


@pytest.fixture
def paper_decode():
    return PAPER_DECODE


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        doc = getattr(report, "criterion", None) or report.nodeid.split("::")[-1]
        _acceptance_lines.append(f"[{'PASS' if report.passed else 'FAIL'}] {doc}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    criterion = item.get_closest_marker("criterion")
    if criterion:
        report.criterion = criterion.args[0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(text): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
