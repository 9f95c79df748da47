import pytest

from trapredund import codes

ACCEPTANCE_FILE = "test_acceptance.py"
_acceptance: dict[str, list[str]] = {}


@pytest.fixture(scope="session")
def golay():
    return codes.build_reference_code("golay24")


@pytest.fixture(scope="session")
def hamming():
    return codes.build_reference_code("hamming7")


@pytest.fixture(scope="session")
def margulis():
    return codes.build_margulis(11)


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance.setdefault(name, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        outcome = "PASS" if all(o == "passed" for o in _acceptance[name]) else "FAIL"
        terminalreporter.write_line(f"{outcome}  {name}")
