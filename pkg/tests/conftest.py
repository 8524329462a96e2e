from pathlib import Path

import pytest

from onegate.compiler import parse_netlist
from onegate.gate import cnot, fredkin, swap, toffoli

DATA = Path(__file__).parent / "data"

# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def fredkin_gate():
    return fredkin()


@pytest.fixture(scope="session")
def toffoli_gate():
    return toffoli()


@pytest.fixture(scope="session")
def cnot_gate():
    return cnot()


@pytest.fixture(scope="session")
def swap_gate():
    return swap()


@pytest.fixture(scope="session")
def full_adder():
    return parse_netlist((DATA / "full_adder.netlist").read_text())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    if call.when == "call":
        item.rep_call = outcome.get_result()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
