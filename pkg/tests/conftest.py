import pytest

from relnet.corpus import cycle4, k4, lolly, two_k4
from relnet.graph import build_graph

# edge ids in the two_k4 fixture
B0, B1 = 12, 13


@pytest.fixture
def c4():
    return cycle4()


@pytest.fixture
def kfour():
    return k4()


@pytest.fixture
def lol():
    return lolly()


@pytest.fixture
def tk():
    return two_k4()


@pytest.fixture
def isolated_pair():
    return build_graph(2, [])


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    return request.param


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def criterion(pytestconfig):
    """Record one summary line per acceptance criterion; returns the verdict."""
    def record(number, ok, detail):
        pytestconfig.acceptance_lines.append((number, f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"))
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
