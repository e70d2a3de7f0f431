import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from netflatten.graph import from_edge_list  # noqa: E402

P3 = [(0, 1), (1, 2)]
S4 = [(0, 1), (0, 2), (0, 3), (0, 4)]
K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
C5 = [(i, (i + 1) % 5) for i in range(5)]
C6 = [(i, (i + 1) % 6) for i in range(6)]
DIAG_SQUARE = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
TWO_TRIANGLES = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]


def complete(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@pytest.fixture
def p3():
    return from_edge_list(P3)


@pytest.fixture
def s4():
    return from_edge_list(S4)


@pytest.fixture
def k4():
    return from_edge_list(K4)


@pytest.fixture
def c6():
    return from_edge_list(C6)


@pytest.fixture
def diag_square():
    return from_edge_list(DIAG_SQUARE)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
