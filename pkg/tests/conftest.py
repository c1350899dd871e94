from itertools import product

import pytest

from gccd import BitString, Graph
from gccd.codec import triangle_size


def brute_chromatic(g: Graph) -> int:
    """Smallest k admitting a proper assignment, by trying every assignment."""
    edges = [(i - 1, j - 1) for i, j in g.edges]
    for k in range(1, g.order + 1):
        for colors in product(range(k), repeat=g.order):
            if all(colors[i] != colors[j] for i, j in edges):
                return k
    return g.order


def all_graphs(m: int):
    for index in range(1 << triangle_size(m)):
        yield Graph.from_index(m, index)


def bits(text: str) -> BitString:
    return BitString.from_str(text)


@pytest.fixture
def path_213() -> Graph:
    # path 2-1-3: the graph of payload 110
    return Graph(3, frozenset({(2, 1), (3, 1)}))


# criterion number -> (passed, note); filled by the acceptance suite
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, note = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {note}")
