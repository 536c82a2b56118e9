import pytest

from quantum_alcove.root_core import RootSystem


@pytest.fixture(scope="session")
def A3():
    return RootSystem("A", 3)


@pytest.fixture(scope="session")
def C2():
    return RootSystem("C", 2)


def cayley_lengths(rs):
    """Word length in the simple reflections by breadth-first search."""
    start = rs.identity
    dist = {start.window: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for a in rs.simple_roots:
                v = w.right_reflect(a)
                if v.window not in dist:
                    dist[v.window] = dist[w.window] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
