import pytest

from graphfrechet.embedded_graph import EmbeddedGraph


def path_graph(points, prefix="p"):
    ids = [f"{prefix}{k}" for k in range(len(points))]
    return EmbeddedGraph(dict(zip(ids, points)), tuple(zip(ids, ids[1:])))


@pytest.fixture
def triangle():
    return EmbeddedGraph({"a": (0, 0), "b": (1, 0), "c": (0, 1)}, (("a", "b"), ("b", "c"), ("c", "a")))


@pytest.fixture
def scalene():
    return EmbeddedGraph({"a": (0, 0), "b": (3, 0), "c": (1, 2)}, (("a", "b"), ("b", "c"), ("c", "a")))


@pytest.fixture
def star5():
    hub = {"h": (0.0, 0.0)}
    leaves = {f"l{k}": (float(k + 1), 1.0) for k in range(5)}
    return EmbeddedGraph({**hub, **leaves}, tuple(("h", f"l{k}") for k in range(5)))


#: One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)
