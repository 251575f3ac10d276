import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import path_graph
from graphfrechet.embedded_graph import (
    ContractedGraph,
    CurveEdge,
    EdgeCurveTable,
    EmbeddedGraph,
    contract_degree2,
    edge_curve_table,
    plain_contracted,
)
from graphfrechet.general_graph import (
    Isomorphism,
    candidate_distances,
    graph_frechet,
    graph_frechet_contracted,
    isomorphism_respecting,
    realized_cost,
)
from graphfrechet.geometry import UNDEFINED, Polyline
from graphfrechet.oracle import InstanceSpec, brute_force_frechet, gen_instance
from graphfrechet.tree_frechet import tree_frechet_unrooted


def single(name, point):
    return contract_degree2(EmbeddedGraph({name: point}))


def square():
    return EmbeddedGraph({"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)},
                         (("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")))


def test_candidates_single_vertices():
    g1, g2 = single("a", (0, 0)), single("b", (3, 0))
    assert candidate_distances(g1, g2, EdgeCurveTable(g1, g2)) == [3.0]


def test_candidates_identical_contain_zero(triangle):
    c = contract_degree2(triangle)
    assert 0.0 in candidate_distances(c, c, edge_curve_table(c, c))


def test_candidates_unit_edge():
    g = plain_contracted(path_graph([(0, 0), (1, 0)]))
    assert candidate_distances(g, g, edge_curve_table(g, g)) == [0.0, 1.0]


def test_identical_triangle_at_zero(triangle):
    c = contract_degree2(triangle)
    iso = isomorphism_respecting(c, c, edge_curve_table(c, c), 0.0)
    assert iso is not None and iso.vertex_map == {v: v for v in "abc"}


def test_triangle_vs_square_has_no_isomorphism(triangle):
    c1, c2 = contract_degree2(triangle), contract_degree2(square())
    assert isomorphism_respecting(c1, c2, edge_curve_table(c1, c2), 100.0) is None
    assert graph_frechet(triangle, square()) == (UNDEFINED, None)


def test_scalene_thresholds(scalene):
    shifted = scalene.translated((0, 1))
    c1, c2 = contract_degree2(scalene), contract_degree2(shifted)
    table = edge_curve_table(c1, c2)
    assert isomorphism_respecting(c1, c2, table, 0.5) is None
    iso = isomorphism_respecting(c1, c2, table, 1.0)
    assert iso.vertex_map == {v: v for v in "abc"}
    # brute-force oracle: 1.0
    assert graph_frechet(scalene, shifted)[0] == pytest.approx(1.0)


def test_negative_threshold_rejected(triangle):
    c = contract_degree2(triangle)
    with pytest.raises(ValueError):
        isomorphism_respecting(c, c, edge_curve_table(c, c), -1.0)


def test_empty_graphs():
    empty = ContractedGraph({}, (), frozenset())
    assert graph_frechet_contracted(empty, empty) == (0.0, Isomorphism({}))


def test_translation_of_square():
    sq = square()
    value, iso = graph_frechet(sq, sq.translated((0.3, -0.4)))
    assert value == pytest.approx(0.5)


def test_path_matches_tree_solver():
    p = path_graph([(0, 0), (1, 0), (2, 0.5)])
    q = p.translated((0, 1))
    assert graph_frechet(p, q)[0] == tree_frechet_unrooted(p, q)[0]


def multigraph(offset=0.0):
    # two vertices joined by two parallel curves, plus a loop at x
    x, y = (0.0 + offset, 0.0), (2.0 + offset, 0.0)
    up = Polyline([x, (1.0 + offset, 1.0), y])
    down = Polyline([x, (1.0 + offset, -1.0), y])
    loop = Polyline([x, (-1.0 + offset, 1.0), (-1.0 + offset, -1.0), x])
    edges = (CurveEdge("x", "y", up, False), CurveEdge("x", "y", down, False), CurveEdge("x", "x", loop, False))
    return ContractedGraph({"x": x, "y": y}, edges, frozenset())


def test_parallel_edges_and_loop():
    g = multigraph()
    value, iso = graph_frechet_contracted(g, g)
    assert value == 0.0
    assert iso.edge_map[0][0] == 0 and iso.edge_map[1][0] == 1
    moved = graph_frechet_contracted(g, multigraph(0.25))
    assert moved[0] == pytest.approx(0.25)


def test_loop_mapped_in_either_direction():
    g = multigraph()
    loop = g.edges[2]
    flipped = ContractedGraph(g.vertices, g.edges[:2] + (CurveEdge("x", "x", loop.curve.reversed(), False),), frozenset())
    assert graph_frechet_contracted(g, flipped)[0] == 0.0


graph_specs = st.builds(
    InstanceSpec,
    kind=st.just("perturbed"),
    base=st.just("graph"),
    n=st.integers(2, 6),
    extra_edges=st.integers(0, 2),
    seed=st.integers(0, 10**6),
    eps=st.sampled_from([0.0, 0.1, 0.5]),
    chains=st.integers(0, 1),
)


@settings(max_examples=40, deadline=None)
@given(graph_specs)
def test_agrees_with_oracle(spec):
    g1, g2 = gen_instance(spec)
    value, iso = graph_frechet(g1, g2)
    assert value == pytest.approx(brute_force_frechet(g1, g2), abs=1e-9)
    assert value <= spec.eps + 1e-9
    c1, c2 = contract_degree2(g1), contract_degree2(g2)
    table = edge_curve_table(c1, c2)
    assert value in candidate_distances(c1, c2, table)
    assert realized_cost(iso, c1, c2, table) == value


@settings(max_examples=30, deadline=None)
@given(graph_specs)
def test_decision_monotone(spec):
    g1, g2 = gen_instance(spec)
    c1, c2 = contract_degree2(g1), contract_degree2(g2)
    table = edge_curve_table(c1, c2)
    value = graph_frechet_contracted(c1, c2)[0]
    for delta in candidate_distances(c1, c2, table):
        found = isomorphism_respecting(c1, c2, table, delta)
        assert (found is not None) == (delta >= value)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**6), st.sampled_from([0.0, 0.2]))
def test_trees_agree_with_tree_solver(n, seed, eps):
    g1, g2 = gen_instance(InstanceSpec(kind="perturbed", n=n, seed=seed, eps=eps, chains=1))
    assert abs(graph_frechet(g1, g2)[0] - tree_frechet_unrooted(g1, g2)[0]) <= 1e-9 or (
        math.isinf(graph_frechet(g1, g2)[0]) and math.isinf(tree_frechet_unrooted(g1, g2)[0])
    )
