"""Fréchet distance of general embedded graphs by search over candidate distances.

The decision step is an exact backtracking search for a vertex bijection
whose displacements and matched edge curves all stay within the threshold.
Its running time is exponential in the worst case, so this path is meant for
small graphs.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .embedded_graph import (
    ContractedGraph,
    EdgeCurveTable,
    EmbeddedGraph,
    VertexId,
    contract_degree2,
    edge_curve_table,
)
from .geometry import UNDEFINED, point_distance
from .matching import perfect_matching_under


@dataclass
class Isomorphism:
    """Vertex bijection between two contracted graphs plus the induced edge map.

    ``edge_map[i] = (j, reversed)`` sends edge ``i`` of the first graph to edge
    ``j`` of the second; ``reversed`` is true when the stored curve
    orientations run against each other under the map.
    """

    vertex_map: Dict[VertexId, VertexId]
    edge_map: Dict[int, Tuple[int, bool]] = field(default_factory=dict)


def realized_cost(iso: Isomorphism, g1: ContractedGraph, g2: ContractedGraph, table: Optional[EdgeCurveTable] = None) -> float:
    """Largest vertex displacement or matched edge-curve distance under ``iso``."""
    if table is None:
        table = EdgeCurveTable(g1, g2)
    cost = 0.0
    for v, w in iso.vertex_map.items():
        cost = max(cost, point_distance(g1.vertices[v], g2.vertices[w]))
    for i, (j, rev) in iso.edge_map.items():
        cost = max(cost, table.oriented(i, j, rev))
    return cost


def candidate_distances(g1: ContractedGraph, g2: ContractedGraph, table: EdgeCurveTable) -> List[float]:
    values = {point_distance(p, q) for p in g1.vertices.values() for q in g2.vertices.values()}
    values.update(table.values())
    return sorted(values)


def _neighbour_bundles(g: ContractedGraph) -> Dict[VertexId, Dict[VertexId, List[int]]]:
    nb: Dict[VertexId, Dict[VertexId, List[int]]] = {v: defaultdict(list) for v in g.vertices}
    for k, e in enumerate(g.edges):
        nb[e.u][e.v].append(k)
        if e.u != e.v:
            nb[e.v][e.u].append(k)
    return nb


def _degree_signature(g: ContractedGraph, v: VertexId, nb) -> Tuple[int, int]:
    loops = len(nb[v].get(v, ()))
    return sum(len(es) for es in nb[v].values()) + loops, loops


def _search_order(g: ContractedGraph, nb) -> List[VertexId]:
    order: List[VertexId] = []
    seen = set()
    by_degree = sorted(g.vertices, key=lambda v: (-len(nb[v]), v))
    for start in by_degree:
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(nb[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _compatible(g1: ContractedGraph, g2: ContractedGraph) -> bool:
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    d1 = sorted(g1.degree(v) for v in g1.vertices)
    d2 = sorted(g2.degree(v) for v in g2.vertices)
    return d1 == d2


def isomorphism_respecting(
    g1: ContractedGraph, g2: ContractedGraph, table: EdgeCurveTable, delta: float
) -> Optional[Isomorphism]:
    """An isomorphism whose every vertex and edge cost is at most ``delta``, or ``None``."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if not _compatible(g1, g2):
        return None
    nb1, nb2 = _neighbour_bundles(g1), _neighbour_bundles(g2)
    sig1 = {v: _degree_signature(g1, v, nb1) for v in g1.vertices}
    sig2 = {v: _degree_signature(g2, v, nb2) for v in g2.vertices}
    order = _search_order(g1, nb1)

    candidates = {}
    for u in order:
        p = g1.vertices[u]
        scored = [
            (point_distance(p, g2.vertices[v]), v) for v in g2.vertices if sig1[u] == sig2[v]
        ]
        candidates[u] = [v for d, v in sorted(scored) if d <= delta]
        if not candidates[u]:
            return None

    mapping: Dict[VertexId, VertexId] = {}
    image = set()
    edge_map: Dict[int, Tuple[int, bool]] = {}

    def match_bundle(es1, es2, u, v, loop):
        rows = []
        flags = []
        for i in es1:
            row = []
            flag = []
            for j in es2:
                if loop:
                    f, r = table.forward(i, j), table.reverse(i, j)
                    row.append(min(f, r))
                    flag.append(r < f)
                else:
                    rev = (g1.edges[i].u == u) != (g2.edges[j].u == v)
                    row.append(table.oriented(i, j, rev))
                    flag.append(rev)
            rows.append(row)
            flags.append(flag)
        match = perfect_matching_under(rows, delta)
        if match is None:
            return None
        return [(i, (es2[b], flags[a][b])) for a, (i, b) in enumerate(zip(es1, match))]

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        bundles_u = nb1[u]
        for v in candidates[u]:
            if v in image:
                continue
            bundles_v = nb2[v]
            mapped_u = sum(len(es) for w, es in bundles_u.items() if w in mapping)
            mapped_v = sum(len(es) for x, es in bundles_v.items() if x in image)
            if mapped_u != mapped_v:
                continue
            added = []
            ok = True
            for w, es1 in bundles_u.items():
                if w != u and w not in mapping:
                    continue
                target = v if w == u else mapping[w]
                es2 = bundles_v.get(target, [])
                if len(es1) != len(es2):
                    ok = False
                    break
                pairs = match_bundle(es1, es2, u, v, w == u)
                if pairs is None:
                    ok = False
                    break
                added.extend(pairs)
            if not ok:
                continue
            mapping[u] = v
            image.add(v)
            edge_map.update(added)
            if extend(k + 1):
                return True
            del mapping[u]
            image.discard(v)
            for i, _ in added:
                del edge_map[i]
        return False

    if not extend(0):
        return None
    return Isomorphism(dict(mapping), dict(edge_map))


def graph_frechet_contracted(
    g1: ContractedGraph, g2: ContractedGraph
) -> Tuple[float, Optional[Isomorphism]]:
    if not _compatible(g1, g2):
        return UNDEFINED, None
    if not g1.vertices:
        return 0.0, Isomorphism({})
    table = edge_curve_table(g1, g2)
    values = candidate_distances(g1, g2, table)
    best = isomorphism_respecting(g1, g2, table, values[-1]) if values else None
    if best is None:
        return UNDEFINED, None
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        iso = isomorphism_respecting(g1, g2, table, values[mid])
        if iso is None:
            lo = mid + 1
        else:
            hi = mid
            best = iso
    return values[lo], best


def graph_frechet(G1: EmbeddedGraph, G2: EmbeddedGraph) -> Tuple[float, Optional[Isomorphism]]:
    """Fréchet distance of two embedded graphs and a witness isomorphism.

    Both graphs are contracted without protected vertices; the witness maps
    the contracted graphs. Returns ``(UNDEFINED, None)`` when they are not
    isomorphic.
    """
    return graph_frechet_contracted(contract_degree2(G1), contract_degree2(G2))
