"""Fréchet distance of embedded trees by bottom-up bottleneck matching.

Pairs of nodes at equal depth are processed from the deepest level upwards.
The distance between two rooted subtrees is the larger of the distance
between their roots and the value of a bottleneck matching between their
children, where matching child ``a`` to child ``b`` costs the larger of the
subtree distance of ``a``/``b`` and the Fréchet distance of the edges leading
down to them.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .embedded_graph import (
    ContractedGraph,
    EdgeCurveTable,
    EmbeddedGraph,
    NotATreeError,
    VertexId,
    contract_degree2,
    is_tree,
    tree_center,
    validate,
)
from .general_graph import Isomorphism
from .geometry import UNDEFINED, is_undefined, point_distance
from .matching import bottleneck_matching


@dataclass
class RootedTree:
    graph: ContractedGraph
    root: VertexId
    order: List[VertexId]
    parent: Dict[VertexId, Optional[VertexId]]
    parent_edge: Dict[VertexId, Optional[int]]
    children: Dict[VertexId, List[VertexId]]
    depth: Dict[VertexId, int]
    height: Dict[VertexId, int]

    @property
    def total_height(self) -> int:
        return self.height[self.root]


def root_tree(t: ContractedGraph, root: VertexId) -> RootedTree:
    if not is_tree(t):
        raise NotATreeError("expected a connected acyclic graph")
    if root not in t.vertices:
        raise KeyError(root)
    inc = t.incidence()
    parent = {root: None}
    parent_edge: Dict[VertexId, Optional[int]] = {root: None}
    depth = {root: 0}
    children: Dict[VertexId, List[VertexId]] = {}
    order = [root]
    for u in order:
        kids = []
        for k in sorted(inc[u], key=lambda k: t.edges[k].other(u)):
            w = t.edges[k].other(u)
            if w == parent[u]:
                continue
            parent[w] = u
            parent_edge[w] = k
            depth[w] = depth[u] + 1
            kids.append(w)
            order.append(w)
        children[u] = kids
    height = {}
    for u in reversed(order):
        height[u] = 1 + max((height[w] for w in children[u]), default=-1)
    return RootedTree(t, root, order, parent, parent_edge, children, depth, height)


class DpTable:
    """Subtree distances for every equal-depth node pair, with witness matchings."""

    def __init__(self):
        self.values: Dict[Tuple[VertexId, VertexId], float] = {}
        self.witness: Dict[Tuple[VertexId, VertexId], List[Tuple[VertexId, VertexId]]] = {}

    def get(self, u: VertexId, v: VertexId) -> float:
        try:
            return self.values[u, v]
        except KeyError:
            raise LookupError(f"subtree pair ({u!r}, {v!r}) used before it was computed") from None

    def __len__(self) -> int:
        return len(self.values)


def _edge_reversed(t1: RootedTree, t2: RootedTree, a: VertexId, b: VertexId) -> bool:
    # compare both edges oriented parent -> child
    e1 = t1.graph.edges[t1.parent_edge[a]]
    e2 = t2.graph.edges[t2.parent_edge[b]]
    return (e1.u == t1.parent[a]) != (e2.u == t2.parent[b])


def subtree_distance(
    u: VertexId,
    v: VertexId,
    t1: RootedTree,
    t2: RootedTree,
    dp: DpTable,
    table: EdgeCurveTable,
) -> float:
    """Compute and store the distance between the subtrees at ``u`` and ``v``."""
    kids1 = t1.children[u]
    kids2 = t2.children[v]
    if len(kids1) != len(kids2) or t1.height[u] != t2.height[v]:
        dp.values[u, v] = UNDEFINED
        return UNDEFINED
    base = point_distance(t1.graph.vertices[u], t2.graph.vertices[v])
    if not kids1:
        dp.values[u, v] = base
        dp.witness[u, v] = []
        return base

    weights = []
    for a in kids1:
        row = []
        ea = t1.parent_edge[a]
        for b in kids2:
            sub = dp.get(a, b)
            if is_undefined(sub):
                row.append(UNDEFINED)
                continue
            edge = table.oriented(ea, t2.parent_edge[b], _edge_reversed(t1, t2, a, b))
            row.append(max(sub, edge))
        weights.append(row)

    found = bottleneck_matching(weights)
    if found is None:
        dp.values[u, v] = UNDEFINED
        return UNDEFINED
    value = max(found[0], base)
    dp.values[u, v] = value
    dp.witness[u, v] = [(kids1[i], kids2[j]) for i, j in enumerate(found[1])]
    return value


def extract_isomorphism(dp: DpTable, t1: RootedTree, t2: RootedTree) -> Isomorphism:
    """Replay the stored witness matchings from the roots downwards."""
    if is_undefined(dp.values.get((t1.root, t2.root), UNDEFINED)):
        raise ValueError("no isomorphism: root distance is undefined")
    iso = Isomorphism({t1.root: t2.root})
    stack = [(t1.root, t2.root)]
    while stack:
        u, v = stack.pop()
        for a, b in dp.witness[u, v]:
            iso.vertex_map[a] = b
            iso.edge_map[t1.parent_edge[a]] = (t2.parent_edge[b], _edge_reversed(t1, t2, a, b))
            stack.append((a, b))
    return iso


def tree_frechet_rooted(
    t1: RootedTree, t2: RootedTree, table: Optional[EdgeCurveTable] = None
) -> Tuple[float, Optional[Isomorphism]]:
    """Distance between two rooted contracted trees; the roots are mapped onto each other."""
    if t1.total_height != t2.total_height or len(t1.order) != len(t2.order):
        return UNDEFINED, None
    if table is None:
        table = EdgeCurveTable(t1.graph, t2.graph)

    levels1: Dict[int, List[VertexId]] = defaultdict(list)
    for u in t1.order:
        levels1[t1.depth[u]].append(u)
    levels2: Dict[int, List[VertexId]] = defaultdict(list)
    for v in t2.order:
        levels2[t2.depth[v]].append(v)

    dp = DpTable()
    for depth in range(max(levels1), -1, -1):
        for u in levels1[depth]:
            for v in levels2[depth]:
                subtree_distance(u, v, t1, t2, dp, table)

    value = dp.get(t1.root, t2.root)
    if is_undefined(value):
        return UNDEFINED, None
    return value, extract_isomorphism(dp, t1, t2)


def check_tree(g: EmbeddedGraph) -> None:
    validate(g)
    if not is_tree(g):
        raise NotATreeError("input graph is not a tree")


def tree_frechet_rooted_graphs(
    T1: EmbeddedGraph, T2: EmbeddedGraph
) -> Tuple[float, Optional[Isomorphism]]:
    """Rooted variant for embedded trees carrying a ``root``; roots survive contraction."""
    for g in (T1, T2):
        check_tree(g)
        if g.root is None:
            raise ValueError("rooted computation needs a root on both trees")
    r1 = root_tree(contract_degree2(T1, {T1.root}), T1.root)
    r2 = root_tree(contract_degree2(T2, {T2.root}), T2.root)
    return tree_frechet_rooted(r1, r2)


def tree_frechet_contracted(
    c1: ContractedGraph, c2: ContractedGraph, table: Optional[EdgeCurveTable] = None
) -> Tuple[float, Optional[Isomorphism]]:
    if len(c1.vertices) != len(c2.vertices):
        return UNDEFINED, None
    centers1 = tree_center(c1)
    centers2 = tree_center(c2)
    if len(centers1) != len(centers2):
        return UNDEFINED, None
    if table is None:
        table = EdgeCurveTable(c1, c2)
    r1 = root_tree(c1, centers1[0])
    best: Tuple[float, Optional[Isomorphism]] = (UNDEFINED, None)
    for center in centers2:
        result = tree_frechet_rooted(r1, root_tree(c2, center), table)
        if result[0] < best[0]:
            best = result
    return best


def tree_frechet_unrooted(T1: EmbeddedGraph, T2: EmbeddedGraph) -> Tuple[float, Optional[Isomorphism]]:
    """Distance between two unrooted embedded trees.

    Both trees are contracted first; any isomorphism of the contracted trees
    maps centers to centers, so we root at the centers and, for bicentral
    trees, try both ways of pairing them up.
    """
    check_tree(T1)
    check_tree(T2)
    return tree_frechet_contracted(contract_degree2(T1), contract_degree2(T2))
