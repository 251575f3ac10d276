"""Embedded graphs, degree-2 contraction, tree centers and the edge-curve table."""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .geometry import Point, Polyline, curve_frechet

VertexId = Hashable


class GraphError(ValueError):
    """Base class for invalid graph input."""


class ValidationError(GraphError):
    UNKNOWN_ENDPOINT = "unknown-endpoint"
    SELF_LOOP = "self-loop"
    DUPLICATE_EDGE = "duplicate-edge"
    NON_FINITE = "non-finite"
    DIMENSION_MISMATCH = "dimension-mismatch"
    ZERO_LENGTH_EDGE = "zero-length-edge"
    UNKNOWN_ROOT = "unknown-root"

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class GraphFormatError(GraphError):
    """Malformed graph file; the message names the offending line or field."""


class ContractionError(GraphError):
    """Raised for cycles made only of unprotected degree-2 vertices."""


class NotATreeError(GraphError):
    pass


@dataclass(frozen=True)
class EmbeddedGraph:
    vertices: Dict[VertexId, Point]
    edges: Tuple[Tuple[VertexId, VertexId], ...] = ()
    root: Optional[VertexId] = None
    dimension: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", {v: tuple(float(c) for c in p) for v, p in self.vertices.items()})
        object.__setattr__(self, "edges", tuple((u, v) for u, v in self.edges))
        if self.dimension is None:
            dim = len(next(iter(self.vertices.values()))) if self.vertices else 2
            object.__setattr__(self, "dimension", dim)

    def adjacency(self) -> Dict[VertexId, List[VertexId]]:
        adj: Dict[VertexId, List[VertexId]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def translated(self, offset: Sequence[float]) -> "EmbeddedGraph":
        moved = {v: tuple(c + t for c, t in zip(p, offset)) for v, p in self.vertices.items()}
        return EmbeddedGraph(moved, self.edges, self.root, self.dimension)

    def with_root(self, root: Optional[VertexId]) -> "EmbeddedGraph":
        return EmbeddedGraph(self.vertices, self.edges, root, self.dimension)


def validate(g: EmbeddedGraph) -> None:
    for v, p in g.vertices.items():
        if len(p) != g.dimension:
            raise ValidationError(
                ValidationError.DIMENSION_MISMATCH,
                f"vertex {v!r} has {len(p)} coordinates, expected {g.dimension}",
            )
        if not all(math.isfinite(c) for c in p):
            raise ValidationError(ValidationError.NON_FINITE, f"vertex {v!r} has coordinates {p!r}")
    seen = set()
    for u, v in g.edges:
        for w in (u, v):
            if w not in g.vertices:
                raise ValidationError(ValidationError.UNKNOWN_ENDPOINT, f"edge ({u!r}, {v!r}) names {w!r}")
        if u == v:
            raise ValidationError(ValidationError.SELF_LOOP, f"edge ({u!r}, {v!r})")
        key = frozenset((u, v))
        if key in seen:
            raise ValidationError(ValidationError.DUPLICATE_EDGE, f"edge ({u!r}, {v!r})")
        seen.add(key)
        if g.vertices[u] == g.vertices[v]:
            raise ValidationError(ValidationError.ZERO_LENGTH_EDGE, f"edge ({u!r}, {v!r}) has coincident endpoints")
    if g.root is not None and g.root not in g.vertices:
        raise ValidationError(ValidationError.UNKNOWN_ROOT, f"root {g.root!r}")


@dataclass(frozen=True)
class CurveEdge:
    """Edge of a contracted graph; ``curve`` runs from ``u`` to ``v``."""

    u: VertexId
    v: VertexId
    curve: Polyline
    marked: bool = False

    def other(self, w: VertexId) -> VertexId:
        return self.v if w == self.u else self.u

    def curve_from(self, w: VertexId) -> Polyline:
        return self.curve if w == self.u else self.curve.reversed()


@dataclass(frozen=True)
class ContractedGraph:
    vertices: Dict[VertexId, Point]
    edges: Tuple[CurveEdge, ...]
    protected: frozenset = field(default_factory=frozenset)

    @property
    def dimension(self) -> int:
        return len(next(iter(self.vertices.values()))) if self.vertices else 2

    def incidence(self) -> Dict[VertexId, List[int]]:
        """Edge indices around each vertex; a loop is listed twice."""
        inc: Dict[VertexId, List[int]] = {v: [] for v in self.vertices}
        for k, e in enumerate(self.edges):
            inc[e.u].append(k)
            inc[e.v].append(k)
        return inc

    def adjacency(self) -> Dict[VertexId, List[VertexId]]:
        adj: Dict[VertexId, List[VertexId]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        return adj

    def degree(self, v: VertexId) -> int:
        return sum((e.u == v) + (e.v == v) for e in self.edges)


def _oriented(u: VertexId, v: VertexId, points: Sequence[Point], marked: bool) -> CurveEdge:
    if v < u:
        return CurveEdge(v, u, Polyline(points[::-1]), marked)
    if u == v and tuple(points[::-1]) < tuple(points):
        return CurveEdge(u, v, Polyline(points[::-1]), marked)
    return CurveEdge(u, v, Polyline(points), marked)


def plain_contracted(g: EmbeddedGraph) -> ContractedGraph:
    """View ``g`` as a curve graph with one 2-point curve per edge."""
    edges = tuple(
        _oriented(u, v, (g.vertices[u], g.vertices[v]), False) for u, v in g.edges
    )
    return ContractedGraph(dict(g.vertices), edges)


def contract_degree2(g, protected: Iterable[VertexId] = (), on_cycle: str = "keep") -> ContractedGraph:
    """Replace every maximal path of unprotected degree-2 vertices by one marked edge.

    Accepts an :class:`EmbeddedGraph` or an already contracted graph. Every
    surviving vertex keeps its degree.

    A connected component that is a cycle of unprotected degree-2 vertices has
    no vertex to anchor a contracted edge at. With ``on_cycle="keep"`` such
    components are left as they are; ``on_cycle="error"`` raises
    :class:`ContractionError` instead.
    """
    if on_cycle not in ("keep", "error"):
        raise ValueError(f"on_cycle must be 'keep' or 'error', not {on_cycle!r}")
    if isinstance(g, EmbeddedGraph):
        validate(g)
        g = plain_contracted(g)
    protected = frozenset(protected)
    inc = g.incidence()
    interior = {v for v, es in inc.items() if len(es) == 2 and v not in protected}

    used = [False] * len(g.edges)
    new_edges: List[CurveEdge] = []
    for start in sorted(v for v in g.vertices if v not in interior):
        for k in inc[start]:
            if used[k]:
                continue
            used[k] = True
            e = g.edges[k]
            points = list(e.curve_from(start).points)
            marked = e.marked
            current = e.other(start)
            while current in interior:
                k_next = next(i for i in inc[current] if not used[i])
                used[k_next] = True
                nxt = g.edges[k_next]
                points.extend(nxt.curve_from(current).points[1:])
                marked = True
                current = nxt.other(current)
            new_edges.append(_oriented(start, current, points, marked))

    leftover = [k for k, flag in enumerate(used) if not flag]
    if leftover and on_cycle == "error":
        raise ContractionError("graph contains a cycle made only of unprotected degree-2 vertices")
    kept = set()
    for k in leftover:
        e = g.edges[k]
        kept.update((e.u, e.v))
        new_edges.append(e)

    vertices = {v: p for v, p in g.vertices.items() if v not in interior or v in kept}
    return ContractedGraph(vertices, tuple(new_edges), protected)


def is_tree(g) -> bool:
    n = len(g.vertices)
    if n == 0 or len(g.edges) != n - 1:
        return False
    adj = g.adjacency()
    start = next(iter(g.vertices))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def tree_center(t) -> List[VertexId]:
    """Center vertices of a tree (one, or two adjacent ones), found by peeling leaves."""
    if not is_tree(t):
        raise NotATreeError("tree_center needs a connected acyclic graph")
    adj = t.adjacency()
    remaining = len(adj)
    degree = {v: len(ns) for v, ns in adj.items()}
    leaves = sorted(v for v, d in degree.items() if d <= 1)
    while remaining > 2:
        remaining -= len(leaves)
        next_leaves = []
        for leaf in leaves:
            for w in adj[leaf]:
                degree[w] -= 1
                if degree[w] == 1:
                    next_leaves.append(w)
        leaves = sorted(next_leaves)
    return leaves


class EdgeCurveTable:
    """Fréchet distances between all edge curves of two contracted graphs.

    ``forward(i, j)`` aligns the stored orientations of edge ``i`` of the first
    graph and edge ``j`` of the second; ``reverse(i, j)`` flips the second one.
    Entries are computed on first access unless the table was materialized.
    """

    def __init__(self, g1: ContractedGraph, g2: ContractedGraph):
        if g1.vertices and g2.vertices and g1.dimension != g2.dimension:
            raise ValueError("graphs have different dimensions")
        self.g1 = g1
        self.g2 = g2
        self._forward: Dict[Tuple[int, int], float] = {}
        self._reverse: Dict[Tuple[int, int], float] = {}

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.g1.edges), len(self.g2.edges)

    def forward(self, i: int, j: int) -> float:
        value = self._forward.get((i, j))
        if value is None:
            value = curve_frechet(self.g1.edges[i].curve, self.g2.edges[j].curve)
            self._forward[i, j] = value
        return value

    def reverse(self, i: int, j: int) -> float:
        value = self._reverse.get((i, j))
        if value is None:
            value = curve_frechet(self.g1.edges[i].curve, self.g2.edges[j].curve.reversed())
            self._reverse[i, j] = value
        return value

    def oriented(self, i: int, j: int, reversed_: bool) -> float:
        return self.reverse(i, j) if reversed_ else self.forward(i, j)

    def materialize(self) -> "EdgeCurveTable":
        m1, m2 = self.shape
        for i in range(m1):
            for j in range(m2):
                self.forward(i, j)
                self.reverse(i, j)
        return self

    def values(self) -> List[float]:
        self.materialize()
        return list(self._forward.values()) + list(self._reverse.values())

    def __len__(self) -> int:
        m1, m2 = self.shape
        return m1 * m2


def edge_curve_table(g1: ContractedGraph, g2: ContractedGraph) -> EdgeCurveTable:
    return EdgeCurveTable(g1, g2).materialize()


# -- file format -------------------------------------------------------------


def _field_error(path: str, message: str) -> GraphFormatError:
    return GraphFormatError(f"{path}: {message}")


def load_graph(data) -> EmbeddedGraph:
    """Parse the JSON graph format from bytes or str."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise _field_error("$", "expected an object")

    dimension = doc.get("dimension")
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise _field_error("dimension", f"expected a positive integer, got {dimension!r}")

    raw_vertices = doc.get("vertices")
    if not isinstance(raw_vertices, list):
        raise _field_error("vertices", "expected an array")
    vertices: Dict[str, Point] = {}
    for k, item in enumerate(raw_vertices):
        path = f"vertices[{k}]"
        if not isinstance(item, dict):
            raise _field_error(path, "expected an object")
        vid = item.get("id")
        if not isinstance(vid, str) or not vid:
            raise _field_error(f"{path}.id", "expected a non-empty string")
        if vid in vertices:
            raise _field_error(f"{path}.id", f"duplicate id {vid!r}")
        coords = item.get("coords")
        if not isinstance(coords, list) or not all(
            isinstance(c, (int, float)) and not isinstance(c, bool) for c in coords
        ):
            raise _field_error(f"{path}.coords", "expected an array of numbers")
        if len(coords) != dimension:
            raise _field_error(f"{path}.coords", f"expected {dimension} coordinates, got {len(coords)}")
        if not all(math.isfinite(c) for c in coords):
            raise _field_error(f"{path}.coords", "coordinates must be finite")
        vertices[vid] = tuple(float(c) for c in coords)

    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise _field_error("edges", "expected an array")
    edges = []
    for k, item in enumerate(raw_edges):
        path = f"edges[{k}]"
        if not isinstance(item, list) or len(item) != 2:
            raise _field_error(path, "expected a pair of ids")
        for end in item:
            if end not in vertices:
                raise _field_error(path, f"unknown vertex {end!r}")
        edges.append((item[0], item[1]))

    root = doc.get("root")
    if root is not None and root not in vertices:
        raise _field_error("root", f"unknown vertex {root!r}")

    g = EmbeddedGraph(vertices, tuple(edges), root, dimension)
    try:
        validate(g)
    except ValidationError as exc:
        raise GraphFormatError(str(exc)) from None
    return g


def save_graph(g: EmbeddedGraph) -> bytes:
    doc = {
        "dimension": g.dimension,
        "vertices": [{"id": v, "coords": list(p)} for v, p in g.vertices.items()],
        "edges": [[u, v] for u, v in g.edges],
    }
    if g.root is not None:
        doc["root"] = g.root
    return (json.dumps(doc, indent=1) + "\n").encode("utf-8")


def bundles(g: ContractedGraph) -> Dict[frozenset, List[int]]:
    """Edge indices grouped by their (unordered) endpoint pair."""
    groups: Dict[frozenset, List[int]] = defaultdict(list)
    for k, e in enumerate(g.edges):
        groups[frozenset((e.u, e.v))].append(k)
    return dict(groups)
