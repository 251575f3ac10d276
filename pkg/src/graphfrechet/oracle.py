"""Brute-force reference implementations and seeded instance generators.

Nothing here shares code with the tree or general-graph solvers apart from
the basic types, ``point_distance`` and ``curve_frechet``. Every oracle has a
hard size guard so it cannot be mistaken for a production path.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .embedded_graph import ContractedGraph, ContractionError, CurveEdge, EmbeddedGraph, validate
from .general_graph import Isomorphism
from .geometry import UNDEFINED, Polyline, curve_frechet, frechet_decision, point_distance

MAX_ORACLE_VERTICES = 9
MAX_ORACLE_MATRIX = 8


class OracleSizeError(ValueError):
    pass


def contract_by_splicing(g: EmbeddedGraph, protected=(), on_cycle: str = "keep") -> ContractedGraph:
    """Contract degree-2 vertices one at a time by splicing their two edges."""
    validate(g)
    protected = set(protected)
    edges: Dict[int, list] = {}
    for k, (u, v) in enumerate(g.edges):
        edges[k] = [u, v, [g.vertices[u], g.vertices[v]], False]
    alive = set(g.vertices)
    next_id = len(edges)

    def incident(x):
        return [k for k, e in edges.items() if e[0] == x or e[1] == x]

    def degree(x):
        return sum((e[0] == x) + (e[1] == x) for e in edges.values())

    # components that are bare cycles stay as they are
    adj = g.adjacency()
    frozen = set()
    for x in g.vertices:
        if x in frozen:
            continue
        component = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for z in adj[y]:
                if z not in component:
                    component.add(z)
                    stack.append(z)
        if len(component) > 1 and all(len(adj[y]) == 2 and y not in protected for y in component):
            if on_cycle == "error":
                raise ContractionError(f"{x!r} lies on a cycle of degree-2 vertices")
            frozen |= component
    protected |= frozen

    while True:
        victim = next((x for x in sorted(alive) if x not in protected and degree(x) == 2), None)
        if victim is None:
            break
        ks = incident(victim)
        first, second = (edges.pop(k) for k in ks)
        a_side = first[2] if first[1] == victim else first[2][::-1]
        b_side = second[2] if second[0] == victim else second[2][::-1]
        a = first[0] if first[1] == victim else first[1]
        b = second[1] if second[0] == victim else second[0]
        edges[next_id] = [a, b, a_side + b_side[1:], True]
        next_id += 1
        alive.discard(victim)

    curve_edges = tuple(CurveEdge(u, v, Polyline(pts), marked) for u, v, pts, marked in edges.values())
    return ContractedGraph({x: g.vertices[x] for x in g.vertices if x in alive}, curve_edges, frozenset(protected - frozen))


def _multiplicity(g: ContractedGraph) -> Dict[Tuple, List[int]]:
    table: Dict[Tuple, List[int]] = {}
    for k, e in enumerate(g.edges):
        table.setdefault((e.u, e.v), []).append(k)
        if e.u != e.v:
            table.setdefault((e.v, e.u), []).append(k)
    return table


def enumerate_isomorphisms(
    g1: ContractedGraph, g2: ContractedGraph, fixed: Optional[Dict] = None
) -> List[Isomorphism]:
    """Every isomorphism between two small contracted graphs.

    Parallel edges may be permuted among themselves and loops may be mapped
    in either direction, so one vertex bijection can yield several
    isomorphisms. ``fixed`` pins some vertex images (used for rooted trees).
    """
    for g in (g1, g2):
        if len(g.vertices) > MAX_ORACLE_VERTICES:
            raise OracleSizeError(f"oracle limited to {MAX_ORACLE_VERTICES} vertices")
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return []
    mult1 = _multiplicity(g1)
    mult2 = _multiplicity(g2)
    order = sorted(g1.vertices)
    targets = sorted(g2.vertices)
    fixed = fixed or {}

    def count(mult, a, b):
        return len(mult.get((a, b), ()))

    bijections = []
    mapping: Dict = {}

    def assign(k: int) -> None:
        if k == len(order):
            bijections.append(dict(mapping))
            return
        a = order[k]
        options = [fixed[a]] if a in fixed else targets
        for x in options:
            if x in mapping.values():
                continue
            if count(mult1, a, a) != count(mult2, x, x):
                continue
            if all(count(mult1, a, b) == count(mult2, x, mapping[b]) for b in order[:k]):
                mapping[a] = x
                assign(k + 1)
                del mapping[a]

    assign(0)

    result = []
    for mapping in bijections:
        groups = []
        seen = set()
        for (a, b), ks in mult1.items():
            key = frozenset((a, b))
            if key in seen:
                continue
            seen.add(key)
            images = mult2[(mapping[a], mapping[b])]
            options = []
            for perm in itertools.permutations(images):
                if a == b:
                    for flips in itertools.product((False, True), repeat=len(ks)):
                        options.append([(i, (j, f)) for i, j, f in zip(ks, perm, flips)])
                else:
                    options.append(
                        [(i, (j, mapping[g1.edges[i].u] != g2.edges[j].u)) for i, j in zip(ks, perm)]
                    )
            groups.append(options)
        for combo in itertools.product(*groups):
            edge_map = dict(pair for option in combo for pair in option)
            result.append(Isomorphism(dict(mapping), edge_map))
    return result


def _cost(iso: Isomorphism, g1: ContractedGraph, g2: ContractedGraph, cache: Dict) -> float:
    cost = 0.0
    for a, b in iso.vertex_map.items():
        cost = max(cost, point_distance(g1.vertices[a], g2.vertices[b]))
    for i, jr in iso.edge_map.items():
        value = cache.get((i, jr))
        if value is None:
            j, rev = jr
            other = g2.edges[j].curve
            value = curve_frechet(g1.edges[i].curve, other.reversed() if rev else other)
            cache[i, jr] = value
        cost = max(cost, value)
    return cost


def brute_force_contracted(g1: ContractedGraph, g2: ContractedGraph, fixed: Optional[Dict] = None) -> float:
    cache: Dict = {}
    best = UNDEFINED
    for iso in enumerate_isomorphisms(g1, g2, fixed):
        best = min(best, _cost(iso, g1, g2, cache))
    return best


def brute_force_frechet(G1: EmbeddedGraph, G2: EmbeddedGraph, rooted: bool = False) -> float:
    """Minimum over all isomorphisms of the largest vertex or edge-curve cost.

    With ``rooted=True`` both roots are kept through contraction and must be
    mapped onto each other.
    """
    if rooted:
        c1 = contract_by_splicing(G1, {G1.root})
        c2 = contract_by_splicing(G2, {G2.root})
        return brute_force_contracted(c1, c2, {G1.root: G2.root})
    return brute_force_contracted(contract_by_splicing(G1), contract_by_splicing(G2))


def brute_force_bottleneck(w: Sequence[Sequence[float]]) -> Optional[float]:
    n = len(w)
    if any(len(row) != n for row in w):
        raise ValueError("brute_force_bottleneck needs a square matrix")
    if n > MAX_ORACLE_MATRIX:
        raise OracleSizeError(f"oracle limited to {MAX_ORACLE_MATRIX}x{MAX_ORACLE_MATRIX}")
    if n == 0:
        return 0.0
    best = min(max(w[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))
    return None if math.isinf(best) else best


def bisection_curve_frechet(P: Polyline, Q: Polyline, tol: float = 1e-8) -> float:
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo = 0.0
    hi = max(point_distance(p, q) for p in P for q in Q)
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if frechet_decision(P, Q, mid):
            hi = mid
        else:
            lo = mid
    return hi


# -- instance generation -----------------------------------------------------

KINDS = ("tree", "graph", "perturbed")


@dataclass(frozen=True)
class InstanceSpec:
    kind: str = "tree"
    n: int = 8
    max_degree: Optional[int] = None
    eps: float = 0.0
    seed: int = 0
    dim: int = 2
    extra_edges: int = 2
    chains: int = 0
    chain_length: int = 2
    base: str = "tree"


def _check_spec(spec: InstanceSpec) -> None:
    if spec.kind not in KINDS:
        raise ValueError(f"unknown instance kind {spec.kind!r}")
    if spec.base not in ("tree", "graph"):
        raise ValueError(f"unknown base kind {spec.base!r}")
    if spec.n < 1:
        raise ValueError("n must be at least 1")
    if spec.dim < 1:
        raise ValueError("dim must be at least 1")
    if spec.eps < 0 or not math.isfinite(spec.eps):
        raise ValueError("eps must be a finite non-negative number")
    if spec.max_degree is not None:
        if spec.max_degree < 1 or (spec.max_degree == 1 and spec.n > 2):
            raise ValueError(f"no tree on {spec.n} vertices has maximum degree {spec.max_degree}")
    if spec.chains < 0 or spec.chain_length < 1 or spec.extra_edges < 0:
        raise ValueError("chains, chain_length and extra_edges must be non-negative")


def _random_point(rng: random.Random, dim: int) -> Tuple[float, ...]:
    return tuple(rng.random() for _ in range(dim))


def _random_tree(rng: random.Random, spec: InstanceSpec):
    bound = spec.max_degree
    degree = [0] * spec.n
    edges = []
    for i in range(1, spec.n):
        open_ = [j for j in range(i) if bound is None or degree[j] < bound]
        j = rng.choice(open_)
        degree[i] += 1
        degree[j] += 1
        edges.append((j, i))
    return degree, edges


def _base_graph(rng: random.Random, spec: InstanceSpec) -> EmbeddedGraph:
    degree, edges = _random_tree(rng, spec)
    if spec.kind == "graph" or (spec.kind == "perturbed" and spec.base == "graph"):
        present = {frozenset(e) for e in edges}
        pool = [
            (a, b)
            for a in range(spec.n)
            for b in range(a + 1, spec.n)
            if frozenset((a, b)) not in present
        ]
        rng.shuffle(pool)
        added = 0
        for a, b in pool:
            if added == spec.extra_edges:
                break
            if spec.max_degree is not None and max(degree[a], degree[b]) >= spec.max_degree:
                continue
            edges.append((a, b))
            degree[a] += 1
            degree[b] += 1
            added += 1

    points = {i: _random_point(rng, spec.dim) for i in range(spec.n)}
    next_id = spec.n
    for _ in range(min(spec.chains, len(edges))):
        k = rng.randrange(len(edges))
        a, b = edges.pop(k)
        path = [a]
        for _ in range(spec.chain_length):
            points[next_id] = _random_point(rng, spec.dim)
            path.append(next_id)
            next_id += 1
        path.append(b)
        edges.extend(zip(path, path[1:]))

    vertices = {f"v{i}": points[i] for i in range(next_id)}
    return EmbeddedGraph(vertices, tuple((f"v{a}", f"v{b}") for a, b in edges), None, spec.dim)


def _perturbed_copy(rng: random.Random, g: EmbeddedGraph, eps: float) -> EmbeddedGraph:
    ids = list(g.vertices)
    shuffled = list(range(len(ids)))
    rng.shuffle(shuffled)
    relabel = {v: f"w{shuffled[k]}" for k, v in enumerate(ids)}
    moved = {}
    for v in ids:
        direction = [rng.gauss(0.0, 1.0) for _ in range(g.dimension)]
        norm = math.sqrt(sum(c * c for c in direction)) or 1.0
        radius = eps * rng.random()
        moved[relabel[v]] = tuple(c + radius * d / norm for c, d in zip(g.vertices[v], direction))
    vertices = {k: moved[k] for k in sorted(moved, key=lambda s: int(s[1:]))}
    edges = [(relabel[u], relabel[v]) for u, v in g.edges]
    rng.shuffle(edges)
    return EmbeddedGraph(vertices, tuple(edges), None, g.dimension)


def gen_instance(spec: InstanceSpec):
    """Deterministic instance for ``spec``; the perturbed kind returns a pair."""
    _check_spec(spec)
    rng = random.Random(spec.seed)
    g = _base_graph(rng, spec)
    if spec.kind != "perturbed":
        return g
    return g, _perturbed_copy(rng, g, spec.eps)
