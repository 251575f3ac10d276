"""Command line front end: ``graphfrechet curve|tree|graph|gen|bench``."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional

from .embedded_graph import (
    EmbeddedGraph,
    GraphError,
    contract_degree2,
    is_tree,
    load_graph,
    save_graph,
)
from .general_graph import graph_frechet_contracted
from .geometry import Polyline, curve_frechet, is_undefined
from .oracle import InstanceSpec, gen_instance
from .tree_frechet import check_tree, root_tree, tree_frechet_contracted, tree_frechet_rooted

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNDEFINED = 3
EXIT_GUARD = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _read(path: str) -> EmbeddedGraph:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None
    try:
        return load_graph(data)
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


def format_distance(value: float) -> str:
    return "undefined" if is_undefined(value) else f"{value:.12g}"


def _report(mode: str, inputs: List[str], value: float, witness, timings: Dict[str, float]) -> dict:
    report = {
        "mode": mode,
        "inputs": inputs,
        "result": "undefined" if is_undefined(value) else value,
        "timings_ms": {k: round(v * 1000.0, 3) for k, v in timings.items()},
    }
    if witness is not None:
        report["witness"] = {str(k): str(v) for k, v in sorted(witness.vertex_map.items())}
    return report


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(report, out)
        out.write("\n")
        return
    out.write(f"{format_distance(math.inf if report['result'] == 'undefined' else report['result'])}\n")
    for a, b in report.get("witness", {}).items():
        out.write(f"{a} -> {b}\n")


def _path_polyline(g: EmbeddedGraph) -> Polyline:
    adj = g.adjacency()
    if len(g.vertices) < 2 or not is_tree(g) or any(len(ns) > 2 for ns in adj.values()):
        raise CliError("curve input must be a path with at least two vertices")
    ends = sorted(v for v, ns in adj.items() if len(ns) == 1)
    start = g.root if g.root is not None else ends[0]
    if start not in ends:
        raise CliError(f"root {start!r} is not an endpoint of the path")
    order = [start]
    prev = None
    while len(order) < len(g.vertices):
        nxt = next(w for w in adj[order[-1]] if w != prev)
        prev = order[-1]
        order.append(nxt)
    return Polyline([g.vertices[v] for v in order])


def run_curve(file1: str, file2: str) -> dict:
    P = _path_polyline(_read(file1))
    Q = _path_polyline(_read(file2))
    if P.dimension != Q.dimension:
        raise CliError("curves have different dimensions")
    t0 = time.perf_counter()
    value = curve_frechet(P, Q)
    return _report("curve", [file1, file2], value, None, {"solve": time.perf_counter() - t0})


def run_tree(file1: str, file2: str, witness: bool = False) -> dict:
    g1, g2 = _read(file1), _read(file2)
    try:
        check_tree(g1)
        check_tree(g2)
    except GraphError as exc:
        raise CliError(str(exc)) from None
    if (g1.root is None) != (g2.root is None):
        raise CliError("either both tree files or neither must carry a root")
    if g1.dimension != g2.dimension:
        raise CliError("trees have different dimensions")
    timings = {}
    t0 = time.perf_counter()
    rooted = g1.root is not None
    c1 = contract_degree2(g1, {g1.root} if rooted else ())
    c2 = contract_degree2(g2, {g2.root} if rooted else ())
    t1 = time.perf_counter()
    timings["contraction"] = t1 - t0
    if rooted:
        value, iso = tree_frechet_rooted(root_tree(c1, g1.root), root_tree(c2, g2.root))
    else:
        value, iso = tree_frechet_contracted(c1, c2)
    timings["solve"] = time.perf_counter() - t1
    return _report("tree", [file1, file2], value, iso if witness else None, timings)


def run_graph(file1: str, file2: str, witness: bool = False, guard: int = 64) -> dict:
    g1, g2 = _read(file1), _read(file2)
    if g1.dimension != g2.dimension:
        raise CliError("graphs have different dimensions")
    timings = {}
    t0 = time.perf_counter()
    try:
        c1, c2 = contract_degree2(g1), contract_degree2(g2)
    except GraphError as exc:
        raise CliError(str(exc)) from None
    t1 = time.perf_counter()
    timings["contraction"] = t1 - t0
    size = max(len(c1.vertices), len(c2.vertices))
    if size > guard:
        raise CliError(f"contracted graph has {size} vertices, guard is {guard}", EXIT_GUARD)
    value, iso = graph_frechet_contracted(c1, c2)
    timings["solve"] = time.perf_counter() - t1
    return _report("graph", [file1, file2], value, iso if witness else None, timings)


def run_gen(kind: str, n: int, seed: int, eps: float, max_degree: Optional[int], dim: int,
            extra_edges: int, chains: int, outputs: List[str]) -> List[bytes]:
    try:
        spec = InstanceSpec(kind=kind, n=n, seed=seed, eps=eps, max_degree=max_degree, dim=dim,
                            extra_edges=extra_edges, chains=chains)
        instance = gen_instance(spec)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    graphs = list(instance) if kind == "perturbed" else [instance]
    blobs = [save_graph(g) for g in graphs]
    if outputs and len(outputs) != len(blobs):
        raise CliError(f"kind {kind!r} writes {len(blobs)} file(s), got {len(outputs)} output path(s)")
    for path, blob in zip(outputs, blobs):
        Path(path).write_bytes(blob)
    return blobs


def _slope(sizes: List[int], seconds: List[float]) -> float:
    xs = [math.log(n) for n in sizes]
    ys = [math.log(max(t, 1e-9)) for t in seconds]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def run_bench(sizes: List[int], seed: int = 0, eps: float = 0.01, max_degree: int = 3,
              repeats: int = 1, instances: int = 5) -> dict:
    """Time the tree solver on bounded-degree perturbed copies; fit a log-log slope.

    Each size is timed on ``instances`` generated pairs (best of ``repeats``
    runs each) and the per-size time is their mean. One untimed warm-up solve
    runs first so the smallest size does not absorb start-up costs.
    """
    warm = gen_instance(InstanceSpec(kind="perturbed", n=min(sizes), seed=seed, eps=eps, max_degree=max_degree))
    tree_frechet_contracted(contract_degree2(warm[0]), contract_degree2(warm[1]))
    rows = []
    for n in sizes:
        total = 0.0
        results = []
        for k in range(instances):
            spec = InstanceSpec(kind="perturbed", n=n, seed=seed * 1000003 + k, eps=eps, max_degree=max_degree)
            g1, g2 = gen_instance(spec)
            best = math.inf
            for _ in range(repeats):
                t0 = time.perf_counter()
                value, _ = tree_frechet_contracted(contract_degree2(g1), contract_degree2(g2))
                best = min(best, time.perf_counter() - t0)
            total += best
            results.append("undefined" if is_undefined(value) else value)
        rows.append({"n": n, "seconds": total / instances, "results": results})
    slope = _slope([r["n"] for r in rows], [r["seconds"] for r in rows]) if len(rows) > 1 else math.nan
    return {"mode": "bench", "rows": rows, "slope": slope}


def _parse_sizes(text: str) -> List[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise CliError(f"bad --sizes value {text!r}") from None
    if not sizes or any(n < 1 for n in sizes):
        raise CliError(f"bad --sizes value {text!r}")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphfrechet", description="Fréchet distance of embedded curves, trees and graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file1")
        p.add_argument("file2")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    pair("curve", "distance between two path files (ordered from their root endpoint)")
    p = pair("tree", "distance between two trees; rooted if both files carry a root")
    p.add_argument("--witness", action="store_true")
    p = pair("graph", "distance between two small general graphs")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--guard", type=int, default=64, help="maximum contracted vertex count")

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("outputs", nargs="*", help="output file(s); stdout when omitted")
    p.add_argument("--kind", choices=("tree", "graph", "perturbed"), default="tree")
    p.add_argument("-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--extra-edges", type=int, default=2)
    p.add_argument("--chains", type=int, default=0)

    p = sub.add_parser("bench", help="time the tree solver across sizes")
    p.add_argument("--sizes", default="256,512,1024,2048")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--instances", type=int, default=5)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "curve":
            report = run_curve(args.file1, args.file2)
        elif args.command == "tree":
            report = run_tree(args.file1, args.file2, args.witness)
        elif args.command == "graph":
            report = run_graph(args.file1, args.file2, args.witness, args.guard)
        elif args.command == "gen":
            blobs = run_gen(args.kind, args.n, args.seed, args.eps, args.max_degree, args.dim,
                            args.extra_edges, args.chains, args.outputs)
            if not args.outputs:
                for blob in blobs:
                    out.write(blob.decode("utf-8"))
            return EXIT_OK
        else:
            report = run_bench(_parse_sizes(args.sizes), args.seed, args.eps, args.max_degree, args.repeats, args.instances)
            if args.format == "json":
                json.dump(report, out)
                out.write("\n")
            else:
                out.write(f"{'n':>8} {'seconds':>12}\n")
                for row in report["rows"]:
                    out.write(f"{row['n']:>8} {row['seconds']:>12.6f}\n")
                out.write(f"slope {report['slope']:.3f}\n")
            return EXIT_OK
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    _emit(report, args.format, out)
    return EXIT_UNDEFINED if report["result"] == "undefined" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
