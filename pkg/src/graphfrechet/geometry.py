"""Points, polylines and the continuous Fréchet distance between polygonal curves.

The curve distance is exact up to floating point: the answer is always one of
a finite set of critical values (endpoint distances, vertex-to-segment
distances and passage openings between two vertices over a segment), so we
enumerate those and binary-search them with the free-space decision procedure.
"""

from __future__ import annotations

import math
import operator
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

Point = Tuple[float, ...]

#: Distance value for non-isomorphic inputs; greater than every finite value.
UNDEFINED = math.inf

#: Absolute slack used by the decision procedure and critical-value dedup.
TOLERANCE = 1e-9


def is_undefined(value: float) -> bool:
    return math.isinf(value)


def as_point(coords: Sequence[float]) -> Point:
    point = tuple(float(c) for c in coords)
    if not point:
        raise ValueError("a point needs at least one coordinate")
    if not all(math.isfinite(c) for c in point):
        raise ValueError(f"non-finite coordinate in {point!r}")
    return point


def point_distance(p: Sequence[float], q: Sequence[float]) -> float:
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    return math.dist(p, q)


def _dot(u: Sequence[float], v: Sequence[float]) -> float:
    return sum(map(operator.mul, u, v))


def _sub(u: Sequence[float], v: Sequence[float]) -> Point:
    return tuple(map(operator.sub, u, v))


@dataclass(frozen=True)
class Polyline:
    """An oriented polygonal curve through at least two points."""

    points: Tuple[Point, ...]

    def __init__(self, points: Sequence[Sequence[float]]):
        pts = tuple(as_point(p) for p in points)
        if len(pts) < 2:
            raise ValueError("a polyline needs at least two points")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("all polyline points must share one dimension")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError(f"consecutive duplicate point {a!r}")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index):
        return self.points[index]

    @property
    def dimension(self) -> int:
        return len(self.points[0])

    @property
    def first(self) -> Point:
        return self.points[0]

    @property
    def last(self) -> Point:
        return self.points[-1]

    @classmethod
    def _trusted(cls, points: Tuple[Point, ...]) -> "Polyline":
        line = object.__new__(cls)
        object.__setattr__(line, "points", points)
        return line

    def reversed(self) -> "Polyline":
        return Polyline._trusted(self.points[::-1])

    def segments(self):
        return zip(self.points, self.points[1:])

    def translated(self, offset: Sequence[float]) -> "Polyline":
        return Polyline([tuple(c + t for c, t in zip(p, offset)) for p in self.points])

    def max_segment_length(self) -> float:
        return max(point_distance(a, b) for a, b in self.segments())


def free_space_interval(
    segment: Tuple[Sequence[float], Sequence[float]],
    p: Sequence[float],
    delta: float,
) -> Optional[Tuple[float, float]]:
    """Closed parameter interval of ``segment`` lying within ``delta`` of ``p``.

    Parameters run from 0 at ``segment[0]`` to 1 at ``segment[1]``. Returns
    ``None`` when the interval is empty.
    """
    a, b = segment
    u = _sub(b, a)
    w = _sub(a, p)
    uu = _dot(u, u)
    if uu == 0.0:
        raise ValueError("segment endpoints must be distinct")
    # project p onto the line and measure the offset from the foot point
    # directly; the textbook discriminant cancels catastrophically for small
    # delta when p sits near the far end of the segment
    center = -_dot(u, w) / uu
    offset = tuple(x + center * y for x, y in zip(w, u))
    slack = delta * delta - _dot(offset, offset)
    if slack < 0.0:
        return None
    half = math.sqrt(slack / uu)
    lo = max(center - half, 0.0)
    hi = min(center + half, 1.0)
    if lo > hi:
        return None
    return lo, hi


def _reachable(P: Sequence[Point], Q: Sequence[Point], delta: float) -> bool:
    n = len(P) - 1
    m = len(Q) - 1
    if point_distance(P[0], Q[0]) > delta or point_distance(P[n], Q[m]) > delta:
        return False

    # left(i, j): free interval on the vertical edge s=i, t in [j, j+1]
    # bottom(i, j): free interval on the horizontal edge t=j, s in [i, i+1]
    # both are computed on first use, since unreachable cells never need them
    def left(i, j):
        return free_space_interval((Q[j], Q[j + 1]), P[i], delta)

    def bottom(i, j):
        return free_space_interval((P[i], P[i + 1]), Q[j], delta)

    reach_left = [[None] * m for _ in range(n + 1)]
    reach_bottom = [[None] * (m + 1) for _ in range(n)]

    for j in range(m):
        iv = left(0, j)
        if iv is None or iv[0] != 0.0:
            break
        reach_left[0][j] = iv
        if iv[1] != 1.0:
            break
    for i in range(n):
        iv = bottom(i, 0)
        if iv is None or iv[0] != 0.0:
            break
        reach_bottom[i][0] = iv
        if iv[1] != 1.0:
            break

    for i in range(n):
        for j in range(m):
            lr = reach_left[i][j]
            br = reach_bottom[i][j]
            if lr is None and br is None:
                continue
            right = left(i + 1, j)
            if right is not None and br is None:
                lo = max(right[0], lr[0])
                right = (lo, right[1]) if lo <= right[1] else None
            reach_left[i + 1][j] = right
            top = bottom(i, j + 1)
            if top is not None and lr is None:
                lo = max(top[0], br[0])
                top = (lo, top[1]) if lo <= top[1] else None
            reach_bottom[i][j + 1] = top

    end_left = reach_left[n][m - 1]
    end_bottom = reach_bottom[n - 1][m]
    return (end_left is not None and end_left[1] == 1.0) or (
        end_bottom is not None and end_bottom[1] == 1.0
    )


def frechet_decision(P: Polyline, Q: Polyline, delta: float) -> bool:
    """Whether the Fréchet distance of ``P`` and ``Q`` is at most ``delta``.

    The test is run at ``delta + TOLERANCE`` so that critical values produced
    by root finding are not rejected because of roundoff.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if P.dimension != Q.dimension:
        raise ValueError("dimension mismatch")
    return _reachable(P.points, Q.points, delta + TOLERANCE)


def _segment_distance(p: Point, a: Point, b: Point) -> float:
    # canonical endpoint order keeps the value independent of orientation
    if b < a:
        a, b = b, a
    u = _sub(b, a)
    t = _dot(_sub(p, a), u) / _dot(u, u)
    if t <= 0.0:
        return point_distance(p, a)
    if t >= 1.0:
        return point_distance(p, b)
    return point_distance(p, tuple(x + t * y for x, y in zip(a, u)))


def _passage_opening(p: Point, q: Point, a: Point, b: Point) -> Optional[float]:
    # point on segment ab equidistant from p and q, if any
    if q < p:
        p, q = q, p
    if b < a:
        a, b = b, a
    normal = _sub(q, p)
    u = _sub(b, a)
    denom = 2.0 * _dot(u, normal)
    if denom == 0.0:
        return None
    t = (_dot(q, q) - _dot(p, p) - 2.0 * _dot(a, normal)) / denom
    if t < 0.0 or t > 1.0:
        return None
    x = tuple(c + t * d for c, d in zip(a, u))
    return point_distance(x, p)


def _one_sided_values(P: Sequence[Point], Q: Sequence[Point], out: list) -> None:
    # endpoints count too: the boundary lines of the free-space diagram are
    # cell boundaries, and a path may run along them before turning
    segments = list(zip(Q, Q[1:]))
    for p in P:
        for a, b in segments:
            out.append(_segment_distance(p, a, b))
    for a, b in segments:
        for k in range(len(P)):
            for l in range(k + 1, len(P)):
                value = _passage_opening(P[k], P[l], a, b)
                if value is not None:
                    out.append(value)


def frechet_critical_values(P: Polyline, Q: Polyline) -> list:
    """Sorted candidate set guaranteed to contain the Fréchet distance."""
    values = [point_distance(P.first, Q.first), point_distance(P.last, Q.last)]
    _one_sided_values(P.points, Q.points, values)
    _one_sided_values(Q.points, P.points, values)
    values.sort()
    deduped = []
    for v in values:
        if not deduped or v - deduped[-1] > TOLERANCE:
            deduped.append(v)
    return deduped


def _canonical_pair(P: Polyline, Q: Polyline) -> Tuple[Polyline, Polyline]:
    # the distance is invariant under swapping and reversing both curves, so
    # evaluate one fixed representative to get bit-identical results
    rp, rq = P.points[::-1], Q.points[::-1]
    options = [(P.points, Q.points), (Q.points, P.points), (rp, rq), (rq, rp)]
    first, second = min(options)
    return Polyline._trusted(first), Polyline._trusted(second)


def curve_frechet(P: Polyline, Q: Polyline) -> float:
    if P.dimension != Q.dimension:
        raise ValueError("dimension mismatch")
    P, Q = _canonical_pair(P, Q)
    lower = max(point_distance(P.first, Q.first), point_distance(P.last, Q.last))
    if len(P) == 2 and len(Q) == 2:
        # linear interpolation is optimal between two segments
        return lower
    if _reachable(P.points, Q.points, lower + TOLERANCE):
        return lower
    # the vertex-coupling distance bounds the answer from above
    upper = discrete_frechet(P, Q)
    candidates = frechet_critical_values(P, Q)
    candidates = candidates[bisect_left(candidates, lower - TOLERANCE):bisect_right(candidates, upper + TOLERANCE)]
    if not candidates:
        return upper
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _reachable(P.points, Q.points, candidates[mid] + TOLERANCE):
            hi = mid
        else:
            lo = mid + 1
    return max(candidates[lo], lower)


def discrete_frechet(P: Polyline, Q: Polyline) -> float:
    """Coupled-walk discrete Fréchet distance over the vertex sequences."""
    m = len(Q)
    prev = [0.0] * m
    for i, p in enumerate(P.points):
        row = [0.0] * m
        for j, q in enumerate(Q.points):
            d = point_distance(p, q)
            if i == 0 and j == 0:
                row[j] = d
            elif i == 0:
                row[j] = max(row[j - 1], d)
            elif j == 0:
                row[j] = max(prev[0], d)
            else:
                row[j] = max(min(prev[j], prev[j - 1], row[j - 1]), d)
        prev = row
    return prev[-1]
