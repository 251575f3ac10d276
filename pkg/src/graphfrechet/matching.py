"""Perfect and bottleneck bipartite matchings over weight matrices.

A weight matrix is a list of rows; ``math.inf`` marks an undefined entry,
which never takes part in a matching.
"""

from __future__ import annotations

import math
from collections import deque
from typing import List, Optional, Sequence, Tuple

Matching = List[int]


def _is_square(w: Sequence[Sequence[float]]) -> bool:
    return all(len(row) == len(w) for row in w)


def maximum_matching(adjacency: Sequence[Sequence[int]], n_right: int) -> Matching:
    """Hopcroft-Karp maximum matching; ``result[i]`` is the column of row ``i`` or -1.

    Rows are scanned in order and each row tries its columns in the given
    order, so the result is deterministic.
    """
    n_left = len(adjacency)
    match_left = [-1] * n_left
    match_right = [-1] * n_right
    inf = n_left + 1

    while True:
        dist = [inf] * n_left
        queue = deque()
        for i in range(n_left):
            if match_left[i] < 0:
                dist[i] = 0
                queue.append(i)
        found = False
        while queue:
            i = queue.popleft()
            for j in adjacency[i]:
                k = match_right[j]
                if k < 0:
                    found = True
                elif dist[k] == inf:
                    dist[k] = dist[i] + 1
                    queue.append(k)
        if not found:
            return match_left

        pointer = [0] * n_left
        for source in range(n_left):
            if match_left[source] >= 0:
                continue
            # iterative DFS along the BFS layers
            stack = [source]
            path_cols: List[int] = []
            while stack:
                i = stack[-1]
                advanced = False
                while pointer[i] < len(adjacency[i]):
                    j = adjacency[i][pointer[i]]
                    pointer[i] += 1
                    k = match_right[j]
                    if k < 0:
                        path_cols.append(j)
                        for row, col in zip(stack, path_cols):
                            match_left[row] = col
                            match_right[col] = row
                        stack = []
                        advanced = True
                        break
                    if dist[k] == dist[i] + 1:
                        path_cols.append(j)
                        stack.append(k)
                        advanced = True
                        break
                if not advanced:
                    dist[i] = inf
                    stack.pop()
                    if path_cols:
                        path_cols.pop()


def perfect_matching_under(w: Sequence[Sequence[float]], threshold: float) -> Optional[Matching]:
    """A perfect matching using only entries ``<= threshold``, or ``None``."""
    if not _is_square(w):
        return None
    adjacency = [[j for j, x in enumerate(row) if x <= threshold] for row in w]
    match = maximum_matching(adjacency, len(w))
    if any(j < 0 for j in match):
        return None
    return match


def bottleneck_matching(w: Sequence[Sequence[float]]) -> Optional[Tuple[float, Matching]]:
    """Perfect matching minimizing its largest entry.

    Binary search over the sorted distinct finite entries. Returns
    ``(value, matching)``, or ``None`` when no perfect matching exists at all.
    An empty matrix has value 0.
    """
    if not _is_square(w):
        return None
    if not w:
        return 0.0, []
    values = sorted({x for row in w for x in row if not math.isinf(x)})
    if not values:
        return None
    best = perfect_matching_under(w, values[-1])
    if best is None:
        return None
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        match = perfect_matching_under(w, values[mid])
        if match is None:
            lo = mid + 1
        else:
            hi = mid
            best = match
    return values[lo], best
