import math

import pytest
from hypothesis import given, settings, strategies as st

from graphfrechet.matching import bottleneck_matching, maximum_matching, perfect_matching_under
from graphfrechet.oracle import brute_force_bottleneck

INF = math.inf


def test_perfect_matching_examples():
    assert perfect_matching_under([[1, 2], [2, 1]], 1) == [0, 1]
    assert perfect_matching_under([[1, 2], [2, 1]], 0) is None
    assert perfect_matching_under([[2, 1], [1, 2]], 1) == [1, 0]


def test_perfect_matching_non_square():
    assert perfect_matching_under([[1, 2, 3]], 5) is None


def test_bottleneck_three_by_three_table():
    value, match = bottleneck_matching([[1, 2, 2], [2, 1, 2], [2, 2, 1]])
    assert value == 1
    assert match == [0, 1, 2]


def test_bottleneck_small_cases():
    assert bottleneck_matching([[5]]) == (5, [0])
    assert bottleneck_matching([[INF, INF], [INF, INF]]) is None
    assert bottleneck_matching([[1, INF], [2, INF]]) is None
    assert bottleneck_matching([]) == (0.0, [])
    assert bottleneck_matching([[1, 2]]) is None


def test_maximum_matching_needs_augmenting_paths():
    # greedy would match row 0 to column 0 and get stuck
    adjacency = [[0, 1], [0], [1, 2]]
    match = maximum_matching(adjacency, 3)
    assert sorted(match) == [0, 1, 2]
    assert all(j in adjacency[i] for i, j in enumerate(match))


def test_long_augmenting_chain():
    n = 3000
    adjacency = [[i, i + 1] if i + 1 < n else [i] for i in range(n)]
    adjacency[0] = [0]
    match = maximum_matching(adjacency, n)
    assert sorted(match) == list(range(n))


entries = st.one_of(st.integers(0, 6).map(float), st.just(INF))


@st.composite
def matrices(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    return [[draw(entries) for _ in range(n)] for _ in range(n)]


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_bottleneck_matches_permutation_oracle(w):
    expected = brute_force_bottleneck(w)
    found = bottleneck_matching(w)
    if expected is None:
        assert found is None
        return
    value, match = found
    assert value == expected
    assert sorted(match) == list(range(len(w)))
    assert max(w[i][j] for i, j in enumerate(match)) == value


@settings(max_examples=100, deadline=None)
@given(matrices(), st.floats(0, 6), st.floats(0, 6))
def test_threshold_monotone(w, a, b):
    lo, hi = sorted((a, b))
    if perfect_matching_under(w, lo) is not None:
        assert perfect_matching_under(w, hi) is not None


def test_deterministic():
    w = [[1, 1, 1], [1, 1, 1], [1, 1, 1]]
    assert perfect_matching_under(w, 1) == perfect_matching_under(w, 1) == [0, 1, 2]
