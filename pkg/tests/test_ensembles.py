import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from strahler.ensembles import (
    MAX, MIN, NMaxExceeded, catalan_binary_count, combine, plane_tree_count, r2_limits,
    r2_strahler_distribution, r2_table, r_limit_table, reduce_state, sample_binary_tree, st, state_of,
)
from strahler.limits import LimitPair, f_max, f_min, fold_max
from strahler.tree_core import binary_trees, plane_tree_as_dep, plane_trees, strahler


def brute_r2(n):
    return dict(sorted(Counter(strahler(t) for t in binary_trees(n)).items()))


def test_catalan_binary_count():
    assert catalan_binary_count(1) == 1
    assert catalan_binary_count(3) == 2
    assert catalan_binary_count(5) == 14
    for n in range(1, 9):
        assert catalan_binary_count(n) == sum(1 for _ in binary_trees(n))
        assert plane_tree_count(n) == sum(1 for _ in plane_trees(n))


def test_r2_limits():
    assert r2_limits(1) == LimitPair(1, 1)
    assert r2_limits(4) == LimitPair(2, 3)
    assert r2_limits(100) == LimitPair(2, 7)


@pytest.mark.parametrize("n", range(1, 11))
def test_r2_distribution_matches_enumeration(n):
    assert r2_strahler_distribution(n) == brute_r2(n)


def test_r2_small_values():
    assert r2_strahler_distribution(1) == {1: 1}
    assert r2_strahler_distribution(4) == {2: 4, 3: 1}


def test_r2_mass_and_support():
    table = r2_table(200)
    for n in range(1, 201):
        dist = table.distribution(n)
        assert sum(dist.values()) == catalan_binary_count(n)
        lim = r2_limits(n)
        assert lim.lower <= min(dist) and max(dist) <= lim.upper


def test_r2_guard():
    with pytest.raises(NMaxExceeded):
        r2_strahler_distribution(50, n_max=10)
    with pytest.raises(NMaxExceeded):
        r2_table(10).distribution(11)


def test_state_of():
    assert state_of([1, 1, 1, 1, 2, 3]) == (1, 1, 2, 3)
    assert state_of([]) == ()
    assert state_of([2, 1, 2, 2]) == (1, 2, 2)


def test_st():
    assert st((1, 2, 2), MAX) == 3
    assert st((), MAX) == st((), MIN) == 1
    assert st((1, 1), MIN) == 2


def test_combine():
    assert combine((), (), MAX) == (1,)
    assert combine((1,), (), MAX) == (1, 1)
    assert combine((1, 1), (), MAX) == (1, 1)
    assert combine((1,), (1, 1), MAX) == (1, 2)


@pytest.mark.parametrize("mode", [MAX, MIN])
def test_reduction_soundness(mode):
    # every list of values <= 6 with length <= 8, up to order
    for length in range(9):
        for values in itertools.combinations_with_replacement(range(1, 7), length):
            assert st(state_of(values), mode) == st(values, mode)
            assert st(state_of(values), mode) == st(state_of(reduce_state(values)), mode)


def test_st_monotone():
    for length in range(6):
        for values in itertools.combinations_with_replacement(range(1, 6), length):
            q = state_of(values)
            for extra in range(1, 6):
                assert st(reduce_state(q + (extra,)), MAX) >= st(q, MAX)


@pytest.mark.parametrize("mode", [MAX, MIN])
def test_r_table_mass_conservation(mode):
    table = r_limit_table(60, mode)
    for n in range(1, 61):
        assert table.total(n) == plane_tree_count(n)
        assert sum(table.counts(n).values()) == plane_tree_count(n)


def test_r_table_against_enumeration():
    upper = r_limit_table(8, MAX)
    lower = r_limit_table(8, MIN)
    for n in range(1, 9):
        trees = [plane_tree_as_dep(p) for p in plane_trees(n)]
        assert upper.counts(n) == dict(Counter(f_max(t) for t in trees))
        assert lower.counts(n) == dict(Counter(f_min(t) for t in trees))
        assert upper.average(n) == Fraction(sum(f_max(t) for t in trees), len(trees))
        assert lower.average(n) == Fraction(sum(f_min(t) for t in trees), len(trees))


def test_r_table_states_against_enumeration():
    table = r_limit_table(7, MAX)
    for n in range(1, 8):
        counts = Counter()
        for p in plane_trees(n):
            t = plane_tree_as_dep(p)
            child_limits = [_fmax_of(t, c) for c in t.children[t.root]]
            counts[state_of(child_limits)] += 1
        assert table.states[n] == dict(counts)


def _fmax_of(t, v):
    value = {}
    for u in t.order:
        value[u] = fold_max(value[c] for c in t.children[u]) if t.children[u] else 1
    return value[v]


def test_r_table_small_values():
    upper = r_limit_table(5, MAX)
    lower = r_limit_table(5, MIN)
    assert upper.counts(1) == {1: 1} and upper.average(1) == 1
    assert upper.average(2) == lower.average(2) == 2
    assert round(float(upper.average(5)), 2) == 2.71
    assert round(float(lower.average(5)), 2) == 2.07


def test_r_table_guard():
    with pytest.raises(NMaxExceeded):
        r_limit_table(10, MAX, guard=5)
    with pytest.raises(ValueError):
        r_limit_table(5, "median")


def test_sample_binary_tree_uniform():
    rng = np.random.default_rng(0)
    counts = Counter(sample_binary_tree(4, rng).to_literal() for _ in range(5000))
    assert len(counts) == 5
    # each of the 5 shapes has probability 1/5; 5 sigma band
    sigma = math.sqrt(5000 * 0.2 * 0.8)
    assert all(abs(c - 1000) < 5 * sigma for c in counts.values())


@pytest.mark.slow
def test_r2_log4_growth():
    table = r2_table(1024)
    diff = table.mean(1024) - table.mean(256)
    assert 0.8 <= diff <= 1.2
