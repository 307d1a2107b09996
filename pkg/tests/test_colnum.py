import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from profilekit.colnum import (
    Ball,
    BallSet,
    IntervalModel,
    Ordering,
    ball_intersection_graph,
    colnum_guarding_family,
    degeneracy_ordering,
    diameter_ordering,
    interval_graph,
    scol_of,
    sreach,
    thinness,
    wcol_of,
    wreach,
)
from profilekit.constructions import complete_graph, cycle_graph, gen_random_partial_ktree, path_graph, star_graph
from profilekit.errors import InputError
from profilekit.verify import sreach_by_paths, verify_guarding, wreach_by_paths

from conftest import graphs

P5 = path_graph(5)
ID5 = Ordering.identity(5)


def test_ordering_must_be_permutation():
    with pytest.raises(InputError):
        Ordering([1, 1, 2])
    with pytest.raises(InputError):
        wreach(P5, Ordering.identity(4), 1, 1)


def test_wreach_examples():
    assert wreach(P5, ID5, 4, 2) == {2, 3, 4}
    assert wreach(P5, ID5, 4, 0) == {4}
    assert wreach(complete_graph(3), Ordering.identity(3), 3, 1) == {1, 2, 3}


def test_sreach_examples():
    assert sreach(P5, ID5, 4, 2) == {3, 4}
    assert sreach(P5, ID5, 4, 0) == {4}
    star = star_graph(4)
    last = Ordering([2, 3, 4, 5, 1])
    assert sreach(star, last, 1, 1) == {1, 2, 3, 4, 5}


def test_colouring_numbers():
    for n in range(1, 7):
        for r in range(0, 6):
            assert wcol_of(path_graph(n), Ordering.identity(n), r) == min(r + 1, n)
    k4 = complete_graph(4)
    order = Ordering([3, 1, 4, 2])
    assert wcol_of(k4, order, 1) == scol_of(k4, order, 1) == 4


@given(graphs(max_n=8), st.integers(0, 3), st.randoms(use_true_random=False))
def test_reach_sets_match_path_enumeration(g, r, rnd):
    order = list(g.vertices())
    rnd.shuffle(order)
    ordering = Ordering(order)
    for v in g.vertices():
        w = wreach(g, ordering, v, r)
        s = sreach(g, ordering, v, r)
        assert w == wreach_by_paths(g, order, v, r)
        assert s == sreach_by_paths(g, order, v, r)
        assert s <= w
    assert scol_of(g, ordering, r) <= wcol_of(g, ordering, r)


def test_colnum_family_examples():
    fam = colnum_guarding_family(P5, ID5, (5,), 1)
    assert set(fam.sets) == {frozenset(sreach(P5, ID5, 4, 2)), frozenset(sreach(P5, ID5, 5, 2))}
    assert verify_guarding(P5, (5,), 1, fam).ok
    fam0 = colnum_guarding_family(P5, ID5, (2, 4), 0)
    assert set(fam0.sets) == {frozenset({2}), frozenset({4})}


def test_colnum_family_partial_2tree():
    inst = gen_random_partial_ktree(40, 2, 0.9, seed=8)
    g = inst.graph
    order = degeneracy_ordering(g)
    a = random.Random(1).sample(range(1, 41), 4)
    fam = colnum_guarding_family(g, order, a, 3)
    assert verify_guarding(g, a, 3, fam).ok
    assert fam.nominal_size <= wcol_of(g, order, 3) * 4
    assert fam.max_member() <= scol_of(g, order, 6)


@given(graphs(max_n=9), st.integers(0, 3), st.data())
def test_colnum_family_guards(g, r, data):
    a = data.draw(st.lists(st.sampled_from(list(g.vertices())), min_size=1, max_size=3, unique=True))
    order = degeneracy_ordering(g)
    fam = colnum_guarding_family(g, order, a, r)
    assert verify_guarding(g, a, r, fam).ok
    assert len(fam) <= wcol_of(g, order, r) * len(a)


def test_degeneracy_examples():
    rng = random.Random(3)
    tree = gen_random_partial_ktree(30, 1, 1.0, seed=rng.getrandbits(32)).graph
    assert scol_of(tree, degeneracy_ordering(tree), 1) <= 2
    assert scol_of(complete_graph(5), degeneracy_ordering(complete_graph(5)), 1) == 5
    assert scol_of(cycle_graph(4), degeneracy_ordering(cycle_graph(4)), 1) <= 3


def test_ball_graph_examples():
    two = BallSet([Ball(1, (Fraction(0), Fraction(0)), Fraction(1)), Ball(2, (Fraction(3), Fraction(0)), Fraction(1))])
    assert ball_intersection_graph(two).m == 0
    touch = BallSet([Ball(1, (Fraction(0), Fraction(0)), Fraction(1)), Ball(2, (Fraction(2), Fraction(0)), Fraction(1))])
    assert ball_intersection_graph(touch).m == 1
    with pytest.raises(InputError):
        BallSet([Ball(1, (Fraction(0),), Fraction(0))])


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(1, 6)), min_size=1, max_size=10))
def test_one_dimensional_balls_match_overlap(rows):
    intervals = [(lo, lo + ln) for lo, ln in rows]
    bs = BallSet.from_intervals(intervals)
    g = ball_intersection_graph(bs)
    for i, j in combinations(range(len(intervals)), 2):
        (a, b), (c, d) = intervals[i], intervals[j]
        assert g.has_edge(i + 1, j + 1) == (max(a, c) <= min(b, d))
    assert g == interval_graph(intervals)


def test_diameter_ordering():
    bs = BallSet.from_tuples([(1, 0, 3), (2, 5, 1), (3, 9, 2)])
    assert diameter_ordering(bs).order == (1, 3, 2)
    same = BallSet.from_tuples([(i, i, 1) for i in range(1, 5)])
    assert diameter_ordering(same).order == (1, 2, 3, 4)


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(1, 9)), min_size=1, max_size=12))
def test_diameter_ordering_matches_sort(rows):
    bs = BallSet.from_tuples([(i, c, rad) for i, (c, rad) in enumerate(rows, start=1)])
    expected = sorted(range(1, len(rows) + 1), key=lambda i: (-rows[i - 1][1], i))
    assert list(diameter_ordering(bs).order) == expected


def test_thinness_examples():
    disjoint = BallSet.from_intervals([(0, 1), (2, 3), (5, 8)])
    assert thinness(disjoint).value == 1 and thinness(disjoint).exact
    nested = BallSet.from_intervals([(-k, k) for k in range(1, 6)])
    assert thinness(nested).value == 5
    touching = BallSet.from_intervals([(0, 1), (1, 2)])
    assert thinness(touching).value == 1


@given(st.lists(st.tuples(st.integers(0, 15), st.integers(1, 6)), min_size=1, max_size=12))
def test_thinness_matches_segment_scan(rows):
    intervals = [(Fraction(lo), Fraction(lo + ln)) for lo, ln in rows]
    bs = BallSet.from_intervals(intervals)
    points = sorted({x for iv in intervals for x in iv})
    mids = [(a + b) / 2 for a, b in zip(points, points[1:])]
    best = max((sum(1 for lo, hi in intervals if lo < m < hi) for m in mids), default=0)
    assert thinness(bs).value == best


def test_interval_model_open_to_closed():
    model = IntervalModel(((0, 1), (1, 2), (Fraction(1, 2), 3)), closed=False)
    assert model.graph().edges() == [(1, 3), (2, 3)]
    assert model.as_closed().graph() == model.graph()
    with pytest.raises(InputError):
        IntervalModel(((1, 1),), closed=False)
