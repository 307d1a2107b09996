import random

import pytest
from hypothesis import given, strategies as st

from profilekit.colnum import IntervalModel
from profilekit.constructions import (
    complete_graph,
    cycle_graph,
    gen_interval_lb,
    gen_random_interval,
    gen_random_mop,
    gen_random_partial_ktree,
    path_graph,
    star_graph,
)
from profilekit.errors import DomainError, InputError
from profilekit.graphcore import Graph, all_profiles, bfs_distances
from profilekit.treerep import GuardingFamily, TreeRepresentation, tw_guarding_family
from profilekit.verify import (
    BoundQuery,
    bound_value,
    corollary_check,
    guarded_by_paths,
    guarded_vertices,
    guarding_inequality_check,
    interval_signatures,
    outerplanar_levels,
    verify_guarding,
)
from profilekit.verify.bounds import CLASS_PARAMS, chordal_bound, interval_bound, treelength_bound
from profilekit.verify.intervals import points_in

from conftest import graph_with_target

P5 = path_graph(5)


def fam(sets, r, p, target):
    return GuardingFamily(tuple(frozenset(s) for s in sets), r, p, tuple(target))


def test_verify_guarding_examples():
    rep = verify_guarding(P5, (5,), 4, fam([{3}], 4, 1, (5,)))
    assert not rep.ok
    v, a, path = rep.counterexample
    assert (v, a, path) == (4, 5, (4, 5))
    assert verify_guarding(P5, (5,), 1, fam([{4}, {5}], 1, 1, (5,))).ok
    everything = fam([set(range(1, 6))], 3, 5, (1, 5))
    assert verify_guarding(P5, (1, 5), 3, everything).ok


def test_verify_guarding_reports_caps_separately():
    rep = verify_guarding(P5, (5,), 1, fam([{3, 4, 5}], 1, 2, (5,)))
    assert rep.ok and not rep.cap_ok and rep.oversized == [0]


def test_vertices_far_from_target_need_no_guard():
    g = Graph(4, [(1, 2)])
    assert verify_guarding(g, (1,), 2, fam([{1}], 2, 1, (1,))).ok
    assert verify_guarding(g, (1,), 2, fam([], 2, 1, (1,))).ok is False


@given(graph_with_target(max_n=8, max_k=3), st.data())
def test_deletion_check_matches_path_enumeration(case, data):
    g, a, r = case
    sets = data.draw(st.lists(st.frozensets(st.sampled_from(list(g.vertices()))), max_size=3))
    by_del = guarded_vertices(g, a, r, sets)
    by_path = guarded_by_paths(g, a, r, sets)
    assert by_del == by_path
    assert verify_guarding(g, a, r, fam(sets, r, g.n, a)).ok == all(by_path[1:])


def test_inequality_check_examples():
    rep = TreeRepresentation.build([{i, i + 1} for i in range(1, 5)], [(i, i + 1) for i in range(1, 4)], 1)
    f = tw_guarding_family(P5, rep, (1, 5), 2)
    res = guarding_inequality_check(P5, (1, 5), 2, f, kind="ktminor", t=3)
    assert res.ok and res.pc_measured == 5
    empty = guarding_inequality_check(P5, (), 2, fam([], 2, 0, ()))
    assert empty.ok and empty.pc_measured == 0


def test_inequality_check_partial_2trees():
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.randint(3, 20)
        inst = gen_random_partial_ktree(n, 2, 0.8, seed)
        a = rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))
        r = rng.randint(0, 3)
        f = tw_guarding_family(inst.graph, inst.certificate, a, r)
        assert guarding_inequality_check(inst.graph, a, r, f).ok


def test_bound_examples():
    assert bound_value("treewidth", t=1, r=1, k=1) == 256
    assert bound_value("outerplanar", r=0, k=1) == 5
    assert bound_value("interval", r=1, k=1) == 22
    assert bound_value(BoundQuery("general_diam", {"r": 2, "k": 2})) == 15
    assert bound_value("minor_scol", h=4, r=1) == 1 * 3 * 3
    assert bound_value("subdivision_wcol", s=1, r=0) == 1


def test_bound_errors():
    with pytest.raises(InputError):
        bound_value("treewidth", t=1, r=1)
    with pytest.raises(InputError):
        bound_value("minor", h=3, r=1, k=1)
    with pytest.raises(InputError):
        bound_value("treelength", ell=0, r=1, k=1)
    with pytest.raises(InputError):
        bound_value("nonsense", r=1, k=1)
    with pytest.raises(InputError):
        bound_value("interval", r=1.5, k=1)


def _base_params(tag):
    return {name: max(low, 1) for name, low in CLASS_PARAMS[tag].items()}


@pytest.mark.parametrize("tag", sorted(CLASS_PARAMS))
def test_bounds_are_exact_and_monotone(tag):
    for name in ("r", "k"):
        if name not in CLASS_PARAMS[tag]:
            continue
        values = []
        for x in range(CLASS_PARAMS[tag][name], 7):
            p = _base_params(tag)
            p[name] = x
            v = bound_value(tag, **p)
            assert isinstance(v, int)
            values.append(v)
        assert values == sorted(values)


def test_assembled_constants():
    assert chordal_bound(1, 2) == 4 * (4 * 4 + 2 * interval_bound(1, 2))
    assert treelength_bound(1, 0, 1) == 2 * 2 * (1 + 2 + 4)


def test_signatures_far_interval():
    model = IntervalModel(((0, 2), (1, 3), (10, 11)))
    res = interval_signatures(model, (1,), 1)
    assert res.signatures[3] != res.signatures[2]


def test_signatures_certificate_mismatch():
    model = IntervalModel(((0, 2), (1, 3)))
    with pytest.raises(InputError):
        interval_signatures(model, (1,), 1, graph=Graph(2))


def test_signatures_sound_on_interval_lb():
    inst = gen_interval_lb(4, 2)
    res = interval_signatures(inst.certificate, inst.target, 4, inst.graph)
    profiles = all_profiles(inst.graph, inst.target, 4)
    for u in inst.graph.vertices():
        for v in inst.graph.vertices():
            if res.signatures[u] == res.signatures[v]:
                assert profiles[u - 1] == profiles[v - 1]


@given(st.integers(1, 40), st.integers(0, 2**32 - 1), st.integers(0, 6), st.data())
def test_signature_properties(n, seed, r, data):
    inst = gen_random_interval(n, seed)
    a = data.draw(st.lists(st.integers(1, n), min_size=1, max_size=min(5, n), unique=True))
    res = interval_signatures(inst.certificate, a, r)
    profiles = all_profiles(inst.graph, a, r)
    seen = {}
    for v in inst.graph.vertices():
        seen.setdefault(res.signatures[v], profiles[v - 1])
        assert seen[res.signatures[v]] == profiles[v - 1]
    closed = inst.certificate.as_closed().intervals
    for sweep in res.sweeps:
        assert len(set(sweep.left) | set(sweep.right)) <= 2 * r + 6
        assert sweep.left == sorted(sweep.left, reverse=True)
        assert sweep.right == sorted(sweep.right)
        for iv in closed:
            assert points_in(iv, sweep.left) <= 2 and points_in(iv, sweep.right) <= 2


def test_signatures_open_model():
    inst = gen_interval_lb(6, 4)
    res = interval_signatures(inst.certificate, inst.target, 6)
    profiles = all_profiles(inst.graph, inst.target, 6)
    assert len(set(res.signatures[1:])) >= len(set(profiles))


def test_levels_examples():
    c6 = cycle_graph(6)
    rep = outerplanar_levels(c6, list(range(1, 7)), 1, (1, 4), 3)
    assert rep.monotone and rep.ok
    assert [sorted(x) for x in rep.levels] == [[1], [2, 6], [3, 5], [4]]
    star = star_graph(4)
    rep = outerplanar_levels(star, [2, 1, 3, 4, 5], 2, (2, 5), 2)
    assert rep.ok
    p = path_graph(7)
    for a in ((1,), (3, 6), (2, 4, 7)):
        assert outerplanar_levels(p, list(range(1, 8)), a[0], a, 3).ok


def test_levels_detects_bad_embedding():
    # fan: 1 joined to the path 2-3-4-5-6; listing 4 before 3 breaks the boundary order
    fan = Graph(6, [(1, v) for v in range(2, 7)] + [(v, v + 1) for v in range(2, 6)])
    assert outerplanar_levels(fan, [1, 2, 3, 4, 5, 6], 1, (1, 2), 2).monotone
    rep = outerplanar_levels(fan, [1, 2, 4, 3, 5, 6], 1, (1, 2), 2)
    assert rep.violations == [(1, 2, 2, 4, 3)]


@given(st.integers(3, 30), st.integers(0, 2**32 - 1), st.integers(0, 5), st.data())
def test_levels_on_random_mops(n, seed, r, data):
    inst = gen_random_mop(n, seed)
    a = data.draw(st.lists(st.integers(1, n), min_size=1, max_size=min(4, n), unique=True))
    rep = outerplanar_levels(inst.graph, inst.certificate, a[0], a, r)
    assert rep.monotone, rep.violations[:3]
    assert rep.membership_total <= (2 * r + 1) * len(a)
    for i, level in enumerate(rep.levels):
        assert all(bfs_distances(inst.graph, a[0])[v] == i for v in level)


def test_levels_input_errors():
    with pytest.raises(InputError):
        outerplanar_levels(P5, [1, 2, 3, 4], 1, (1,), 1)
    with pytest.raises(InputError):
        outerplanar_levels(P5, [1, 2, 3, 4, 5], 2, (1,), 1)


def test_corollary_examples():
    rep = corollary_check(path_graph(8), "treewidth", {"t": 1})
    assert rep.md == 1 and rep.diam == 7 and rep.ok and rep.bound >= 8
    assert corollary_check(cycle_graph(6), "outerplanar").ok
    assert corollary_check(complete_graph(4), "chordal").ok
    assert corollary_check(Graph(1), "treewidth", {"t": 0}).ok
    with pytest.raises(DomainError):
        corollary_check(Graph(2), "outerplanar")
