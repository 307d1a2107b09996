import random

import pytest
from hypothesis import given, strategies as st

from profilekit.constructions import (
    complete_graph,
    cycle_graph,
    gen_chordal_lb,
    gen_random_interval,
    gen_random_partial_ktree,
    gen_split_gadget,
    path_graph,
)
from profilekit.errors import DomainError, PreconditionError, StructureError
from profilekit.graphcore import Graph, profile_rows
from profilekit.treerep import (
    RootedTree,
    TreeRepresentation,
    chordal_case_partition,
    chordless_cycle,
    clique_tree,
    highest_nodes,
    is_chordal,
    is_chordal_representation,
    lca_closure,
    normalize_representation,
    separator_profile_bound_check,
    tw_guarding_family,
    validate_representation,
)
from profilekit.verify import verify_guarding

from conftest import graphs


def path_decomposition(n):
    return TreeRepresentation.build([{i, i + 1} for i in range(1, n)], [(i, i + 1) for i in range(1, n - 1)], 1)


def test_validate_small_cases():
    rep = TreeRepresentation.build([{1, 2}, {2, 3}], [(1, 2)])
    report = validate_representation(path_graph(3), rep)
    assert report.valid and report.width == 1 and report.length == 1
    bad = validate_representation(Graph(3, [(1, 2), (2, 3), (1, 3)]), rep)
    assert not bad.valid and any("1-3" in v for v in bad.violations)
    k4 = validate_representation(complete_graph(4), TreeRepresentation.build([{1, 2, 3, 4}], []))
    assert k4.valid and k4.width == 3 and k4.length == 1


def test_malformed_tree_raises():
    with pytest.raises(StructureError):
        validate_representation(path_graph(3), TreeRepresentation.build([{1, 2}, {2, 3}, {3}], [(1, 2), (2, 1)]))
    with pytest.raises(StructureError):
        RootedTree(3, [(1, 2)])


def test_disconnected_model_is_reported():
    rep = TreeRepresentation.build([{1, 2}, {2, 3}, {1}], [(1, 2), (2, 3)])
    report = validate_representation(path_graph(3), rep)
    assert not report.valid and any("vertex 1" in v for v in report.violations)


def test_highest_nodes():
    rep = TreeRepresentation.build([{1, 2, 3}], [])
    assert highest_nodes(rep, [1, 2, 3]) == {1: 1, 2: 1, 3: 1}
    three = TreeRepresentation.build([{1}, {1, 2}, {2, 3}], [(1, 2), (2, 3)], 1)
    assert highest_nodes(three, [3]) == {3: 3}
    with pytest.raises(StructureError):
        highest_nodes(three, [4])


def test_highest_nodes_by_depth_scan():
    # caterpillar: spine 1-2-3-4 with a leaf bag on each spine node
    bags = [{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}]
    edges = [(1, 2), (2, 3), (3, 4), (1, 5), (2, 6), (3, 7), (4, 8)]
    rep = TreeRepresentation.build(bags, edges)
    for root in range(1, 9):
        tree = RootedTree(8, edges, root)
        got = highest_nodes(rep, range(1, 10), root)
        for v in range(1, 10):
            nodes = [i for i, b in enumerate(bags, start=1) if v in b]
            assert got[v] == min(nodes, key=lambda x: tree.depth[x])


def pairwise_closure(tree, nodes):
    out = set(nodes)
    while True:
        extra = {tree.lca(u, v) for u in out for v in out} - out
        if not extra:
            return out
        out |= extra


def test_lca_closure_examples():
    tree = RootedTree(3, [(1, 2), (1, 3)], 1)
    assert lca_closure(tree, [2]) == {2}
    assert lca_closure(tree, [2, 3]) == {1, 2, 3}
    rng = random.Random(5)
    edges = [(rng.randint(1, v - 1), v) for v in range(2, 51)]
    tree = RootedTree(50, edges, 1)
    m = rng.sample(range(1, 51), 6)
    assert lca_closure(tree, m) == pairwise_closure(tree, m)


@given(st.integers(1, 60), st.integers(0, 2**32 - 1), st.integers(1, 10))
def test_lca_closure_properties(n, seed, size):
    rng = random.Random(seed)
    edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    tree = RootedTree(n, edges, rng.randint(1, n))
    m = rng.sample(range(1, n + 1), min(size, n))
    closure = lca_closure(tree, m)
    assert len(closure) <= 2 * len(m)
    assert lca_closure(tree, closure) == closure
    assert closure == pairwise_closure(tree, m)
    assert all(len(nb) <= 2 for _, nb in tree.components_without(closure))


def test_normalize_merges_equal_neighbours():
    rep = TreeRepresentation.build([{1, 2}, {1, 2}, {2, 3}], [(1, 2), (2, 3)], 2)
    norm, mapping = normalize_representation(rep)
    assert norm.m == 2
    assert mapping[1] == mapping[2]
    assert validate_representation(path_graph(3), norm).valid


def test_tw_family_on_path():
    g = path_graph(5)
    rep = path_decomposition(5)
    fam = tw_guarding_family(g, rep, (1, 5), 4)
    assert len(fam) <= 8 and fam.max_member() <= 4
    assert verify_guarding(g, (1, 5), 4, fam).ok


def test_tw_family_single_bag():
    g = cycle_graph(5)
    rep = TreeRepresentation.build([set(range(1, 6))], [])
    fam = tw_guarding_family(g, rep, (2, 4), 3)
    assert set(fam.sets) == {frozenset(range(1, 6))}
    assert verify_guarding(g, (2, 4), 3, fam).ok


def test_tw_family_partial_3tree():
    inst = gen_random_partial_ktree(40, 3, 0.8, seed=11)
    rng = random.Random(2)
    a = rng.sample(range(1, 41), 4)
    fam = tw_guarding_family(inst.graph, inst.certificate, a, 3)
    assert verify_guarding(inst.graph, a, 3, fam).ok
    assert fam.nominal_size <= 16 and len(fam) <= 16 and fam.max_member() <= 8


@given(st.integers(2, 25), st.integers(1, 3), st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_tw_family_always_guards(n, t, seed, r):
    inst = gen_random_partial_ktree(n, t, 0.7, seed)
    rng = random.Random(seed)
    a = rng.sample(range(1, n + 1), rng.randint(1, min(4, n)))
    fam = tw_guarding_family(inst.graph, inst.certificate, a, r, root=rng.randint(1, inst.certificate.m))
    assert verify_guarding(inst.graph, a, r, fam).ok
    assert fam.nominal_size <= 4 * len(a)
    assert fam.max_member() <= 2 * (inst.certificate.width + 1)


def test_chordality():
    assert is_chordal(complete_graph(4))
    assert not is_chordal(cycle_graph(4))
    cyc = chordless_cycle(cycle_graph(6))
    assert cyc is not None and len(cyc) == 6
    with pytest.raises(DomainError) as err:
        clique_tree(cycle_graph(5))
    assert len(err.value.witness) == 5


def test_clique_tree_examples():
    rep = clique_tree(complete_graph(4))
    assert rep.bags == (frozenset({1, 2, 3, 4}),)
    rep = clique_tree(path_graph(4))
    assert sorted(map(sorted, rep.bags)) == [[1, 2], [2, 3], [3, 4]]
    assert validate_representation(path_graph(4), rep).valid
    inst = gen_random_interval(30, seed=4)
    rep = clique_tree(inst.graph)
    report = validate_representation(inst.graph, rep)
    assert report.valid and report.length <= 1
    assert is_chordal_representation(inst.graph, rep)


@given(graphs(max_n=8))
def test_chordal_iff_clique_tree(g):
    if is_chordal(g):
        assert is_chordal_representation(g, clique_tree(g))
    else:
        cyc = chordless_cycle(g)
        assert len(cyc) >= 4
        for i, u in enumerate(cyc):
            for j, v in enumerate(cyc):
                if i < j:
                    adjacent = (j - i) in (1, len(cyc) - 1)
                    assert g.has_edge(u, v) == adjacent


def test_case_partition_single_bag():
    g = complete_graph(4)
    part = chordal_case_partition(g, clique_tree(g), (1, 3))
    assert [p.kind for p in part.parts] == [1]
    assert part.parts[0].vertices == frozenset(range(1, 5))


def test_case_partition_path():
    g = path_graph(5)
    rep = path_decomposition(5)
    part = chordal_case_partition(g, rep, (1, 5))
    covered = sorted(v for p in part.parts for v in p.vertices)
    assert covered == [1, 2, 3, 4, 5]
    # closure = {bag 1, bag 4}; the middle bags form one component with two closure neighbours
    tree = RootedTree(rep.m, rep.tree_edges, 1)
    comps = tree.components_without(part.closure)
    middle = [p for p in part.parts if p.kind == 3]
    assert len(middle) == sum(1 for _, nb in comps if len(nb) == 2)
    assert middle[0].vertices == frozenset({3})


def test_case_partition_rejects_long_bags():
    g = cycle_graph(4)
    rep = TreeRepresentation.build([{1, 2, 3}, {1, 3, 4}], [(1, 2)])
    with pytest.raises(DomainError):
        chordal_case_partition(g, rep, (1,))


def test_case_partition_chordal_lb():
    inst = gen_chordal_lb(3, 2)
    part = chordal_case_partition(inst.graph, clique_tree(inst.graph), inst.target)
    covered = sorted(v for p in part.parts for v in p.vertices)
    assert covered == list(inst.graph.vertices())


def test_separator_check_split_gadget():
    inst = gen_split_gadget(2, 1)
    clique = set(inst.target)
    x = set(inst.graph.vertices()) - clique
    res = separator_profile_bound_check(inst.graph, x, clique, clique, inst.target, 1, 1)
    assert res.bound == 3 * 2**2 and res.ok
    # v_{1}, v_{2}, v_{12} at distance one, and the void profile of the pendant ends
    assert res.profile_count == 4
    assert separator_profile_bound_check(inst.graph, set(), clique, None, inst.target, 1, 1).profile_count == 0


def test_separator_preconditions():
    g = path_graph(5)
    assert separator_profile_bound_check(g, {1, 2}, {3}, None, (5,), 2, 1).ok
    with pytest.raises(PreconditionError) as err:
        separator_profile_bound_check(g, {1}, {4}, None, (5,), 2, 1)
    assert err.value.witness[0] == 1
    with pytest.raises(PreconditionError):
        separator_profile_bound_check(g, {1, 2}, {2, 4}, None, (5,), 2, 1)


@given(st.integers(2, 30), st.integers(1, 3), st.integers(0, 2**32 - 1), st.integers(0, 4))
def test_separator_check_on_subtrees(n, t, seed, r):
    g = gen_random_partial_ktree(n, t, 1.0, seed).graph
    rep = clique_tree(g)
    rng = random.Random(seed)
    a = rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))
    tree = RootedTree(rep.m, rep.tree_edges, 1)
    node = rng.randint(1, rep.m)
    sep = rep.bag(node)
    for comp, _ in tree.components_without({node}):
        x = set().union(*(rep.bag(c) for c in comp)) - sep
        a_ok = [v for v in a if v not in x]
        if not a_ok:
            continue
        res = separator_profile_bound_check(g, x, sep, None, a_ok, r, 1)
        rows = profile_rows(g, a_ok, r)
        assert res.profile_count == len({tuple(row[v] for row in rows) for v in x})
        assert res.ok
