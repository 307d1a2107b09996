"""Generators for the extremal constructions and for random class members.

Every generator returns a :class:`LabeledInstance` carrying the graph, the
target set it was built around, a certificate of class membership where one
exists, and the quantities the construction is claimed to achieve.  Claimed
values are recorded as data only; callers recompute them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

from .colnum import BallSet, IntervalModel, ball_intersection_graph
from .errors import BudgetError, InputError
from .graphcore import Graph
from .treerep import TreeRepresentation, clique_tree

DEFAULT_SPLIT_CAP = 10
DEFAULT_SUBCUBIC_CAP = 4


@dataclass
class LabeledInstance:
    name: str
    graph: Graph
    target: tuple[int, ...]
    certificate: Any = None
    params: dict = field(default_factory=dict)
    predicted: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)


# -- small named graphs ------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(1, n + 1), 2))


def star_graph(leaves: int) -> Graph:
    """Centre is vertex 1."""
    return Graph(leaves + 1, [(1, i) for i in range(2, leaves + 2)])


class _Builder:
    """Incremental vertex/edge collector used by the generators."""

    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n

    def edge(self, u, v):
        self.edges.append((u, v))

    def pendant_path(self, v: int, length: int) -> list[int]:
        out, prev = [], v
        for _ in range(length):
            w = self.vertex()
            self.edge(prev, w)
            out.append(w)
            prev = w
        return out

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _nonempty_subsets(items):
    items = list(items)
    for mask in range(1, 2 ** len(items)):
        yield [x for i, x in enumerate(items) if mask >> i & 1]


def _check_even(k, r, r_min=2):
    if not isinstance(r, int) or r < r_min:
        raise InputError(f"radius must be an integer >= {r_min}, got {r!r}")
    if not isinstance(k, int) or k < 2 or k % 2:
        raise InputError(f"k must be an even integer >= 2, got {k!r}")


# -- split gadget ------------------------------------------------------------


def gen_split_gadget(k: int, r: int, cap: int = DEFAULT_SPLIT_CAP) -> LabeledInstance:
    """Clique on ``1..k``; a vertex per nonempty subset X adjacent exactly to X,
    each carrying a pendant path of length ``r``.  Target: the clique."""
    if not isinstance(k, int) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    if k > cap:
        raise BudgetError(f"split gadget with k={k} exceeds the cap {cap}")
    if not isinstance(r, int) or r < 0:
        raise InputError(f"radius must be a nonnegative integer, got {r!r}")
    b = _Builder()
    clique = [b.vertex() for _ in range(k)]
    for u, v in combinations(clique, 2):
        b.edge(u, v)
    subset_vertex = {}
    for x in _nonempty_subsets(clique):
        v = b.vertex()
        subset_vertex[tuple(x)] = v
        for a in x:
            b.edge(v, a)
        b.pendant_path(v, r)
    g = b.graph()
    return LabeledInstance(
        "split",
        g,
        tuple(clique),
        certificate=clique_tree(g),
        params={"k": k, "r": r},
        predicted={"pc_claimed": (r + 1) * (2**k - 1)},
        labels={"subset_vertex": subset_vertex},
    )


# -- interval lower bound ----------------------------------------------------


def _interval_lb_model(r: int, k: int):
    """Open intervals of IG_{r,k}: base intervals first (row by row), then the added ones."""
    half = k // 2
    gap = half + 1
    base = {}
    for j in range(1, r + 1):
        for i in range(1, half + 1):
            base[i, j] = (Fraction((j - 1) * gap + i), Fraction(j * gap + i) + Fraction(1, 2))
    ordered = sorted(base, key=lambda ij: (ij[1], ij[0]))
    added = {}
    for j in range(2, r - 1):
        for i in range(1, half + 1):
            end = base[i, j][1]
            following = [ij for ij in ordered if base[ij][0] > end][: half + 1]
            for s in range(1, half + 1):
                lo = end + Fraction(1, 4)
                hi = base[following[s - 1]][0] + Fraction(1, 2)
                added[i, j, s] = (lo, hi)
    return base, ordered, added


def gen_interval_lb(r: int, k: int) -> LabeledInstance:
    """Interval graph IG_{r,k}: k/2 parallel paths of r unit-shifted intervals
    plus k/2 extra intervals after each interval of columns 2..r-2.  Target:
    the first and the last column."""
    _check_even(k, r)
    half = k // 2
    base, ordered, added = _interval_lb_model(r, k)
    keys = ordered + sorted(added)
    vid = {key: i + 1 for i, key in enumerate(keys)}
    intervals = [base[key] if len(key) == 2 else added[key] for key in keys]
    model = IntervalModel(tuple(intervals), closed=False)
    target = tuple(vid[i, 1] for i in range(1, half + 1)) + tuple(vid[i, r] for i in range(1, half + 1))
    return LabeledInstance(
        "interval-lb",
        model.graph(),
        target,
        certificate=model,
        params={"r": r, "k": k},
        predicted={
            "pc_floor": k * r + half * half * (r - 2),
            "pc_claimed": k * r + (half + 1) * (r - 2) * half,
        },
        labels={"vertex": vid},
    )


# -- chordal lower bound -----------------------------------------------------


def gen_chordal_lb(r: int, k: int) -> LabeledInstance:
    """IG_{r,k} with pendant paths of length r on the added intervals, plus a
    vertex per nonempty subset of each end clique (adjacent to that subset)
    carrying its own pendant path of length r."""
    _check_even(k, r)
    half = k // 2
    inner = gen_interval_lb(r, k)
    b = _Builder()
    b.n = inner.graph.n
    b.edges = list(inner.graph.edges())
    vid = inner.labels["vertex"]
    for key, v in vid.items():
        if len(key) == 3:
            b.pendant_path(v, r)
    side_a = inner.target[:half]
    side_b = inner.target[half:]
    subset_vertex = {}
    for side in (side_a, side_b):
        for x in _nonempty_subsets(side):
            v = b.vertex()
            subset_vertex[tuple(x)] = v
            for a in x:
                b.edge(v, a)
            b.pendant_path(v, r)
    g = b.graph()
    return LabeledInstance(
        "chordal-lb",
        g,
        inner.target,
        certificate=clique_tree(g),
        params={"r": r, "k": k},
        predicted={"pc_subset_floor": (r + 1) * (2**half - 1)},
        labels={"vertex": vid, "subset_vertex": subset_vertex},
    )


# -- treelength-2 lower bound ------------------------------------------------


def gen_tl2_lb(r: int, k: int) -> LabeledInstance:
    """H_{r,k}: a path v_{X,Y,1..r-1} per pair of nonempty subsets X, Y of
    ``1..k/2``, end cliques {a_x} and {b_y}, apex vertices u_0..u_{r-1} and a
    pendant path of length r on every path vertex.  Target: all a_x and b_y.
    The certificate is the natural path decomposition of length 2."""
    _check_even(k, r)
    half = k // 2
    b = _Builder()
    a_vs = [b.vertex() for _ in range(half)]
    b_vs = [b.vertex() for _ in range(half)]
    u = [b.vertex() for _ in range(r)]
    for side in (a_vs, b_vs):
        for x, y in combinations(side, 2):
            b.edge(x, y)
    for a in a_vs:
        b.edge(u[0], a)
    for y in b_vs:
        b.edge(u[r - 1], y)
    subsets = list(_nonempty_subsets(range(half)))
    layer: dict[int, list[int]] = {i: [] for i in range(1, r)}
    path_vertex = {}
    pendants = []
    for xs in subsets:
        for ys in subsets:
            prev = None
            for i in range(1, r):
                v = b.vertex()
                path_vertex[tuple(xs), tuple(ys), i] = v
                layer[i].append(v)
                b.edge(v, u[i - 1])
                b.edge(v, u[i])
                if prev is not None:
                    b.edge(prev, v)
                prev = v
                if i == 1:
                    for x in xs:
                        b.edge(v, a_vs[x])
                if i == r - 1:
                    for y in ys:
                        b.edge(v, b_vs[y])
            # pendant paths are added after the layer bookkeeping
    for key, v in path_vertex.items():
        pendants.append((key[2], v, b.pendant_path(v, r)))
    g = b.graph()

    # spine bags B_0..B_{r-1}
    bags: list[set[int]] = []
    bags.append(set(a_vs) | {u[0]} | set(layer[1]))
    for i in range(1, r - 1):
        bags.append({u[i]} | set(layer[i]) | set(layer[i + 1]))
    if r >= 2:
        bags.append(set(b_vs) | {u[r - 1]} | set(layer[r - 1]))
    tree_edges = [(i, i + 1) for i in range(1, len(bags))]
    for i, v, tail in pendants:
        prev_node = i + 1  # spine node B_i holds layer i
        prev = v
        for w in tail:
            bags.append({prev, w})
            tree_edges.append((prev_node, len(bags)))
            prev_node = len(bags)
            prev = w
    cert = TreeRepresentation.build(bags, tree_edges, 1)
    return LabeledInstance(
        "tl2-lb",
        g,
        tuple(a_vs) + tuple(b_vs),
        certificate=cert,
        params={"r": r, "k": k},
        predicted={"pc_floor": Fraction(r, 2) * (r - 1) * (2**half - 1) ** 2},
        labels={"path_vertex": path_vertex, "apex": tuple(u)},
    )


# -- subcubic construction ---------------------------------------------------


def _binary_tree(b: _Builder, height: int, root: int | None = None) -> tuple[int, list[int]]:
    """Complete binary tree of the given height; returns root and leaves left to right."""
    root = b.vertex() if root is None else root
    level = [root]
    for _ in range(height):
        nxt = []
        for x in level:
            for _ in range(2):
                c = b.vertex()
                b.edge(x, c)
                nxt.append(c)
        level = nxt
    return root, level


def subcubic_radius(k: int) -> int:
    return k + math.ceil(math.log2(k)) + 1


def gen_subcubic(k: int, cap: int = DEFAULT_SUBCUBIC_CAP) -> LabeledInstance:
    """Trees T_i of height k rooted at the targets, and for every subset X of
    the targets (the empty one included) a tree T_X of height ceil(log2 k)
    whose first |X| leaves are matched to unused leaves of the T_i, i in X.
    The root of T_X sees exactly X within ``r = k + ceil(log2 k) + 1``."""
    if not isinstance(k, int) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    if k > cap:
        raise BudgetError(f"subcubic construction with k={k} exceeds the cap {cap}")
    h = math.ceil(math.log2(k))
    b = _Builder()
    targets = [b.vertex() for _ in range(k)]
    free_leaves = []
    for a in targets:
        _, leaves = _binary_tree(b, k, a)
        free_leaves.append(iter(leaves))
    roots = {}
    for mask in range(2**k):
        xs = [i for i in range(k) if mask >> i & 1]
        root, leaves = _binary_tree(b, h)
        roots[tuple(targets[i] for i in xs)] = root
        for leaf, i in zip(leaves, xs):
            b.edge(leaf, next(free_leaves[i]))
    r = subcubic_radius(k)
    return LabeledInstance(
        "subcubic",
        b.graph(),
        tuple(targets),
        params={"k": k, "r": r},
        predicted={"nc": 2**k},
        labels={"subset_root": roots},
    )


# -- random class members ----------------------------------------------------


def gen_random_partial_ktree(n: int, t: int, edge_keep_prob: float = 1.0, seed: int = 0) -> LabeledInstance:
    """Random t-tree on n vertices with each edge kept with the given
    probability; the growth order gives a width-t decomposition."""
    if n < 1 or t < 1:
        raise InputError("need n >= 1 and t >= 1")
    rng = random.Random(seed)
    core = min(n, t + 1)
    bags = [set(range(1, core + 1))]
    tree_edges = []
    edges = list(combinations(range(1, core + 1), 2))
    for v in range(core + 1, n + 1):
        host = rng.randrange(len(bags))
        clique = rng.sample(sorted(bags[host]), t)
        bags.append(set(clique) | {v})
        tree_edges.append((host + 1, len(bags)))
        edges.extend((c, v) for c in clique)
    kept = [e for e in edges if rng.random() < edge_keep_prob]
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    relabel = dict(zip(range(1, n + 1), perm))
    g = Graph(n, [(relabel[a], relabel[b]) for a, b in kept])
    cert = TreeRepresentation.build(({relabel[v] for v in bag} for bag in bags), tree_edges, 1)
    return LabeledInstance(
        "partial-ktree",
        g,
        (),
        certificate=cert,
        params={"n": n, "t": t, "edge_keep_prob": edge_keep_prob, "seed": seed},
    )


def gen_random_mop(n: int, seed: int = 0) -> LabeledInstance:
    """Random triangulation of an n-gon, relabelled at random.

    The certificate is the boundary cycle as a tuple of vertices in circular order.
    """
    if n < 3:
        raise InputError("a maximal outerplanar graph needs at least 3 vertices")
    rng = random.Random(seed)
    edges = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    stack = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        mid = rng.randint(lo + 1, hi - 1)
        edges.add((lo, mid))
        edges.add((mid, hi))
        stack.append((lo, mid))
        stack.append((mid, hi))
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    g = Graph(n, [(perm[a], perm[b]) for a, b in sorted(edges)])
    return LabeledInstance("mop", g, (), certificate=tuple(perm), params={"n": n, "seed": seed})


def gen_random_interval(n: int, seed: int = 0, span: int | None = None, max_len: int | None = None) -> LabeledInstance:
    """Closed intervals with integer endpoints, lengths in ``1..max_len``."""
    if n < 1:
        raise InputError("need n >= 1")
    rng = random.Random(seed)
    span = span if span is not None else 2 * n
    max_len = max_len if max_len is not None else max(2, n // 4)
    intervals = []
    for _ in range(n):
        lo = rng.randint(0, span)
        intervals.append((Fraction(lo), Fraction(lo + rng.randint(1, max_len))))
    model = IntervalModel(tuple(intervals), closed=True)
    return LabeledInstance("interval", model.graph(), (), certificate=model, params={"n": n, "seed": seed})


def gen_random_balls(n: int, d: int = 2, seed: int = 0, span: int | None = None) -> LabeledInstance:
    """Balls with integer centres in ``[0, span]^d`` and radii in {1/2, 1, ..., 3}."""
    if n < 1 or d < 1:
        raise InputError("need n >= 1 and d >= 1")
    rng = random.Random(seed)
    span = span if span is not None else 2 * n
    rows = []
    for i in range(1, n + 1):
        center = [rng.randint(0, span) for _ in range(d)]
        rows.append((i, *center, Fraction(rng.randint(1, 6), 2)))
    bs = BallSet.from_tuples(rows)
    return LabeledInstance(
        "balls", ball_intersection_graph(bs), (), certificate=bs, params={"n": n, "d": d, "seed": seed}
    )


GENERATORS = {
    "split": gen_split_gadget,
    "interval-lb": gen_interval_lb,
    "chordal-lb": gen_chordal_lb,
    "tl2-lb": gen_tl2_lb,
    "subcubic": gen_subcubic,
    "partial-ktree": gen_random_partial_ktree,
    "mop": gen_random_mop,
    "interval": gen_random_interval,
    "balls": gen_random_balls,
}
