"""Graphs, truncated distances, distance profiles and their complexities.

Vertices are the integers ``1..n``.  Distances that are undefined or larger
than the truncation radius are represented by :data:`INF` (``math.inf``), so
profile entries compare naturally with integers.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import BudgetError, DomainError, InputError

INF = math.inf

DEFAULT_SUBSET_BUDGET = 10**6
DEFAULT_MD_BUDGET = 16


class Graph:
    """Simple undirected loopless graph on vertices ``1..n``.

    The graph is immutable after construction; ``adj[v]`` is the sorted tuple
    of neighbours of ``v`` (``adj[0]`` is an unused empty tuple).
    """

    __slots__ = ("n", "adj", "_nbr_sets", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {n!r}")
        n = int(n)
        nbrs: list[set[int]] = [set() for _ in range(n + 1)]
        m = 0
        for e in edges:
            u, v = (int(x) for x in e)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"edge {u}-{v} has an endpoint outside 1..{n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise InputError(f"duplicate edge {u}-{v}")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._nbr_sets = tuple(frozenset(s) for s in nbrs)
        self._m = m

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return v in self._nbr_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(1, self.n + 1) for v in self.adj[u] if u < v]

    def check_vertex(self, v) -> int:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 1 <= v <= self.n:
            raise InputError(f"invalid vertex id {v!r} (graph has vertices 1..{self.n})")
        return int(v)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``1..len(vertices)``; returns it and the old ids."""
        old = sorted({self.check_vertex(v) for v in vertices})
        new_id = {v: i + 1 for i, v in enumerate(old)}
        es = [(new_id[u], new_id[v]) for u in old for v in self.adj[u] if u < v and v in new_id]
        return Graph(len(old), es), old

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- distances ---------------------------------------------------------------


def bfs_distances(g: Graph, source: int, radius=None, blocked=frozenset()) -> list:
    """Distances from ``source``; entries beyond ``radius`` (or unreachable) are INF.

    Vertices in ``blocked`` are never entered.  The returned list is indexed by
    vertex id (index 0 unused).
    """
    dist = [INF] * (g.n + 1)
    if source in blocked:
        return dist
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if radius is not None and du >= radius:
            continue
        for w in g.adj[u]:
            if dist[w] == INF and w not in blocked:
                dist[w] = du + 1
                queue.append(w)
    return dist


def bfs_path(g: Graph, source: int, targets, radius=None, blocked=frozenset()):
    """A shortest path from ``source`` to the nearest vertex of ``targets`` avoiding ``blocked``.

    Returns the path as a list of vertices, or None if no target is reachable
    within ``radius`` steps.
    """
    targets = set(targets)
    if source in blocked:
        return None
    parent = {source: None}
    depth = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u in targets:
            path = []
            while u is not None:
                path.append(u)
                u = parent[u]
            return path[::-1]
        if radius is not None and depth[u] >= radius:
            continue
        for w in g.adj[u]:
            if w not in parent and w not in blocked:
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
    return None


def truncated_distance(g: Graph, u: int, v: int, r: int):
    """``dist(u, v)`` if it is at most ``r``, otherwise INF."""
    g.check_vertex(u)
    g.check_vertex(v)
    _check_radius(r)
    return bfs_distances(g, u, radius=r)[v]


def distance_matrix(g: Graph, radius=None) -> list[list]:
    """Row ``u`` holds the (optionally truncated) distances from ``u``; row 0 unused."""
    return [[INF] * (g.n + 1)] + [bfs_distances(g, u, radius) for u in g.vertices()]


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return INF not in bfs_distances(g, 1)[1:]


def diameter(g: Graph):
    """Largest distance between two vertices; INF when the graph is disconnected."""
    best = 0
    for u in g.vertices():
        d = max(bfs_distances(g, u)[1:])
        if d == INF:
            return INF
        best = max(best, d)
    return best


# -- profiles ----------------------------------------------------------------


class Profile(NamedTuple):
    """Truncated distances from one vertex to the ordered target set."""

    entries: tuple
    radius: int

    @property
    def is_void(self) -> bool:
        """True for the all-INF profile, which profile complexity does not count."""
        return all(e == INF for e in self.entries)


@dataclass
class ComplexityResult:
    """Outcome of a profile- or neighbourhood-complexity query.

    ``count`` follows the definition being computed: profile counts leave out
    the all-INF profile, neighbourhood counts keep the empty trace.
    ``void_realized`` says whether some vertex has the all-INF profile (or the
    empty trace), so both conventions can be reported.  ``exact`` is False for
    sampled maximisations, whose count is only a lower bound.
    """

    count: int
    void_realized: bool = False
    witness_set: tuple | None = None
    witnesses: list | None = None
    exact: bool = True
    kind: str = "pc"
    subsets_examined: int = 0

    @property
    def count_with_void(self) -> int:
        if self.kind == "pc" and self.void_realized:
            return self.count + 1
        return self.count

    @property
    def count_without_void(self) -> int:
        if self.kind == "nc" and self.void_realized:
            return self.count - 1
        return self.count


def _check_radius(r):
    if isinstance(r, bool) or not isinstance(r, (int, np.integer)) or r < 0:
        raise InputError(f"radius must be a nonnegative integer, got {r!r}")


def check_target(g: Graph, a_set: Sequence[int], allow_empty=False) -> tuple[int, ...]:
    """Validate a target set and return it as a tuple, keeping its order."""
    a = tuple(g.check_vertex(x) for x in a_set)
    if len(set(a)) != len(a):
        raise InputError(f"target set has repeated vertices: {a}")
    if not a and not allow_empty:
        raise InputError("target set must be nonempty")
    return a


def profile_rows(g: Graph, a_set: Sequence[int], r: int) -> list[list]:
    """``rows[i][v]`` is the r-truncated distance from ``a_set[i]`` to ``v``."""
    return [bfs_distances(g, a, radius=r) for a in a_set]


def profile_of(g: Graph, a_set: Sequence[int], v: int, r: int) -> Profile:
    a = check_target(g, a_set)
    v = g.check_vertex(v)
    _check_radius(r)
    return Profile(tuple(row[v] for row in profile_rows(g, a, r)), r)


def all_profiles(g: Graph, a_set: Sequence[int], r: int) -> list[Profile]:
    """Profiles of every vertex, indexed by vertex id minus one."""
    a = check_target(g, a_set)
    _check_radius(r)
    rows = profile_rows(g, a, r)
    return [Profile(tuple(row[v] for row in rows), r) for v in g.vertices()]


def profile_complexity(g: Graph, a_set: Sequence[int], r: int, witnesses=False) -> ComplexityResult:
    """Number of distinct r-profiles towards ``a_set``, not counting the all-INF one."""
    a = check_target(g, a_set)
    seen = set(all_profiles(g, a, r))
    void = Profile((INF,) * len(a), r)
    realized = void in seen
    seen.discard(void)
    wit = sorted(seen, key=_profile_key) if witnesses else None
    return ComplexityResult(len(seen), realized, a, wit, kind="pc")


def neighbourhood_traces(g: Graph, a_set: Sequence[int], r: int) -> list[frozenset]:
    a = check_target(g, a_set)
    _check_radius(r)
    rows = profile_rows(g, a, r)
    return [frozenset(x for x, row in zip(a, rows) if row[v] <= r) for v in g.vertices()]


def neighbourhood_complexity(g: Graph, a_set: Sequence[int], r: int, witnesses=False) -> ComplexityResult:
    """Number of distinct sets ``N_r[v] & A``; the empty trace counts when realized."""
    a = check_target(g, a_set)
    traces = set(neighbourhood_traces(g, a, r))
    wit = sorted(traces, key=lambda s: (len(s), sorted(s))) if witnesses else None
    return ComplexityResult(len(traces), frozenset() in traces, a, wit, kind="nc")


def _profile_key(p: Profile):
    return tuple(e if e != INF else p.radius + 1 for e in p.entries)


# -- maximisation over k-subsets --------------------------------------------


def _truncated_matrix(g: Graph, r: int) -> np.ndarray:
    """(n x n) matrix of r-truncated distances with INF encoded as r + 1."""
    mat = np.full((g.n, g.n), r + 1, dtype=np.int64)
    for u in g.vertices():
        row = bfs_distances(g, u, radius=r)
        for v in g.vertices():
            if row[v] != INF:
                mat[v - 1, u - 1] = row[v]
    return mat


def _count_distinct_rows(block: np.ndarray, base: int, exclude_value: int | None) -> tuple[int, bool]:
    """Distinct rows of ``block``; optionally drop the row with every entry ``exclude_value``."""
    k = block.shape[1]
    if k * math.log2(base) < 62:
        weights = base ** np.arange(k, dtype=np.int64)
        codes = np.unique(block @ weights)
        if exclude_value is None:
            return len(codes), False
        void = int(exclude_value * weights.sum())
        hit = bool(np.any(codes == void))
        return len(codes) - hit, hit
    rows = np.unique(block, axis=0)
    if exclude_value is None:
        return len(rows), False
    hit = bool(np.any(np.all(rows == exclude_value, axis=1)))
    return len(rows) - hit, hit


def _over_k_sets(g: Graph, k: int, r: int, mode: str, samples: int, seed: int, budget: int, kind: str):
    _check_radius(r)
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= g.n:
        raise InputError(f"subset size k={k!r} must lie in 1..{g.n}")
    if mode not in ("exact", "sampled"):
        raise InputError(f"mode must be 'exact' or 'sampled', got {mode!r}")
    total = math.comb(g.n, k)
    if mode == "exact" and total > budget:
        raise BudgetError(f"exact maximisation needs {total} subsets, budget is {budget}")

    mat = _truncated_matrix(g, r)
    if kind == "nc":
        mat = (mat <= r).astype(np.int64)
        base, exclude = 2, None
    else:
        base, exclude = r + 2, r + 1

    if mode == "exact":
        subsets: Iterable[tuple[int, ...]] = combinations(range(1, g.n + 1), k)
    else:
        rng = random.Random(seed)
        subsets = (tuple(sorted(rng.sample(range(1, g.n + 1), k))) for _ in range(samples))

    best = None
    examined = 0
    for a in subsets:
        examined += 1
        cols = [x - 1 for x in a]
        count, void = _count_distinct_rows(mat[:, cols], base, exclude)
        if kind == "nc":
            void = not bool(np.all(mat[:, cols].any(axis=1)))
        if best is None or count > best[0]:
            best = (count, void, a)
    count, void, a = best
    return ComplexityResult(
        count, void, a, None, exact=(mode == "exact"), kind=kind, subsets_examined=examined
    )


def pc_over_k_sets(g: Graph, k: int, r: int, mode="exact", samples=1000, seed=0, budget=DEFAULT_SUBSET_BUDGET):
    """Maximum of profile_complexity over k-subsets (``pc_r(G, k)``).

    In ``sampled`` mode the maximum runs over ``samples`` random k-subsets and
    the result (flagged ``exact=False``) is a lower bound.
    """
    return _over_k_sets(g, k, r, mode, samples, seed, budget, "pc")


def nc_over_k_sets(g: Graph, k: int, r: int, mode="exact", samples=1000, seed=0, budget=DEFAULT_SUBSET_BUDGET):
    """Maximum of neighbourhood_complexity over k-subsets (``nc_r(G, k)``)."""
    return _over_k_sets(g, k, r, mode, samples, seed, budget, "nc")


# -- resolving sets ----------------------------------------------------------


def _require_connected(g: Graph):
    if not is_connected(g):
        raise DomainError("resolving sets are only defined here for connected graphs")


def is_resolving(g: Graph, s: Sequence[int]) -> bool:
    """True iff the full distance vectors to ``s`` are pairwise distinct."""
    s = check_target(g, s, allow_empty=True)
    _require_connected(g)
    rows = [bfs_distances(g, x) for x in s]
    vectors = {tuple(row[v] for row in rows) for v in g.vertices()}
    return len(vectors) == g.n


def metric_dimension(g: Graph, budget: int = DEFAULT_MD_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Smallest resolving set by brute force over subsets of increasing size."""
    _require_connected(g)
    if g.n > budget:
        raise BudgetError(f"metric dimension brute force limited to n <= {budget}, got n={g.n}")
    if g.n <= 1:
        return 0, ()
    dist = np.array([bfs_distances(g, u)[1:] for u in g.vertices()], dtype=np.int64)
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            block = dist[:, list(s)]
            if len(np.unique(block, axis=0)) == g.n:
                return k, tuple(x + 1 for x in s)
    raise AssertionError("the whole vertex set is always resolving")
