"""Tree representations (tree decompositions) and what is built on top of them.

A representation is a tree on nodes ``1..m`` with a bag (a set of graph
vertices) per node.  Besides validation this module provides LCA-closures in
rooted trees, the guarding family derived from a decomposition, clique trees
of chordal graphs and the three-case split used for chordal graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, InputError, PreconditionError, StructureError
from .graphcore import INF, Graph, bfs_distances, bfs_path, check_target, profile_rows


@dataclass(frozen=True)
class TreeRepresentation:
    """Tree on nodes ``1..m`` (``tree_edges``) with ``bags[i - 1]`` at node ``i``."""

    bags: tuple[frozenset, ...]
    tree_edges: tuple[tuple[int, int], ...]
    root: int | None = None

    @classmethod
    def build(cls, bags: Iterable[Iterable[int]], tree_edges: Iterable[tuple[int, int]], root=None):
        return cls(
            tuple(frozenset(int(v) for v in b) for b in bags),
            tuple((int(a), int(b)) for a, b in tree_edges),
            root,
        )

    @property
    def m(self) -> int:
        return len(self.bags)

    def bag(self, node: int) -> frozenset:
        return self.bags[node - 1]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def models(self, n: int) -> list[set[int]]:
        """``models[v]`` is the set of nodes whose bag contains ``v``."""
        out = [set() for _ in range(n + 1)]
        for node, bag in enumerate(self.bags, start=1):
            for v in bag:
                out[v].add(node)
        return out

    def with_root(self, root):
        return TreeRepresentation(self.bags, self.tree_edges, root)


class RootedTree:
    """Tree on nodes ``1..m`` rooted at ``root`` with parent/depth/preorder tables."""

    def __init__(self, m: int, edges: Iterable[tuple[int, int]], root: int = 1):
        edges = list(edges)
        if m < 1:
            raise StructureError("a tree needs at least one node")
        if not 1 <= root <= m:
            raise StructureError(f"root {root} is not a node of the tree (1..{m})")
        if len(edges) != m - 1:
            raise StructureError(f"a tree on {m} nodes has {m - 1} edges, got {len(edges)}")
        adj: list[list[int]] = [[] for _ in range(m + 1)]
        for a, b in edges:
            if not (1 <= a <= m and 1 <= b <= m) or a == b:
                raise StructureError(f"bad tree edge {a}-{b}")
            adj[a].append(b)
            adj[b].append(a)
        for lst in adj:
            lst.sort()
        parent = [0] * (m + 1)
        depth = [-1] * (m + 1)
        preorder = []
        depth[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            preorder.append(u)
            for w in reversed(adj[u]):
                if depth[w] == -1:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    stack.append(w)
                elif w != parent[u]:
                    raise StructureError(f"tree edges contain a cycle through {u}-{w}")
        if len(preorder) != m:
            raise StructureError("tree edges do not connect all nodes")
        self.m = m
        self.root = root
        self.adj = adj
        self.parent = parent
        self.depth = depth
        self.preorder = preorder
        self.pre_index = [0] * (m + 1)
        for i, u in enumerate(preorder):
            self.pre_index[u] = i

    def lca(self, u: int, v: int) -> int:
        while self.depth[u] > self.depth[v]:
            u = self.parent[u]
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
        while u != v:
            u, v = self.parent[u], self.parent[v]
        return u

    def path(self, u: int, v: int) -> list[int]:
        w = self.lca(u, v)
        left, right = [], []
        while u != w:
            left.append(u)
            u = self.parent[u]
        while v != w:
            right.append(v)
            v = self.parent[v]
        return left + [w] + right[::-1]

    def components_without(self, removed: Iterable[int]) -> list[tuple[list[int], set[int]]]:
        """Components of the forest ``T - removed`` with their neighbours in ``removed``."""
        removed = set(removed)
        seen = set(removed)
        out = []
        for start in self.preorder:
            if start in seen:
                continue
            comp, nbrs = [], set()
            seen.add(start)
            queue = deque([start])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self.adj[u]:
                    if w in removed:
                        nbrs.add(w)
                    elif w not in seen:
                        seen.add(w)
                        queue.append(w)
            out.append((comp, nbrs))
        return out


def rooted_tree(rep: TreeRepresentation, root=None) -> RootedTree:
    if root is None:
        root = rep.root if rep.root is not None else 1
    return RootedTree(rep.m, rep.tree_edges, root)


# -- validation --------------------------------------------------------------


@dataclass
class RepresentationReport:
    valid: bool
    width: int
    length: float
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.valid


def _connected_within(nodes: set[int], adj) -> bool:
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(nodes)


def bag_length(g: Graph, bag: Iterable[int]):
    """Largest graph distance between two vertices of ``bag`` (INF across components)."""
    bag = sorted(bag)
    best = 0
    for i, u in enumerate(bag[:-1]):
        dist = bfs_distances(g, u)
        best = max(best, max(dist[v] for v in bag[i + 1:]))
        if best == INF:
            break
    return best


def validate_representation(g: Graph, rep: TreeRepresentation, compute_length=True) -> RepresentationReport:
    """Check the representation axioms and measure width and length.

    A malformed tree raises :class:`StructureError`; axiom failures (empty or
    disconnected models, uncovered edges) are listed in ``violations``.
    """
    tree = RootedTree(rep.m, rep.tree_edges, 1)
    for node, bag in enumerate(rep.bags, start=1):
        for v in bag:
            if not 1 <= v <= g.n:
                raise InputError(f"bag {node} holds vertex {v} outside 1..{g.n}")
    violations = []
    models = rep.models(g.n)
    for v in g.vertices():
        if not models[v]:
            violations.append(f"vertex {v} is in no bag")
        elif not _connected_within(models[v], tree.adj):
            violations.append(f"bags containing vertex {v} are not connected in the tree")
    for u, v in g.edges():
        if not models[u] & models[v]:
            violations.append(f"edge {u}-{v} is not covered by any bag")
    length = 0
    if compute_length:
        length = max((bag_length(g, b) for b in rep.bags), default=0)
    return RepresentationReport(not violations, rep.width, length, violations)


def is_chordal_representation(g: Graph, rep: TreeRepresentation) -> bool:
    """Valid representation in which models intersect exactly for adjacent vertices."""
    if not validate_representation(g, rep, compute_length=False).valid:
        return False
    models = rep.models(g.n)
    for u, v in combinations(g.vertices(), 2):
        if bool(models[u] & models[v]) != g.has_edge(u, v):
            return False
    return True


def normalize_representation(rep: TreeRepresentation) -> tuple[TreeRepresentation, dict[int, int]]:
    """Contract tree edges whose two bags are equal.

    Returns the new representation and the map old node -> new node.  The root
    follows its node.
    """
    parent = list(range(rep.m + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in rep.tree_edges:
        if rep.bag(a) == rep.bag(b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    reps = sorted({find(x) for x in range(1, rep.m + 1)})
    new_id = {old: i + 1 for i, old in enumerate(reps)}
    mapping = {x: new_id[find(x)] for x in range(1, rep.m + 1)}
    bags = tuple(rep.bag(old) for old in reps)
    edges = tuple(
        sorted({tuple(sorted((mapping[a], mapping[b]))) for a, b in rep.tree_edges if mapping[a] != mapping[b]})
    )
    root = mapping[rep.root] if rep.root is not None else None
    return TreeRepresentation(bags, edges, root), mapping


# -- rooted-tree machinery ---------------------------------------------------


def highest_nodes(rep: TreeRepresentation, vertices: Iterable[int], root=None) -> dict[int, int]:
    """For each vertex, the node of its model closest to the root."""
    tree = rooted_tree(rep, root)
    best: dict[int, int] = {}
    wanted = set(vertices)
    for node in tree.preorder:
        for v in rep.bag(node):
            if v in wanted and (v not in best or tree.depth[node] < tree.depth[best[v]]):
                best[v] = node
    missing = wanted - best.keys()
    if missing:
        raise StructureError(f"vertices {sorted(missing)} appear in no bag")
    return best


def lca_closure(tree: RootedTree, nodes: Iterable[int]) -> frozenset[int]:
    """All least common ancestors of pairs (possibly equal) of ``nodes``.

    Sorting by preorder and adding the LCA of each consecutive pair already
    yields a set closed under LCA.
    """
    ordered = sorted(set(nodes), key=tree.pre_index.__getitem__)
    out = set(ordered)
    for u, v in zip(ordered, ordered[1:]):
        out.add(tree.lca(u, v))
    return frozenset(out)


def closure_parent(tree: RootedTree, closure: frozenset[int], b: int) -> int:
    """First node of ``closure`` strictly above ``b``, or ``b`` itself at the top."""
    u = tree.parent[b] if b != tree.root else 0
    while u:
        if u in closure:
            return u
        u = tree.parent[u] if u != tree.root else 0
    return b


# -- guarding families -------------------------------------------------------


@dataclass
class GuardingFamily:
    """Family of vertex sets claimed to (r, p)-guard ``target``.

    ``nominal_size`` is the size the construction promises before duplicate
    members are merged (e.g. twice the LCA-closure for decompositions).
    """

    sets: tuple[frozenset, ...]
    r: int
    p: int
    target: tuple[int, ...]
    nominal_size: int | None = None

    def __len__(self):
        return len(self.sets)

    def max_member(self) -> int:
        return max((len(s) for s in self.sets), default=0)


def _dedupe(sets: Iterable[frozenset]) -> tuple[frozenset, ...]:
    seen, out = set(), []
    for s in sets:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return tuple(out)


def tw_guarding_family(g: Graph, rep: TreeRepresentation, a_set: Sequence[int], r: int, root=None) -> GuardingFamily:
    """Guarding family from a decomposition of width t: bags of the LCA-closure of
    the targets' highest nodes, plus each such bag joined with the next closure
    bag towards the root.  At most ``4|A|`` members of size at most ``2(t+1)``.
    """
    a = check_target(g, a_set, allow_empty=True)
    if root is not None:
        rep = rep.with_root(root)
    report = validate_representation(g, rep, compute_length=False)
    if not report.valid:
        raise StructureError("invalid tree representation: " + "; ".join(report.violations))
    t = report.width
    rep, _ = normalize_representation(rep)
    tree = rooted_tree(rep)
    if not a:
        return GuardingFamily((), r, 2 * (t + 1), a, 0)
    tops = highest_nodes(rep, a, tree.root)
    closure = lca_closure(tree, tops.values())
    sets = []
    for b in sorted(closure, key=tree.pre_index.__getitem__):
        sets.append(rep.bag(b))
        sets.append(rep.bag(b) | rep.bag(closure_parent(tree, closure, b)))
    return GuardingFamily(_dedupe(sets), r, 2 * (t + 1), a, 2 * len(closure))


# -- chordal graphs ----------------------------------------------------------


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order (ties to the smallest id)."""
    weight = [0] * (g.n + 1)
    visited = [False] * (g.n + 1)
    order = []
    for _ in range(g.n):
        v = max((u for u in g.vertices() if not visited[u]), key=lambda u: (weight[u], -u))
        visited[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not visited[w]:
                weight[w] += 1
    return order


def perfect_elimination_ordering(g: Graph) -> list[int] | None:
    """A perfect elimination ordering, or None if the graph is not chordal."""
    peo = mcs_order(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        u = min(later, key=pos.__getitem__)
        for w in later:
            if w != u and not g.has_edge(u, w):
                return None
    return peo


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_ordering(g) is not None


def chordless_cycle(g: Graph) -> list[int] | None:
    """An induced cycle of length at least 4, or None if the graph is chordal."""
    for v in g.vertices():
        nbrs = g.adj[v]
        for x, y in combinations(nbrs, 2):
            if g.has_edge(x, y):
                continue
            blocked = (set(nbrs) - {x, y}) | {v}
            path = bfs_path(g, x, {y}, blocked=blocked)
            if path is not None:
                return [v] + path
    return None


def clique_tree(g: Graph) -> TreeRepresentation:
    """Chordal representation whose bags are the maximal cliques.

    Raises :class:`DomainError` carrying a chordless cycle for non-chordal input.
    """
    peo = perfect_elimination_ordering(g)
    if peo is None:
        cycle = chordless_cycle(g)
        raise DomainError(f"graph is not chordal; chordless cycle {cycle}", witness=cycle)
    if g.n == 0:
        return TreeRepresentation((frozenset(),), ())
    pos = {v: i for i, v in enumerate(peo)}
    candidates = {frozenset([v, *(w for w in g.adj[v] if pos[w] > pos[v])]) for v in peo}
    by_size = sorted(candidates, key=lambda c: (-len(c), sorted(c)))
    cliques: list[frozenset] = []
    for c in by_size:
        if not any(c < d for d in cliques):
            cliques.append(c)
    cliques.sort(key=sorted)
    # maximum-weight spanning tree of the clique intersection graph
    pairs = sorted(
        ((len(cliques[i] & cliques[j]), i, j) for i, j in combinations(range(len(cliques)), 2)),
        key=lambda e: (-e[0], e[1], e[2]),
    )
    comp = list(range(len(cliques)))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    edges = []
    for _, i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            comp[rj] = ri
            edges.append((i + 1, j + 1))
    return TreeRepresentation(tuple(cliques), tuple(edges), 1)


@dataclass
class CasePart:
    """One part of the chordal three-case split.

    kind 1: vertices of the bag at ``anchors[0]`` (a closure node);
    kind 2: vertices of components hanging off the single closure node ``anchors[0]``;
    kind 3: vertices whose model lies inside a component between ``anchors``;
    ``path`` then lists the tree nodes linking the two attachment points.
    """

    kind: int
    vertices: frozenset
    anchors: tuple[int, ...]
    components: tuple[tuple[int, ...], ...] = ()
    path: tuple[int, ...] = ()


@dataclass
class CasePartition:
    parts: list[CasePart]
    closure: frozenset
    root: int

    def of_kind(self, kind: int) -> list[CasePart]:
        return [p for p in self.parts if p.kind == kind]


def chordal_case_partition(g: Graph, rep: TreeRepresentation, a_set: Sequence[int], root=None) -> CasePartition:
    """Split V(G) by position relative to the LCA-closure of the targets' top nodes."""
    a = check_target(g, a_set)
    report = validate_representation(g, rep)
    if not report.valid:
        raise StructureError("invalid tree representation: " + "; ".join(report.violations))
    if report.length > 1:
        raise DomainError(f"representation has length {report.length}; a chordal representation is required")
    tree = rooted_tree(rep, root)
    closure = lca_closure(tree, highest_nodes(rep, a, tree.root).values())
    parts: list[CasePart] = []
    assigned: set[int] = set()
    for t in sorted(closure, key=tree.pre_index.__getitem__):
        fresh = rep.bag(t) - assigned
        assigned |= fresh
        if fresh:
            parts.append(CasePart(1, frozenset(fresh), (t,)))
    hanging: dict[int, list[list[int]]] = {}
    for comp, nbrs in tree.components_without(closure):
        if len(nbrs) == 1:
            hanging.setdefault(next(iter(nbrs)), []).append(comp)
        elif len(nbrs) == 2:
            t1, t2 = sorted(nbrs, key=tree.pre_index.__getitem__)
            inside = set(comp)
            ends = [next(w for w in tree.adj[t] if w in inside) for t in (t1, t2)]
            verts = set().union(*(rep.bag(c) for c in comp)) - assigned
            assigned |= verts
            parts.append(CasePart(3, frozenset(verts), (t1, t2), (tuple(comp),), tuple(tree.path(*ends))))
        else:
            raise StructureError(f"tree component with {len(nbrs)} closure neighbours")
    for t in sorted(hanging, key=tree.pre_index.__getitem__):
        comps = hanging[t]
        verts = set().union(*(rep.bag(c) for comp in comps for c in comp)) - assigned
        assigned |= verts
        parts.append(CasePart(2, frozenset(verts), (t,), tuple(tuple(c) for c in comps)))
    parts.sort(key=lambda p: (p.kind, [tree.pre_index[x] for x in p.anchors]))
    return CasePartition(parts, closure, tree.root)


# -- separator lemma ---------------------------------------------------------


@dataclass
class SeparatorCheck:
    profile_count: int
    bound: int
    ok: bool


def separator_profile_bound_check(g, x_set, s1, s2, a_set, r, ell) -> SeparatorCheck:
    """Count distinct r-profiles (all-INF included) of ``x_set`` and compare with
    ``(r+2)^2 (ell+1)^|A|``, or ``(r+2) (ell+1)^|A|`` when ``s2`` is None or equal
    to ``s1``.

    Preconditions are checked and raise :class:`PreconditionError` with a
    witness: every path from X to the rest of the graph meets ``s1 | s2``,
    target vertices inside X lie in the separator, and each separator set has
    all pairwise distances at most ``ell``.
    """
    a = check_target(g, a_set, allow_empty=True)
    x = {g.check_vertex(v) for v in x_set}
    s1 = {g.check_vertex(v) for v in s1}
    s2 = s1 if s2 is None else {g.check_vertex(v) for v in s2}
    single = s1 == s2
    sep = s1 | s2
    for s in (s1,) if single else (s1, s2):
        for u, v in combinations(sorted(s), 2):
            d = bfs_distances(g, u)[v]
            if d > ell:
                raise PreconditionError(f"separator vertices {u},{v} at distance {d} > {ell}", witness=(u, v))
    stray = [v for v in a if v in x and v not in sep]
    if stray:
        raise PreconditionError(f"target vertices {stray} lie in X but not in the separator", witness=stray)
    outside = set(g.vertices()) - x
    for v in sorted(x - sep):
        path = bfs_path(g, v, outside, blocked=sep)
        if path is not None:
            raise PreconditionError(f"path {path} leaves X without meeting the separator", witness=path)
    rows = profile_rows(g, a, r)
    count = len({tuple(row[v] for row in rows) for v in x})
    power = (ell + 1) ** len(a)
    bound = (r + 2) * power if single else (r + 2) ** 2 * power
    return SeparatorCheck(count, bound, count <= bound)
