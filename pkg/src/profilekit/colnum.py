"""Weak/strong reachability, generalized colouring numbers and ball geometry."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from .graphcore import Graph, check_target
from .treerep import GuardingFamily, _dedupe


class Ordering:
    """Linear order of ``1..n``; ``order[0]`` is the smallest vertex."""

    __slots__ = ("order", "position")

    def __init__(self, order: Iterable[int]):
        order = tuple(int(v) for v in order)
        n = len(order)
        if sorted(order) != list(range(1, n + 1)):
            raise InputError(f"ordering is not a permutation of 1..{n}")
        self.order = order
        self.position = [0] * (n + 1)
        for i, v in enumerate(order):
            self.position[v] = i

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(range(1, n + 1))

    def __len__(self):
        return len(self.order)

    def __eq__(self, other):
        return isinstance(other, Ordering) and self.order == other.order

    def __repr__(self):
        return f"Ordering({list(self.order)})"


def _check_ordering(g: Graph, ordering: Ordering):
    if len(ordering) != g.n:
        raise InputError(f"ordering covers {len(ordering)} vertices, graph has {g.n}")


def _wreach_from(g: Graph, pos, u: int, r: int) -> list[int]:
    """Vertices reached from ``u`` within ``r`` steps using only vertices above ``u``."""
    depth = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if depth[x] == r:
            continue
        for w in g.adj[x]:
            if w not in depth and pos[w] > pos[u]:
                depth[w] = depth[x] + 1
                queue.append(w)
    return list(depth)


def wreach_sets(g: Graph, ordering: Ordering, r: int) -> list[set[int]]:
    """``out[v]`` = WReach_r[G, L, v] for every vertex (index 0 unused)."""
    _check_ordering(g, ordering)
    out = [set() for _ in range(g.n + 1)]
    for u in g.vertices():
        for w in _wreach_from(g, ordering.position, u, r):
            out[w].add(u)
    return out


def wreach(g: Graph, ordering: Ordering, v: int, r: int) -> set[int]:
    """Vertices ``u`` with a path to ``v`` of length <= r whose minimum is ``u``."""
    v = g.check_vertex(v)
    _check_ordering(g, ordering)
    pos = ordering.position
    return {u for u in ordering.order[: pos[v] + 1] if v in _wreach_from(g, pos, u, r)}


def sreach(g: Graph, ordering: Ordering, v: int, r: int) -> set[int]:
    """Weakly reachable ``u`` whose witnessing path has every other vertex above ``v``."""
    v = g.check_vertex(v)
    _check_ordering(g, ordering)
    pos = ordering.position
    found = {v}
    depth = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if depth[x] == r:
            continue
        for w in g.adj[x]:
            if pos[w] < pos[v]:
                found.add(w)
            elif w not in depth:
                depth[w] = depth[x] + 1
                queue.append(w)
    return found


def sreach_sets(g: Graph, ordering: Ordering, r: int) -> list[set[int]]:
    return [set()] + [sreach(g, ordering, v, r) for v in g.vertices()]


def wcol_of(g: Graph, ordering: Ordering, r: int) -> int:
    return max((len(s) for s in wreach_sets(g, ordering, r)), default=0)


def scol_of(g: Graph, ordering: Ordering, r: int) -> int:
    return max((len(s) for s in sreach_sets(g, ordering, r)), default=0)


def colnum_guarding_family(g: Graph, ordering: Ordering, a_set: Sequence[int], r: int) -> GuardingFamily:
    """Members ``SReach_2r[b]`` for every ``b`` weakly r-reachable from a target.

    Size at most ``wcol_r(G, L) |A|``; members have at most ``scol_2r(G, L)``
    vertices, which is recorded as the family's cap ``p``.
    """
    a = check_target(g, a_set, allow_empty=True)
    weak = wreach_sets(g, ordering, r)
    base = sorted(set().union(*(weak[x] for x in a)) if a else set(), key=ordering.position.__getitem__)
    strong = sreach_sets(g, ordering, 2 * r)
    cap = max((len(s) for s in strong), default=0)
    sets = _dedupe(frozenset(strong[b]) for b in base)
    return GuardingFamily(sets, r, cap, a, len(base))


def degeneracy_ordering(g: Graph) -> Ordering:
    """Reverse of the min-degree removal order (ties to the smallest id)."""
    degree = [len(g.adj[v]) for v in range(g.n + 1)]
    alive = set(g.vertices())
    removed = []
    while alive:
        v = min(alive, key=lambda u: (degree[u], u))
        alive.remove(v)
        removed.append(v)
        for w in g.adj[v]:
            if w in alive:
                degree[w] -= 1
    return Ordering(reversed(removed))


# -- geometry ----------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    id: int
    center: tuple[Fraction, ...]
    radius: Fraction


class BallSet:
    """Closed balls in R^d with exact rational data; vertex ``i`` is ``balls[i - 1]``."""

    def __init__(self, balls: Iterable[Ball]):
        balls = tuple(balls)
        dims = {len(b.center) for b in balls}
        if len(dims) > 1:
            raise InputError(f"balls of mixed dimensions {sorted(dims)}")
        ids = [b.id for b in balls]
        if len(set(ids)) != len(ids):
            raise InputError("ball ids are not distinct")
        for b in balls:
            if b.radius <= 0:
                raise InputError(f"ball {b.id} has nonpositive radius {b.radius}")
        self.balls = balls
        self.d = dims.pop() if dims else 0

    @classmethod
    def from_tuples(cls, rows: Iterable[tuple]) -> "BallSet":
        """Rows ``(id, c1, ..., cd, radius)`` with numeric or string literals."""
        return cls(
            Ball(int(row[0]), tuple(Fraction(c) for c in row[1:-1]), Fraction(row[-1])) for row in rows
        )

    @classmethod
    def from_intervals(cls, intervals: Iterable[tuple]) -> "BallSet":
        """Closed intervals ``[lo, hi]`` as one-dimensional balls with ids ``1..n``."""
        out = []
        for i, (lo, hi) in enumerate(intervals, start=1):
            lo, hi = Fraction(lo), Fraction(hi)
            out.append(Ball(i, ((lo + hi) / 2,), (hi - lo) / 2))
        return cls(out)

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        if self.d != 1:
            raise InputError("intervals are only defined for d = 1")
        return [(b.center[0] - b.radius, b.center[0] + b.radius) for b in self.balls]

    def __len__(self):
        return len(self.balls)

    def __eq__(self, other):
        return isinstance(other, BallSet) and self.balls == other.balls


def _sq_dist(p, q) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


def ball_intersection_graph(bs: BallSet) -> Graph:
    """Edge iff two closed balls meet: ``|c_u - c_v| <= r_u + r_v``."""
    edges = []
    balls = bs.balls
    for i in range(len(balls)):
        for j in range(i + 1, len(balls)):
            if _sq_dist(balls[i].center, balls[j].center) <= (balls[i].radius + balls[j].radius) ** 2:
                edges.append((i + 1, j + 1))
    return Graph(len(balls), edges)


def interval_graph(intervals: Sequence[tuple], closed=True) -> Graph:
    """Intersection graph of intervals, closed ``[lo, hi]`` or open ``]lo, hi[``."""
    edges = []
    for i in range(len(intervals)):
        lo1, hi1 = intervals[i]
        for j in range(i + 1, len(intervals)):
            lo2, hi2 = intervals[j]
            meet = (lo1 <= hi2 and lo2 <= hi1) if closed else (lo1 < hi2 and lo2 < hi1)
            if meet:
                edges.append((i + 1, j + 1))
    return Graph(len(intervals), edges)


@dataclass(frozen=True)
class IntervalModel:
    """Interval representation; vertex ``i`` is ``intervals[i - 1]``."""

    intervals: tuple
    closed: bool = True

    def __post_init__(self):
        ivs = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.intervals)
        for i, (lo, hi) in enumerate(ivs, start=1):
            if hi < lo or (not self.closed and hi == lo):
                raise InputError(f"interval {i} is empty: ({lo}, {hi})")
        object.__setattr__(self, "intervals", ivs)

    def __len__(self):
        return len(self.intervals)

    def graph(self) -> Graph:
        return interval_graph(self.intervals, self.closed)

    def as_closed(self) -> "IntervalModel":
        """Closed model of the same graph: shrink each open interval by a third
        of the smallest gap between distinct endpoints."""
        if self.closed:
            return self
        values = sorted({x for iv in self.intervals for x in iv})
        gaps = [b - a for a, b in zip(values, values[1:])]
        eps = (min(gaps) if gaps else Fraction(1)) / 3
        return IntervalModel(tuple((lo + eps, hi - eps) for lo, hi in self.intervals), closed=True)


def diameter_ordering(bs: BallSet) -> Ordering:
    """Larger balls first; equal radii ordered by id."""
    idx = sorted(range(len(bs.balls)), key=lambda i: (-bs.balls[i].radius, bs.balls[i].id))
    return Ordering(i + 1 for i in idx)


@dataclass
class ThinnessResult:
    value: int
    exact: bool


def thinness(bs: BallSet) -> ThinnessResult:
    """Largest number of open ball interiors sharing a point.

    Exact for d = 1 (endpoint sweep).  For d >= 2 the value is the maximum
    over centres and pairwise centre midpoints, a certified lower bound.
    """
    if not bs.balls:
        return ThinnessResult(0, True)
    if bs.d == 1:
        events = []
        for lo, hi in bs.intervals():
            events.append((lo, 1))
            events.append((hi, 0))
        # closings sort before openings at equal coordinates: interiors are open
        events.sort()
        best = cur = 0
        for _, kind in events:
            cur += 1 if kind else -1
            best = max(best, cur)
        return ThinnessResult(best, True)
    centers = [b.center for b in bs.balls]
    points = list(centers)
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            points.append(tuple((a + b) / 2 for a, b in zip(centers[i], centers[j])))
    best = max(sum(1 for b in bs.balls if _sq_dist(p, b.center) < b.radius**2) for p in points)
    return ThinnessResult(best, False)
