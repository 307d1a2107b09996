"""Guarding-family verification, a path-enumeration oracle and the counting inequality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import InputError
from ..graphcore import INF, Graph, bfs_distances, bfs_path, check_target, profile_complexity
from ..treerep import GuardingFamily


@dataclass
class GuardingReport:
    ok: bool
    counterexample: tuple | None = None  # (vertex, target vertex, path)
    cap_ok: bool = True
    oversized: list = field(default_factory=list)  # indices of members larger than p

    def __bool__(self):
        return self.ok


def _guards(g: Graph, v: int, targets: set[int], s: frozenset, r: int) -> bool:
    if v in s:
        return True
    dist = bfs_distances(g, v, radius=r, blocked=s)
    return all(dist[a] == INF for a in targets - s)


def guarded_vertices(g: Graph, a_set: Sequence[int], r: int, sets: Sequence[frozenset]) -> list[bool]:
    """Per vertex (index 0 unused): is it guarded by some member, by deletion?"""
    targets = set(a_set)
    out = [True] * (g.n + 1)
    for v in g.vertices():
        if bfs_path(g, v, targets, radius=r) is not None:
            out[v] = any(_guards(g, v, targets, s, r) for s in sets)
    return out


def verify_guarding(g: Graph, a_set: Sequence[int], r: int, fam: GuardingFamily) -> GuardingReport:
    """Check that every vertex is guarded by some member of ``fam``.

    A member S guards v when v is in S or no vertex of A outside S is within
    distance r of v in G - S.  A vertex with no path of length at most r to A
    is guarded vacuously.  On failure the counterexample is a shortest
    uncovered path for the member whose uncovered path is longest.
    """
    a = check_target(g, a_set, allow_empty=True)
    targets = set(a)
    oversized = [i for i, s in enumerate(fam.sets) if len(s) > fam.p]
    for s in fam.sets:
        for v in s:
            g.check_vertex(v)
    report = GuardingReport(True, cap_ok=not oversized, oversized=oversized)
    if not targets:
        return report
    for v in g.vertices():
        if bfs_path(g, v, targets, radius=r) is None:
            continue
        if any(_guards(g, v, targets, s, r) for s in fam.sets):
            continue
        best = None
        for s in fam.sets or (frozenset(),):
            path = bfs_path(g, v, targets - s, radius=r, blocked=s)
            if best is None or len(path) > len(best):
                best = path
        report.ok = False
        report.counterexample = (v, best[-1], tuple(best))
        return report
    return report


# -- exhaustive oracles ------------------------------------------------------


def simple_paths(g: Graph, v: int, max_len: int):
    """Every simple path starting at ``v`` with at most ``max_len`` edges."""
    path = [v]
    on_path = {v}

    def extend():
        yield tuple(path)
        if len(path) > max_len:
            return
        for w in g.adj[path[-1]]:
            if w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from extend()
                path.pop()
                on_path.remove(w)

    yield from extend()


def guarded_by_paths(g: Graph, a_set: Sequence[int], r: int, sets: Sequence[frozenset]) -> list[bool]:
    """Per vertex: does some member meet every path of length <= r from it to A?"""
    targets = set(a_set)
    out = [True] * (g.n + 1)
    for v in g.vertices():
        paths = [p for p in simple_paths(g, v, r) if p[-1] in targets]
        if paths:
            out[v] = any(all(s.intersection(p) for p in paths) for s in sets)
    return out


def wreach_by_paths(g: Graph, order: Sequence[int], v: int, r: int) -> set[int]:
    pos = {x: i for i, x in enumerate(order)}
    out = set()
    for p in simple_paths(g, v, r):
        low = min(p, key=pos.__getitem__)
        if low == p[-1]:
            out.add(low)
    return out


def sreach_by_paths(g: Graph, order: Sequence[int], v: int, r: int) -> set[int]:
    pos = {x: i for i, x in enumerate(order)}
    out = set()
    for p in simple_paths(g, v, r):
        if pos[p[-1]] <= pos[v] and all(pos[x] > pos[v] for x in p[1:-1]):
            out.add(p[-1])
    return out


# -- counting inequality -----------------------------------------------------


@dataclass
class InequalityCheck:
    pc_measured: int
    rhs: int
    ok: bool
    guarding_ok: bool


def inner_bound(kind: str, r: int, p: int, t: int | None = None) -> int:
    """Profile count cap for a target of size p: universal ``(r+2)^p`` or
    ``(r+1)^(t-1) p^(t-1)`` for graphs without a K_t minor."""
    if kind == "universal":
        return (r + 2) ** p
    if kind == "ktminor":
        if t is None or t < 1:
            raise InputError("the ktminor inner bound needs t >= 1")
        return (r + 1) ** (t - 1) * p ** (t - 1)
    raise InputError(f"unknown inner bound {kind!r}")


def guarding_inequality_check(g, a_set, r, fam: GuardingFamily, kind="universal", t=None) -> InequalityCheck:
    a = check_target(g, a_set, allow_empty=True)
    guard = verify_guarding(g, a, r, fam)
    pc = profile_complexity(g, a, r).count if a else 0
    rhs = inner_bound(kind, r, fam.p, t) * len(fam.sets)
    ok = guard.ok and pc <= rhs
    return InequalityCheck(pc, rhs, ok, guard.ok)
