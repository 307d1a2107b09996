"""BFS levels of an outerplanar graph and the monotonicity of distances along them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import InputError
from ..graphcore import INF, Graph, bfs_distances, check_target


@dataclass
class LevelReport:
    levels: list[list[int]]  # levels[i] = L_i sorted by circular position; levels[0] = [a1]
    memberships: list[list[int]]  # memberships[i] = A_i
    violations: list[tuple] = field(default_factory=list)  # (i, a, y, u, v)
    membership_total: int = 0
    membership_cap: int = 0

    @property
    def monotone(self) -> bool:
        return not self.violations

    @property
    def ok(self) -> bool:
        return self.monotone and self.membership_total <= self.membership_cap


def _rising(seq) -> int | None:
    """Index of the first descent in ``seq`` or None if it never decreases."""
    for i in range(1, len(seq)):
        if seq[i] < seq[i - 1]:
            return i
    return None


def outerplanar_levels(g: Graph, circ: Sequence[int], a1: int, a_set: Sequence[int], r: int) -> LevelReport:
    """Levels ``L_i`` (distance exactly i from ``a1``), the targets ``A_i`` whose
    r-ball meets ``L_i``, and a check that within each level the distance to
    such a target never decreases when moving away from a closest vertex in
    the circular order cut at ``a1``.  Every closest vertex is tried.
    """
    a = check_target(g, a_set)
    a1 = g.check_vertex(a1)
    if a1 not in a:
        raise InputError(f"{a1} is not a target vertex")
    if sorted(circ) != list(g.vertices()):
        raise InputError("circular order does not cover the vertex set exactly once")
    start = list(circ).index(a1)
    cut = list(circ[start:]) + list(circ[:start])

    from_a1 = bfs_distances(g, a1)
    depth = max(d for d in from_a1[1:] if d != INF)
    levels = [[] for _ in range(depth + 1)]
    for v in cut:
        if from_a1[v] != INF:
            levels[from_a1[v]].append(v)

    others = [x for x in a if x != a1]
    dist = {x: bfs_distances(g, x) for x in others}
    memberships = [[] for _ in range(depth + 1)]
    violations = []
    for i in range(1, depth + 1):
        level = levels[i]
        for x in others:
            dx = dist[x]
            if min(dx[u] for u in level) > r:
                continue
            memberships[i].append(x)
            best = min(dx[u] for u in level)
            for y_idx, y in enumerate(level):
                if dx[y] != best:
                    continue
                after = level[y_idx + 1 :]
                before = level[:y_idx][::-1]
                for side in (after, before):
                    bad = _rising([dx[u] for u in side])
                    if bad is not None:
                        violations.append((i, x, y, side[bad - 1], side[bad]))
    total = sum(len(m) for m in memberships)
    return LevelReport(levels, memberships, violations, total, (2 * r + 1) * len(a))
