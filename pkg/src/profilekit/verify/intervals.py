"""Endpoint-sweep signatures for interval graphs.

For a target interval ``[x1, y1]`` the vertices within distance j form an
interval ``[x_j, y_j]``, where ``x_{j+1}`` is the smallest left endpoint among
intervals ending at or after ``x_j`` (and symmetrically for ``y``).  A vertex
``[l, h]`` is then within distance j iff ``h >= x_j`` and ``l <= y_j``, so the
cells of the partition induced by all sweep points that contain ``l`` and
``h`` determine the whole profile.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence

from ..colnum import IntervalModel
from ..errors import InputError
from ..graphcore import Graph, check_target


@dataclass
class Sweep:
    target: int
    left: list  # x_1 > x_2 > ... including the extremal point
    right: list  # y_1 < y_2 < ...


@dataclass
class SignatureResult:
    signatures: list  # index v -> (left cell, right cell, target index or -1); index 0 unused
    points: list  # sorted sweep points
    sweeps: list[Sweep]


def _sweep(start, r, step, extremal):
    pts = [start]
    for _ in range(1, r):
        nxt = step(pts[-1])
        if nxt == pts[-1]:
            break
        pts.append(nxt)
    if extremal != pts[-1]:
        pts.append(extremal)
    return pts


def cell_index(points: Sequence, x) -> int:
    """``2i`` when ``x == points[i]``, ``2i + 1`` when strictly between points i and i+1
    (``-1`` before the first point)."""
    i = bisect_left(points, x)
    if i < len(points) and points[i] == x:
        return 2 * i
    return 2 * i - 1


def interval_signatures(model: IntervalModel, a_set: Sequence[int], r: int, graph: Graph | None = None) -> SignatureResult:
    if graph is not None and model.graph() != graph:
        raise InputError("interval certificate does not reproduce the graph")
    g = graph if graph is not None else model.graph()
    a = check_target(g, a_set)
    if isinstance(r, bool) or not isinstance(r, int) or r < 0:
        raise InputError(f"radius must be a nonnegative integer, got {r!r}")
    closed = model.as_closed().intervals
    min_low = min(lo for lo, _ in closed)
    max_high = max(hi for _, hi in closed)

    def left_step(x):
        return min(lo for lo, hi in closed if hi >= x)

    def right_step(y):
        return max(hi for lo, hi in closed if lo <= y)

    sweeps = []
    for t in a:
        lo, hi = closed[t - 1]
        sweeps.append(
            Sweep(t, _sweep(lo, r, left_step, min_low), _sweep(hi, r, right_step, max_high))
        )
    points = sorted({p for s in sweeps for p in s.left + s.right})
    index = {t: i for i, t in enumerate(a)}
    sigs: list = [None]
    for v, (lo, hi) in enumerate(closed, start=1):
        sigs.append((cell_index(points, lo), cell_index(points, hi), index.get(v, -1)))
    return SignatureResult(sigs, points, sweeps)


def points_in(interval, points) -> int:
    lo, hi = interval
    return sum(1 for p in points if lo <= p <= hi)
