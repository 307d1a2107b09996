"""Vertex-count check: a connected graph is bounded by its diameter and metric dimension."""

from __future__ import annotations

from dataclasses import dataclass

from ..graphcore import DEFAULT_MD_BUDGET, Graph, diameter, is_connected, metric_dimension
from ..errors import DomainError
from .bounds import BoundQuery, bound_value


@dataclass
class CorollaryReport:
    n: int
    diam: int
    md: int
    bound: int
    ok: bool


def corollary_check(g: Graph, class_tag: str, params: dict | None = None, md_budget: int = DEFAULT_MD_BUDGET) -> CorollaryReport:
    """``n <= bound(class, r=diam, k=md)``.

    With a resolving set as target and r equal to the diameter every vertex
    has its own profile and none is all-INF, so the profile bound caps n
    directly.  The single-vertex graph is the exception: its resolving set is
    empty and its one (empty) profile is the excluded one, so one is added
    there.
    """
    if not is_connected(g):
        raise DomainError("the vertex-count check needs a connected graph")
    md, _ = metric_dimension(g, md_budget)
    diam = int(diameter(g))
    bound = bound_value(BoundQuery(class_tag, {**(params or {}), "r": diam, "k": md}))
    limit = bound + 1 if md == 0 else bound
    return CorollaryReport(g.n, diam, md, bound, g.n <= limit)
