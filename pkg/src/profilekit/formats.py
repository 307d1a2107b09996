"""Text formats: PACE-style graphs and decompositions, orderings, ball CSV, guarding families."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .colnum import Ball, BallSet, Ordering
from .errors import InputError, ParseError, StructureError
from .graphcore import Graph
from .treerep import GuardingFamily, RootedTree, TreeRepresentation, validate_representation


def _lines(text: str):
    """(line number, tokens) for every non-blank, non-comment line."""
    for no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        yield no, tokens


def _ints(tokens, no):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None


# -- graphs ------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    no, head = lines[0]
    if len(head) != 4 or head[:2] != ["p", "gr"]:
        raise ParseError("expected header 'p gr <n> <m>'", no)
    n, m = _ints(head[2:], no)
    edges = []
    for no, tokens in lines[1:]:
        if len(tokens) != 2:
            raise ParseError("expected an edge 'u v'", no)
        u, v = _ints(tokens, no)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"edge {u} {v} has an endpoint outside 1..{n}", no)
        edges.append((u, v))
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def emit_graph(g: Graph) -> str:
    out = [f"p gr {g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


# -- decompositions ----------------------------------------------------------


def parse_td(text: str, graph: Graph | None = None) -> TreeRepresentation:
    """Decomposition file; validated against ``graph`` when one is given."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty decomposition file")
    no, head = lines[0]
    if len(head) != 5 or head[:2] != ["s", "td"]:
        raise ParseError("expected header 's td <bags> <maxbagsize> <n>'", no)
    nbags, maxbag, n = _ints(head[2:], no)
    bags: dict[int, list[int]] = {}
    edges = []
    for no, tokens in lines[1:]:
        if tokens[0] == "b":
            vals = _ints(tokens[1:], no)
            if not vals:
                raise ParseError("bag line without an id", no)
            bid, verts = vals[0], vals[1:]
            if not 1 <= bid <= nbags:
                raise ParseError(f"bag id {bid} outside 1..{nbags}", no)
            if bid in bags:
                raise ParseError(f"bag {bid} defined twice", no)
            bad = [v for v in verts if not 1 <= v <= n]
            if bad:
                raise ParseError(f"bag {bid} holds vertices {bad} outside 1..{n}", no)
            if len(verts) > maxbag:
                raise ParseError(f"bag {bid} has {len(verts)} vertices, header allows {maxbag}", no)
            bags[bid] = verts
        else:
            if len(tokens) != 2:
                raise ParseError("expected a tree edge 'i j' or a bag line", no)
            i, j = _ints(tokens, no)
            if not (1 <= i <= nbags and 1 <= j <= nbags):
                raise ParseError(f"tree edge {i} {j} outside 1..{nbags}", no)
            edges.append((i, j))
    missing = sorted(set(range(1, nbags + 1)) - bags.keys())
    if missing:
        raise ParseError(f"bags {missing} are never defined")
    rep = TreeRepresentation.build((bags[i] for i in range(1, nbags + 1)), edges)
    try:
        RootedTree(rep.m, rep.tree_edges)
    except StructureError as exc:
        raise ParseError(str(exc)) from None
    if graph is not None:
        report = validate_representation(graph, rep, compute_length=False)
        if not report.valid:
            raise ParseError("invalid decomposition: " + "; ".join(report.violations))
    return rep


def emit_td(rep: TreeRepresentation, n: int) -> str:
    out = [f"s td {rep.m} {max((len(b) for b in rep.bags), default=0)} {n}"]
    for i, bag in enumerate(rep.bags, start=1):
        out.append(" ".join(["b", str(i), *map(str, sorted(bag))]))
    out.extend(f"{a} {b}" for a, b in rep.tree_edges)
    return "\n".join(out) + "\n"


# -- orderings ---------------------------------------------------------------


def parse_ordering(text: str, n: int | None = None) -> Ordering:
    values = []
    for no, tokens in _lines(text):
        values.extend(_ints(tokens, no))
    if n is not None and len(values) != n:
        raise ParseError(f"ordering lists {len(values)} vertices, expected {n}")
    try:
        return Ordering(values)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def emit_ordering(order: Ordering) -> str:
    return " ".join(map(str, order.order)) + "\n"


# -- balls -------------------------------------------------------------------


def parse_balls(text: str) -> BallSet:
    """CSV rows ``id,c1,...,cd,radius``; a header row starting with ``id`` is skipped."""
    balls = []
    for no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        row = [c.strip() for c in row]
        if not row or not any(row) or row[0].startswith("#"):
            continue
        if row[0] == "id":
            continue
        if len(row) < 3:
            raise ParseError("expected 'id,c1,...,cd,radius'", no)
        try:
            balls.append(Ball(int(row[0]), tuple(Fraction(c) for c in row[1:-1]), Fraction(row[-1])))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad numeric literal in {','.join(row)!r}", no) from None
    try:
        return BallSet(balls)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def emit_balls(bs: BallSet) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", *(f"c{i}" for i in range(1, bs.d + 1)), "radius"])
    for b in bs.balls:
        w.writerow([b.id, *map(str, b.center), str(b.radius)])
    return buf.getvalue()


# -- guarding families -------------------------------------------------------


def parse_family(text: str) -> GuardingFamily:
    """Header ``f <r> <p> <a1> <a2> ...`` then one member per line ``s <v1> <v2> ...``."""
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty family file")
    no, head = lines[0]
    if len(head) < 3 or head[0] != "f":
        raise ParseError("expected header 'f <r> <p> <targets...>'", no)
    vals = _ints(head[1:], no)
    r, p, target = vals[0], vals[1], tuple(vals[2:])
    sets = []
    for no, tokens in lines[1:]:
        if tokens[0] != "s":
            raise ParseError("expected a member line 's <vertices...>'", no)
        sets.append(frozenset(_ints(tokens[1:], no)))
    return GuardingFamily(tuple(sets), r, p, target)


def emit_family(fam: GuardingFamily) -> str:
    out = [" ".join(["f", str(fam.r), str(fam.p), *map(str, fam.target)])]
    out.extend(" ".join(["s", *map(str, sorted(s))]) for s in fam.sets)
    return "\n".join(out) + "\n"
