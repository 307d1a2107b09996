"""Seeded experiment suites writing one CSV row per (instance, check).

Every row is a pure function of the suite, the base seed and the instance
index, so the CSV is identical whatever the number of worker processes.
Rows whose ``params`` carry ``gating=0`` are informational and never make a
run fail.
"""

from __future__ import annotations

import csv
import io
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..colnum import Ordering, degeneracy_ordering, colnum_guarding_family, sreach, wcol_of, scol_of, wreach
from ..constructions import (
    gen_chordal_lb,
    gen_interval_lb,
    gen_random_interval,
    gen_random_mop,
    gen_random_partial_ktree,
    gen_split_gadget,
    gen_subcubic,
    gen_tl2_lb,
    subcubic_radius,
)
from ..errors import InputError, PreconditionError
from ..graphcore import (
    Graph,
    all_profiles,
    is_connected,
    neighbourhood_complexity,
    profile_complexity,
)
from ..treerep import (
    GuardingFamily,
    RootedTree,
    chordal_case_partition,
    clique_tree,
    lca_closure,
    separator_profile_bound_check,
    tw_guarding_family,
    validate_representation,
)
from .bounds import bound_value, chordal_bound, interval_bound
from .corollary import corollary_check
from .guarding import (
    guarded_by_paths,
    guarded_vertices,
    guarding_inequality_check,
    sreach_by_paths,
    verify_guarding,
    wreach_by_paths,
)
from .intervals import interval_signatures, points_in
from .outerplanar import outerplanar_levels

CSV_HEADER = ("suite", "instance", "seed", "params", "measured", "bound", "pass", "micros")


@dataclass
class Row:
    suite: str
    instance: int
    seed: int
    params: str
    measured: object
    bound: object
    passed: bool
    micros: int = 0
    gating: bool = True

    @property
    def check(self) -> str:
        return dict(kv.split("=", 1) for kv in self.params.split(";"))["check"]

    def cells(self, include_micros=True) -> list[str]:
        out = [self.suite, str(self.instance), str(self.seed), self.params, _fmt(self.measured), _fmt(self.bound), "1" if self.passed else "0"]
        if include_micros:
            out.append(str(self.micros))
        return out


def _fmt(x) -> str:
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


@dataclass
class ExperimentReport:
    suite: str
    seed: int
    rows: list[Row] = field(default_factory=list)

    @property
    def failures(self) -> list[Row]:
        return [r for r in self.rows if r.gating and not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def rows_for(self, check: str) -> list[Row]:
        return [r for r in self.rows if r.check == check]

    def csv_text(self, include_micros=True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER if include_micros else CSV_HEADER[:-1])
        for row in self.rows:
            w.writerow(row.cells(include_micros))
        return buf.getvalue()

    def write_csv(self, path):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.csv_text())


def instance_seed(seed: int, suite: str, index: int) -> int:
    return random.Random(f"{seed}:{suite}:{index}").getrandbits(32)


class _Rows:
    """Collects the rows of one instance."""

    def __init__(self, suite, index, seed, **params):
        self.suite, self.index, self.seed = suite, index, seed
        self.params = params
        self.rows: list[Row] = []

    def add(self, check, measured, bound, passed=None, gating=True):
        if passed is None:
            passed = measured <= bound
        items = {"check": check, **self.params}
        if not gating:
            items["gating"] = 0
        text = ";".join(f"{k}={v}" for k, v in items.items())
        self.rows.append(Row(self.suite, self.index, self.seed, text, measured, bound, bool(passed), gating=gating))

    def nc_pc(self, g, a, r):
        pc = profile_complexity(g, a, r).count
        nc = neighbourhood_complexity(g, a, r).count
        self.add("nc-pc", nc, pc + 1)
        return pc


def _fmt_set(a) -> str:
    return "/".join(str(x) for x in a)


# -- instance families shared by several suites ------------------------------


def treewidth_instance(seed: int, index: int):
    """Random partial t-tree with a target set and radius; every fifth has n <= 12."""
    s = instance_seed(seed, "treewidth-upper", index)
    rng = random.Random(s)
    t = (1, 2, 3)[index % 3]
    n = rng.randint(t + 2, 12) if index % 5 == 0 else rng.randint(t + 2, 50)
    keep = rng.choice((1.0, 0.8, 0.6))
    inst = gen_random_partial_ktree(n, t, keep, rng.getrandbits(32))
    a = tuple(rng.sample(range(1, n + 1), rng.randint(1, min(4, n))))
    r = rng.randint(0, 4)
    return s, inst, t, a, r


def outerplanar_instance(seed: int, index: int):
    s = instance_seed(seed, "outerplanar-upper", index)
    rng = random.Random(s)
    n = rng.randint(3, 12) if index % 5 == 0 else rng.randint(3, 40)
    inst = gen_random_mop(n, rng.getrandbits(32))
    a = tuple(rng.sample(range(1, n + 1), rng.randint(1, min(4, n))))
    r = rng.randint(0, 5)
    return s, inst, a, r


# -- suites ------------------------------------------------------------------


def _split_jobs(opts, seed):
    return [{"k": k, "r": r} for k in opts.get("ks", (1, 2, 3, 4)) for r in opts.get("rs", range(6))]


def _split_eval(suite, index, seed, job):
    k, r = job["k"], job["r"]
    inst = gen_split_gadget(k, r)
    out = _Rows(suite, index, seed, k=k, r=r)
    pc = out.nc_pc(inst.graph, inst.target, r)
    claimed = inst.predicted["pc_claimed"]
    out.add("pc-exact", pc, claimed, pc == claimed)
    # every non-target vertex is fixed by its distance to the clique and the set of nearest targets
    out.add("pc-closed-form", pc, r * (2**k - 1) + k, pc == r * (2**k - 1) + k, gating=False)
    return out.rows


def _subcubic_jobs(opts, seed):
    return [{"k": k} for k in opts.get("ks", (2, 3))]


def _subcubic_eval(suite, index, seed, job):
    k = job["k"]
    inst = gen_subcubic(k)
    r = subcubic_radius(k)
    out = _Rows(suite, index, seed, k=k, r=r)
    out.nc_pc(inst.graph, inst.target, r)
    nc = neighbourhood_complexity(inst.graph, inst.target, r).count
    out.add("nc-exact", nc, 2**k, nc == 2**k)
    out.add("max-degree", max(inst.graph.degree(v) for v in inst.graph.vertices()), 3)
    return out.rows


def _interval_lb_jobs(opts, seed):
    return [{"r": r, "k": k} for r, k in opts.get("cases", ((4, 2), (5, 4), (6, 4)))]


def _interval_lb_eval(suite, index, seed, job):
    r, k = job["r"], job["k"]
    inst = gen_interval_lb(r, k)
    out = _Rows(suite, index, seed, r=r, k=k)
    pc = out.nc_pc(inst.graph, inst.target, r)
    floor = inst.predicted["pc_floor"]
    out.add("pc-floor", pc, floor, pc >= floor)
    claimed = inst.predicted["pc_claimed"]
    out.add("pc-claimed", pc, claimed, pc >= claimed, gating=False)
    out.add("pc-vertex-count", pc, inst.graph.n, pc == inst.graph.n, gating=False)
    return out.rows


def _tl2_jobs(opts, seed):
    return [{"r": r, "k": k} for r, k in opts.get("cases", ((4, 4),))]


def _tl2_eval(suite, index, seed, job):
    r, k = job["r"], job["k"]
    inst = gen_tl2_lb(r, k)
    out = _Rows(suite, index, seed, r=r, k=k)
    pc = out.nc_pc(inst.graph, inst.target, r)
    floor = inst.predicted["pc_floor"]
    out.add("pc-floor", pc, floor, pc >= floor)
    rep = validate_representation(inst.graph, inst.certificate)
    out.add("cert-length", rep.length, 2, rep.valid and rep.length <= 2)
    return out.rows


def _count_jobs(default):
    def jobs(opts, seed):
        return [{} for _ in range(int(opts.get("count", default)))]

    return jobs


def _treewidth_eval(suite, index, seed, job):
    s, inst, t, a, r = treewidth_instance(seed, index)
    g = inst.graph
    out = _Rows(suite, index, s, n=g.n, t=t, A=_fmt_set(a), r=r)
    pc = out.nc_pc(g, a, r)
    rep = validate_representation(g, inst.certificate, compute_length=False)
    out.add("cert-width", rep.width, t, rep.valid and rep.width <= t)
    out.add("pc-upper", pc, bound_value("treewidth", t=t, r=r, k=len(a)))
    return out.rows


def _guarding_eval(suite, index, seed, job):
    s, inst, t, a, r = treewidth_instance(seed, index)
    g = inst.graph
    out = _Rows(suite, index, s, n=g.n, t=t, A=_fmt_set(a), r=r)
    out.nc_pc(g, a, r)
    width = inst.certificate.width
    fam = tw_guarding_family(g, inst.certificate, a, r)
    report = verify_guarding(g, a, r, fam)
    out.add("tw-verify", 0 if report.ok else 1, 0)
    out.add("tw-size", fam.nominal_size, 4 * len(a))
    out.add("tw-member", fam.max_member(), 2 * (width + 1))
    ineq = guarding_inequality_check(g, a, r, fam)
    out.add("tw-inequality", ineq.pc_measured, ineq.rhs, ineq.ok)

    order = degeneracy_ordering(g)
    cfam = colnum_guarding_family(g, order, a, r)
    creport = verify_guarding(g, a, r, cfam)
    out.add("colnum-verify", 0 if creport.ok else 1, 0)
    out.add("colnum-size", cfam.nominal_size, wcol_of(g, order, r) * len(a))
    out.add("colnum-member", cfam.max_member(), scol_of(g, order, 2 * r))
    return out.rows


def _oracle_eval(suite, index, seed, job):
    s = instance_seed(seed, suite, index)
    rng = random.Random(s)
    n = rng.randint(1, 9)
    p = rng.random()
    g = Graph(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])
    a = tuple(rng.sample(range(1, n + 1), rng.randint(1, min(3, n))))
    r = rng.randint(0, 3)
    sets = [frozenset(v for v in g.vertices() if rng.random() < 0.4) for _ in range(rng.randint(0, 3))]
    order = list(g.vertices())
    rng.shuffle(order)
    out = _Rows(suite, index, s, n=n, m=g.m, A=_fmt_set(a), r=r)
    out.nc_pc(g, a, r)

    by_deletion = guarded_vertices(g, a, r, sets)
    by_paths = guarded_by_paths(g, a, r, sets)
    out.add("guard-oracle", sum(x != y for x, y in zip(by_deletion[1:], by_paths[1:])), 0)

    fam = GuardingFamily(tuple(sets), r, n, a)
    out.add("guard-global", int(verify_guarding(g, a, r, fam).ok != all(by_paths[1:])), 0)

    ordering = Ordering(order)
    wrong_w = sum(wreach(g, ordering, v, r) != wreach_by_paths(g, order, v, r) for v in g.vertices())
    wrong_s = sum(sreach(g, ordering, v, r) != sreach_by_paths(g, order, v, r) for v in g.vertices())
    out.add("wreach-oracle", wrong_w, 0)
    out.add("sreach-oracle", wrong_s, 0)
    return out.rows


def _closure_by_pairs(tree: RootedTree, nodes) -> set[int]:
    out = set(nodes)
    while True:
        extra = {tree.lca(u, v) for u in out for v in out} - out
        if not extra:
            return out
        out |= extra


def _lca_eval(suite, index, seed, job):
    s = instance_seed(seed, suite, index)
    rng = random.Random(s)
    n = rng.randint(1, 200)
    edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = [(perm[u - 1], perm[v - 1]) for u, v in edges]
    tree = RootedTree(n, edges, rng.randint(1, n))
    m_set = rng.sample(range(1, n + 1), rng.randint(1, min(10, n)))
    closure = lca_closure(tree, m_set)
    out = _Rows(suite, index, s, n=n, M=len(m_set))
    out.add("closure-size", len(closure), 2 * len(m_set))
    out.add("closure-idempotent", int(lca_closure(tree, closure) != closure), 0)
    out.add("closure-oracle", int(_closure_by_pairs(tree, m_set) != closure), 0)
    worst = max((len(nb) for _, nb in tree.components_without(closure)), default=0)
    out.add("component-neighbours", worst, 2)
    return out.rows


def _outerplanar_eval(suite, index, seed, job):
    s, inst, a, r = outerplanar_instance(seed, index)
    g = inst.graph
    out = _Rows(suite, index, s, n=g.n, A=_fmt_set(a), r=r)
    pc = out.nc_pc(g, a, r)
    out.add("pc-upper", pc, bound_value("outerplanar", r=r, k=len(a)))
    levels = outerplanar_levels(g, inst.certificate, a[0], a, r)
    out.add("level-monotone", len(levels.violations), 0)
    out.add("level-memberships", levels.membership_total, levels.membership_cap)
    return out.rows


def _interval_upper_eval(suite, index, seed, job):
    s = instance_seed(seed, suite, index)
    rng = random.Random(s)
    n = rng.randint(1, 60)
    inst = gen_random_interval(n, rng.getrandbits(32))
    g = inst.graph
    a = tuple(rng.sample(range(1, n + 1), rng.randint(1, min(5, n))))
    r = rng.randint(0, 6)
    out = _Rows(suite, index, s, n=n, A=_fmt_set(a), r=r)
    pc = out.nc_pc(g, a, r)
    out.add("pc-upper", pc, interval_bound(r, len(a)))
    sig = interval_signatures(inst.certificate, a, r, g)
    profiles = all_profiles(g, a, r)
    first: dict = {}
    unsound = 0
    for v in g.vertices():
        key = sig.signatures[v]
        if key in first and profiles[first[key] - 1] != profiles[v - 1]:
            unsound += 1
        first.setdefault(key, v)
    out.add("signature-sound", unsound, 0)
    out.add("sweep-size", max(len(set(w.left) | set(w.right)) for w in sig.sweeps), 2 * r + 6)
    closed = inst.certificate.as_closed().intervals
    worst = max(points_in(iv, pts) for iv in closed for w in sig.sweeps for pts in (w.left, w.right))
    out.add("sweep-per-interval", worst, 2)
    return out.rows


def _chordal_jobs(opts, seed):
    count = int(opts.get("count", 50))
    jobs = [{"kind": "ktree"} for _ in range(count)]
    jobs += [{"kind": "lb", "k": k, "r": r} for k in (2, 4) for r in (2, 3, 4)]
    return jobs


def _chordal_eval(suite, index, seed, job):
    s = instance_seed(seed, suite, index)
    rng = random.Random(s)
    if job["kind"] == "ktree":
        t = rng.randint(1, 3)
        n = rng.randint(t + 1, 50)
        g = gen_random_partial_ktree(n, t, 1.0, rng.getrandbits(32)).graph
        a = tuple(rng.sample(range(1, n + 1), rng.randint(1, min(4, n))))
        r = rng.randint(0, 4)
        out = _Rows(suite, index, s, family="ktree", n=n, t=t, A=_fmt_set(a), r=r)
    else:
        inst = gen_chordal_lb(job["r"], job["k"])
        g, a, r = inst.graph, inst.target, job["r"]
        out = _Rows(suite, index, s, family="chordal-lb", k=job["k"], r=r)
    pc = out.nc_pc(g, a, r)
    rep = clique_tree(g)
    part = chordal_case_partition(g, rep, a)
    hits = [0] * (g.n + 1)
    for p in part.parts:
        for v in p.vertices:
            hits[v] += 1
    out.add("partition-exact", sum(h != 1 for h in hits[1:]), 0)
    failed = 0
    for p in part.of_kind(2):
        try:
            chk = separator_profile_bound_check(g, p.vertices, rep.bag(p.anchors[0]), None, a, r, 1)
            failed += not chk.ok
        except PreconditionError:
            failed += 1
    out.add("separator-check", failed, 0)
    out.add("pc-upper", pc, chordal_bound(r, len(a)))
    return out.rows


def _corollary_jobs(opts, seed):
    count = int(opts.get("count", 50))
    return [{"family": "treewidth", "i": i} for i in range(count)] + [
        {"family": "outerplanar", "i": i} for i in range(count)
    ]


def _corollary_eval(suite, index, seed, job):
    if job["family"] == "treewidth":
        s, inst, t, _, _ = treewidth_instance(seed, job["i"])
        tag, params = "treewidth", {"t": t}
    else:
        s, inst, _, _ = outerplanar_instance(seed, job["i"])
        tag, params = "outerplanar", {}
    g = inst.graph
    if g.n > 12 or not is_connected(g):
        return []
    rep = corollary_check(g, tag, params)
    out = _Rows(suite, index, s, family=job["family"], source=job["i"], n=g.n, diam=rep.diam, md=rep.md)
    out.add("vertex-count", rep.n, rep.bound + (1 if rep.md == 0 else 0), rep.ok)
    return out.rows


SUITES = {
    "split-exact": (_split_jobs, _split_eval),
    "subcubic-exact": (_subcubic_jobs, _subcubic_eval),
    "interval-lb": (_interval_lb_jobs, _interval_lb_eval),
    "tl2-lb": (_tl2_jobs, _tl2_eval),
    "treewidth-upper": (_count_jobs(50), _treewidth_eval),
    "guarding": (_count_jobs(50), _guarding_eval),
    "oracle-equivalence": (_count_jobs(200), _oracle_eval),
    "lca-closure": (_count_jobs(100), _lca_eval),
    "outerplanar-upper": (_count_jobs(50), _outerplanar_eval),
    "interval-upper": (_count_jobs(100), _interval_upper_eval),
    "chordal-upper": (_chordal_jobs, _chordal_eval),
    "corollary": (_corollary_jobs, _corollary_eval),
}


def _run_job(args):
    suite, index, seed, job = args
    evaluate = SUITES[suite][1]
    start = time.perf_counter_ns()
    rows = evaluate(suite, index, seed, job)
    micros = (time.perf_counter_ns() - start) // 1000
    for row in rows:
        row.micros = micros
    return rows


def run_experiment(suite: str, params: dict | None = None, seed: int = 0, out=None, threads: int = 1) -> ExperimentReport:
    """Run a named suite; ``params`` may override e.g. ``count``.  Writes the CSV to ``out`` if given."""
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; expected one of {sorted(SUITES)}")
    make_jobs, _ = SUITES[suite]
    jobs = [(suite, i, seed, job) for i, job in enumerate(make_jobs(params or {}, seed))]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
    else:
        results = [_run_job(j) for j in jobs]
    report = ExperimentReport(suite, seed, [row for rows in results for row in rows])
    if out is not None:
        report.write_csv(out)
    return report
