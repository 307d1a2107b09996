"""Command-line entry point: ``profilekit <subcommand> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on bad usage or
malformed input.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass

from . import constructions
from .colnum import BallSet, IntervalModel, colnum_guarding_family, degeneracy_ordering, scol_of, wcol_of
from .errors import ProfileKitError
from .formats import (
    emit_balls,
    emit_family,
    emit_graph,
    emit_td,
    parse_balls,
    parse_family,
    parse_graph,
    parse_ordering,
    parse_td,
)
from .graphcore import (
    DEFAULT_MD_BUDGET,
    DEFAULT_SUBSET_BUDGET,
    metric_dimension,
    neighbourhood_complexity,
    nc_over_k_sets,
    pc_over_k_sets,
    profile_complexity,
)
from .treerep import TreeRepresentation, tw_guarding_family, validate_representation
from .verify import BoundQuery, bound_value, interval_signatures, outerplanar_levels, run_experiment, verify_guarding
from .verify.bounds import CLASS_PARAMS
from .verify.experiments import SUITES

log = logging.getLogger("profilekit")


@dataclass
class RunConfig:
    seed: int = 0
    subset_budget: int = DEFAULT_SUBSET_BUDGET
    md_budget: int = DEFAULT_MD_BUDGET
    k_cap: int = constructions.DEFAULT_SPLIT_CAP
    out: str | None = None
    verbosity: int = 0

    def __post_init__(self):
        for name in ("subset_budget", "md_budget", "k_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _target(args) -> tuple[int, ...]:
    if args.set is not None and args.set_file is not None:
        raise UsageError("give either --set or --set-file, not both")
    if args.set is not None:
        text = args.set.replace(",", " ")
    elif args.set_file is not None:
        text = _read(args.set_file).replace(",", " ")
    else:
        raise UsageError("a target set is required (--set or --set-file)")
    try:
        return tuple(int(x) for x in text.split())
    except ValueError:
        raise UsageError(f"target set must list integers, got {text.strip()!r}") from None


def _graph(args):
    return parse_graph(_read(args.graph))


# -- subcommands -------------------------------------------------------------


def cmd_pc(args, cfg):
    g = _graph(args)
    res = profile_complexity(g, _target(args), args.r, witnesses=args.witnesses)
    print(res.count)
    if args.witnesses:
        for p in res.witnesses:
            print(" ".join("inf" if e == float("inf") else str(e) for e in p.entries))
    return 0


def cmd_nc(args, cfg):
    g = _graph(args)
    res = neighbourhood_complexity(g, _target(args), args.r, witnesses=args.witnesses)
    print(res.count)
    if args.witnesses:
        for s in res.witnesses:
            print(" ".join(map(str, sorted(s))) or "-")
    return 0


def _over_k(fn):
    def run(args, cfg):
        g = _graph(args)
        res = fn(g, args.k, args.r, mode=args.mode, samples=args.samples, seed=cfg.seed, budget=cfg.subset_budget)
        print(res.count)
        print(" ".join(map(str, res.witness_set)))
        if not res.exact:
            print("c sampled lower bound", file=sys.stderr)
        return 0

    return run


def cmd_md(args, cfg):
    k, s = metric_dimension(_graph(args), cfg.md_budget)
    print(k)
    print(" ".join(map(str, s)))
    return 0


def cmd_guard_tw(args, cfg):
    g = _graph(args)
    rep = parse_td(_read(args.td), g)
    fam = tw_guarding_family(g, rep, _target(args), args.r, root=args.root)
    _write(emit_family(fam), cfg.out)
    return 0


def _ordering(args, g):
    if args.ordering is None:
        return degeneracy_ordering(g)
    return parse_ordering(_read(args.ordering), g.n)


def cmd_guard_colnum(args, cfg):
    g = _graph(args)
    fam = colnum_guarding_family(g, _ordering(args, g), _target(args), args.r)
    _write(emit_family(fam), cfg.out)
    return 0


def cmd_verify_guard(args, cfg):
    g = _graph(args)
    fam = parse_family(_read(args.family))
    a = _target(args) if (args.set or args.set_file) else fam.target
    r = fam.r if args.r is None else args.r
    report = verify_guarding(g, a, r, fam)
    if report.ok:
        print("ok")
    else:
        v, t, path = report.counterexample
        print(f"unguarded {v} -> {t} via {' '.join(map(str, path))}")
    if not report.cap_ok:
        print(f"cap violated by members {report.oversized} (p = {fam.p})")
    return 0 if report.ok and report.cap_ok else 1


def cmd_colnum(args, cfg):
    g = _graph(args)
    order = _ordering(args, g)
    print(f"wcol {wcol_of(g, order, args.r)}")
    print(f"scol {scol_of(g, order, args.r)}")
    return 0


def cmd_gen(args, cfg):
    name = args.name
    if name == "split":
        inst = constructions.gen_split_gadget(args.k, args.r, cap=cfg.k_cap)
    elif name == "subcubic":
        inst = constructions.gen_subcubic(args.k, cap=min(cfg.k_cap, constructions.DEFAULT_SUBCUBIC_CAP))
    elif name in ("interval-lb", "chordal-lb", "tl2-lb"):
        inst = constructions.GENERATORS[name](args.r, args.k)
    elif name == "partial-ktree":
        inst = constructions.gen_random_partial_ktree(args.n, args.t, args.keep, cfg.seed)
    elif name == "mop":
        inst = constructions.gen_random_mop(args.n, cfg.seed)
    elif name == "interval":
        inst = constructions.gen_random_interval(args.n, cfg.seed)
    elif name == "balls":
        inst = constructions.gen_random_balls(args.n, args.d, cfg.seed)
    else:
        raise UsageError(f"unknown generator {name!r}")
    header = [f"c {inst.name}"]
    if inst.target:
        header.append("c target " + " ".join(map(str, inst.target)))
    _write("\n".join(header) + "\n" + emit_graph(inst.graph), cfg.out)
    if args.cert_out:
        cert = inst.certificate
        if isinstance(cert, TreeRepresentation):
            text = emit_td(cert, inst.graph.n)
        elif isinstance(cert, IntervalModel):
            text = emit_balls(BallSet.from_intervals(cert.as_closed().intervals))
        elif isinstance(cert, BallSet):
            text = emit_balls(cert)
        elif isinstance(cert, tuple):
            text = " ".join(map(str, cert)) + "\n"
        else:
            raise UsageError(f"generator {name} has no certificate")
        _write(text, args.cert_out)
    return 0


def cmd_bound(args, cfg):
    params = {}
    for name in CLASS_PARAMS.get(args.cls, {}):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    print(bound_value(BoundQuery(args.cls, params)))
    return 0


def cmd_signatures(args, cfg):
    balls = parse_balls(_read(args.intervals))
    model = IntervalModel(tuple(balls.intervals()), closed=True)
    res = interval_signatures(model, _target(args), args.r)
    for v, sig in enumerate(res.signatures[1:], start=1):
        print(v, *sig)
    return 0


def cmd_levels(args, cfg):
    g = _graph(args)
    circ = parse_ordering(_read(args.circ), g.n).order
    a = _target(args)
    rep = outerplanar_levels(g, circ, args.a1 if args.a1 is not None else a[0], a, args.r)
    for i, (level, members) in enumerate(zip(rep.levels, rep.memberships)):
        print(f"L{i} {' '.join(map(str, level))} | A{i} {' '.join(map(str, members))}")
    for i, x, y, u, v in rep.violations:
        print(f"violation level {i} target {x}: closest {y}, {u} before {v}")
    print(f"memberships {rep.membership_total} <= {rep.membership_cap}")
    return 0 if rep.ok else 1


def cmd_check_td(args, cfg):
    g = _graph(args)
    rep = parse_td(_read(args.td))
    report = validate_representation(g, rep)
    print("valid" if report.valid else "invalid")
    print(f"width {report.width}")
    print(f"length {report.length}")
    for v in report.violations:
        print(v)
    return 0 if report.valid else 1


def _params(pairs):
    out = {}
    for pair in pairs or ():
        key, sep, value = pair.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {pair!r}")
        out[key] = value
    return out


def cmd_experiment(args, cfg):
    report = run_experiment(args.suite, _params(args.param), cfg.seed, cfg.out, threads=args.threads)
    bad = report.failures
    print(f"{args.suite}: {len(report.rows)} rows, {len(bad)} gating failures")
    for row in bad:
        print(f"FAIL {row.instance} {row.params} measured={row.measured} bound={row.bound}")
    return 0 if report.passed else 1


# -- parser ------------------------------------------------------------------


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("PROFILEKIT_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="profilekit", description="Distance-profile complexity toolkit.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the main output here instead of stdout")
    p.add_argument("--subset-budget", type=int, default=DEFAULT_SUBSET_BUDGET)
    p.add_argument("--md-budget", type=int, default=DEFAULT_MD_BUDGET)
    p.add_argument("--k-cap", type=int, default=constructions.DEFAULT_SPLIT_CAP)
    sub = p.add_subparsers(dest="command", required=True)

    def with_graph(sp):
        sp.add_argument("--graph", required=True)

    def with_target(sp):
        sp.add_argument("--set", help="comma-separated target vertices")
        sp.add_argument("--set-file", help="file listing target vertices")

    def with_radius(sp, required=True):
        sp.add_argument("-r", "--radius", dest="r", type=int, required=required)

    for name, fn in (("pc", cmd_pc), ("nc", cmd_nc)):
        sp = sub.add_parser(name)
        with_graph(sp), with_target(sp), with_radius(sp)
        sp.add_argument("--witnesses", action="store_true")
        sp.set_defaults(func=fn)

    for name, fn in (("pc-k", pc_over_k_sets), ("nc-k", nc_over_k_sets)):
        sp = sub.add_parser(name)
        with_graph(sp), with_radius(sp)
        sp.add_argument("-k", type=int, required=True)
        sp.add_argument("--mode", choices=("exact", "sampled"), default="exact")
        sp.add_argument("--samples", type=int, default=1000)
        sp.set_defaults(func=_over_k(fn))

    sp = sub.add_parser("md")
    with_graph(sp)
    sp.set_defaults(func=cmd_md)

    sp = sub.add_parser("guard-tw")
    with_graph(sp), with_target(sp), with_radius(sp)
    sp.add_argument("--td", required=True)
    sp.add_argument("--root", type=int)
    sp.set_defaults(func=cmd_guard_tw)

    sp = sub.add_parser("guard-colnum")
    with_graph(sp), with_target(sp), with_radius(sp)
    sp.add_argument("--ordering", help="ordering file (default: degeneracy ordering)")
    sp.set_defaults(func=cmd_guard_colnum)

    sp = sub.add_parser("verify-guard")
    with_graph(sp), with_target(sp), with_radius(sp, required=False)
    sp.add_argument("--family", required=True)
    sp.set_defaults(func=cmd_verify_guard)

    sp = sub.add_parser("colnum")
    with_graph(sp), with_radius(sp)
    sp.add_argument("--ordering")
    sp.set_defaults(func=cmd_colnum)

    sp = sub.add_parser("gen")
    sp.add_argument("name", choices=sorted(constructions.GENERATORS))
    sp.add_argument("-k", type=int, default=2)
    sp.add_argument("-r", "--radius", dest="r", type=int, default=2)
    sp.add_argument("-n", type=int, default=10)
    sp.add_argument("-t", type=int, default=2)
    sp.add_argument("-d", type=int, default=2)
    sp.add_argument("--keep", type=float, default=1.0, help="edge keep probability for partial k-trees")
    sp.add_argument("--cert-out", help="write the class certificate here")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bound")
    sp.add_argument("--class", dest="cls", required=True, choices=sorted(CLASS_PARAMS))
    with_radius(sp)
    sp.add_argument("-k", type=int)
    sp.add_argument("-t", type=int)
    sp.add_argument("--h", type=int)
    sp.add_argument("-s", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("-d", type=int)
    sp.add_argument("--thinness", type=int)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("signatures")
    sp.add_argument("--intervals", required=True, help="ball CSV of closed intervals (d = 1)")
    with_target(sp), with_radius(sp)
    sp.set_defaults(func=cmd_signatures)

    sp = sub.add_parser("levels")
    with_graph(sp), with_target(sp), with_radius(sp)
    sp.add_argument("--circ", required=True, help="circular order file")
    sp.add_argument("--a1", type=int)
    sp.set_defaults(func=cmd_levels)

    sp = sub.add_parser("check-td")
    with_graph(sp)
    sp.add_argument("--td", required=True)
    sp.set_defaults(func=cmd_check_td)

    sp = sub.add_parser("experiment")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--param", action="append", help="suite override key=value, e.g. count=20")
    sp.add_argument("--threads", type=int, default=_default_threads())
    sp.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig(args.seed, args.subset_budget, args.md_budget, args.k_cap, args.out, args.verbose)
        return args.func(args, cfg)
    except (UsageError, ProfileKitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
