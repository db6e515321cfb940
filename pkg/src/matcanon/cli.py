"""Command-line front end.

Deciders (``equiv``, ``congr``) exit 0 when related, 1 when not, 2 on usage or
input errors.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import census, congr, equiv, parabolic, verify
from .errors import CanonError
from .field import field_from_spec
from .matrix import Matrix, read_matrix

log = logging.getLogger("matcanon")

EXIT_RELATED, EXIT_UNRELATED, EXIT_ERROR = 0, 1, 2

CANON_ACTIONS = {
    "b-equiv": (equiv.b_equiv_canonical, ("h", "k")),
    "u-equiv": (equiv.u_equiv_canonical, ("h", "k")),
    "b-congr": (congr.b_congr_canonical, ("u",)),
    "u-congr": (congr.u_congr_canonical, ("u",)),
}


class UsageError(CanonError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; route usage errors through run() instead
    def error(self, message):
        raise UsageError(message)


def matrix_json(m: Matrix) -> dict:
    fmt = m.ctx.format
    return {"field": m.ctx.spec, "n": m.n, "rows": [[fmt(v) for v in r] for r in m.rows]}


def matrix_from_json(obj: dict) -> Matrix:
    ctx = field_from_spec(obj["field"])
    m = Matrix(ctx, [[ctx.parse(t) for t in r] for r in obj["rows"]])
    if m.n != obj["n"]:
        raise UsageError("row count does not match n")
    return m


def _print_matrix(label: str, m: Matrix, out):
    out.write(f"# {label}\n{m.dumps()}")


def cmd_canon(args, out) -> int:
    x = read_matrix(args.inp)
    fn, names = CANON_ACTIONS[args.action]
    y, wit = fn(x, args.witness)
    factors = {name: getattr(wit, name) for name in names} if wit else {}
    if args.json:
        obj = {"action": args.action, "Y": matrix_json(y)}
        obj.update({k: matrix_json(v) for k, v in factors.items()})
        out.write(json.dumps(obj) + "\n")
    elif factors:
        _print_matrix("Y", y, out)
        for k, v in factors.items():
            _print_matrix(k, v, out)
    else:
        out.write(y.dumps())
    return 0


def _pair(args):
    a, b = read_matrix(args.a), read_matrix(args.b)
    if a.ctx != b.ctx:
        raise UsageError(f"field mismatch: {a.ctx.spec} vs {b.ctx.spec}")
    if a.n != b.n:
        raise UsageError(f"size mismatch: {a.n} vs {b.n}")
    return a, b


def _answer(related: bool, args, out, **extra) -> int:
    if args.json:
        out.write(json.dumps({"related": related, **extra}) + "\n")
    else:
        out.write(("related" if related else "not related") + "\n")
    return EXIT_RELATED if related else EXIT_UNRELATED


def cmd_equiv(args, out) -> int:
    a, b = _pair(args)
    if args.parabolic:
        p = parabolic.parse_composition(args.parabolic)
        related, rep = parabolic.p_equivalent(a, b, p, w_search=args.w_search)
        return _answer(related, args, out, parabolic=str(p))
    related = (equiv.b_equivalent if args.group == "B" else equiv.u_equivalent)(a, b)
    return _answer(related, args, out, group=args.group)


def _kind(m: Matrix) -> str:
    if m.is_alternating():
        return "alternating"
    if m.is_symmetric():
        return "symmetric"
    raise UsageError("congruence needs symmetric or alternating matrices")


def cmd_congr(args, out) -> int:
    a, b = _pair(args)
    kind = args.kind or _kind(a)
    if args.parabolic:
        p = parabolic.parse_composition(args.parabolic)
        related = parabolic.p_congruent(a, b, p, kind, report=True)
        return _answer(related, args, out, parabolic=str(p), kind=kind)
    canon = congr.b_congr_canonical if args.group == "B" else congr.u_congr_canonical
    if _kind(a) != kind or _kind(b) != kind:
        raise UsageError(f"both matrices must be {kind}")
    related = canon(a, False)[0] == canon(b, False)[0]
    return _answer(related, args, out, group=args.group, kind=kind)


def cmd_invariants(args, out) -> int:
    x = read_matrix(args.inp)
    p = parabolic.parse_composition(args.parabolic)
    y = equiv.b_equiv_canonical(x, False)[0]
    obj = {"block_rank": parabolic.block_rank_table(x, p).to_list(),
           "cross_count": parabolic.cross_counts(y, p).to_list()}
    out.write(json.dumps(obj) + "\n")
    return 0


def cmd_census(args, out) -> int:
    if args.recurrence:
        if args.n is None:
            raise UsageError("--recurrence needs --n")
        fn = census.count_alt_orbits if args.recurrence == "alt" else census.count_sym_orbits
        out.write(f"{fn(args.n)}\n")
        return 0
    if not args.brute:
        raise UsageError("census needs --recurrence or --brute")
    if args.n is None or args.field is None:
        raise UsageError("--brute needs --field and --n")
    p = parabolic.parse_composition(args.parabolic) if args.parabolic else None
    res = census.census_brute(args.n, args.field, args.group, args.relation, args.matrix_class,
                              p, reps=args.reps, budget=args.budget, threads=args.threads,
                              shards=args.shards)
    if args.json:
        obj = {"count": res.count, "field": res.field_spec, "n": res.n}
        if res.representatives is not None:
            obj["representatives"] = [matrix_json(m) for m in res.representatives]
        out.write(json.dumps(obj) + "\n")
        return 0
    out.write(f"{res.count}\n")
    for i, m in enumerate(res.representatives or []):
        _print_matrix(f"representative {i}", m, out)
    return 0


def cmd_verify(args, out) -> int:
    cfg = verify.VerifyConfig(seed=args.seed)
    if args.quick:
        cfg.random_cases = 1000
    results = verify.run_suite(args.suite, cfg, echo=lambda s: (out.write(s + "\n"), out.flush()))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="matcanon", description="Canonical forms of matrices under B, U and P.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("canon", help="canonical form of one matrix")
    c.add_argument("--action", required=True, choices=sorted(CANON_ACTIONS))
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--witness", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_canon)

    for verb, func in (("equiv", cmd_equiv), ("congr", cmd_congr)):
        d = sub.add_parser(verb, help=f"decide {verb}alence/congruence of two matrices")
        g = d.add_mutually_exclusive_group()
        g.add_argument("--parabolic", metavar="COMPOSITION")
        g.add_argument("--group", choices=("B", "U"), default="B")
        d.add_argument("--json", action="store_true")
        d.add_argument("a")
        d.add_argument("b")
        if verb == "congr":
            d.add_argument("--kind", choices=("symmetric", "alternating"))
        else:
            d.add_argument("--w-search", action="store_true",
                           help="cross-check with an exhaustive Weyl-group search")
        d.set_defaults(func=func)

    i = sub.add_parser("invariants", help="block-rank and cross-count tables")
    i.add_argument("--parabolic", required=True)
    i.add_argument("--in", dest="inp", required=True)
    i.set_defaults(func=cmd_invariants)

    s = sub.add_parser("census", help="orbit counts")
    s.add_argument("--recurrence", choices=("alt", "sym"))
    s.add_argument("--brute", action="store_true")
    s.add_argument("--n", type=int)
    s.add_argument("--field")
    s.add_argument("--group", choices=("B", "U", "P"), default="B")
    s.add_argument("--relation", choices=("equivalence", "congruence"), default="equivalence")
    s.add_argument("--class", dest="matrix_class", default="all",
                   choices=("all", "symmetric", "alternating"))
    s.add_argument("--parabolic")
    s.add_argument("--reps", action="store_true")
    s.add_argument("--budget", type=int, default=2 ** 30)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", help="run the oracle suite")
    v.add_argument("--suite", default="all", choices=sorted(verify.SUITES))
    v.add_argument("--seed", type=int, default=verify.VerifyConfig.seed)
    v.add_argument("--quick", action="store_true", help="fewer random cases")
    v.set_defaults(func=cmd_verify)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            stream=sys.stderr, format="%(levelname)s %(message)s")
        return args.func(args, out)
    except (CanonError, OSError, ValueError, KeyError) as exc:
        print(f"matcanon: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())
