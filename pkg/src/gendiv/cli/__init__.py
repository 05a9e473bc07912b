"""Command line interface: ``gendiv <command> ...``.

Exit codes: 0 success, 1 validation error, 2 property violation, 3 parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from gendiv import divisors as dv
from gendiv.cli.curvefile import CurveParseError, load_curve, print_curve
from gendiv.cli.expr import ParseError, evaluate, parse_divexpr, parse_sheafexpr
from gendiv.curvespec import CurveError
from gendiv.fracmod import FracModule, ModuleError, fiber_dim
from gendiv.moduli import SheafClass, ThetaError, jacobian_kernel_report, lies_on_theta, theta_multiplicity
from gendiv.sheafcoh import Sheaf, degree as sheaf_degree, global_sections, h0, h1

EXIT_OK, EXIT_INVALID, EXIT_VIOLATION, EXIT_PARSE = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _module(m: FracModule) -> list[str]:
    return [str(x) for x in m.minimal_generators()]


def _sheaf(s: Sheaf) -> dict:
    return {"generators": _module(s.m1), "order_at_infinity": s.k, "degree": sheaf_degree(s)}


# -- commands -------------------------------------------------------------------


def cmd_info(args):
    from gendiv.dualizing import is_gorenstein

    c = load_curve(args.file)
    ker = jacobian_kernel_report(c)
    rec = {
        "name": c.name,
        "genus": c.genus,
        "gorenstein": is_gorenstein(c),
        "conductor": str(c.conductor),
        "clusters": [
            {
                "kind": cl.kind,
                "description": cl.describe(),
                "branches": [str(a) for a in cl.branches],
                "delta": r.delta,
                "toric_rank": r.toric_rank,
                "unipotent_dim": r.unipotent_dim,
            }
            for cl, r in zip(c.clusters, ker.per_cluster)
        ],
        "jacobian_kernel": {"toric_rank": ker.toric_rank, "unipotent_dim": ker.unipotent_dim},
    }
    if args.json:
        print(_dump(rec))
        return EXIT_OK
    print("curve      %s" % (c.name or args.file))
    print("genus      %d" % c.genus)
    print("gorenstein %s" % rec["gorenstein"])
    print("conductor  %s" % rec["conductor"])
    for i, cl in enumerate(rec["clusters"]):
        print("cluster %d  %s  delta=%d toric=%d unipotent=%d" % (
            i, cl["description"], cl["delta"], cl["toric_rank"], cl["unipotent_dim"]))
    print("kernel     G_m^%d x G_a^%d" % (ker.toric_rank, ker.unipotent_dim))
    return EXIT_OK


def cmd_print(args):
    sys.stdout.write(print_curve(load_curve(args.file)))
    return EXIT_OK


QUERIES = ("deg", "h0", "h1", "dim", "linsys", "cartier", "effective", "equiv", "rr")


def _query(c, D, q, extra):
    """Return ``(value, witnesses)`` for one query."""
    if q == "deg":
        return dv.degree(D), {"ideal": _sheaf(D.ideal)}
    if q in ("h0", "dim"):
        s = dv.associated_sheaf(D)
        secs = [str(x) for x in global_sections(s)]
        val = h0(s) if q == "h0" else h0(s) - 1
        return val, {"sections": secs}
    if q == "h1":
        s = dv.associated_sheaf(D)
        return h1(s), {"sheaf": _sheaf(s)}
    if q == "linsys":
        ls = dv.linear_system(D)
        members = [_sheaf(ls.member([1 if j == i else 0 for j in range(len(ls.section_basis))]).ideal)
                   for i in range(len(ls.section_basis))]
        return {"dim": ls.dim, "sections": [str(x) for x in ls.section_basis]}, {"members": members}
    if q == "cartier":
        fibers = [fiber_dim(D.ideal.m1, i) for i in range(len(c.clusters))]
        return dv.is_cartier(D), {"fiber_dims": fibers}
    if q == "effective":
        return dv.is_effective(D), {"ideal": _sheaf(D.ideal)}
    if q == "equiv":
        if not extra:
            raise ParseError("equiv needs a second expression: --query equiv \"<expr2>\"")
        E = evaluate(parse_divexpr(" ".join(extra)), c)
        f = dv.lin_equiv(D, E)
        return f is not None, {"function": None if f is None else str(f)}
    if q == "rr":
        r = dv.riemann_roch_check(D)
        adj = dv.adjoint_omega(D) if isinstance(D, dv.OmegaDivisor) else dv.adjoint(D)
        val = {"dim": r.dim, "adjoint_dim": r.adjoint_dim, "degree": r.degree, "genus": r.genus,
               "lhs": r.lhs, "rhs": r.rhs, "holds": r.passed}
        return val, {"adjoint": _sheaf(adj.ideal)}
    raise ParseError("unknown query %r (choose from %s)" % (q, ", ".join(QUERIES)))


def _plain(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return ", ".join("%s=%s" % (k, _plain(x)) for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    return str(v)


def cmd_eval(args):
    c = load_curve(args.file)
    node = parse_divexpr(args.expr)
    q, extra = args.query[0], args.query[1:]
    if q != "equiv" and extra:
        raise ParseError("query %s takes no argument" % q)
    D = evaluate(node, c)
    value, wit = _query(c, D, q, extra)
    if args.json:
        print(_dump({"query": " ".join(args.query), "value": value, "witnesses": wit}))
    else:
        print(_plain(value))
        for k in sorted(wit):
            print("  %s: %s" % (k, _plain(wit[k])))
    return EXIT_OK


def cmd_omega(args):
    from gendiv.dualizing import omega_bidual_report

    c = load_curve(args.file)
    rep = omega_bidual_report(c)
    s = rep.dual if args.dual else rep.bidual if args.bidual else rep.omega
    label = "Hom(omega, O)" if args.dual else "bidual of omega" if args.bidual else "omega"
    rec = {"sheaf": label, "h0": h0(s), "h1": h1(s), "reflexive": rep.reflexive}
    rec.update(_sheaf(s))
    if args.json:
        print(_dump(rec))
        return EXIT_OK
    print("%s = <%s> dt  (order at infinity %d)" % (label, ", ".join(rec["generators"]), s.k)
          if label == "omega" else "%s = <%s>  (order at infinity %d)" % (label, ", ".join(rec["generators"]), s.k))
    print("degree %d, h0 %d, h1 %d" % (rec["degree"], rec["h0"], rec["h1"]))
    print("omega reflexive: %s" % _plain(rep.reflexive))
    return EXIT_OK


def cmd_paper_examples(args):
    from gendiv.cli.golden import run_golden

    rows = run_golden()
    bad = [r for r in rows if not r.passed]
    if args.json:
        print(_dump({"rows": [r.as_dict() for r in rows], "failed": len(bad)}))
    else:
        w = max(len(r.name) for r in rows)
        for r in rows:
            print("%s  %-*s  expected %s  computed %s  [%s]" % (
                "PASS" if r.passed else "FAIL", w, r.name, r.expected, r.computed, r.anchor))
        print("%d/%d rows passed" % (len(rows) - len(bad), len(rows)))
    return EXIT_INVALID if bad else EXIT_OK


def cmd_prop(args):
    from gendiv.cli.props import run_suite

    if args.trials <= 0:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_INVALID
    rep = run_suite(args.suite, args.trials, args.seed)
    if args.json:
        print(_dump(rep.as_dict()))
    else:
        print("suite %s  seed %d  trials %d  checks %d" % (rep.suite, rep.seed, rep.trials, rep.checks))
        for v in rep.violations:
            print("VIOLATION  %s  %s  witness %s %s" % (v.curve, v.prop, v.witness, v.detail))
        for v in rep.expected_failures:
            print("expected   %s  %s  witness %s %s" % (v.curve, v.prop, v.witness, v.detail))
        for n in rep.notes:
            print("note       %s" % n)
        print("%d violations" % len(rep.violations))
    return EXIT_VIOLATION if rep.violations else EXIT_OK


def cmd_theta(args):
    c = load_curve(args.file)
    s = parse_sheafexpr(args.sheaf)(c)
    cls = SheafClass.of(s)
    m = theta_multiplicity(cls)
    rec = {
        "degree": cls.degree,
        "h0": cls.h0,
        "non_free_nodes": list(cls.non_free_clusters),
        "degree_is_g_minus_1": lies_on_theta(cls),
        "multiplicity": m,
    }
    if args.json:
        print(_dump(rec))
    else:
        print(m)
        print("  degree %d (genus %d), h0 %d, non-free nodes %s" % (cls.degree, c.genus, cls.h0, rec["non_free_nodes"]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gendiv", description="Generalized divisors on singular rational curves.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="genus, singularities and Gorenstein status")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_info)

    s = sub.add_parser("print", help="print the curve file in canonical form")
    s.add_argument("file")
    s.set_defaults(fn=cmd_print)

    s = sub.add_parser("eval", help="evaluate a divisor expression")
    s.add_argument("file")
    s.add_argument("expr")
    s.add_argument("--query", nargs="+", required=True, metavar="Q",
                   help="|".join(QUERIES) + " (equiv takes a second expression)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("omega", help="the dualizing sheaf, its dual or bidual")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--dual", action="store_true")
    g.add_argument("--bidual", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_omega)

    s = sub.add_parser("paper-examples", help="run the golden table")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_paper_examples)

    from gendiv.cli.props import SUITES

    s = sub.add_parser("prop", help="run a seeded property suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=None, help="defaults to $GENDIV_SEED or a fixed seed")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_prop)

    s = sub.add_parser("theta", help="theta multiplicity of a sheaf class on a nodal curve")
    s.add_argument("file")
    s.add_argument("sheaf", help="O | omega | nu(n) | L(expr) | M(expr) | I(expr)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_theta)
    return p


def _protect(argv):
    """Keep expressions such as ``-S(0)`` from being read as options.

    argparse treats any argument containing a space as positional, and the
    expression grammar ignores whitespace.
    """
    out = []
    for a in argv:
        if a.startswith("-") and not a.startswith("--") and a != "-h" and len(a) > 1 and not a[1:].isdigit():
            a = " " + a
        out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_protect(argv))
    except SystemExit as exc:
        # argparse usage errors count as parse errors
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return args.fn(args)
    except (ParseError, CurveParseError) as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (CurveError, dv.DivisorError, ModuleError, ThetaError, FileNotFoundError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
