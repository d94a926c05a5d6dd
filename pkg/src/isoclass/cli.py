"""Command line interface: ``isoclass <command> ...``."""

import argparse
import json
import logging
import sys
from fractions import Fraction

import mpmath
import sympy

from . import classify as cl
from . import genus2glue as g2
from . import hermitian, modular, tables, torsion, weil
from .exactmath import NFElement, is_zero, quadratic_field, squarefree_part


def parse_scalar(text):
    """A rational or an element of Q(sqrt d) from an expression like '1/2 + sqrt(2)/2'."""
    expr = sympy.sympify(text.replace("^", "**"), rational=True)
    X = sympy.Symbol("X")
    mp_ = sympy.Poly(sympy.minimal_polynomial(expr, X), X).monic()
    c = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1]))
         for v in reversed(mp_.all_coeffs())]
    if len(c) == 2:
        return -c[0]
    if len(c) != 3:
        raise ValueError("%r is not quadratic over Q" % text)
    # expr = x + y sqrt(d) with x = -c1/2 and y^2 d = c1^2/4 - c0
    x = -c[1] / 2
    d, f = squarefree_part((c[1] * c[1] - 4 * c[0]).numerator * (c[1] * c[1] - 4 * c[0]).denominator)
    y = Fraction(f, 2 * (c[1] * c[1] - 4 * c[0]).denominator)
    K = quadratic_field(d)
    val = complex(sympy.N(expr, 30))
    r = mpmath.sqrt(mpmath.mpf(d))
    cand = K([x, y])
    if abs(cand.to_complex(30, r) - val) > abs(K([x, -y]).to_complex(30, r) - val):
        cand = K([x, -y])
    return cand


def encode_scalar(v):
    if isinstance(v, NFElement):
        return {"coords": [str(c) for c in v.c], "field": [str(c) for c in v.field.minpoly]}
    return str(v)


def _emit(obj):
    print(json.dumps(obj, indent=2))


def cmd_weil(args):
    if args.degree == 2:
        recs = [w.to_json() for w in weil.enumerate_quadratic_weil(args.l)]
    else:
        recs = [w.to_json() for w in weil.enumerate_quartic_weil(args.l)]
    _emit(recs)
    return 0


def cmd_torsion(args):
    subs = torsion.enumerate_maximal_isotropic(args.n)
    out = {"n": args.n, "maximal_isotropic": len(subs)}
    if args.classify:
        prods, graphs = torsion.split_counts(args.n)
        out["product"] = prods
        out["graph"] = graphs
    _emit(out)
    return 0


def cmd_hermitian(args):
    res = hermitian.classify_pairs(hermitian.QuadraticOrder(args.disc), args.mode)
    _emit({"disc": args.disc, "mode": args.mode,
           "classes": [p.to_json() for p in res.representatives],
           "raw_pairs": res.raw_count, "unresolved": res.unresolved})
    return 0


def _curve_json(C, p):
    return {"sextic": [encode_scalar(c) for c in C.coeffs],
            "igusa": None if p is None else tables.point_to_json(p)}


def cmd_glue2(args):
    a, b = parse_scalar(args.a), parse_scalar(args.b)
    C = g2.legendre_glue2(a, b)
    _emit(_curve_json(C, g2.igusa_clebsch(C)))
    return 0


def cmd_kuhn3(args):
    sols = g2.kuhn3_solve(Fraction(args.j1), Fraction(args.j2))
    recs = []
    for s in sols:
        C = s.params.curve()
        recs.append({"params": [encode_scalar(x) for x in (s.params.a, s.params.b, s.params.c)],
                     "galois_orbit": s.orbit_size,
                     "field": [str(c) for c in s.field.minpoly] if s.field else None,
                     "curve": _curve_json(C, g2.igusa_clebsch(C))})
    _emit({"solutions": recs, "geometric": g2.count_geometric(sols)})
    return 0


def _split_list(text):
    return [t for t in text.replace("[", "").replace("]", "").split(",") if t.strip()]


def cmd_igusa(args):
    coeffs = tuple(parse_scalar(t) for t in _split_list(args.poly))
    p = g2.igusa_clebsch(g2.HyperellipticSextic(coeffs))
    _emit(tables.point_to_json(p))
    return 0


def cmd_hcp(args):
    H = modular.hilbert_class_poly(args.disc)
    _emit({"disc": args.disc, "class_number": len(H) - 1, "coefficients": H})
    return 0


def cmd_humbert(args):
    vals = [parse_scalar(t) for t in _split_list(args.check)]
    if len(vals) != 4:
        raise ValueError("four invariants I2,I4,I6,I10 expected")
    p = g2.IgusaPoint(*vals)
    H = modular.load_humbert(8)
    v = modular.humbert_eval(H, p)
    _emit({"disc": 8, "value": encode_scalar(v), "contains": is_zero(v)})
    return 0


def _report_checks(checks):
    _emit({"verification": [c.to_json() for c in checks]})
    return 0 if all(c.passed for c in checks) else 1


def cmd_verify(args):
    if args.figure1:
        return _report_checks(cl.figure1_checks())
    return _report_checks(cl.verify_suite(args.suite or "all"))


def cmd_classify(args):
    try:
        report = cl.classify(args.l, max_disc=args.max_disc)
    except cl.CertificationError as e:
        print("certification failed: %s" % e, file=sys.stderr)
        return 1
    if args.table:
        print(report.table())
    else:
        print(report.dumps())
    return 0 if report.all_pass() else 1


def build_parser():
    p = argparse.ArgumentParser(prog="isoclass", description=__doc__)
    p.add_argument("--data-dir", help="directory with polynomial data files (default: $ISOCLASS_DATA "
                                      "or the bundled data)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("weil", help="Weil l-numbers of degree 2 or 4")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--degree", type=int, choices=(2, 4), required=True)
    s.set_defaults(fn=cmd_weil)

    s = sub.add_parser("torsion", help="maximal isotropic subgroups of (Z/n)^4")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--classify", action="store_true", help="split into products and graphs")
    s.set_defaults(fn=cmd_torsion)

    s = sub.add_parser("hermitian", help="classes of pairs (M, S) over the order of a discriminant")
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--mode", choices=("definite", "indefinite"), required=True)
    s.set_defaults(fn=cmd_hermitian)

    s = sub.add_parser("glue2", help="the genus-2 curve C(a, b) glued from two Legendre curves")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(fn=cmd_glue2)

    s = sub.add_parser("kuhn3", help="3-glueings of curves with the given j-invariants")
    s.add_argument("--j1", required=True)
    s.add_argument("--j2", required=True)
    s.set_defaults(fn=cmd_kuhn3)

    s = sub.add_parser("igusa", help="Igusa-Clebsch invariants of y^2 = f(x)")
    s.add_argument("--poly", required=True, help="coefficients c0,c1,...,c6 (lowest degree first)")
    s.set_defaults(fn=cmd_igusa)

    s = sub.add_parser("hcp", help="Hilbert class polynomial")
    s.add_argument("--disc", type=int, required=True)
    s.set_defaults(fn=cmd_hcp)

    s = sub.add_parser("humbert", help="evaluate the discriminant 8 Humbert polynomial")
    s.add_argument("--check", required=True, metavar="I2,I4,I6,I10")
    s.set_defaults(fn=cmd_humbert)

    s = sub.add_parser("verify", help="run verification suites")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--figure1", action="store_true")
    g.add_argument("--suite", choices=("counts", "tables", "humbert", "figure1", "all"))
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("classify", help="classification report for a prime l")
    s.add_argument("--l", type=int, required=True)
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--table", action="store_true")
    s.add_argument("--max-disc", type=int, default=cl.MAX_CLASSIFY_DISC,
                   help="largest |disc| for which Hermitian pairs are enumerated")
    s.set_defaults(fn=cmd_classify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.data_dir:
        modular.set_data_dir(args.data_dir)
    try:
        return args.fn(args)
    except (ValueError, ArithmeticError, modular.DataError, MemoryError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
