"""Acceptance criteria; each test prints one PASS/FAIL line with its wall time."""

import time
from fractions import Fraction

import pytest

from isoclass import classify as cl
from isoclass import hermitian as hm
from isoclass import modular, tables, torsion, weil
from isoclass.exactmath import det, quadratic_field


@pytest.fixture
def report(capsys):
    def emit(n, text, ok, t0):
        with capsys.disabled():
            print("\nacceptance %2d %s: %s (%.2f s)" % (n, "PASS" if ok else "FAIL", text,
                                                       time.perf_counter() - t0))
        assert ok, text
    return emit


def test_01_weil_sets(report):
    t0 = time.perf_counter()
    quad = sorted(w.minpoly for w in weil.enumerate_quadratic_weil(2))
    q = weil.enumerate_quartic_weil(2)
    v4 = sorted((w.a1, w.a2) for w in q if w.galois == "V4")
    d4 = sorted((w.a1, w.a2) for w in q if w.galois == "D4")
    ok = (quad == sorted(tables.WEIL_QUADRATIC_L2) and len(quad) == 4
          and v4 == tables.WEIL_V4_L2 and len(v4) == 8
          and d4 == tables.WEIL_D4_L2 and len(d4) == 4
          and time.perf_counter() - t0 < 1.0)
    report(1, "Weil 2-numbers: 4 quadratic, 8 V4 + 4 D4 quartic fields under 1 s", ok, t0)


def test_02_isotropic_counts(report):
    t0 = time.perf_counter()
    ok = True
    for n, total, split in ((2, 15, (9, 6)), (3, 40, (16, 24)), (5, 156, (36, 120))):
        ok = ok and len(torsion.enumerate_maximal_isotropic(n)) == total
        ok = ok and torsion.split_counts(n) == split
    report(2, "maximal isotropic counts 15/40/156 split 9+6, 16+24, 36+120", ok, t0)


def test_03_equivariant_counts(report):
    t0 = time.perf_counter()
    cases = torsion.equivariant_cases_l2()
    got = (len(torsion.solve_equivariant_antiisometries(cases[1][0])),
           len(torsion.solve_equivariant_antiisometries(cases[4][0])),
           [len(torsion.solve_equivariant_antiisometries(p)) for p in cases[2]])
    report(3, "equivariant anti-isometries %r, expected (2, 1, [4, 4])" % (got,),
           got == (2, 1, [4, 4]), t0)


def test_04_hermitian_classes(report):
    t0 = time.perf_counter()
    counts = {}
    for D in (-4, -7, -8):
        for mode in ("definite", "indefinite"):
            res = hm.classify_pairs(hm.QuadraticOrder(D), mode)
            counts[(D, mode)] = (len(res.representatives), res.unresolved)
    O8, O7 = hm.QuadraticOrder(-8), hm.QuadraticOrder(-7)
    odd = hm.standard_pair(O8, ((1, 0), (0, -1)))
    even = hm.standard_pair(O8, ((0, 1), (1, 0)))
    ok = (counts[(-8, "definite")] == (2, 0) and counts[(-8, "indefinite")] == (2, 0)
          and counts[(-4, "definite")] == (1, 0) and counts[(-7, "definite")] == (1, 0)
          and hm.equivalence_verdict(odd, even) == "distinct"
          and hm.hyperbolic_type(odd) == 1 and hm.hyperbolic_type(even) == 0
          and hm.equivalence_verdict(hm.standard_pair(O7, ((1, 0), (0, -1))),
                                     hm.standard_pair(O7, ((0, 1), (1, 0)))) == "equivalent"
          and time.perf_counter() - t0 < 60)
    report(4, "Hermitian classes D=-8: 2+2 (diag(1,-1) odd, antidiag(1,1) even), D=-4, -7: "
              "1 definite, the two forms agree at D=-7, under 60 s", ok, t0)


def test_05_glueings(report):
    t0 = time.perf_counter()
    checks = cl.tables_checks()
    names = ("glue2.C-8", "glue2.C-4,-8", "glue2.C-7", "kuhn3.C-4,-7")
    ok = all(c.passed for c in checks if c.name in names) and \
        sum(c.name in names for c in checks) == 4
    report(5, "2-glueings give C-8, C-4,-8, C-7 and the 3-glueing gives C-4,-7", ok, t0)


def test_06_phi_diagonal(report):
    t0 = time.perf_counter()
    ok = True
    for l in (2, 3):
        facs, _ = modular.phi_diagonal_factorization(l)
        ok = ok and all(e == modular.norm_orbit_count(D, l) for D, e in facs)
    facs2, _ = modular.phi_diagonal_factorization(2)
    ok = ok and sorted(facs2) == [(-8, 1), (-7, 2), (-4, 1)]
    report(6, "Phi_l(X, X) factors into class polynomials with orbit-count exponents, l = 2, 3",
           ok, t0)


def test_07_figure1_divisibility(report):
    t0 = time.perf_counter()
    ok = modular.figure1_divides_phi7() and cl.figure1_on_h8()
    report(7, "the level-2 curve of 7-isogenies divides Phi_7 and lies on H8", ok, t0)


def test_08_humbert_pattern(report):
    t0 = time.perf_counter()
    checks = cl.humbert_checks()
    bad = [c.name for c in checks if not c.passed]
    report(8, "H8 membership pattern of tabulated curves%s" % (": failed %s" % bad if bad else ""),
           not bad, t0)


def test_09_classification(report):
    t0 = time.perf_counter()
    r2 = cl.classify(2)
    ok = r2.counts() == {"humbert_surface": 1, "shimura_curve": 5, "cm_point": 12} and r2.all_pass()
    for l, n in ((3, 1), (5, 2), (7, 1), (13, 2)):
        r = cl.classify(l)
        ok = ok and r.counts().get("humbert_surface") == n and r.all_pass()
    ok = ok and time.perf_counter() - t0 < 120
    report(9, "l=2: 1 Humbert + 5 Shimura + 12 CM; Humbert components 1, 2, 1, 2 for "
              "l = 3, 5, 7, 13, under 2 min", ok, t0)


def test_10_sqrt_minus2_endomorphism(report):
    t0 = time.perf_counter()
    K = quadratic_field(-2)
    r = K.gen()
    a = hm.IdealLattice.order_basis(K, r)
    L = hm.glue_lattice(a, a, torsion.AntiIsometry(((1, 0), (1, 1)), 2), 2)
    R = hm.induced_endomorphism(L, (r, r), "sqrt-2", l=2)
    ok = R is not None and det(L.E) == 1 and hm.ll_property(L, R, 2)
    if ok:
        Pa, Pr = hm.char_polys(L, "sqrt-2")
        ok = list(Pr.c) == [Fraction(4), 0, 4, 0, 1] and hm.rosati_check(L, "sqrt-2")
    report(10, "sqrt(-2) is a (2, 2)-endomorphism of the glued lattice, P_r = P_a conj(P_a)",
           ok, t0)
