"""Assembly of the classification report for a prime l, and the explicit answer at l = 2."""

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import modular, tables, torsion, weil
from .exactmath import NFElement, conj, is_prime, quadratic_field, NumberField
from .genus2glue import (HyperellipticSextic, IgusaPoint, enumerate_2glueings, igusa_clebsch,
                         kuhn3_solve, count_geometric, legendre_glue2, legendre_torsion_for_j,
                         quadratic_subfield_sqrt, weighted_eq)
from .hermitian import (IdealLattice, QuadraticOrder, ResourceGuard, char_polys, classify_pairs,
                        glue_lattice, humbert_components, hyperbolic_type, induced_endomorphism,
                        ll_property, rosati_check)

log = logging.getLogger(__name__)

MAX_CLASSIFY_DISC = 16


class CertificationError(RuntimeError):
    pass


@dataclass
class Check:
    name: str
    passed: bool
    millis: int
    detail: str = ""

    def to_json(self):
        d = {"name": self.name, "pass": self.passed, "millis": self.millis}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class ClassificationReport:
    l: int
    components: list
    verification: list
    omissions: list = field(default_factory=list)

    def counts(self):
        out = {}
        for c in self.components:
            out[c["kind"]] = out.get(c["kind"], 0) + 1
        return out

    def all_pass(self):
        return all(c.passed for c in self.verification)

    def to_json(self):
        d = {"l": self.l, "components": self.components,
             "verification": [c.to_json() for c in self.verification]}
        if self.omissions:
            d["omissions"] = self.omissions
        return d

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)

    def table(self):
        lines = ["l = %d" % self.l]
        for c in self.components:
            desc = ", ".join("%s=%s" % (k, _short(v)) for k, v in c.items() if k != "kind")
            lines.append("  %-16s %s" % (c["kind"], desc))
        for o in self.omissions:
            lines.append("  omitted          %s" % o)
        for v in self.verification:
            lines.append("  [%s] %s (%d ms)" % ("ok" if v.passed else "FAIL", v.name, v.millis))
        return "\n".join(lines)


def _short(v):
    s = json.dumps(v) if not isinstance(v, str) else v
    return s if len(s) < 70 else s[:67] + "..."


def run_check(name, fn):
    t = time.perf_counter()
    try:
        ok = bool(fn())
        detail = ""
    except Exception as e:  # failures are data
        ok, detail = False, "%s: %s" % (type(e).__name__, e)
    return Check(name, ok, int((time.perf_counter() - t) * 1000), detail)


# ---------------------------------------------------------------------------
# Check bundles


def weil_l2_checks():
    def quad():
        got = sorted(w.minpoly for w in weil.enumerate_quadratic_weil(2))
        return got == sorted(tables.WEIL_QUADRATIC_L2)

    def quartic():
        q = weil.enumerate_quartic_weil(2)
        v4 = sorted((w.a1, w.a2) for w in q if w.galois == "V4")
        d4 = sorted((w.a1, w.a2) for w in q if w.galois == "D4")
        return v4 == tables.WEIL_V4_L2 and d4 == tables.WEIL_D4_L2 and len(q) == 12
    return [run_check("weil.quadratic_l2", quad), run_check("weil.quartic_l2", quartic)]


def counts_checks():
    out = weil_l2_checks()
    for n, total, split in ((2, 15, (9, 6)), (3, 40, (16, 24)), (5, 156, (36, 120))):
        def fn(n=n, total=total, split=split):
            subs = torsion.enumerate_maximal_isotropic(n)
            formula = (n * n + 2 * n + 1, n ** 3 - n)
            return (len(subs) == total == sum(split)
                    and torsion.split_counts(n) == split == formula)
        out.append(run_check("torsion.isotropic_n%d" % n, fn))

    def equivariant():
        cases = torsion.equivariant_cases_l2()
        c1 = len(torsion.solve_equivariant_antiisometries(cases[1][0]))
        c4 = len(torsion.solve_equivariant_antiisometries(cases[4][0]))
        c2 = [len(torsion.solve_equivariant_antiisometries(p)) for p in cases[2]]
        return (c1, c4, c2) == (2, 1, [4, 4])
    out.append(run_check("torsion.equivariant_counts", equivariant))
    return out


def _glued_table_match(j1, j2, name):
    target = tables.glued_curve(name)
    for g in enumerate_2glueings(legendre_torsion_for_j(j1), legendre_torsion_for_j(j2)):
        if g.point is None:
            continue
        try:
            if _weighted_eq_any(g.point, target):
                return True
        except ValueError:
            continue
    return False


def _weighted_eq_any(p, q):
    """weighted_eq after moving both points into a common field (rational or one quadratic)."""
    fp = _field_of(p)
    fq = _field_of(q)
    if fp is not None and fq is not None and fp != fq:
        raise ValueError("different fields")
    return weighted_eq(p, q)


def _field_of(p):
    for v in p.values():
        if isinstance(v, NFElement):
            return v.field
    return None


def kuhn_c47_check():
    sols = kuhn3_solve(-3375, 1728)
    if count_geometric(sols) != 6:
        return False
    pairs = [s for s in sols if s.orbit_size == 2]
    if len(pairs) != 1:
        return False
    s = pairs[0]
    K = s.field
    pt = igusa_clebsch(s.params.curve())
    r7 = quadratic_subfield_sqrt(K, 7)
    if r7 is None:
        return False
    d, vals = tables.GLUED_CURVES["C-4,-7^a"]
    matches = []
    for sign in (1, -1):
        a = sign * r7
        target = IgusaPoint(*(K(x) + K(y) * a for x, y in vals))
        matches.append(weighted_eq(pt, target))
    return matches.count(True) == 1


def tables_checks():
    out = [
        run_check("glue2.C-8", lambda: _glued_table_match(8000, 8000, "C-8")),
        run_check("glue2.C-4,-8", lambda: _glued_table_match(1728, 8000, "C-4,-8")),
        run_check("glue2.C-7", lambda: _glued_table_match(-3375, -3375, "C-7")),
        run_check("kuhn3.C-4,-7", kuhn_c47_check),
    ]
    for l in (2, 3):
        out.append(run_check("modular.phi%d_diagonal" % l, lambda l=l: _phi_diagonal_check(l)))
    return out


def _phi_diagonal_check(l):
    facs, sign = modular.phi_diagonal_factorization(l)
    for D, e in facs:
        if e != modular.norm_orbit_count(D, l):
            return False
    if l == 2:
        polys = {D: modular.hilbert_class_poly(D) for D, _ in facs}
        return (sorted(facs) == [(-8, 1), (-7, 2), (-4, 1)]
                and polys[-4] == [-1728, 1] and polys[-8] == [-8000, 1] and polys[-7] == [3375, 1])
    return True


def _conjugates(p):
    """The point itself and its Galois conjugate (quadratic fields)."""
    K = _field_of(p)
    if K is None:
        return [p]
    other = -K.gen() - K.minpoly[1]
    return [p, p.map(lambda v: v.conj_via(other) if isinstance(v, NFElement) else v)]


def humbert_checks():
    H = modular.load_humbert(8)
    out = []
    for name in tables.GLUED_CURVES:
        expect = name not in tables.OFF_H8
        p = tables.glued_curve(name)
        out.append(run_check("humbert.%s.%s" % (name, "on" if expect else "off"),
                             lambda p=p, e=expect: modular.humbert_contains(H, p) == e))
    for (a1, a2) in tables.PRIMITIVE_CURVES:
        expect = a1 == 2
        p = tables.primitive_curve(a1, a2)
        out.append(run_check("humbert.primitive(%d,%d).%s" % (a1, a2, "on" if expect else "off"),
                             lambda p=p, e=expect: all(modular.humbert_contains(H, q) == e
                                                      for q in _conjugates(p))))
    for u in (2, 3, 5):
        out.append(run_check("humbert.C(u,1-u).u=%d" % u,
                             lambda u=u: modular.humbert_contains(H, shimura_c_u(u))))
    for u in (2, 3):
        out.append(run_check("humbert.C(u^2,((u-1)/(u+1))^2).u=%d" % u,
                             lambda u=u: modular.humbert_contains(H, shimura_c_u2(u))))
    return out


def shimura_c_u(u):
    u = Fraction(u)
    return igusa_clebsch(legendre_glue2(u, 1 - u))


def shimura_c_u2(u):
    u = Fraction(u)
    return igusa_clebsch(legendre_glue2(u * u, ((u - 1) / (u + 1)) ** 2))


def figure1_checks():
    return [run_check("figure1.divides_phi7", modular.figure1_divides_phi7)]


def _numeric_igusa_c(a, b):
    r1 = a / b
    r2 = (a - 1) / (b - 1)
    # (t^2 - 1)(t^2 - r1)(t^2 - r2)
    e1, e2, e3 = 1 + r1 + r2, r1 + r2 + r1 * r2, r1 * r2
    coeffs = (-e3, 0, e2, 0, -e1, 0, 1)
    return igusa_clebsch(HyperellipticSextic(tuple(mpmath.mpc(c) for c in coeffs)))


def figure1_on_h8(dps=60):
    """Sample points of the curve X give Jacobians numerically on H8."""
    H = modular.load_humbert(8)
    with mpmath.workdps(dps):
        for u, v in modular.x7_sample_points(3, dps):
            vals = _numeric_igusa_c(u, v).values()
            if modular.humbert_eval_numeric(H, vals, dps) > mpmath.mpf(10) ** (-dps // 2):
                return False
    return True


def lattice_checks():
    def sqrt_minus2_glue():
        K = quadratic_field(-2)
        r = K.gen()
        a = IdealLattice.order_basis(K, r)
        L = glue_lattice(a, a, torsion.AntiIsometry(((1, 0), (1, 1)), 2), 2)
        from .exactmath import det
        R = induced_endomorphism(L, (r, r), "sqrt-2", l=2)
        if R is None or det(L.E) != 1 or not ll_property(L, R, 2):
            return False
        char_polys(L, "sqrt-2")
        return rosati_check(L, "sqrt-2")

    def beta_glue():
        Ki = NumberField([2, -2, 1], "b1")
        K2 = quadratic_field(-2)
        b1, b2 = Ki.gen(), K2.gen()
        a1, a2 = IdealLattice.order_basis(Ki, b1), IdealLattice.order_basis(K2, b2)
        ok = True
        for psi in torsion.solve_equivariant_antiisometries(torsion.equivariant_cases_l2()[1][0]):
            L = glue_lattice(a1, a2, psi, 2)
            R = induced_endomorphism(L, (b1, b2), "beta", l=2)
            ok = ok and R is not None and rosati_check(L, "beta")
            char_polys(L, "beta")
        return ok
    return [run_check("lattice.sqrt-2_glue", sqrt_minus2_glue), run_check("lattice.beta_glue", beta_glue)]


def hermitian_checks():
    def counts(D, mode, n):
        return len(classify_pairs(QuadraticOrder(D), mode).representatives) == n
    return [run_check("hermitian.%d.%s" % (D, m), lambda D=D, m=m, n=n: counts(D, m, n))
            for D, m, n in ((-8, "definite", 2), (-8, "indefinite", 2), (-4, "definite", 1),
                            (-7, "definite", 1), (-7, "indefinite", 1))]


SUITES = {
    "counts": counts_checks,
    "tables": tables_checks,
    "humbert": humbert_checks,
    "figure1": figure1_checks,
}


def verify_suite(name):
    if name == "all":
        out = []
        for k in ("counts", "tables", "humbert", "figure1"):
            out += SUITES[k]()
        return out + lattice_checks() + hermitian_checks()
    if name not in SUITES:
        raise ValueError("unknown suite %r" % name)
    return SUITES[name]()


# ---------------------------------------------------------------------------
# Product endomorphism certificates


def product_endomorphism_check(kind):
    """E x E carries (1 1; 1 -1) and E x F (2-isogeny f) carries (0 f'; f 0)."""
    K = quadratic_field(-1)
    i = K.gen()
    E = IdealLattice.order_basis(K, i)
    trivial = torsion.AntiIsometry(((0, 0), (0, 0)), 1)
    if kind == "ExE":
        L = glue_lattice(E, E, trivial, 1)
        R = induced_endomorphism(L, ((K(1), K(1)), (K(1), K(-1))), "m", l=2)
    else:
        F = IdealLattice(K, (K.one(), 2 * i))  # f(z) = 2z : C/Z[i] -> C/(Z + 2iZ), f'(z) = z
        L = glue_lattice(E, F, trivial, 1)
        R = induced_endomorphism(L, ((0, K(1)), (K(2), 0)), "m", l=2)
    return R is not None and ll_property(L, R, 2) and rosati_check(L, "m")


def _j_in_field(D):
    """Roots of the class polynomial of D in a quadratic field, or rationals."""
    H = modular.hilbert_class_poly(D)
    if len(H) == 2:
        return [Fraction(-H[0])]
    c0, c1, _ = H
    disc = c1 * c1 - 4 * c0
    from .exactmath import squarefree_part
    s, f = squarefree_part(disc)
    K = quadratic_field(s)
    r = K.gen() * f
    return [(-c1 + r) / 2, (-c1 - r) / 2]


def _phi2_at(j1, j2):
    F = modular.load_modular_polynomial(2).polynomial
    tot = j1 * 0
    for (a, b), c in F.terms.items():
        tot = tot + c * j1 ** a * j2 ** b
    return tot


def _two_isogenous_or_equal(j1, j2):
    d = j1 - j2
    return (d == 0) or _phi2_at(j1, j2) == 0


# ---------------------------------------------------------------------------
# Reports


SHIMURA_TAGS = {
    (-4, 0): "E x E",
    (-4, 1): "C(u, 1-u)",
    (-8, 0): "E x F, F 2-isogenous to E",
    (-8, 1): "C(u^2, ((u-1)/(u+1))^2)",
    (-7, 0): "C(u, v), (u, v) on the level-2 curve of 7-isogenies",
}


def _pair_payload(p):
    d = p.to_json()
    return {"S": d["S"], "det": d["det"]}


def _cm_point_payload(name, p, orbit=1):
    d = {"kind": "cm_point", "name": name}
    d.update(tables.point_to_json(p))
    d["galois_orbit"] = orbit
    return d


def classify_l2():
    """H8 together with the 12 isolated CM points; every claim is certified."""
    H = modular.load_humbert(8)
    checks = []
    comps = []
    hc = humbert_components(2)
    assert len(hc) == 1 and hc[0].disc == 8
    comps.append(hc[0].to_json())

    # Shimura curves from the indefinite pairs
    for D in (-4, -7, -8):
        order = QuadraticOrder(D)
        cl = classify_pairs(order, "indefinite")
        if cl.unresolved:
            raise CertificationError("unresolved indefinite classes for disc %d" % D)
        for p in sorted(cl.representatives, key=lambda q: hyperbolic_type(q)):
            ht = hyperbolic_type(p)
            tag = SHIMURA_TAGS[(D, ht)]
            comps.append({"kind": "shimura_curve", "disc": D, "pair": _pair_payload(p),
                          "parity": ht, "parametrization": tag, "on_humbert": True})
    checks.append(run_check("shimura.ExE_on_H8", lambda: product_endomorphism_check("ExE")))
    checks.append(run_check("shimura.ExF_on_H8", lambda: product_endomorphism_check("ExF")))
    for u in (2, 3, 5):
        checks.append(run_check("shimura.C(u,1-u)_on_H8.u=%d" % u,
                                lambda u=u: modular.humbert_contains(H, shimura_c_u(u))))
    for u in (2, 3):
        checks.append(run_check("shimura.C(u^2,((u-1)/(u+1))^2)_on_H8.u=%d" % u,
                                lambda u=u: modular.humbert_contains(H, shimura_c_u2(u))))
    checks.append(run_check("shimura.figure1_on_H8", figure1_on_h8))

    # CM points
    cm = []
    for D1, D2 in ((-4, -7), (-4, -8), (-7, -8)):
        j1, j2 = tables.CM_J[D1], tables.CM_J[D2]
        cm.append({"kind": "cm_point", "name": "E%d x E%d" % (D1, D2), "product": True,
                   "j1": j1, "j2": j2, "galois_orbit": 1})
        checks.append(run_check("cm.E%dxE%d_off_H8" % (D1, D2),
                                lambda j1=j1, j2=j2: not _two_isogenous_or_equal(Fraction(j1),
                                                                               Fraction(j2))))
    for name in ("C-15", "C-4,-8", "C-4,-7^a"):
        p = tables.glued_curve(name)
        orbit = 2 if _field_of(p) is not None else 1
        cm.append(_cm_point_payload(name, p, orbit))
        checks.append(run_check("cm.%s_off_H8" % name,
                                lambda p=p: all(not modular.humbert_contains(H, q)
                                                for q in _conjugates(p))))
    for (a1, a2) in sorted(tables.PRIMITIVE_CURVES):
        if a1 != 1:
            continue
        p = tables.primitive_curve(a1, a2)
        for k, q in enumerate(_conjugates(p)):
            name = "primitive(%d,%d)%s" % (a1, a2, "+-"[k])
            cm.append(_cm_point_payload(name, q, 1))
            checks.append(run_check("cm.%s_off_H8" % name,
                                    lambda q=q: not modular.humbert_contains(H, q)))
    comps.extend(cm)

    # everything else lies on H8
    for name in tables.GLUED_CURVES:
        if name in tables.OFF_H8:
            continue
        p = tables.glued_curve(name)
        checks.append(run_check("absorbed.%s" % name,
                                lambda p=p: all(modular.humbert_contains(H, q) for q in _conjugates(p))))
    p = tables.primitive_curve(2, -1)
    checks.append(run_check("absorbed.primitive(2,-1)",
                            lambda: all(modular.humbert_contains(H, q) for q in _conjugates(p))))
    checks.append(run_check("absorbed.E-3xE-12",
                            lambda: _two_isogenous_or_equal(Fraction(0), Fraction(54000))))
    checks.append(run_check("absorbed.E-15_products",
                            lambda: _two_isogenous_or_equal(*_j_in_field(-15))))
    checks.append(run_check("count.cm_points", lambda: len(cm) == 12))
    checks.append(run_check("count.geometric_points",
                            lambda: sum(c["galois_orbit"] for c in cm) == 13))
    checks.append(run_check("count.shimura_curves",
                            lambda: sum(c["kind"] == "shimura_curve" for c in comps) == 5))
    failed = [c for c in checks if not c.passed]
    if failed:
        raise CertificationError("certification failed: %s" % ", ".join(c.name for c in failed))
    return ClassificationReport(2, comps, checks)


def classify(l, max_disc=MAX_CLASSIFY_DISC):
    """Components of the (l, l)-locus for a prime l; l = 2 gives the explicit answer."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    if l == 2:
        return classify_l2()
    comps = [c.to_json() for c in humbert_components(l)]
    checks = []
    omissions = []
    for w in weil.enumerate_quadratic_weil(l):
        if w.kind != "imaginary":
            continue
        D = w.disc
        if abs(D) > max_disc:
            omissions.append("hermitian pairs for disc %d (|disc| > %d)" % (D, max_disc))
            continue
        order = QuadraticOrder(D)
        for mode in ("indefinite", "definite"):
            t = time.perf_counter()
            try:
                cl = classify_pairs(order, mode)
            except ResourceGuard as e:
                omissions.append("%s pairs for disc %d: %s" % (mode, D, e))
                continue
            kind = "shimura_curve" if mode == "indefinite" else "cm_point"
            for p in cl.representatives:
                d = {"kind": kind, "disc": D, "trace": w.trace, "pair": _pair_payload(p)}
                if kind == "cm_point":
                    d["descriptor_only"] = True
                comps.append(d)
            checks.append(Check("hermitian.%d.%s" % (D, mode), True,
                                int((time.perf_counter() - t) * 1000),
                                "%d classes" % len(cl.representatives)))
            if cl.unresolved:
                omissions.append("%d %s classes for disc %d may coincide (equivalence undecided)"
                                 % (cl.unresolved, mode, D))
    for w in weil.enumerate_quartic_weil(l):
        comps.append({"kind": "cm_point", "a1": w.a1, "a2": w.a2, "galois": w.galois,
                      "minpoly": list(w.minpoly), "descriptor_only": True})
    for c in weil.enumerate_nonfield_cases(l):
        comps.append({"kind": "product_point", "t1": c.t1, "t2": c.t2,
                      "isogeny_degrees": [n for n in c.divisors if n > 1], "descriptor_only": True})
    checks.append(run_check("humbert.component_count",
                            lambda: len(humbert_components(l)) == (2 if l % 4 == 1 else 1)))
    return ClassificationReport(l, comps, checks, omissions)
