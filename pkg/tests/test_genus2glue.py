import random
from fractions import Fraction

import pytest
import sympy

from isoclass import genus2glue as g2
from isoclass.tables import glued_curve

X = sympy.Symbol("x")


def _random_sextic(rng):
    while True:
        c = [Fraction(rng.randint(-5, 5)) for _ in range(7)]
        if c[6] and sympy.discriminant(sympy.Poly([int(v) for v in reversed(c)], X)) != 0:
            return c


def _mobius(c, a, b, cc, d):
    """Coefficients of (cc x + d)^6 f((a x + b) / (cc x + d))."""
    f = sum(int(ci) * ((a * X + b) ** i) * ((cc * X + d) ** (6 - i)) for i, ci in enumerate(c))
    return [Fraction(int(v)) for v in reversed(sympy.Poly(sympy.expand(f), X).all_coeffs())]


def test_i10_is_discriminant_multiple():
    # oracle: I10 is a fixed multiple of the discriminant of the sextic
    rng = random.Random(1)
    ratios = set()
    for _ in range(4):
        c = _random_sextic(rng)
        p = g2.igusa_clebsch(g2.HyperellipticSextic(tuple(c)))
        disc = sympy.discriminant(sympy.Poly([int(v) for v in reversed(c)], X))
        ratios.add(Fraction(p.I10) / int(disc))
    assert len(ratios) == 1


def test_invariance_under_mobius():
    rng = random.Random(2)
    for _ in range(3):
        c = _random_sextic(rng)
        p = g2.igusa_clebsch(g2.HyperellipticSextic(tuple(c)))
        q = g2.igusa_clebsch(g2.HyperellipticSextic(tuple(_mobius(c, 2, 1, 1, 1))))
        assert g2.weighted_eq(p, q)


def test_weighted_eq_scaling():
    p = g2.IgusaPoint(Fraction(20), Fraction(-20), Fraction(-40), Fraction(8))
    assert g2.weighted_eq(p, p.scale(Fraction(3)))
    assert not g2.weighted_eq(p, g2.IgusaPoint(Fraction(20), Fraction(-20), Fraction(-40), Fraction(9)))


def test_legendre_glue_degenerate():
    with pytest.raises(g2.KaniObstruction):
        g2.legendre_glue2(Fraction(2), Fraction(2))
    with pytest.raises(ValueError):
        g2.legendre_glue2(Fraction(1), Fraction(3))


def test_c8_from_2_glueing():
    t = g2.legendre_torsion_for_j(Fraction(8000))
    target = glued_curve("C-8")
    pts = [g.point for g in g2.enumerate_2glueings(t, t) if g.point is not None]
    hits = 0
    for p in pts:
        try:
            hits += g2.weighted_eq(p, target)
        except (TypeError, ValueError):
            continue
    assert hits


def test_kuhn_geometric_count():
    sols = g2.kuhn3_solve(Fraction(-3375), Fraction(1728))
    assert g2.count_geometric(sols) == 6
    for s in sols:
        j1, j2 = g2.kuhn3_js(s.params)
        assert j1 == -3375 or getattr(j1, "is_rational", lambda: False)()


def test_kuhn_js_values_and_homogeneity():
    F = Fraction
    assert g2.kuhn3_js(g2.KuhnParams(F(0), F(0), F(1))) == (0, 0)
    p = g2.KuhnParams(F(1), F(2), F(5))
    assert g2.kuhn3_js(p) == g2.kuhn3_js(p.scaled(F(3)))
    with pytest.raises(g2.DegenerateParameters):
        g2.KuhnParams(F(1), F(3), F(1)).check()
