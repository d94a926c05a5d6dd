import math

import mpmath
import sympy

from isoclass import weil


def _brute_quartic(q):
    """Oracle: irreducible X^4 + c3 X^3 + c2 X^2 + q c3 X + q^2, c3 <= 0, all roots of modulus sqrt q."""
    X = sympy.Symbol("X")
    out = set()
    for c3 in range(-4 * math.isqrt(q) - 1, 1):
        for c2 in range(-6 * q, 6 * q + 1):
            coeffs = [1, c3, c2, q * c3, q * q]
            if not sympy.Poly(coeffs, X).is_irreducible:
                continue
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
            if all(abs(abs(r) - mpmath.sqrt(q)) < mpmath.mpf(10) ** -8 for r in roots):
                out.add((-c3, c2 - 2 * q))
    return out


def test_quadratic_l2():
    got = sorted(w.minpoly for w in weil.enumerate_quadratic_weil(2))
    assert got == [(-2, 0, 1), (2, -2, 1), (2, -1, 1), (2, 0, 1)]


def test_quartic_l2_types():
    q = weil.enumerate_quartic_weil(2)
    assert sum(w.galois == "V4" for w in q) == 8
    assert sum(w.galois == "D4" for w in q) == 4
    assert len(q) == 12


def test_quartic_against_brute_force():
    for l in (2, 3):
        fields = {(w.a1, w.a2) for w in weil.enumerate_quartic_weil(l)}
        assert fields == _brute_quartic(l)


def test_nonfield_cases_are_products():
    for c in weil.enumerate_nonfield_cases(2):
        assert c.t1 != c.t2
        assert 1 in c.divisors
