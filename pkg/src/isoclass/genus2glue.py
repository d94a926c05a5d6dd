"""Legendre 2-glueings, Kuhn 3-glueings and Igusa-Clebsch invariants."""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from pathlib import Path

import mpmath

from .exactmath import (NFElement, NumberField, Polynomial, factor_over_q, is_zero, poly_gcd,
                        quadratic_field, squarefree_part, to_rational)
from .torsion import AntiIsometry


class SingularCurveError(ValueError):
    pass


class KaniObstruction(ValueError):
    """The glueing is a product of elliptic curves, not a Jacobian."""


class DegenerateParameters(ValueError):
    pass


# ---------------------------------------------------------------------------
# Igusa-Clebsch invariants


@lru_cache(maxsize=None)
def _ic_table():
    path = Path(__file__).resolve().parent / "data" / "igusa_clebsch.json"
    raw = json.loads(path.read_text())
    return {int(k): tuple((tuple(m), c) for m, c in v) for k, v in raw.items()}


@dataclass(frozen=True)
class HyperellipticSextic:
    """y^2 = f(x) with f given by coefficients a0..a6 (lowest degree first)."""
    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        if len(c) > 7:
            raise ValueError("degree > 6")
        c = c + (0,) * (7 - len(c))
        object.__setattr__(self, "coeffs", c)
        if all(is_zero(a) for a in c[5:]):
            raise ValueError("f must have degree 5 or 6")

    @property
    def degree(self):
        return 6 if not is_zero(self.coeffs[6]) else 5

    def field(self):
        for a in self.coeffs:
            if isinstance(a, NFElement):
                return a.field
        return None


@dataclass(frozen=True)
class IgusaPoint:
    I2: object
    I4: object
    I6: object
    I10: object
    convention = ("I2", "I4", "I6", "I10")
    weights = (2, 4, 6, 10)

    def values(self):
        return (self.I2, self.I4, self.I6, self.I10)

    def scale(self, lam):
        return IgusaPoint(*(v * lam ** w for v, w in zip(self.values(), self.weights)))

    def absolute(self):
        """(I2^5/I10, I4^5/I10^2, I6^5/I10^3)."""
        I2, I4, I6, I10 = self.values()
        if is_zero(I10):
            raise SingularCurveError("I10 = 0")
        return (I2 ** 5 / I10, I4 ** 5 / I10 ** 2, I6 ** 5 / I10 ** 3)

    def map(self, fn):
        return IgusaPoint(*(fn(v) for v in self.values()))

    def to_complex(self, dps=50, root=None):
        out = []
        for v in self.values():
            if isinstance(v, NFElement):
                out.append(v.to_complex(dps, root))
            else:
                out.append(mpmath.mpf(Fraction(v).numerator) / Fraction(v).denominator)
        return out


def igusa_clebsch(C):
    """Igusa-Clebsch invariants (I2, I4, I6, I10) of y^2 = f(x).

    The coefficient formulas agree with the classical definitions through
    root differences (I10 is the leading coefficient^10 times the
    discriminant of the binary sextic).
    """
    if not isinstance(C, HyperellipticSextic):
        C = HyperellipticSextic(tuple(C))
    a = C.coeffs
    zero = a[0] * 0
    table = _ic_table()
    powers = []
    for x in a:
        row = [zero + 1]
        for _ in range(10):
            row.append(row[-1] * x)
        powers.append(row)
    vals = []
    for w in (2, 4, 6, 10):
        total = zero
        for exps, coeff in table[w]:
            t = zero + coeff
            for i, e in enumerate(exps):
                if e:
                    t = t * powers[i][e]
            total = total + t
        vals.append(total)
    if is_zero(vals[3]):
        raise SingularCurveError("I10 vanishes: f has a repeated root")
    return IgusaPoint(*vals)


def _common(x, y):
    """Coerce two scalars into a common ring (rationals or one number field)."""
    fx = x.field if isinstance(x, NFElement) else None
    fy = y.field if isinstance(y, NFElement) else None
    if fx is not None and fy is not None and fx != fy:
        raise ValueError("points over different number fields")
    return x, y


def weighted_eq(p, q):
    """Equality in weighted projective space with weights (2, 4, 6, 10).

    Decided exactly (no absolute invariant can be undefined): with halved
    weights w = (1, 2, 3, 5), p ~ q iff the zero patterns agree and
    p_i^{w_j} q_j^{w_i} = p_j^{w_i} q_i^{w_j} for all pairs i, j.  Since the
    weight of I10 is coprime to the others this is also sufficient.
    """
    pv, qv = p.values(), q.values()
    if is_zero(pv[3]) or is_zero(qv[3]):
        raise SingularCurveError("I10 = 0")
    w = (1, 2, 3, 5)
    for x, y in zip(pv, qv):
        _common(x, y)
        if is_zero(x) != is_zero(y):
            return False
    idx = [i for i in range(4) if not is_zero(pv[i])]
    for i in idx:
        for j in idx:
            if j <= i:
                continue
            if pv[i] ** w[j] * qv[j] ** w[i] != pv[j] ** w[i] * qv[i] ** w[j]:
                return False
    return True


# ---------------------------------------------------------------------------
# Legendre curves and 2-glueing


@dataclass(frozen=True)
class LegendreCurve:
    """y^2 = x (x - 1) (x - lambda); 2-torsion x-coordinates (inf, 0, 1, lambda)."""
    lam: object

    def __post_init__(self):
        if is_zero(self.lam) or is_zero(self.lam - 1):
            raise ValueError("lambda must differ from 0 and 1")

    @property
    def two_torsion_x(self):
        return (None, 0, 1, self.lam)

    def j_invariant(self):
        l = self.lam
        return 256 * (l * l - l + 1) ** 3 / (l * l * (l - 1) ** 2)


def legendre_glue2(a, b):
    """C(a, b): s^2 = (t^2 - 1)(t^2 - a/b)(t^2 - (a-1)/(b-1))."""
    for v in (a, b):
        if is_zero(v) or is_zero(v - 1):
            raise ValueError("degenerate Legendre parameter %r" % (v,))
    if is_zero(a - b):
        raise KaniObstruction("a = b: the quotient is a product of elliptic curves")
    r1 = a / b
    r2 = (a - 1) / (b - 1)
    one = r1 * 0 + 1
    f = Polynomial([-one, 0 * one, one]) * Polynomial([-r1, 0 * one, one]) \
        * Polynomial([-r2, 0 * one, one])
    return HyperellipticSextic(tuple(f.c))


def _mobius_to_standard(x1, x2, x3):
    """The map sending (x1, x2, x3) to (inf, 0, 1); None encodes infinity."""
    pts = (x1, x2, x3)
    if any(pts[i] is not None and pts[j] is not None and is_zero(pts[i] - pts[j])
           for i in range(3) for j in range(i + 1, 3)) or sum(p is None for p in pts) > 1:
        raise ValueError("matched 2-torsion coordinates are not distinct")

    def m(x):
        # cross-ratio (x, x1; x2, x3) = ((x - x2)(x3 - x1)) / ((x - x1)(x3 - x2))
        def diff(u, v):
            return None if (u is None or v is None) else u - v
        num = [diff(x, x2), diff(x3, x1)]
        den = [diff(x, x1), diff(x3, x2)]
        n_inf = sum(t is None for t in num)
        d_inf = sum(t is None for t in den)
        n = 1
        for t in num:
            if t is not None:
                n = n * t
        d = 1
        for t in den:
            if t is not None:
                d = d * t
        if n_inf > d_inf:
            return None
        if n_inf < d_inf:
            return n * 0
        if is_zero(d):
            return None
        return n / d
    return m


def normalize_two_torsion(E1_x, E2_x):
    """Normalize both sides to (inf, 0, 1, *) and return (a, b) = (x(P4), x(Q4))."""
    if len(E1_x) != 4 or len(E2_x) != 4:
        raise ValueError("four 2-torsion coordinates expected")
    E1_x = tuple(Fraction(x) if isinstance(x, int) else x for x in E1_x)
    E2_x = tuple(Fraction(x) if isinstance(x, int) else x for x in E2_x)
    m1 = _mobius_to_standard(*E1_x[:3])
    m2 = _mobius_to_standard(*E2_x[:3])
    a, b = m1(E1_x[3]), m2(E2_x[3])
    if a is None or b is None:
        raise ValueError("2-torsion coordinates are not distinct")
    return a, b


@dataclass(frozen=True)
class GlueResult:
    permutation: tuple  # Q-index matched to P2, P3, P4
    psi: AntiIsometry
    a: object
    b: object
    curve: object  # HyperellipticSextic or None
    point: object  # IgusaPoint or None

    @property
    def obstructed(self):
        return self.point is None


_F2_VECS = {1: (1, 0), 2: (0, 1), 3: (1, 1)}


def _perm_to_psi(perm):
    # P2, P3 basis of E1[2]; P4 = P2 + P3.  Column k is the image of P_{k+2}.
    c1, c2 = _F2_VECS[perm[0]], _F2_VECS[perm[1]]
    return AntiIsometry(((c1[0], c2[0]), (c1[1], c2[1])), 2)


def enumerate_2glueings(E1_x, E2_x):
    """All 6 anti-isometries E1[2] -> E2[2] with their glueings.

    P1 and Q1 are the origins (first coordinates); the anti-isometries are
    the bijections {P2, P3, P4} -> {Q2, Q3, Q4}.
    """
    out = []
    for perm in permutations((1, 2, 3)):
        Q = (E2_x[0],) + tuple(E2_x[k] for k in perm)
        a, b = normalize_two_torsion(E1_x, Q)
        psi = _perm_to_psi(perm)
        if is_zero(a - b):
            out.append(GlueResult(perm, psi, a, b, None, None))
            continue
        C = legendre_glue2(a, b)
        out.append(GlueResult(perm, psi, a, b, C, igusa_clebsch(C)))
    return out


# ---------------------------------------------------------------------------
# Legendre parameters of CM j-invariants


def _sqrt_in_quadratic(disc):
    """sqrt(disc) for a rational disc, as an element of Q(sqrt(d)) or a rational."""
    disc = to_rational(disc)
    num = disc.numerator * disc.denominator
    s, f = squarefree_part(num)
    if s == 1:
        return Fraction(f, disc.denominator)
    K = quadratic_field(s)
    return K([0, Fraction(f, disc.denominator)])


def legendre_lambda(j):
    """A Legendre parameter with j(lambda) = j, over Q or a quadratic field."""
    j = to_rational(j)
    base = Polynomial.from_ints([1, -1, 1])
    sextic = base ** 3 * 256 - Polynomial.from_ints([0, 0, 1, -2, 1]) * j
    facs = sorted(factor_over_q(sextic), key=lambda t: (t[0].degree(), [str(c) for c in t[0].c]))
    g = facs[0][0]
    if g.degree() == 1:
        return -g.c[0] / g.c[1]
    if g.degree() != 2:
        raise ValueError("j = %s needs a Legendre parameter of degree %d" % (j, g.degree()))
    p, r = g.c[1], g.c[0]
    return -p / 2 + _sqrt_in_quadratic(p * p - 4 * r) / 2


def lambda_orbit(lam):
    """The six parameters giving the same curve."""
    one = lam * 0 + 1
    return [lam, one - lam, one / lam, one / (one - lam), (lam - one) / lam, lam / (lam - one)]


def legendre_torsion_for_j(j):
    lam = legendre_lambda(j)
    return LegendreCurve(lam).two_torsion_x


# ---------------------------------------------------------------------------
# Kuhn 3-glueing


@dataclass(frozen=True)
class KuhnParams:
    a: object
    b: object
    c: object

    def check(self):
        a, b, c = self.a, self.b, self.c
        if is_zero(27 * c * c - b ** 3):
            raise DegenerateParameters("27 c^2 = b^3")
        if is_zero(_kuhn_d(a, b, c)):
            raise DegenerateParameters("27c^2 - 18abc + 4a^3c + 4b^3 - a^2b^2 = 0")
        return self

    def curve(self):
        a, b, c = self.a, self.b, self.c
        f = Polynomial([c, b, a, a * 0 + 1]) * Polynomial([c * c, 2 * b * c, b * b, 4 * c])
        return HyperellipticSextic(tuple(f.c))

    def scaled(self, lam):
        return KuhnParams(lam * self.a, lam ** 2 * self.b, lam ** 3 * self.c)


def _kuhn_d(a, b, c):
    return 27 * c * c - 18 * a * b * c + 4 * a ** 3 * c + 4 * b ** 3 - a * a * b * b


def _kuhn_n1(a, b, c):
    return (972 * a * c ** 3 - 405 * b * b * c * c - 216 * a * a * b * c * c + 126 * a * b ** 3 * c
            - 12 * b ** 5 - a * a * b ** 4)


def kuhn3_js(p):
    """(j(E1), j(E2)) of the two elliptic curves glued by Kuhn's family."""
    p.check()
    a, b, c = p.a, p.b, p.c
    D = _kuhn_d(a, b, c)
    j1 = 16 * _kuhn_n1(a, b, c) ** 3 / ((27 * c * c - b ** 3) ** 3 * D ** 2)
    j2 = 256 * (3 * b - a * a) ** 3 / D
    return j1, j2


@dataclass(frozen=True)
class KuhnSolution:
    params: KuhnParams
    field: object  # NumberField or None for rational solutions
    orbit_size: int

    def embeddings(self, dps=50):
        """Numeric (a, b, c) for each conjugate."""
        if self.field is None:
            return [tuple(mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator
                          for x in (self.params.a, self.params.b, self.params.c))]
        out = []
        for r in self.field.roots(dps):
            out.append(tuple(x.to_complex(dps, r) if isinstance(x, NFElement) else mpmath.mpf(x)
                             for x in (self.params.a, self.params.b, self.params.c)))
        return out


def _monic_integral_field(g):
    """A NumberField for the rational polynomial g and the image of a root of g.

    Uses y = L x so that the minimal polynomial of y is monic integral.
    """
    g = g.monic()
    n = g.degree()
    L = 1
    for k, ck in enumerate(g.c):
        d = ck.denominator
        # need L^(n-k) ck integral
        while (ck * L ** (n - k)).denominator != 1:
            L *= d
    mp_ = [int(g.c[k] * L ** (n - k)) for k in range(n + 1)]
    K = NumberField(mp_, "y")
    return K, K.gen() / L


def kuhn3_solve(j1_target, j2_target):
    """All Kuhn parameters (up to weighted scaling) gluing curves with the given j's.

    The stratum a != 0 is normalized to a = 1 and solved by a resultant in c;
    the stratum a = 0 is normalized to b = 1 (or b = 0, c = 1).
    """
    import sympy
    j1, j2 = to_rational(j1_target), to_rational(j2_target)
    B, Cs = sympy.symbols("b c")
    J1, J2 = sympy.Rational(j1.numerator, j1.denominator), sympy.Rational(j2.numerator, j2.denominator)
    sols = []

    def eqs(a):
        D = _kuhn_d(a, B, Cs)
        e2 = sympy.expand(256 * (3 * B - a * a) ** 3 - J2 * D)
        e1 = sympy.expand(16 * _kuhn_n1(a, B, Cs) ** 3 - J1 * (27 * Cs ** 2 - B ** 3) ** 3 * D ** 2)
        return e1, e2

    def candidates(e1, e2, var, other):
        res = sympy.resultant(e1, e2, other)
        if res == 0:
            raise DegenerateParameters("resultant vanishes identically")
        poly = sympy.Poly(res, var)
        _, facs = sympy.factor_list(poly)
        out = []
        for g, _ in facs:
            cs = [Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1]))
                  for v in reversed(g.all_coeffs())]
            out.append(Polynomial(cs))
        return out

    def finish(a, bval, field, e1, e2):
        # c from the gcd of both equations specialized at b
        def spec(e):
            P = sympy.Poly(e, Cs)
            coeffs = []
            for co in reversed(P.all_coeffs()):
                pb = sympy.Poly(co, B)
                v = sum((Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) * bval ** k
                         for k, x in enumerate(reversed(pb.all_coeffs()))), bval * 0)
                coeffs.append(v)
            return Polynomial(coeffs)
        g = poly_gcd(spec(e1), spec(e2))
        if g.degree() != 1:
            return []
        cval = -g.c[0] / g.c[1]
        p = KuhnParams(a, bval, cval)
        try:
            got = kuhn3_js(p)
        except DegenerateParameters:
            return []
        if got != (j1, j2):
            return []
        return [KuhnSolution(p, field, field.degree if field else 1)]

    # stratum a = 1
    e1, e2 = eqs(1)
    for g in candidates(e1, e2, B, Cs):
        if g.degree() == 1:
            bval = -g.c[0] / g.c[1]
            sols += finish(Fraction(1), bval, None, e1, e2)
        elif g.degree() in (2, 4):
            K, bval = _monic_integral_field(g)
            sols += finish(K.one(), bval, K, e1, e2)
        else:
            raise ValueError("solution field of degree %d is not supported" % g.degree())
    # stratum a = 0: scale b to 1 (if b != 0), else (0, 0, 1)
    D0 = _kuhn_d(0, 1, Cs)
    e2 = sympy.expand(256 * 27 - J2 * D0)
    e1 = sympy.expand(16 * _kuhn_n1(0, 1, Cs) ** 3 - J1 * (27 * Cs ** 2 - 1) ** 3 * D0 ** 2)
    g = sympy.gcd(sympy.Poly(e1, Cs), sympy.Poly(e2, Cs))
    if g.degree() >= 1:
        for root in sympy.Poly(g, Cs).ground_roots():
            if root.is_rational:
                p = KuhnParams(Fraction(0), Fraction(1), Fraction(int(root.p), int(root.q)))
                try:
                    if kuhn3_js(p) == (j1, j2):
                        sols.append(KuhnSolution(p, None, 1))
                except DegenerateParameters:
                    pass
    try:
        if kuhn3_js(KuhnParams(Fraction(0), Fraction(0), Fraction(1))) == (j1, j2):
            sols.append(KuhnSolution(KuhnParams(Fraction(0), Fraction(0), Fraction(1)), None, 1))
    except DegenerateParameters:
        pass
    return sols


def count_geometric(solutions):
    return sum(s.orbit_size for s in solutions)


def quadratic_subfield_sqrt(K, d):
    """An element of the quadratic field K squaring to d, or None."""
    if K.degree != 2:
        raise ValueError("quadratic field expected")
    c0, c1, _ = K.minpoly
    # generator g: g^2 + c1 g + c0 = 0, so (2g + c1)^2 = c1^2 - 4c0
    disc = c1 * c1 - 4 * c0
    s, f = squarefree_part(disc)
    s2, f2 = squarefree_part(d)
    if s != s2:
        return None
    root = (2 * K.gen() + c1) * Fraction(f2, f)
    assert root * root == d
    return root
