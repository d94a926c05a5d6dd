"""Exact arithmetic used throughout the package.

Rationals are plain ``fractions.Fraction`` values.  Number fields of degree
2 or 4 are given by a monic integer minimal polynomial, and their elements
are coordinate vectors on the power basis.  Polynomials are dense
coefficient lists (lowest degree first) over any ring whose elements
support ``+``, ``-``, ``*`` and, for division, ``/``.
"""

import math
from fractions import Fraction
from itertools import product

import mpmath

Rational = Fraction


def to_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("cannot convert %r to a rational" % (x,))


def is_square_int(n):
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def is_square_rational(x):
    x = to_rational(x)
    return x >= 0 and is_square_int(x.numerator) and is_square_int(x.denominator)


def rational_sqrt(x):
    x = to_rational(x)
    if not is_square_rational(x):
        raise ValueError("%s is not a rational square" % x)
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))


def sign_with_sqrt(A, B, q):
    """Exact sign of A + B*sqrt(q) for rationals A, B and a positive q."""
    A, B = to_rational(A), to_rational(B)
    sa = (A > 0) - (A < 0)
    sb = (B > 0) - (B < 0)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare A^2 with B^2 q
    lhs, rhs = A * A, B * B * q
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_int(n):
    """Trial-division factorization of a nonzero integer, as {p: e}."""
    n = abs(n)
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n):
    n = abs(n)
    if n == 0:
        raise ValueError("zero has infinitely many divisors")
    ds = [1]
    for p, e in factor_int(n).items():
        ds = [d * p ** k for d in ds for k in range(e + 1)]
    return sorted(ds)


def squarefree_part(n):
    """Return (s, f) with n = s * f^2 and s squarefree (sign kept in s)."""
    s, f = (1 if n > 0 else -1), 1
    for p, e in factor_int(n).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, f


# ---------------------------------------------------------------------------
# Number fields


class NumberField:
    """Q[X]/(f) for a monic irreducible integer polynomial f of degree 2 or 4.

    The coefficient list is lowest degree first.  ``embedding`` selects the
    complex root used when an element is evaluated numerically; for
    imaginary quadratic fields the default is the root with positive
    imaginary part.
    """

    def __init__(self, minpoly, name="a", embedding=None, check=True):
        minpoly = [int(c) for c in minpoly]
        if minpoly[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = tuple(minpoly)
        self.degree = len(minpoly) - 1
        self.name = name
        if self.degree not in (1, 2, 4):
            raise ValueError("only degree 2 and 4 fields are supported")
        if check and self.degree > 1 and not is_irreducible_over_q(
                Polynomial([Fraction(c) for c in minpoly])):
            raise ValueError("minimal polynomial %s is reducible" % (minpoly,))
        self._roots = None
        self._embedding = embedding
        self._conj = None

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return "NumberField(%s)" % (list(self.minpoly),)

    def __call__(self, x):
        if isinstance(x, NFElement):
            if x.field != self:
                raise ValueError("element of another field")
            return x
        if isinstance(x, (list, tuple)):
            c = [to_rational(v) for v in x] + [Fraction(0)] * (self.degree - len(x))
            return NFElement(self, c)
        return NFElement(self, [to_rational(x)] + [Fraction(0)] * (self.degree - 1))

    def gen(self):
        if self.degree == 1:
            return self(-self.minpoly[0])
        return self([0, 1])

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def roots(self, dps=60):
        if self._roots is None or self._roots[0] < dps:
            with mpmath.workdps(dps + 20):
                rs = mpmath.polyroots(list(reversed(self.minpoly)), maxsteps=400,
                                      extraprec=4 * dps)
            rs = sorted(rs, key=lambda z: (-float(mpmath.im(z)), float(mpmath.re(z))))
            self._roots = (dps, rs)
        return self._roots[1]

    def embedding_root(self, dps=60):
        rs = self.roots(dps)
        if self._embedding is None:
            return rs[0]
        return rs[self._embedding]

    def is_imaginary_quadratic(self):
        if self.degree != 2:
            return False
        c0, c1, _ = self.minpoly
        return c1 * c1 - 4 * c0 < 0

    def conjugation(self):
        """Complex conjugation as a field automorphism (CM fields only).

        Returned as the image of the generator.  For quartic fields the
        image is found numerically from the roots and then checked exactly.
        """
        if self._conj is not None:
            return self._conj
        if self.degree == 2:
            c0, c1, _ = self.minpoly
            if c1 * c1 - 4 * c0 >= 0:
                raise ValueError("real quadratic field has no CM conjugation")
            self._conj = self([-c1, -1])
            return self._conj
        rs = self.roots(80)
        if any(abs(mpmath.im(r)) < mpmath.mpf(10) ** -40 for r in rs):
            raise ValueError("field is not totally imaginary")
        images = [mpmath.conj(r) for r in rs]
        # the image of a root as a polynomial in that root: solve a Vandermonde system
        with mpmath.workdps(100):
            V = mpmath.matrix([[r ** k for k in range(4)] for r in rs])
            sol = mpmath.lu_solve(V, mpmath.matrix(images))
        coords = []
        for k in range(4):
            c = mpmath.re(sol[k])
            coords.append(Fraction(str(mpmath.nstr(c, 40))).limit_denominator(10 ** 6))
        img = self(coords)
        # exact check: the image is again a root of the minimal polynomial
        val = self.zero()
        for k, c in enumerate(self.minpoly):
            val = val + img ** k * c
        if not val.is_zero() or img == self.gen():
            raise ValueError("could not certify complex conjugation")
        if not (img.conj_via(img) == self.gen()):
            raise ValueError("conjugation is not an involution")
        self._conj = img
        return img


def quadratic_field(d, name=None):
    """Q(sqrt(d)) for a non-square integer d, generated by sqrt(d)."""
    if is_square_int(d):
        raise ValueError("d must not be a square")
    return NumberField([-d, 0, 1], name or "sqrt(%d)" % d)


class NFElement:
    __slots__ = ("field", "c")

    def __init__(self, field, coords):
        self.field = field
        self.c = tuple(coords)

    # coercion -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return NFElement(self.field, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, [a * other for a in self.c])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = self.field.degree
        prod_ = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod_[i + j] += a * b
        f = self.field.minpoly
        for k in range(2 * n - 2, n - 1, -1):
            t = prod_[k]
            if t:
                prod_[k] = Fraction(0)
                for i in range(n):
                    prod_[k - n + i] -= t * f[i]
        return NFElement(self.field, prod_[:n])

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.field.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def mult_matrix(self):
        """Matrix of multiplication by self on the power basis (columns)."""
        n = self.field.degree
        cols = []
        basis = self.field.one()
        g = self.field.gen()
        for _ in range(n):
            cols.append(list((self * basis).c))
            basis = basis * g
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        m = self.mult_matrix()
        rhs = [Fraction(1)] + [Fraction(0)] * (self.field.degree - 1)
        return NFElement(self.field, solve_linear(m, rhs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElement(self.field, [a / other for a in self.c])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        if isinstance(other, NFElement):
            return self.field == other.field and self.c == other.c
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash((self.field, self.c))

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(str(a) if k == 0 else "%s*%s^%d" % (a, self.field.name, k))
        return " + ".join(terms) if terms else "0"

    # structure -------------------------------------------------------------
    def is_zero(self):
        return not any(self.c)

    def is_rational(self):
        return not any(self.c[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.c[0]

    def trace(self):
        m = self.mult_matrix()
        return sum(m[i][i] for i in range(len(m)))

    def norm(self):
        return det(self.mult_matrix())

    def charpoly(self):
        return char_poly(self.mult_matrix())

    def conj_via(self, img):
        """Apply the automorphism sending the generator to ``img``."""
        r = self.field.zero()
        p = self.field.one()
        for a in self.c:
            if a:
                r = r + p * a
            p = p * img
        return r

    def conj(self):
        return self.conj_via(self.field.conjugation())

    def to_complex(self, dps=60, root=None):
        if root is None:
            root = self.field.embedding_root(dps)
        with mpmath.workdps(dps + 10):
            v = mpmath.mpc(0)
            p = mpmath.mpc(1)
            for a in self.c:
                v += mpmath.mpf(a.numerator) / a.denominator * p
                p *= root
        return v

    def embeddings(self, dps=60):
        return [self.to_complex(dps, r) for r in self.field.roots(dps)]


def is_zero(x):
    if isinstance(x, NFElement):
        return x.is_zero()
    return x == 0


def conj(x):
    if isinstance(x, NFElement):
        return x.conj()
    return x


# ---------------------------------------------------------------------------
# Linear algebra over fields


def solve_linear(m, rhs):
    """Solve m * x = rhs over a field by Gaussian elimination."""
    n = len(m)
    a = [list(row) + [rhs[i]] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(a[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col] if not isinstance(a[col][col], NFElement) else a[col][col].inverse()
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and not is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def det(m):
    """Determinant by fraction-free expansion (dimension <= 4 in practice)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        if is_zero(m[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), 0 * a[0][0])
             for j in range(len(b[0]))] for i in range(len(a))]


def mat_inv(m):
    n = len(m)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve_linear(m, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(r) for r in zip(*m)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def char_poly(m):
    """Monic characteristic polynomial det(X*I - m) (Faddeev-LeVerrier)."""
    n = len(m)
    zero = m[0][0] * 0
    coeffs = [None] * (n + 1)
    coeffs[n] = zero + 1
    M = [[zero] * n for _ in range(n)]
    prev = coeffs[n]
    for k in range(1, n + 1):
        # M_k = m * M_{k-1} + c_{n-k+1} I
        if k == 1:
            M = [[zero + (1 if i == j else 0) for j in range(n)] for i in range(n)]
        else:
            AM = mat_mul(m, M)
            M = [[AM[i][j] + (prev if i == j else zero) for j in range(n)] for i in range(n)]
        AM = mat_mul(m, M)
        tr = sum((AM[i][i] for i in range(n)), zero)
        prev = -tr / k
        coeffs[n - k] = prev
    return Polynomial(coeffs)


# ---------------------------------------------------------------------------
# Univariate polynomials


class Polynomial:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and is_zero(c[-1]):
            c.pop()
        self.c = c

    @classmethod
    def from_ints(cls, coeffs):
        return cls([Fraction(v) for v in coeffs])

    @classmethod
    def x(cls, one=Fraction(1)):
        return cls([one * 0, one])

    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1]

    def __len__(self):
        return len(self.c)

    def __getitem__(self, k):
        if 0 <= k < len(self.c):
            return self.c[k]
        return 0

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        if len(self.c) != len(other.c):
            return False
        return all(a == b for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self):
        return "Polynomial(%s)" % (self.c,)

    def _lift(self, other):
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.c), len(other.c))
        return Polynomial([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([a * other for a in self.c])
        if not self.c or not other.c:
            return Polynomial([])
        out = [None] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if is_zero(a):
                continue
            for j, b in enumerate(other.c):
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        z = self.c[0] * 0
        return Polynomial([z if v is None else v for v in out])

    __rmul__ = __mul__

    def __pow__(self, e):
        r = Polynomial([self.c[0] * 0 + 1]) if self.c else Polynomial([1])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __call__(self, x):
        acc = 0 * x
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self):
        return Polynomial([a * k for k, a in enumerate(self.c)][1:])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dq = len(r) - len(other.c)
        if dq < 0:
            return Polynomial([]), Polynomial(r)
        lead = other.lead()
        inv = lead.inverse() if isinstance(lead, NFElement) else Fraction(1) / lead
        q = [None] * (dq + 1)
        for k in range(dq, -1, -1):
            t = r[k + len(other.c) - 1] * inv
            q[k] = t
            if not is_zero(t):
                for i, b in enumerate(other.c):
                    r[k + i] = r[k + i] - t * b
        return Polynomial(q), Polynomial(r[:len(other.c) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        lead = self.lead()
        inv = lead.inverse() if isinstance(lead, NFElement) else Fraction(1) / lead
        return self * inv

    def map(self, fn):
        return Polynomial([fn(a) for a in self.c])

    def to_ints(self):
        out = []
        for a in self.c:
            a = a.rational() if isinstance(a, NFElement) else to_rational(a)
            if a.denominator != 1:
                raise ValueError("non-integral coefficient %s" % a)
            out.append(a.numerator)
        return out

    def is_integral(self):
        try:
            self.to_ints()
            return True
        except ValueError:
            return False


def poly_gcd(a, b):
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def yun_squarefree(f):
    """Yun's algorithm: list of (g_i, i) with f = lead * prod g_i^i."""
    f = f.monic()
    out = []
    d = f.derivative()
    a = poly_gcd(f, d)
    b = f // a
    c = d // a
    i = 1
    while b.degree() > 0:
        y = c - b.derivative()
        g = poly_gcd(b, y)
        if g.degree() > 0:
            out.append((g, i))
        b = b // g
        c = y // g
        i += 1
    return out


def rational_roots(f):
    """All rational roots of a polynomial with rational coefficients."""
    den = 1
    for a in f.c:
        den = den * to_rational(a).denominator // math.gcd(den, to_rational(a).denominator)
    ints = [int(to_rational(a) * den) for a in f.c]
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = set()
    if len(f.c) != len(ints):
        roots.add(Fraction(0))
    if len(ints) <= 1:
        return sorted(roots)
    lead, const = ints[-1], ints[0]
    for p in divisors(const):
        for q in divisors(lead):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if Polynomial([Fraction(v) for v in ints])(r) == 0:
                    roots.add(r)
    return sorted(roots)


def _integral_monic(f):
    """Rescale x -> x/L so that a rational polynomial becomes monic integral."""
    f = f.monic()
    n = f.degree()
    L = 1
    for a in f.c:
        L = L * a.denominator // math.gcd(L, a.denominator)
    return [int(f.c[k] * L ** (n - k)) for k in range(n + 1)]


def is_irreducible_over_q(f):
    """Irreducibility test for rational polynomials of degree <= 4."""
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    if n > 4:
        raise ValueError("degree > 4 not supported")
    if rational_roots(f):
        return False
    if n <= 3:
        return True
    c = _integral_monic(f)
    e, d1, d2, d3 = c[0], c[1], c[2], c[3]
    # (x^2 + a x + b)(x^2 + s x + t) with b t = e
    for b in divisors(e):
        for b_ in (b, -b):
            t = e // b_
            # a + s = d3, b + t + a s = d2
            S = d3
            P = d2 - b_ - t
            disc = S * S - 4 * P
            if not is_square_int(disc):
                continue
            rd = math.isqrt(disc)
            for a in {(S + rd) // 2, (S - rd) // 2}:
                if (S + rd) % 2:
                    continue
                s = S - a
                if a * t + b_ * s == d1:
                    return False
    return True


def factor_over_q(f):
    """Irreducible factorization over Q via sympy, as [(Polynomial, e)]."""
    import sympy
    X = sympy.Symbol("X")
    expr = sum(sympy.Rational(a.numerator, a.denominator) * X ** k
               for k, a in enumerate(to_rational(v) for v in f.c))
    _, facs = sympy.factor_list(sympy.Poly(expr, X, domain="QQ"))
    out = []
    for g, e in facs:
        cs = [Fraction(int(v.p), int(v.q)) for v in reversed(g.all_coeffs())]
        out.append((Polynomial(cs).monic(), e))
    return out


def resultant(f, g):
    """Resultant of two univariate polynomials via the Euclidean scheme."""
    if f.is_zero() or g.is_zero():
        return 0 * (f.c[0] if f.c else Fraction(0))
    res = f.c[0] * 0 + 1
    while True:
        m, n = f.degree(), g.degree()
        if n == 0:
            return res * g.lead() ** m
        r = f % g
        if r.is_zero():
            return res * 0
        if (m * n) % 2:
            res = -res
        res = res * g.lead() ** (m - r.degree())
        f, g = g, r


# ---------------------------------------------------------------------------
# Bivariate integer polynomials


class BivariateIntegerPolynomial:
    """Sparse polynomial in two variables with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    def __eq__(self, other):
        return isinstance(other, BivariateIntegerPolynomial) and self.terms == other.terms

    def __repr__(self):
        return "BivariateIntegerPolynomial(%d terms)" % len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def degrees(self):
        if not self.terms:
            return (-1, -1)
        return (max(i for i, _ in self.terms), max(j for _, j in self.terms))

    def swap(self):
        return BivariateIntegerPolynomial({(j, i): c for (i, j), c in self.terms.items()})

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return BivariateIntegerPolynomial(t)

    def __neg__(self):
        return BivariateIntegerPolynomial({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariateIntegerPolynomial({k: v * other for k, v in self.terms.items()})
        t = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                t[key] = t.get(key, 0) + a * b
        return BivariateIntegerPolynomial(t)

    def __call__(self, x, y):
        dx, dy = self.degrees()
        px = [1]
        for _ in range(dx):
            px.append(px[-1] * x)
        py = [1]
        for _ in range(dy):
            py.append(py[-1] * y)
        total = 0 * x * y
        for (i, j), c in self.terms.items():
            total = total + c * px[i] * py[j]
        return total

    def diagonal(self):
        """The univariate polynomial F(X, X) as a list of integers."""
        out = {}
        for (i, j), c in self.terms.items():
            out[i + j] = out.get(i + j, 0) + c
        n = max(out) if out else 0
        return [out.get(k, 0) for k in range(n + 1)]

    def specialize_x(self, x):
        """F(x, Y) as a coefficient list in Y."""
        dy = self.degrees()[1]
        out = [0 * x] * (dy + 1)
        for (i, j), c in self.terms.items():
            out[j] = out[j] + c * x ** i
        return out

    def as_poly_in_x(self):
        """Coefficients in X as dicts {j: c} (polynomials in Y)."""
        dx = self.degrees()[0]
        rows = [dict() for _ in range(dx + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        return rows

    def divmod_monic_x(self, divisor):
        """Divide in Z[Y][X] by a divisor whose X-leading coefficient is 1.

        Returns (quotient, remainder), both bivariate.
        """
        drows = divisor.as_poly_in_x()
        dn = len(drows) - 1
        if drows[dn] != {0: 1}:
            raise ValueError("divisor is not monic in X")
        rows = self.as_poly_in_x()
        qrows = {}
        for k in range(len(rows) - 1, dn - 1, -1):
            lead = dict(rows[k])
            if not lead:
                continue
            qrows[k - dn] = lead
            for i in range(dn + 1):
                target = rows[k - dn + i]
                for yj, cq in lead.items():
                    for yl, cd in drows[i].items():
                        key = yj + yl
                        v = target.get(key, 0) - cq * cd
                        if v:
                            target[key] = v
                        else:
                            target.pop(key, None)
        q = BivariateIntegerPolynomial({(i, j): c for i, r in qrows.items() for j, c in r.items()})
        r = BivariateIntegerPolynomial({(i, j): c for i, row in enumerate(rows[:dn]) for j, c in row.items()})
        return q, r


def _int_poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_pow(a, e):
    r = [1]
    for _ in range(e):
        r = _int_poly_mul(r, a)
    return r


def bivariate_compose_clear(F, num, den):
    """den(u)^d den(v)^d F(num(u)/den(u), num(v)/den(v)) for integer num, den.

    ``num`` and ``den`` are integer coefficient lists (lowest degree first);
    d is the larger of the two partial degrees of F.  The result is a
    bivariate integer polynomial in (u, v).
    """
    num = [int(c) for c in num]
    den = [int(c) for c in den]
    if not any(den):
        raise ZeroDivisionError("zero denominator")
    d = max(F.degrees())
    A = [_int_poly_mul(_int_poly_pow(num, i), _int_poly_pow(den, d - i)) for i in range(d + 1)]
    rows = F.as_poly_in_x()
    terms = {}
    for i, row in enumerate(rows):
        if not row:
            continue
        inner = [0] * max(len(a) for a in A)
        for j, c in row.items():
            for k, v in enumerate(A[j]):
                inner[k] += c * v
        for a, x in enumerate(A[i]):
            if x:
                for b, y in enumerate(inner):
                    if y:
                        terms[(a, b)] = terms.get((a, b), 0) + x * y
    return BivariateIntegerPolynomial(terms)


# ---------------------------------------------------------------------------
# Complex balls and certified roots


class ComplexBall:
    """Midpoint mid (mpc) and radius rad (mpf): the closed disc |z - mid| <= rad."""

    __slots__ = ("mid", "rad", "mult")

    def __init__(self, mid, rad=0, mult=1):
        self.mid = mpmath.mpc(mid)
        self.rad = mpmath.mpf(rad)
        self.mult = mult

    def __repr__(self):
        return "ComplexBall(%s +/- %s)" % (mpmath.nstr(self.mid, 15), mpmath.nstr(self.rad, 3))

    @staticmethod
    def _eps(z):
        return abs(z) * mpmath.mpf(2) ** (-mpmath.mp.prec + 2)

    def _lift(self, o):
        return o if isinstance(o, ComplexBall) else ComplexBall(o, 0)

    def __add__(self, o):
        o = self._lift(o)
        m = self.mid + o.mid
        return ComplexBall(m, self.rad + o.rad + self._eps(m))

    __radd__ = __add__

    def __neg__(self):
        return ComplexBall(-self.mid, self.rad)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        m = self.mid * o.mid
        r = self.rad * abs(o.mid) + o.rad * abs(self.mid) + self.rad * o.rad + self._eps(m)
        return ComplexBall(m, r)

    __rmul__ = __mul__

    def contains(self, z):
        return abs(mpmath.mpc(z) - self.mid) <= self.rad

    def overlaps(self, other):
        return abs(self.mid - other.mid) <= self.rad + other.rad

    def abs_bounds(self):
        a = abs(self.mid)
        return (max(a - self.rad, mpmath.mpf(0)), a + self.rad)

    def nearest_integer(self):
        """Round to the Gaussian integer nearest the midpoint, if certified."""
        if self.rad >= mpmath.mpf(1) / 4:
            return None
        re = int(mpmath.nint(mpmath.re(self.mid)))
        im = int(mpmath.nint(mpmath.im(self.mid)))
        if abs(self.mid - mpmath.mpc(re, im)) + self.rad >= mpmath.mpf(1) / 2:
            return None
        return re, im


def _certify_simple_roots(g, prec):
    """Balls around the roots of a squarefree rational polynomial g."""
    n = g.degree()
    coeffs = [to_rational(a) for a in g.c]
    with mpmath.workprec(prec):
        mp_coeffs = [mpmath.mpf(a.numerator) / a.denominator for a in reversed(coeffs)]
        approx = mpmath.polyroots(mp_coeffs, maxsteps=max(100, prec), extraprec=prec)
        if n == 1:
            approx = [approx] if not isinstance(approx, list) else approx
        dcoeffs = [mpmath.mpf(a.numerator) / a.denominator
                   for a in reversed([to_rational(v) for v in g.derivative().c])]
        balls = []
        for z in approx:
            z = mpmath.mpc(z)
            fz = mpmath.polyval(mp_coeffs, z)
            dz = mpmath.polyval(dcoeffs, z)
            if dz == 0:
                return None
            # a disc of radius n |g(z)/g'(z)| always contains a root of g
            r = n * abs(fz / dz) * 2 + abs(z) * mpmath.mpf(2) ** (-prec + 4) + mpmath.mpf(2) ** (-prec)
            balls.append(ComplexBall(z, r))
    for i in range(len(balls)):
        for j in range(i):
            if balls[i].overlaps(balls[j]):
                return None
    return balls


def complex_roots(f, precision=128, max_precision=4096):
    """Certified root balls of a nonzero rational polynomial.

    Each ball contains exactly one root; repeated roots are reported once
    with ``mult`` set to their multiplicity.
    """
    if not isinstance(f, Polynomial):
        f = Polynomial([to_rational(a) for a in f])
    if f.is_zero():
        raise ValueError("zero polynomial has no finite root set")
    if f.degree() == 0:
        return []
    parts = yun_squarefree(Polynomial([to_rational(a) for a in f.c]))
    prec = precision
    while prec <= max_precision:
        out = []
        ok = True
        for g, m in parts:
            balls = _certify_simple_roots(g, prec)
            if balls is None:
                ok = False
                break
            for b in balls:
                b.mult = m
            out.extend(balls)
        if ok and all(not out[i].overlaps(out[j]) for i in range(len(out)) for j in range(i)):
            return sorted(out, key=lambda b: (float(mpmath.re(b.mid)), float(mpmath.im(b.mid))))
        prec *= 2
    raise ArithmeticError("root isolation did not converge below %d bits" % max_precision)


# ---------------------------------------------------------------------------
# Weil polynomials and quartic Galois groups


def _int_coeffs(f):
    if isinstance(f, Polynomial):
        return f.to_ints()
    return [int(a) for a in f]


def is_weil_poly(f, q):
    """True iff every complex root of f has absolute value sqrt(q), decided exactly.

    ``f`` is monic with integer coefficients of degree 2 or 4, given as a
    Polynomial or a coefficient list (lowest degree first).
    """
    c = _int_coeffs(f)
    if c[-1] != 1:
        raise ValueError("polynomial must be monic")
    n = len(c) - 1
    if n == 2:
        c0, c1 = c[0], c[1]
        if c0 == -q and c1 == 0:
            return True
        return c0 == q and c1 * c1 <= 4 * q
    if n != 4:
        raise ValueError("degree must be 2 or 4")
    c0, c1, c2, c3 = c[0], c[1], c[2], c[3]
    if c0 == q * q and c1 == q * c3:
        # f = X^2 g(X + q/X) with g(Y) = Y^2 + c3 Y + (c2 - 2q); need both
        # roots of g real and inside [-2 sqrt q, 2 sqrt q]
        disc = c3 * c3 - 4 * (c2 - 2 * q)
        if disc < 0:
            return False
        if c3 * c3 > 16 * q:
            return False
        A = 2 * q + c2
        return sign_with_sqrt(A, 2 * c3, q) >= 0 and sign_with_sqrt(A, -2 * c3, q) >= 0
    if c0 == -q * q and c1 == -q * c3:
        # f must contain the factor X^2 - q
        quo, rem = Polynomial.from_ints(c).divmod(Polynomial.from_ints([-q, 0, 1]))
        if not rem.is_zero():
            return False
        return is_weil_poly(quo.to_ints(), q)
    return False


def _cubic_disc(p, q, r):
    """Discriminant of x^3 + p x^2 + q x + r."""
    return p * p * q * q - 4 * q ** 3 - 4 * p ** 3 * r - 27 * r * r + 18 * p * q * r


def quartic_galois_type(f):
    """Galois group of an irreducible rational quartic: V4, C4, D4, A4 or S4."""
    if not isinstance(f, Polynomial):
        f = Polynomial([to_rational(a) for a in f])
    if f.degree() != 4:
        raise ValueError("quartic expected")
    if not is_irreducible_over_q(f):
        raise ValueError("polynomial is reducible")
    f = f.monic()
    d, c, b, a = f.c[0], f.c[1], f.c[2], f.c[3]
    # resolvent cubic x^3 - b x^2 + (ac - 4d) x - (a^2 d - 4 b d + c^2)
    p3, q3, r3 = -b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)
    R = Polynomial([r3, q3, p3, Fraction(1)])
    disc = _cubic_disc(p3, q3, r3)
    roots = rational_roots(R)
    if not roots:
        return "A4" if is_square_rational(disc) else "S4"
    if len(roots) == 3:
        return "V4"
    r = roots[0]
    # Kappe-Warren: C4 iff both quadratics split over Q(sqrt(disc))
    for delta in (r * r - 4 * d, a * a - 4 * (b - r)):
        if delta == 0 or is_square_rational(delta) or is_square_rational(delta * disc):
            continue
        return "D4"
    return "C4"


def hilbert_symbol(a, b, p):
    """Hilbert symbol (a, b)_p for nonzero rationals; p a prime or -1 (infinity)."""
    a, b = to_rational(a), to_rational(b)
    if p == -1:
        return -1 if (a < 0 and b < 0) else 1

    def split(x):
        # x = p^v * u with u a p-adic unit, returned as integers (v, u mod p^3)
        num, den = x.numerator, x.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        return v, num * den  # den^-1 and den agree modulo squares

    va, ua = split(a)
    vb, ub = split(b)
    if p != 2:
        def leg(u):
            u %= p
            return 1 if pow(u, (p - 1) // 2, p) == 1 else -1
        s = (-1) ** (va * vb * ((p - 1) // 2))
        return s * leg(ua) ** vb * leg(ub) ** va
    ua %= 8
    ub %= 8
    eps = lambda u: ((u - 1) // 2) % 2
    om = lambda u: ((u * u - 1) // 8) % 2
    e = eps(ua) * eps(ub) + va * om(ub) + vb * om(ua)
    return -1 if e % 2 else 1


def is_norm_from_quadratic(x, D):
    """Whether the rational x is a norm from Q(sqrt(D)) (Hasse principle)."""
    x = to_rational(x)
    if x == 0:
        return True
    primes = {2} | set(factor_int(D)) | set(factor_int(x.numerator)) | set(factor_int(x.denominator))
    for p in [-1] + sorted(primes):
        if hilbert_symbol(x, D, p) != 1:
            return False
    return True
