"""Class polynomials, classical modular polynomials and Humbert-surface data.

Bundled data files live in ``isoclass/data``; another directory can be
selected with ``set_data_dir`` or the ``ISOCLASS_DATA`` environment variable.
"""

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import mpmath

from .exactmath import (BivariateIntegerPolynomial, ComplexBall, NFElement, Polynomial,
                        bivariate_compose_clear, is_prime, is_square_int)

_DATA_DIR = None


def set_data_dir(path):
    global _DATA_DIR
    _DATA_DIR = Path(path) if path else None
    _load_phi_cached.cache_clear()
    _load_humbert_cached.cache_clear()


def data_dir():
    if _DATA_DIR is not None:
        return _DATA_DIR
    env = os.environ.get("ISOCLASS_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


class DataError(Exception):
    pass


# ---------------------------------------------------------------------------
# Binary quadratic forms and class polynomials


@dataclass(frozen=True)
class BinaryQuadraticForm:
    A: int
    B: int
    C: int

    @property
    def disc(self):
        return self.B * self.B - 4 * self.A * self.C

    def is_reduced(self):
        A, B, C = self.A, self.B, self.C
        if not (abs(B) <= A <= C):
            return False
        if (abs(B) == A or A == C) and B < 0:
            return False
        return True

    def tau(self, dps):
        with mpmath.workdps(dps):
            return (-self.B + mpmath.sqrt(mpmath.mpf(self.disc))) / (2 * self.A)


def _check_disc(D):
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("%r is not a negative discriminant" % (D,))


def reduced_forms(D):
    """All primitive reduced forms of discriminant D < 0."""
    _check_disc(D)
    out = []
    A = 1
    while 3 * A * A <= -D:
        for B in range(-A + 1, A + 1):
            if (B - D) % 2:
                continue
            num = B * B - D
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A:
                continue
            if math.gcd(math.gcd(A, abs(B)), C) != 1:
                continue
            f = BinaryQuadraticForm(A, B, C)
            if f.is_reduced():
                out.append(f)
        A += 1
    return sorted(out, key=lambda f: (f.A, f.B))


def class_number(D):
    return len(reduced_forms(D))


def _ball_inverse(b):
    m = abs(b.mid)
    if b.rad >= m:
        raise ZeroDivisionError("ball contains zero")
    inv = 1 / b.mid
    return ComplexBall(inv, b.rad / (m * (m - b.rad)) + abs(inv) * mpmath.mpf(2) ** (-mpmath.mp.prec + 2))


def j_ball(tau, prec):
    """The modular j-invariant at tau (Im tau >= sqrt(3)/2) as a ComplexBall.

    Uses j = E4^3 / Delta with E4 as a Lambert series and Delta from the
    pentagonal expansion of the Euler product, with explicit tail bounds.
    """
    with mpmath.workprec(prec + 20):
        tau = mpmath.mpc(tau)
        q = mpmath.exp(2j * mpmath.pi * tau)
        aq = abs(q)
        if aq > mpmath.mpf("0.005"):
            raise ValueError("tau must lie in the fundamental domain")
        eps = mpmath.mpf(2) ** (-prec - 10)
        # E4 = 1 + 240 sum n^3 q^n / (1 - q^n)
        E4 = mpmath.mpc(1)
        n = 1
        qn = q
        while True:
            E4 += 240 * n ** 3 * qn / (1 - qn)
            n += 1
            qn *= q
            tail = 480 * (n ** 3) * abs(qn) * 2
            if tail < eps:
                break
        e4 = ComplexBall(E4, tail)
        # prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers
        P = mpmath.mpc(1)
        k = 1
        while True:
            s = -1 if k % 2 else 1
            t1 = q ** (k * (3 * k - 1) // 2)
            t2 = q ** (k * (3 * k + 1) // 2)
            P += s * (t1 + t2)
            k += 1
            nxt = aq ** (k * (3 * k - 1) // 2)
            if nxt * 4 < eps:
                break
        p = ComplexBall(P, nxt * 4)
        p2 = p * p
        p4 = p2 * p2
        p8 = p4 * p4
        p24 = p8 * p8 * p8
        delta = p24 * ComplexBall(q, abs(q) * mpmath.mpf(2) ** (-prec))
        j = e4 * e4 * e4 * _ball_inverse(delta)
    return j


def hilbert_class_poly(D, max_prec=8192):
    """Integer coefficients (lowest degree first) of H_D, by certified rounding."""
    _check_disc(D)
    if D < -400:
        raise ValueError("|D| > 400 exceeds the precision budget")
    forms = reduced_forms(D)
    h = len(forms)
    # the leading coefficient sizes grow like exp(pi sqrt|D| sum 1/A)
    est = sum(math.pi * math.sqrt(-D) / f.A for f in forms) / math.log(2)
    prec = int(est) + 64
    while prec <= max_prec:
        with mpmath.workprec(prec + 40):
            roots = [j_ball(f.tau(int(prec * 0.31) + 20), prec) for f in forms]
            coeffs = [ComplexBall(1, 0)]
            for r in roots:
                new = [ComplexBall(0, 0) for _ in range(len(coeffs) + 1)]
                for i, c in enumerate(coeffs):
                    new[i + 1] = new[i + 1] + c
                    new[i] = new[i] - c * r
                coeffs = new
            ints = []
            ok = True
            for c in coeffs:
                v = c.nearest_integer()
                if v is None or v[1] != 0:
                    ok = False
                    break
                ints.append(v[0])
        if ok:
            poly = ints
            assert len(poly) == h + 1 and poly[-1] == 1
            return poly
        prec *= 2
    raise ArithmeticError("precision cap exceeded for D = %d" % D)


def order_units(D):
    return {-3: 6, -4: 4}.get(D, 2)


def norm_form(D):
    """(a, b, c) with N(x + y w) = a x^2 + b x y + c y^2 for w = (D + sqrt D)/2."""
    return 1, D, (D * D - D) // 4


def norm_orbit_count(D, l):
    """Number of elements of norm l in the order of discriminant D, modulo units."""
    _check_disc(D)
    a, b, c = norm_form(D)
    count = 0
    ymax = math.isqrt(4 * l // (-D)) + 1
    for y in range(-ymax, ymax + 1):
        # (x + y D/2)^2 + |D| y^2 / 4 = l
        rest = 4 * l + D * y * y
        if rest < 0:
            continue
        r = math.isqrt(rest)
        for s in {r, -r}:
            if r * r != rest:
                continue
            if (s - D * y) % 2 == 0:
                x = (s - D * y) // 2
                if a * x * x + b * x * y + c * y * y == l:
                    count += 1
    return count // order_units(D)


def discriminants_with_norm(l):
    """Discriminants of all imaginary quadratic orders containing an element of norm l."""
    out = set()
    t = 0
    while t * t < 4 * l:
        delta = t * t - 4 * l
        f = 1
        while f * f <= -delta:
            if delta % (f * f) == 0 and (delta // (f * f)) % 4 in (0, 1):
                out.add(delta // (f * f))
            f += 1
        t += 1
    return sorted(out, reverse=True)


def _int_poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _int_poly_divmod(a, b):
    """Division of integer polynomials by a monic divisor."""
    a = list(a)
    if b[-1] != 1:
        raise ValueError("monic divisor expected")
    if len(a) < len(b):
        return [0], a
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        t = a[k + len(b) - 1]
        q[k] = t
        if t:
            for i, c in enumerate(b):
                a[k + i] -= t * c
    return q, a[:len(b) - 1]


def phi_diagonal_factorization(l, data=None):
    """Factor Phi_l(X, X) as sign * prod H_D^e(D) and verify exactly.

    Returns (list of (D, e), sign).
    """
    data = data or load_modular_polynomial(l)
    diag = data.polynomial.diagonal()
    rem = list(diag)
    product = [1]
    out = []
    for D in discriminants_with_norm(l):
        H = hilbert_class_poly(D)
        e = norm_orbit_count(D, l)
        for _ in range(e):
            q, r = _int_poly_divmod(rem, H)
            if any(r):
                raise DataError("H_%d does not divide Phi_%d(X, X)" % (D, l))
            rem = q
            product = _int_poly_mul(product, H)
        out.append((D, e))
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    if len(rem) != 1 or abs(rem[0]) != 1:
        raise DataError("reconstruction of Phi_%d(X, X) failed" % l)
    sign = rem[0]
    if [sign * c for c in product] != diag[:len(product)] or len(product) != len(diag):
        raise DataError("reconstruction of Phi_%d(X, X) failed" % l)
    return out, sign


# ---------------------------------------------------------------------------
# q-expansions and modular polynomials


def _sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def j_qexp(N):
    """Coefficients of j = sum c_n q^n for n = -1..N, as a list starting at q^-1."""
    M = N + 2
    E4 = [1] + [240 * _sigma3(n) for n in range(1, M)]
    E4c = E4
    for _ in range(2):
        E4c = _int_poly_mul(E4c, E4)[:M]
    # prod (1 - q^n)^24 up to q^(M-1)
    P = [1] + [0] * (M - 1)
    for n in range(1, M):
        for _ in range(24):
            for k in range(M - 1, n - 1, -1):
                P[k] -= P[k - n]
    # invert P (P[0] = 1)
    inv = [0] * M
    inv[0] = 1
    for k in range(1, M):
        inv[k] = -sum(P[i] * inv[k - i] for i in range(1, k + 1))
    j = _int_poly_mul(E4c, inv)[:M]
    # j = q^-1 * j_series
    return j[:N + 2]


def modular_polynomial_qexp(l):
    """Phi_l computed from exact q-expansions (power sums and Newton identities)."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    N = l * (l + 1)
    jc = j_qexp(N + 1)  # index k <-> exponent k - 1

    # J[k] = j^k as dict exponent -> coefficient, exponents -k .. N-k+1
    J = [{0: 1}]
    for k in range(1, N + 1):
        prev = J[-1]
        top = N - k + 1
        cur = {}
        for e1, c1 in prev.items():
            for idx, c2 in enumerate(jc):
                e = e1 + idx - 1
                if e > top:
                    break
                if c2:
                    cur[e] = cur.get(e, 0) + c1 * c2
        J.append(cur)

    def as_poly_in_j(series):
        """Express a Laurent tail (exponents <= 0) as a polynomial in j."""
        s = {e: c for e, c in series.items() if e <= 0 and c}
        poly = {}
        while True:
            neg = [e for e in s if e < 0 and s[e]]
            if not neg:
                break
            e = min(neg)
            c = s[e]
            k = -e
            poly[k] = poly.get(k, 0) + c
            for e2, c2 in J[k].items():
                if e2 <= 0:
                    s[e2] = s.get(e2, 0) - c * c2
        poly[0] = poly.get(0, 0) + s.get(0, 0)
        deg = max(poly)
        return [Fraction(poly.get(k, 0)) for k in range(deg + 1)]

    power_sums = []
    for m in range(1, l + 2):
        series = {}
        for e, c in J[m].items():
            if e <= 0:
                series[l * e] = series.get(l * e, 0) + c
        for e, c in J[m].items():
            if e <= 0 and e % l == 0:
                series[e // l] = series.get(e // l, 0) + l * c
        power_sums.append(Polynomial(as_poly_in_j(series)))

    # Newton identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    e = [Polynomial([Fraction(1)])]
    for k in range(1, l + 2):
        acc = Polynomial([])
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc * Fraction(1, k))
    terms = {}
    for k in range(l + 2):
        sign = -1 if k % 2 else 1
        for jdeg, c in enumerate(e[k].c):
            if c:
                if c.denominator != 1:
                    raise ArithmeticError("non-integral coefficient in Phi_%d" % l)
                terms[(l + 1 - k, jdeg)] = sign * int(c)
    return BivariateIntegerPolynomial(terms)


@dataclass(frozen=True)
class ModularPolynomialData:
    l: int
    polynomial: BivariateIntegerPolynomial
    source: str


def write_modular_polynomial(path, l, F):
    with open(path, "w") as fh:
        fh.write("phi l=%d\n" % l)
        for (i, j), c in sorted(F.terms.items(), reverse=True):
            if i >= j:
                fh.write("%d %d %d\n" % (i, j, c))


def parse_modular_polynomial(text, source="<string>"):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("phi l="):
        raise DataError("%s: missing 'phi l=<l>' header" % source)
    try:
        l = int(lines[0].split("=", 1)[1])
    except ValueError:
        raise DataError("%s: malformed header" % source)
    terms = {}
    for k, ln in enumerate(lines[1:], 2):
        parts = ln.split()
        if len(parts) != 3:
            raise DataError("%s:%d: expected 'i j coefficient'" % (source, k))
        i, j, c = (int(p) for p in parts)
        if i < j:
            raise DataError("%s:%d: entries must satisfy i >= j" % (source, k))
        terms[(i, j)] = c
        terms[(j, i)] = c
    return l, BivariateIntegerPolynomial(terms)


def verify_modular_polynomial(l, F):
    """Integrity checks: degrees, symmetry, Kronecker congruence, CM values."""
    if F.degrees() != (l + 1, l + 1):
        raise DataError("Phi_%d must have degree %d in each variable" % (l, l + 1))
    if F.swap() != F:
        raise DataError("Phi_%d is not symmetric" % l)
    # Phi_l = (X^l - Y)(X - Y^l) mod l
    kron = {(l + 1, 0): 1, (l, l): -1, (1, 1): -1, (0, l + 1): 1}
    for key in set(F.terms) | set(kron):
        if (F.terms.get(key, 0) - kron.get(key, 0)) % l:
            raise DataError("Phi_%d fails the Kronecker congruence at %s" % (l, key))
    if F.terms.get((l + 1, 0)) != 1:
        raise DataError("Phi_%d is not monic" % l)
    if l == 2:
        if F(8000, 8000) != 0:
            raise DataError("Phi_2(8000, 8000) != 0")
        if F(0, 54000) != 0:
            raise DataError("Phi_2(0, 54000) != 0")


@lru_cache(maxsize=None)
def _load_phi_cached(l, directory):
    path = Path(directory) / ("phi_%d.txt" % l)
    if not path.exists():
        raise DataError("no bundled modular polynomial for l = %d (%s)" % (l, path))
    lval, F = parse_modular_polynomial(path.read_text(), str(path))
    if lval != l:
        raise DataError("%s: header says l=%d" % (path, lval))
    verify_modular_polynomial(l, F)
    return ModularPolynomialData(l, F, str(path))


def load_modular_polynomial(l):
    return _load_phi_cached(l, str(data_dir()))


# ---------------------------------------------------------------------------
# The genus-2 curve X of 7-isogenies with level-2 structure


def legendre_j_numden():
    """j(a) = 2^8 (a^2 - a + 1)^3 / (a^2 (a - 1)^2) as integer coefficient lists."""
    base = [1, -1, 1]
    num = _int_poly_mul(_int_poly_mul(base, base), base)
    num = [256 * c for c in num]
    den = _int_poly_mul([0, 0, 1], [1, -2, 1])
    return num, den


def load_x7_curve():
    path = data_dir() / "x7_level2.txt"
    lines = [ln.split() for ln in path.read_text().splitlines()[1:] if ln.strip()]
    return BivariateIntegerPolynomial({(int(i), int(j)): int(c) for i, j, c in lines})


def phi7_legendre_numerator():
    F = load_modular_polynomial(7).polynomial
    num, den = legendre_j_numden()
    return bivariate_compose_clear(F, num, den)


def figure1_divides_phi7(return_quotient=False):
    """Exact division of the numerator of Phi_7(j(u), j(v)) by the curve X."""
    G = load_x7_curve()
    P = phi7_legendre_numerator()
    q, r = P.divmod_monic_x(G)
    ok = not r.terms
    if return_quotient:
        return ok, q
    return ok


def x7_sample_points(count=3, dps=50, seed_values=(3, 5, 7, 11)):
    """Numeric points (u, v) on X obtained by solving in v for fixed rational u."""
    G = load_x7_curve()
    pts = []
    with mpmath.workdps(dps):
        for u in seed_values[:count]:
            coeffs = G.specialize_x(Fraction(u))
            roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator
                                      for c in reversed(coeffs)], maxsteps=400, extraprec=400)
            pts.append((mpmath.mpf(u), roots[0]))
    return pts


def j_from_legendre(a):
    return 256 * (a * a - a + 1) ** 3 / (a * a * (a - 1) ** 2)


# ---------------------------------------------------------------------------
# Humbert surfaces


@dataclass(frozen=True)
class HumbertSurfaceData:
    disc: int
    variables: tuple
    weights: tuple
    terms: tuple  # ((e2, e4, e6, e10), coefficient)
    source: str = ""

    @property
    def weight(self):
        e, _ = self.terms[0]
        return sum(a * w for a, w in zip(e, self.weights))


def parse_humbert(text, source="<string>"):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    head = lines[0].split()
    if not head or head[0] != "humbert":
        raise DataError("%s: missing humbert header" % source)
    fields = dict(p.split("=", 1) for p in head[1:])
    try:
        disc = int(fields["disc"])
        variables = tuple(fields["vars"].split(","))
        weights = tuple(int(w) for w in fields["weights"].split(","))
    except (KeyError, ValueError):
        raise DataError("%s: malformed humbert header" % source)
    terms = []
    for ln in lines[1:]:
        parts = [int(p) for p in ln.split()]
        if len(parts) != len(weights) + 1:
            raise DataError("%s: bad term line %r" % (source, ln))
        terms.append((tuple(parts[:-1]), parts[-1]))
    if not terms:
        raise DataError("%s: empty polynomial" % source)
    ws = {sum(a * w for a, w in zip(e, weights)) for e, _ in terms}
    if len(ws) != 1:
        raise DataError("%s: polynomial is not weighted homogeneous" % source)
    return HumbertSurfaceData(disc, variables, weights, tuple(terms), source)


@lru_cache(maxsize=None)
def _load_humbert_cached(disc, directory):
    path = Path(directory) / ("humbert_%d.txt" % disc)
    if not path.exists():
        raise DataError("no Humbert data for discriminant %d" % disc)
    return parse_humbert(path.read_text(), str(path))


def load_humbert(disc=8):
    return _load_humbert_cached(disc, str(data_dir()))


IC_CONVENTION = ("I2", "I4", "I6", "I10")


def humbert_eval(H, p):
    """Exact value of the Humbert polynomial at an Igusa-Clebsch point."""
    conv = getattr(p, "convention", IC_CONVENTION)
    if tuple(conv) != tuple(H.variables):
        raise ValueError("invariant convention %s does not match data %s" % (conv, H.variables))
    vals = p.values() if hasattr(p, "values") else tuple(p)
    if vals[3] == 0:
        raise ValueError("I10 = 0: not the Jacobian of a smooth curve")
    powers = []
    for v, _ in zip(vals, H.weights):
        row = [v * 0 + 1]
        powers.append(row)
    maxe = [max(e[k] for e, _ in H.terms) for k in range(4)]
    for k in range(4):
        for _ in range(maxe[k]):
            powers[k].append(powers[k][-1] * vals[k])
    total = vals[0] * 0
    for e, c in H.terms:
        t = powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * powers[3][e[3]]
        total = total + t * c
    return total


def humbert_contains(H, p):
    v = humbert_eval(H, p)
    return v == 0


def humbert_eval_numeric(H, vals, dps=50):
    """Relative size of the Humbert polynomial at complex invariants."""
    with mpmath.workdps(dps):
        vals = [mpmath.mpc(v) for v in vals]
        tot = mpmath.mpc(0)
        scale = mpmath.mpf(0)
        for e, c in H.terms:
            t = c * vals[0] ** e[0] * vals[1] ** e[1] * vals[2] ** e[2] * vals[3] ** e[3]
            tot += t
            scale += abs(t)
        return abs(tot) / scale
