"""Weil l-numbers of degree 2 and 4, and the trace pairs of the non-field case."""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import (NumberField, Polynomial, divisors, is_irreducible_over_q,
                        is_prime, is_square_int, is_weil_poly, quartic_galois_type,
                        sign_with_sqrt)


@dataclass(frozen=True)
class QuadraticWeil:
    q: int
    trace: int
    kind: str  # "real" or "imaginary"
    minpoly: tuple  # integer coefficients, lowest degree first

    @property
    def disc(self):
        return self.trace * self.trace - 4 * self.q if self.kind == "imaginary" else 4 * self.q

    def to_json(self):
        return {"minpoly": list(self.minpoly), "kind": self.kind, "trace": self.trace,
                "a1": self.trace, "a2": None, "galois": None}


@dataclass(frozen=True)
class QuarticWeil:
    q: int
    a1: int
    a2: int
    minpoly: tuple
    galois: str

    def to_json(self):
        return {"minpoly": list(self.minpoly), "a1": self.a1, "a2": self.a2,
                "galois": self.galois}


@dataclass(frozen=True)
class NonFieldCase:
    t1: int
    t2: int
    q: int
    divisors: tuple
    p: int = None
    tag: str = None

    def to_json(self):
        return {"t1": self.t1, "t2": self.t2, "divisors": list(self.divisors)}


def _check_q(q):
    if not is_prime(q):
        raise ValueError("q = %r is not prime" % (q,))
    # boundary traces t^2 = 4q only exist for square q
    assert not is_square_int(q)


def quartic_minpoly(q, a1, a2):
    """X^4 - a1 X^3 + (2q + a2) X^2 - q a1 X + q^2, from x^2 - beta x + q = 0."""
    return (q * q, -q * a1, 2 * q + a2, -a1, 1)


def strictly_inside(t, q):
    """-2 sqrt(q) < t < 2 sqrt(q) for an integer t, decided exactly."""
    return t * t < 4 * q


def enumerate_quadratic_weil(q):
    """One representative of each class {+-x, +-conj(x)} of quadratic Weil q-numbers."""
    _check_q(q)
    out = [QuadraticWeil(q, 0, "real", (-q, 0, 1))]
    t = 0
    while t * t < 4 * q:
        out.append(QuadraticWeil(q, t, "imaginary", (q, -t, 1)))
        t += 1
    for w in out:
        assert is_weil_poly(list(w.minpoly), q)
    return sorted(out, key=lambda w: (w.kind, w.trace))


def _beta_roots_inside(a1, a2, q):
    """Both roots of Y^2 - a1 Y + a2 in the open interval (-2 sqrt q, 2 sqrt q)."""
    # g(+-2 sqrt q) = 4q + a2 -+ 2 a1 sqrt q > 0 and |vertex| = |a1|/2 < 2 sqrt q
    if a1 * a1 >= 16 * q:
        return False
    return (sign_with_sqrt(4 * q + a2, -2 * a1, q) > 0
            and sign_with_sqrt(4 * q + a2, 2 * a1, q) > 0)


def enumerate_quartic_weil(q):
    """All (a1, a2) with a1 >= 0 giving an irreducible quartic Weil q-polynomial.

    beta = x + q/x runs over real quadratic integers with both conjugates in
    (-2 sqrt q, 2 sqrt q); its trace a1 and norm a2 are then bounded by
    |a1| < 4 sqrt q and |a2| < 4q.
    """
    _check_q(q)
    out = []
    a1 = 0
    while a1 * a1 < 16 * q:
        for a2 in range(-4 * q, 4 * q + 1):
            disc = a1 * a1 - 4 * a2
            if disc <= 0 or is_square_int(disc):
                continue
            if not _beta_roots_inside(a1, a2, q):
                continue
            mp_ = quartic_minpoly(q, a1, a2)
            f = Polynomial.from_ints(mp_)
            if not is_irreducible_over_q(f):
                continue
            assert is_weil_poly(list(mp_), q)
            out.append(QuarticWeil(q, a1, a2, mp_, quartic_galois_type(f)))
        a1 += 1
    return sorted(out, key=lambda w: (w.galois, w.a1, w.a2))


def enumerate_nonfield_cases(q):
    """Pairs t1 > t2 of integers strictly inside (-2 sqrt q, 2 sqrt q)."""
    _check_q(q)
    m = math.isqrt(4 * q)
    traces = [t for t in range(-m, m + 1) if strictly_inside(t, q)]
    out = []
    for t1 in traces:
        for t2 in traces:
            if t1 > t2:
                out.append(NonFieldCase(t1, t2, q, tuple(divisors(t1 - t2))))
    return sorted(out, key=lambda c: (-c.t1, -c.t2))


@dataclass(frozen=True)
class NormalizedCase:
    """One of the four normalized trace cases of the non-field analysis at l = 2.

    beta_j satisfies beta_j^2 = t_j beta_j - 2; ``sign2`` is the sign of
    Im beta_2 (both signs are listed when both need to be considered).
    """
    index: int
    t1: int
    t2: int
    beta1: str
    beta2: str
    p: int
    n_values: tuple
    T: int
    sign2: tuple = field(default=(1, -1))


def normalize_case_l2():
    """The four cases (beta1, beta2, p, n, T) for q = 2 after normalization.

    Normalization: Tr beta1 > Tr beta2, |Tr beta1| >= |Tr beta2|,
    Im beta1 > 0, a prime p dividing n | (t1 - t2), and T the common trace
    residue modulo p.  Derived from the admissible trace pairs.
    """
    cases = []
    for c in enumerate_nonfield_cases(2):
        if abs(c.t1) < abs(c.t2) or c.t1 == c.t2:
            continue
        for p in sorted(set(d for d in c.divisors if d > 1 and is_prime(d))):
            ns = tuple(n for n in c.divisors if n > 1 and n % p == 0)
            T = c.t1 % p
            cases.append((c.t1, c.t2, p, ns, T))
    names = {2: "1+i", 1: "(1+i*sqrt7)/2", 0: "i*sqrt2", -1: "(-1+-i*sqrt7)/2", -2: "-1+-i"}
    names2 = {0: "+-i*sqrt2", -1: "(-1+-i*sqrt7)/2", -2: "-1+-i"}
    order = {(2, 0): 1, (2, -1): 2, (2, -2): 3, (1, -1): 4}
    out = []
    for t1, t2, p, ns, T in cases:
        idx = order.get((t1, t2))
        if idx is None:
            continue
        if p == 3 and T == 2:
            T = -1
        out.append(NormalizedCase(idx, t1, t2, names[t1], names2[t2], p, ns, T))
    out.sort(key=lambda c: c.index)
    return out


def quadratic_field_of(w):
    """The number field generated by a quadratic Weil number."""
    return NumberField(list(w.minpoly), "x")
