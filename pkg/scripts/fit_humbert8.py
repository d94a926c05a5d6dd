"""Recompute the discriminant 8 Humbert polynomial by exact interpolation.

Points come from the sextics (x^2 + b1 x + c1)(x^2 + b2 x + c2)(x^2 + b3 x + c3)
with c_i = (b_j b_k - b_i b_j - b_i b_k) / 4, whose Jacobians carry a
(2, 2)-endomorphism.  The lowest weight with a kernel gives H8; it is checked
on held-out points and on the bundled data.  Needs python-flint (dev extra).

Usage: python3 scripts/fit_humbert8.py [out.txt]   (default: compare only)
"""

import math
import random
import sys
from fractions import Fraction

import flint

from isoclass import modular
from isoclass.exactmath import Polynomial
from isoclass.genus2glue import HyperellipticSextic, igusa_clebsch


def family_point(b):
    pf = Polynomial([Fraction(1)])
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        c = Fraction(b[j] * b[k] - b[i] * b[j] - b[i] * b[k], 4)
        pf = pf * Polynomial([c, Fraction(b[i]), Fraction(1)])
    return igusa_clebsch(HyperellipticSextic(tuple(pf.c))).values()


def monomials(w):
    out = []
    for d in range(w // 10 + 1):
        for c in range((w - 10 * d) // 6 + 1):
            for b in range((w - 10 * d - 6 * c) // 4 + 1):
                r = w - 10 * d - 6 * c - 4 * b
                if r % 2 == 0:
                    out.append((r // 2, b, c, d))
    return out


def _integral(I):
    den = 1
    for v in I:
        den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    # weighted rescaling by den keeps the point; weights 2, 4, 6, 10
    return [int(Fraction(v) * den ** k) for v, k in zip(I, (2, 4, 6, 10))]


def sample(count, seed=1):
    rng = random.Random(seed)
    pts, seen = [], set()
    while len(pts) < count:
        b = tuple(2 * rng.randint(-40, 40) for _ in range(3))
        if tuple(sorted(b)) in seen:
            continue
        seen.add(tuple(sorted(b)))
        try:
            I = family_point(b)
        except ValueError:
            continue
        if I[3] != 0:
            pts.append(_integral(I))
    return pts


def fit(pts, wmin=30, wmax=200, spare=80):
    for w in range(wmin, wmax, 2):
        M = monomials(w)
        rows = [[I[0] ** m[0] * I[1] ** m[1] * I[2] ** m[2] * I[3] ** m[3] for m in M]
                for I in pts[:len(M) + spare]]
        A = flint.fmpz_mat(rows)
        if A.rank() < len(M):
            X, nul = A.nullspace()
            if nul != 1:
                raise ArithmeticError("kernel of dimension %d at weight %d" % (nul, w))
            v = [int(X[i, 0]) for i in range(len(M))]
            g = 0
            for x in v:
                g = math.gcd(g, x)
            v = [x // g for x in v]
            if next(x for x in v if x) < 0:
                v = [-x for x in v]
            return w, [(m, c) for m, c in zip(M, v) if c]
        print("weight %d: %d monomials, full rank" % (w, len(M)), flush=True)
    raise ArithmeticError("no relation up to weight %d" % wmax)


def main(argv):
    pts = sample(700)
    w, terms = fit(pts[:600])
    held = pts[600:]
    ok = all(sum(c * I[0] ** m[0] * I[1] ** m[1] * I[2] ** m[2] * I[3] ** m[3]
                 for m, c in terms) == 0 for I in held)
    print("weight %d, %d terms, held-out points vanish: %s" % (w, len(terms), ok))
    bundled = modular.load_humbert(8)
    print("matches bundled data: %s" % (sorted(bundled.terms) == sorted(terms)))
    if argv:
        with open(argv[0], "w") as fh:
            fh.write("humbert disc=8 vars=I2,I4,I6,I10 weights=2,4,6,10\n")
            for m, c in sorted(terms, reverse=True):
                fh.write("%d %d %d %d %d\n" % (m + (c,)))
        print("written to %s" % argv[0])


if __name__ == "__main__":
    main(sys.argv[1:])
