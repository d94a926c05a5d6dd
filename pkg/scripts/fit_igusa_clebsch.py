"""Refit the Igusa-Clebsch invariants as polynomials in the sextic coefficients.

The invariants are first evaluated from their definitions in the roots, then
each is solved for exactly over the monomials of the right degree and weight.
Needs python-flint (dev extra).

Usage: python3 scripts/fit_igusa_clebsch.py [out.json]   (default: print only)
"""

import itertools
import json
import random
import sys
from math import prod

import flint

MATCHINGS = []


def _matchings(s):
    if not s:
        yield []
        return
    a = s[0]
    for i in range(1, len(s)):
        rest = s[1:i] + s[i + 1:]
        for m in _matchings(rest):
            yield [(a, s[i])] + m


MATCHINGS = list(_matchings(list(range(6))))
SPLITS = [(t, tuple(i for i in range(6) if i not in t))
          for t in itertools.combinations(range(6), 3) if 0 in t]


def invariants_from_roots(r, u0):
    """(I2, I4, I6, I10) of u0 prod (x - r_i) from the symmetric root expressions."""
    def d(i, j):
        return (r[i] - r[j]) ** 2

    def tri(t):
        return d(t[0], t[1]) * d(t[1], t[2]) * d(t[2], t[0])
    I2 = u0 ** 2 * sum(prod(d(i, j) for i, j in m) for m in MATCHINGS)
    I4 = u0 ** 4 * sum(tri(a) * tri(b) for a, b in SPLITS)
    I6 = 0
    for a, b in SPLITS:
        for p in itertools.permutations(b):
            I6 += tri(a) * tri(b) * d(a[0], p[0]) * d(a[1], p[1]) * d(a[2], p[2])
    I6 *= u0 ** 6
    I10 = u0 ** 10 * prod(d(i, j) for i, j in itertools.combinations(range(6), 2))
    return I2, I4, I6, I10


def monomials(deg):
    return [e for e in itertools.product(range(deg + 1), repeat=7)
            if sum(e) == deg and sum(i * k for i, k in enumerate(e)) == 3 * deg]


def coefficients(r, u0):
    c = [u0]
    for ri in r:
        n = [0] * (len(c) + 1)
        for i, ci in enumerate(c):
            n[i + 1] += ci
            n[i] -= ri * ci
        c = n
    return c


def fit(seed=1, extra=20):
    rng = random.Random(seed)
    out = {}
    for idx, deg in enumerate((2, 4, 6, 10)):
        ms = monomials(deg)
        rows, rhs = [], []
        while len(rows) < len(ms) + extra:
            r = [rng.randint(-9, 9) for _ in range(6)]
            if len(set(r)) < 6:
                continue
            u0 = rng.randint(1, 5)
            c = coefficients(r, u0)
            rows.append([prod(c[i] ** e[i] for i in range(7)) for e in ms])
            rhs.append(invariants_from_roots(r, u0)[idx])
        A = flint.fmpq_mat(rows)
        b = flint.fmpq_mat([[x] for x in rhs])
        At = A.transpose()
        sol = (At * A).solve(At * b)
        if A * sol != b:
            raise ArithmeticError("overdetermined system for I%d is inconsistent" % deg)
        out[str(deg)] = [[list(ms[i]), int(sol[i, 0])] for i in range(len(ms)) if sol[i, 0] != 0]
        print("I%d: %d monomials, %d terms" % (deg, len(ms), len(out[str(deg)])))
    return out


def main(argv):
    res = fit()
    if argv:
        with open(argv[0], "w") as fh:
            json.dump(res, fh)
        print("written to %s" % argv[0])


if __name__ == "__main__":
    main(sys.argv[1:])
