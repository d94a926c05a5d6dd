"""O-lattices with Riemann forms over quadratic and quartic CM fields.

For an imaginary quadratic order O = Z[w] of discriminant D (w = (D + sqrt D)/2)
a pair (M, S) consists of an O-module M in K^2 and a Hermitian matrix S
with entries in O.  With delta = w - conj(w) = sqrt(D) (Im delta > 0) the
Riemann form is E(u, v) = Tr_{K/Q}(u^T S conj(v) / delta).
Vectors of K^2 are identified with Q^4 through the power-basis coordinates
(u0, u1, v0, v1) of u = u0 + u1 w and v = v0 + v1 w.
"""

import functools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product


from .exactmath import (NFElement, NumberField, Polynomial, char_poly, conj, det, hilbert_symbol,
                        identity, is_norm_from_quadratic, is_prime, is_square_int, mat_inv,
                        mat_mul, solve_linear, squarefree_part, transpose)
from .torsion import AntiIsometry

log = logging.getLogger(__name__)

MAX_ENUM_DISC = 64
DEFAULT_HEIGHT = 40
ESCALATED_HEIGHT = 160


class ResourceGuard(MemoryError):
    pass


class GlueError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Integer and rational lattices


def hnf_rows(rows):
    """Row Hermite normal form of the Z-span of integer rows (zero rows dropped)."""
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    width = len(A[0])
    out = []
    for col in range(width):
        while True:
            nz = [r for r in A if r[col] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: abs(r[col]))
            for r in nz:
                if r is not p:
                    q = r[col] // p[col]
                    for k in range(width):
                        r[k] -= q * p[k]
            A = [r for r in A if any(r)]
        nz = [r for r in A if r[col] != 0]
        if nz:
            p = nz[0]
            if p[col] < 0:
                p = [-x for x in p]
            A = [r for r in A if r is not nz[0]]
            out.append((col, p))
    for i in range(len(out)):
        ci, ri = out[i]
        for k in range(i):
            ck, rk = out[k]
            q = rk[ci] // ri[ci]
            if q:
                out[k] = (ck, [x - q * y for x, y in zip(rk, ri)])
    return [r for _, r in out]


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class ZLattice:
    """A full-rank Z-lattice in Q^n, stored by its canonical rational HNF basis."""

    __slots__ = ("basis", "n")

    def __init__(self, gens):
        gens = [[Fraction(x) for x in g] for g in gens]
        n = len(gens[0])
        den = 1
        for g in gens:
            for x in g:
                den = _lcm(den, x.denominator)
        H = hnf_rows([[int(x * den) for x in g] for g in gens])
        if len(H) != n:
            raise ValueError("generators do not span a full-rank lattice")
        self.basis = tuple(tuple(Fraction(x, den) for x in r) for r in H)
        self.n = n

    def __eq__(self, other):
        return isinstance(other, ZLattice) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def coords(self, v):
        """Coordinates of v on the basis (rationals)."""
        v = [Fraction(x) for x in v]
        c = []
        for i, row in enumerate(self.basis):
            t = v[i] / row[i]
            c.append(t)
            if t:
                v = [a - t * b for a, b in zip(v, row)]
        if any(v):
            raise ValueError("vector outside the ambient space")
        return c

    def contains(self, v):
        return all(x.denominator == 1 for x in self.coords(v))

    def contains_lattice(self, other):
        return all(self.contains(b) for b in other.basis)

    def covolume(self):
        p = Fraction(1)
        for i, r in enumerate(self.basis):
            p *= r[i]
        return p

    def index_of(self, sub):
        """[self : sub] for a sublattice."""
        q = sub.covolume() / self.covolume()
        if q.denominator != 1:
            raise ValueError("not a sublattice")
        return q.numerator


def _short_vectors(G, bound, strict=False):
    """All nonzero integer x with x^T G x <= bound (G rational positive definite).

    Exact LDL^T enumeration; returns pairs (x, value).
    """
    n = len(G)
    G = [[Fraction(x) for x in r] for r in G]
    # q(x) = sum_i d_i (x_i + sum_{j > i} m_ij x_j)^2
    d = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    A = [row[:] for row in G]
    for i in range(n):
        d[i] = A[i][i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            m[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                A[j][k] -= d[i] * m[i][j] * m[i][k]
    out = []
    x = [0] * n
    bound = Fraction(bound)

    def rec(i, rem):
        if i < 0:
            if any(x):
                val = sum(x[a] * G[a][b] * x[b] for a in range(n) for b in range(n))
                if val < bound or (val == bound and not strict):
                    out.append((tuple(x), val))
            return
        c = sum((m[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = math.sqrt(float(rem / d[i])) + 1e-9
        lo = math.ceil(-c - r - 1e-9)
        hi = math.floor(-c + r + 1e-9)
        for t in range(lo, hi + 1):
            val = d[i] * (t + c) ** 2
            if val <= rem:
                x[i] = t
                rec(i - 1, rem - val)
        x[i] = 0

    rec(n - 1, bound)
    return out


# ---------------------------------------------------------------------------
# Quadratic orders


@dataclass(frozen=True)
class QuadraticOrder:
    """The order of discriminant D; generator w = (D + sqrt D)/2."""
    disc: int

    def __post_init__(self):
        D = self.disc
        if D % 4 not in (0, 1) or is_square_int(abs(D)) and D > 0:
            raise ValueError("%d is not a non-square discriminant" % D)

    @classmethod
    def from_generator(cls, trace, norm):
        return cls(trace * trace - 4 * norm)

    @property
    def generator(self):
        return (self.disc, (self.disc * self.disc - self.disc) // 4)

    @property
    def field(self):
        return _order_field(self.disc)

    @property
    def d(self):
        return abs(self.disc)

    def is_imaginary(self):
        return self.disc < 0

    def w(self):
        return self.field.gen()

    def delta(self):
        return 2 * self.w() - self.disc

    def elem(self, x, y=0):
        return self.field([x, y])

    def units(self):
        K = self.field
        w = K.gen()
        if self.disc == -4:
            i = w + 2  # w = -2 + i
            return [K.one(), -K.one(), i, -i]
        if self.disc == -3:
            z = w + 2  # w = (-3 + sqrt -3)/2, zeta6 = w + 2
            return [z ** k for k in range(6)]
        return [K.one(), -K.one()]

    def norm(self, x, y):
        a, b, c = 1, self.disc, (self.disc ** 2 - self.disc) // 4
        return a * x * x + b * x * y + c * y * y

    def conductor(self):
        s, f = squarefree_part(self.disc)
        if s % 4 != 1:
            f //= 2
        return f

    def is_maximal(self):
        return self.conductor() == 1

    def elements_of_norm_at_most(self, bound):
        """All x + y w with 1 <= N <= bound."""
        out = []
        D = self.disc
        ymax = int(math.isqrt(int(4 * bound / abs(D)) + 1)) + 1
        for y in range(-ymax, ymax + 1):
            # (x + yD/2)^2 <= bound
            r = math.isqrt(int(bound) + 1) + 1
            center = -D * y // 2
            for x in range(center - r - 1, center + r + 2):
                n = self.norm(x, y)
                if 1 <= n <= bound:
                    out.append((x, y))
        return sorted(set(out))


_FIELDS = {}


def _order_field(D):
    if D not in _FIELDS:
        _FIELDS[D] = NumberField([(D * D - D) // 4, -D, 1], "w")
    return _FIELDS[D]


def _vec_coords(vec):
    return [c for x in vec for c in x.c]


def _coords_vec(K, c):
    return (K([c[0], c[1]]), K([c[2], c[3]]))


def _phi(S, x, y):
    """x^T S conj(y)."""
    yc = [conj(t) for t in y]
    return sum((x[i] * S[i][j] * yc[j] for i in range(2) for j in range(2)), S[0][0] * 0)


def _matT(M):
    return [[M[j][i] for j in range(len(M))] for i in range(len(M[0]))]


def _conj_mat(M):
    return [[conj(x) for x in r] for r in M]


def _kmat_inv(M):
    a, b = M[0]
    c, d = M[1]
    dt = a * d - b * c
    return [[d / dt, -b / dt], [-c / dt, a / dt]]


def _kmat_vec(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


# ---------------------------------------------------------------------------
# Hermitian pairs


@dataclass(frozen=True)
class HermitianPair:
    order: QuadraticOrder
    lattice: ZLattice  # M in coordinates (u0, u1, v0, v1)
    S: tuple  # 2x2 over K
    tag: str = ""

    @property
    def field(self):
        return self.order.field

    def zbasis(self):
        K = self.field
        return [_coords_vec(K, b) for b in self.lattice.basis]

    @property
    def det(self):
        d = self.S[0][0] * self.S[1][1] - self.S[0][1] * self.S[1][0]
        return d.rational()

    @property
    def definiteness(self):
        return "definite" if self.det > 0 else "indefinite"

    def phi(self, x, y):
        return _phi(self.S, x, y)

    def mu(self, x):
        return self.phi(x, x).rational()

    def riemann_gram(self):
        dl = self.order.delta()
        B = self.zbasis()
        return [[(self.phi(x, y) / dl).trace() for y in B] for x in B]

    def quadratic_gram(self):
        B = self.zbasis()
        return [[self.phi(x, y).trace() / 2 for y in B] for x in B]

    def index(self):
        O2 = ZLattice(identity(4))
        return self.lattice.index_of(O2)

    def conjugate(self):
        K = self.field
        B = [(conj(u), conj(v)) for u, v in self.zbasis()]
        S = tuple(tuple(-conj(x) for x in row) for row in self.S)
        return HermitianPair(self.order, ZLattice([_vec_coords(b) for b in B]), S, self.tag)

    def module_basis(self):
        """An O-basis (f1, f2) of M if M is free and one is found, else None."""
        return _free_basis(self)

    def to_json(self):
        def enc(x):
            return [str(c) for c in x.c]
        return {
            "disc": self.order.disc,
            "mode": self.definiteness,
            "det": int(self.det),
            "S": [[enc(x) for x in row] for row in self.S],
            "zbasis": [[str(c) for c in b] for b in self.lattice.basis],
        }


def det_index_check(pair):
    """[M : O x O] = |det S| and E is integral and unimodular on M."""
    O2 = ZLattice(identity(4))
    if not pair.lattice.contains_lattice(O2):
        raise ValueError("M does not contain O x O")
    if pair.index() != abs(pair.det):
        return False
    G = pair.riemann_gram()
    if any(x.denominator != 1 for r in G for x in r):
        return False
    return det(G) == 1


def make_pair(order, S, gens=None, tag=""):
    """A HermitianPair from S (entries as K-elements or (x, y) pairs) and generators of M."""
    K = order.field
    S = tuple(tuple(v if isinstance(v, NFElement) else K(list(v) if isinstance(v, (tuple, list)) else v)
                    for v in row) for row in S)
    if gens is None:
        gens = identity(4)
    return HermitianPair(order, ZLattice(gens), S, tag)


# --- dual lattices and quotients in K (2-dimensional pieces) ---------------


def _k_form_gram(order, scale):
    """Gram of (x, y) -> Tr(scale * x * conj(y) / delta) on the basis (1, w)."""
    K = order.field
    dl = order.delta()
    b = [K.one(), K.gen()]
    return [[(scale * x * conj(y) / dl).trace() for y in b] for x in b]


def _dual2(basis_rows, G):
    """Dual of the lattice spanned by rows w.r.t. x^T G y."""
    B = [list(r) for r in basis_rows]
    BG = mat_mul(B, G)  # rows: b_i^T G
    inv = mat_inv(BG)  # columns are the dual vectors
    return [[inv[i][j] for i in range(len(inv))] for j in range(len(inv))]


@functools.lru_cache(maxsize=1024)
def _ideals_between(order, m):
    """O-ideals J with m O in J in O, as 2x2 HNF row bases."""
    out = []
    m = abs(m)
    w = order.w()
    for h11 in range(1, m + 1):
        if m % h11:
            continue
        for h22 in range(1, m + 1):
            if m % h22:
                continue
            for h12 in range(h22):
                rows = [[h11, h12], [0, h22]]
                L = ZLattice(rows)
                if not (L.contains([m, 0]) and L.contains([0, m])):
                    continue
                ok = True
                for r in rows:
                    x = order.elem(*r) * w
                    if not L.contains(list(x.c)):
                        ok = False
                        break
                if ok:
                    out.append(L)
    return sorted(set(out), key=lambda L: L.basis)


def _min_norm_2d(order, L):
    N = [[Fraction(1), Fraction(order.disc, 2)],
         [Fraction(order.disc, 2), Fraction(order.disc ** 2 - order.disc, 4)]]
    B = [list(r) for r in L.basis]
    G = mat_mul(mat_mul(B, N), _matT(B))
    sv = _short_vectors(G, 1, strict=True)
    return not sv  # True iff no nonzero element of norm < 1


class _Quotient:
    """Finite quotient big/small of lattices in Q^n with element reduction."""

    def __init__(self, big, small):
        self.big = big
        self.small = small
        rel = [[int(c) for c in big.coords(b)] for b in small.basis]
        self.H = hnf_rows(rel)
        self.order = 1
        for i, r in enumerate(self.H):
            self.order *= r[i]

    def reduce(self, c):
        c = list(c)
        for i, r in enumerate(self.H):
            q = c[i] // r[i]
            if q:
                c = [a - q * b for a, b in zip(c, r)]
        return tuple(c)

    def elements(self):
        ranges = [range(r[i]) for i, r in enumerate(self.H)]
        return [self.reduce(c) for c in product(*ranges)]

    def lift(self, c):
        n = self.big.n
        return [sum(Fraction(c[i]) * self.big.basis[i][k] for i in range(n)) for k in range(n)]

    def coords_of(self, v):
        c = self.big.coords(v)
        if any(x.denominator != 1 for x in c):
            raise ValueError("not in the big lattice")
        return self.reduce([int(x) for x in c])


def _k_mul_coords(order, x, coords):
    return list((x * order.elem(*coords)).c)


@functools.lru_cache(maxsize=1024)
def _side_data(order, a):
    """Coisotropic data on (1/a)O/O for the form Tr(a x conj(y)/delta).

    Yields (K lattice I, L = I^#, quotient L/I) for O-modules I with
    O in I in (1/a)O, E(I, I) integral and min norm 1 on I.
    """
    G = _k_form_gram(order, a)
    out = []
    for J in _ideals_between(order, a):
        I = ZLattice([[x / abs(a) for x in r] for r in J.basis])
        # isotropy of I
        B = [list(r) for r in I.basis]
        GI = mat_mul(mat_mul(B, G), _matT(B))
        if any(x.denominator != 1 for r in GI for x in r):
            continue
        if not _min_norm_2d(order, I):
            continue
        Ld = ZLattice(_dual2(I.basis, G))
        if not Ld.contains_lattice(I):
            continue
        out.append((I, Ld, _Quotient(Ld, I), G))
    return out


def _anti_isometries(order, side1, side2):
    """O-linear bijections Q1 -> Q2 with E2(phi x, phi y) = -E1(x, y)."""
    I1, L1, Q1, G1 = side1
    I2, L2, Q2, G2 = side2
    if Q1.order != Q2.order:
        return []
    if Q1.order == 1:
        return [((), ())]
    w = order.w()
    gens = [(1, 0), (0, 1)]
    rel = [tuple(int(c) for c in r) for r in Q1.H]
    elems2 = Q2.elements()
    lifts1 = [Q1.lift(g) for g in gens]
    wimg1 = [Q1.coords_of(_k_mul_coords(order, w, v)) for v in lifts1]

    def apply(images, c):
        tot = [0, 0]
        for ci, im in zip(c, images):
            tot = [t + ci * x for t, x in zip(tot, im)]
        return Q2.reduce(tot)

    def pair(G, u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(2) for j in range(2))

    out = []
    for im0 in elems2:
        for im1 in elems2:
            images = (im0, im1)
            if any(apply(images, r) != Q2.reduce((0, 0)) for r in rel):
                continue
            ok = True
            for g, wi in zip(range(2), wimg1):
                lhs = apply(images, wi)
                rhs = Q2.coords_of(_k_mul_coords(order, w, Q2.lift(images[g])))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                continue
            for i in range(2):
                for j in range(2):
                    e1 = pair(G1, lifts1[i], lifts1[j])
                    e2 = pair(G2, Q2.lift(images[i]), Q2.lift(images[j]))
                    if (e1 + e2).denominator != 1:
                        ok = False
            if not ok:
                continue
            zero = Q2.reduce((0, 0))
            kernel = [c for c in Q1.elements() if apply(images, c) == zero]
            if len(kernel) != 1:
                continue
            out.append((images, tuple(Q2.lift(im) for im in images)))
    return out


def _diagonal_modules(order, a, b):
    K = order.field
    out = []
    sides_a = _side_data(order, a)
    sides_b = _side_data(order, b)
    for sa in sides_a:
        for sb in sides_b:
            for images, lifts in _anti_isometries(order, sa, sb):
                I1, L1 = sa[0], sa[1]
                I2, L2 = sb[0], sb[1]
                gens = [list(r) + [0, 0] for r in I1.basis] + [[0, 0] + list(r) for r in I2.basis]
                if images:
                    for g, lift2 in zip(((1, 0), (0, 1)), lifts):
                        lift1 = sa[2].lift(g)
                        gens.append(list(lift1) + list(lift2))
                M = ZLattice(gens)
                out.append(M)
    return out


def _lagrangians_generic(order, S, max_group=20000):
    """O-stable lattices O^2 in M in conj(S)^-1 O^2 on which E is integral and unimodular."""
    K = order.field
    Sb = _conj_mat([list(r) for r in S])
    Sinv = _kmat_inv(Sb)
    std = identity(4)
    big_gens = [_vec_coords(_kmat_vec(Sinv, _coords_vec(K, e))) for e in std]
    big = ZLattice(big_gens + std)
    small = ZLattice(std)
    Q = _Quotient(big, small)
    if Q.order > max_group:
        raise ResourceGuard("torsion module of order %d exceeds the guard" % Q.order)
    target = abs(int((S[0][0] * S[1][1] - S[0][1] * S[1][0]).rational()))
    if target * target != Q.order:
        raise ArithmeticError("index mismatch")
    dl = order.delta()
    w = K.gen()

    def E(x, y):
        return (_phi(S, _coords_vec(K, x), _coords_vec(K, y)) / dl).trace()

    def span(vecs):
        gens = [list(r) for r in small.basis]
        for v in vecs:
            gens.append(list(v))
            gens.append(_k_mul_coords2(order, w, v))
        return ZLattice(gens)

    def isotropic(L):
        return all(E(x, y).denominator == 1 for x in L.basis for y in L.basis)

    elems = [Q.lift(x) for x in Q.elements()]
    primes = [p for p in range(2, target + 1) if target % p == 0 and is_prime(p)]
    parts = []
    for p in primes:
        pe = 1
        while target % (pe * p) == 0:
            pe *= p
        m = Q.order // (pe * pe)
        Vp = {}
        for x in elems:
            y = [m * c for c in x]
            Vp[Q.coords_of(y)] = y
        Vp = [Vp[k] for k in sorted(Vp)]
        found = set()
        level = {small}
        while level:
            nxt = set()
            for H in level:
                idx = H.index_of(small)
                if idx == pe:
                    found.add(H)
                    continue
                for x in Vp:
                    if H.contains(x):
                        continue
                    if any(E(x, h).denominator != 1 for h in H.basis):
                        continue
                    H2 = span(list(H.basis) + [x])
                    if pe % H2.index_of(small) == 0 and isotropic(H2):
                        nxt.add(H2)
            level = nxt
        parts.append(sorted(found, key=lambda L: L.basis))
    out = []
    for combo in product(*parts):
        gens = [list(r) for r in small.basis]
        for H in combo:
            gens.extend(list(b) for b in H.basis)
        out.append(ZLattice(gens))
    return out


def _k_mul_coords2(order, x, coords):
    K = order.field
    u, v = _coords_vec(K, coords)
    return _vec_coords((x * u, x * v))


def _enum_bounds(order, mode, slack=1.0):
    d = order.d
    t = 2 if mode == "definite" else 1
    a_max = t * 2 * math.sqrt(d) / math.pi * slack
    b_max = (4 * t * d ** 1.5 / math.pi ** 2 + (4 + d) / 4) * slack
    n_max = 4 * d / math.pi ** 2 * slack
    return a_max, b_max, n_max


def candidate_matrices(order, mode, slack=1.0):
    """Hermitian S from the two basis shapes (diagonal and isotropic)."""
    K = order.field
    a_max, b_max, n_max = _enum_bounds(order, mode, slack)
    out = []
    for a in range(1, int(a_max) + 1):
        for babs in range(a, int(b_max) + 1):
            b = babs if mode == "definite" else -babs
            out.append(("diagonal", ((K(a), K(0)), (K(0), K(b)))))
    if mode == "indefinite":
        for x, y in order.elements_of_norm_at_most(n_max):
            al = order.elem(x, y)
            tr = al.trace()
            bmax = abs(tr) / 2
            for b in range(-int(bmax), int(bmax) + 1):
                out.append(("isotropic", ((K(0), al), (conj(al), K(b)))))
    return out


def raw_pairs(order, mode, slack=1.0, max_group=20000):
    if not order.is_imaginary():
        raise ValueError("imaginary quadratic order expected")
    if order.d > MAX_ENUM_DISC:
        raise ResourceGuard("|disc| = %d exceeds the enumeration guard" % order.d)
    out = []
    for kind, S in candidate_matrices(order, mode, slack):
        if kind == "diagonal":
            a = S[0][0].rational()
            b = S[1][1].rational()
            mods = _diagonal_modules(order, int(a), int(b))
        else:
            mods = _lagrangians_generic(order, S, max_group)
        for M in mods:
            p = HermitianPair(order, M, S, kind)
            if det_index_check(p):
                out.append(p)
    return out


@dataclass
class HermitianClassification:
    order: QuadraticOrder
    mode: str
    representatives: list
    raw_count: int
    unresolved: int  # representatives kept only because equivalence was undecided


def classify_pairs(order, mode, slack=1.0, max_group=20000):
    """Pairs (M, S) of the given mode up to isomorphism and conjugation."""
    if mode not in ("definite", "indefinite"):
        raise ValueError("mode must be definite or indefinite")
    reps = []
    unresolved = 0
    raw = raw_pairs(order, mode, slack, max_group)
    for p in raw:
        inv = pair_invariants(p)
        undecided = False
        merged = False
        for r in reps:
            if inv != pair_invariants(r):
                continue
            v = equivalence_verdict(p, r)
            if v == "equivalent":
                merged = True
                break
            if v == "unknown":
                undecided = True
        if not merged:
            reps.append(p)
            unresolved += undecided
    return HermitianClassification(order, mode, [_nice_representative(r) for r in reps],
                                   len(raw), unresolved)


def enumerate_hermitian_pairs(order, mode, slack=1.0, max_group=20000):
    """Representatives of pairs (M, S) up to isomorphism and conjugation."""
    return classify_pairs(order, mode, slack, max_group).representatives


# --- invariants and equivalence -------------------------------------------


def _norm_gcd(pair):
    G = pair.quadratic_gram()
    g = 0
    for i in range(4):
        g = math.gcd(g, int(G[i][i]))
        for j in range(i + 1, 4):
            g = math.gcd(g, int(2 * G[i][j]))
    return g


def multiplier_disc(pair):
    """Discriminant of the multiplier ring {x in K : x M in M}."""
    D = pair.order.disc
    root = pair.order.delta()
    best = D
    f = pair.order.conductor()
    for k in range(2, f + 1):
        if f % k or (D // (k * k)) % 4 not in (0, 1):
            continue
        Dk = D // (k * k)
        gen = (Dk + root / k) / 2
        if all(pair.lattice.contains(_vec_coords((gen * u, gen * v))) for u, v in pair.zbasis()):
            if abs(Dk) < abs(best):
                best = Dk
    return best


def pair_invariants(pair):
    inv = [pair.definiteness, _norm_gcd(pair), multiplier_disc(pair)]
    if pair.definiteness == "definite":
        G = pair.quadratic_gram()
        sv = None
        bound = 1
        while True:
            sv = _short_vectors(G, bound)
            if sv:
                break
            bound *= 2
        mn = min(v for _, v in sv)
        inv += [mn, sum(1 for _, v in sv if v == mn)]
    return tuple(inv)


def _isometric_definite(p1, p2):
    """Exact test for an O-linear isometry (M2, S2) -> (M1, S1)."""
    G2 = p2.quadratic_gram()
    K = p2.field
    basis2 = p2.zbasis()

    def vec(p, c):
        B = p.zbasis()
        return (sum((B[i][0] * c[i] for i in range(4)), K(0)),
                sum((B[i][1] * c[i] for i in range(4)), K(0)))
    sv2 = sorted(_short_vectors(G2, _min_bound(G2)), key=lambda t: t[1])
    e1 = vec(p2, sv2[0][0])
    e2 = None
    bound = sv2[0][1]
    while e2 is None:
        for c, v in sorted(_short_vectors(G2, bound), key=lambda t: t[1]):
            cand = vec(p2, c)
            dk = e1[0] * cand[1] - e1[1] * cand[0]
            if not dk.is_zero():
                e2 = cand
                break
        bound *= 2
    m1, m2 = p2.mu(e1), p2.mu(e2)
    f12 = p2.phi(e1, e2)
    G1 = p1.quadratic_gram()
    c1 = [vec(p1, c) for c, v in _short_vectors(G1, m1) if v == m1]
    c2 = [vec(p1, c) for c, v in _short_vectors(G1, m2) if v == m2]
    Einv = _kmat_inv([[e1[0], e2[0]], [e1[1], e2[1]]])
    for x1 in c1:
        for x2 in c2:
            if p1.phi(x1, x2) != f12:
                continue
            X = [[x1[0], x2[0]], [x1[1], x2[1]]]
            g = [[sum((X[i][k] * Einv[k][j] for k in range(2)), K(0)) for j in range(2)]
                 for i in range(2)]
            if all(p1.lattice.contains(_vec_coords(_kmat_vec(g, b))) for b in basis2):
                return True
    return False


def _min_bound(G):
    b = 1
    while not _short_vectors(G, b):
        b *= 2
    return b


def _free_basis(pair):
    """O-basis of M via the projection and kernel ideals, when both are principal."""
    order = pair.order
    K = pair.field
    B = [list(b) for b in pair.lattice.basis]
    proj = ZLattice([b[:2] for b in B])
    kernel = _kernel_second(pair)
    if kernel is None:
        return None
    alpha = _principal_generator(order, proj)
    beta = _principal_generator(order, kernel)
    if alpha is None or beta is None:
        return None
    c = _integer_preimage([b[:2] for b in B], list(alpha.c))
    v = [sum(c[i] * B[i][k] for i in range(4)) for k in range(4)]
    f1 = (K(v[:2]), K(v[2:]))
    f2 = (K(0), beta)
    gens = []
    for x in (f1, f2):
        for s in (K.one(), K.gen()):
            gens.append(_vec_coords((s * x[0], s * x[1])))
    if ZLattice(gens) != pair.lattice:
        return None
    return f1, f2


def _integer_preimage(rows, target):
    """Integers c with sum c_i rows_i = target (rows rational, target in their span)."""
    den = 1
    for r in rows + [target]:
        for x in r:
            den = _lcm(den, Fraction(x).denominator)
    k = len(rows)
    aug = [[int(x * den) for x in r] + [int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    H = hnf_rows(aug)
    m = len(target)
    t = [int(Fraction(x) * den) for x in target]
    c = [0] * k
    col = 0
    for r in H:
        piv = next((j for j in range(m) if r[j]), None)
        if piv is None:
            break
        q, rem = divmod(t[piv], r[piv])
        if rem:
            raise ValueError("target not in the lattice")
        t = [a - q * b for a, b in zip(t, r[:m])]
        c = [a + q * b for a, b in zip(c, r[m:])]
    if any(t):
        raise ValueError("target not in the lattice")
    return c


def _kernel_second(pair):
    """The ideal I2 with M meet (0 x K) = 0 x I2."""
    B = [list(b) for b in pair.lattice.basis]
    den = 1
    for r in B:
        for x in r:
            den = _lcm(den, x.denominator)
    rows = [[int(x * den) for x in r[:2]] + [int(i == j) for j in range(4)] for i, r in enumerate(B)]
    H = hnf_rows(rows)
    kernel = [r[2:] for r in H if r[0] == 0 and r[1] == 0]
    if len(kernel) != 2:
        return None
    vecs = []
    for c in kernel:
        v = [sum(Fraction(c[i]) * B[i][k] for i in range(4)) for k in range(4)]
        vecs.append(v[2:])
    return ZLattice(vecs)


def _principal_generator(order, L):
    """alpha with alpha O = L (L a lattice in K), if L is principal for O."""
    N = [[Fraction(1), Fraction(order.disc, 2)],
         [Fraction(order.disc, 2), Fraction(order.disc ** 2 - order.disc, 4)]]
    Bm = [list(r) for r in L.basis]
    G = mat_mul(mat_mul(Bm, N), _matT(Bm))
    covol = L.covolume()
    for c, v in _short_vectors(G, covol):
        if v != covol:
            continue
        a = order.elem(*[sum(Fraction(c[i]) * Bm[i][k] for i in range(2)) for k in range(2)])
        if ZLattice([list(a.c), list((a * order.w()).c)]) == L:
            return a
    return None


def gram_on_basis(pair, basis):
    f1, f2 = basis
    return ((pair.phi(f1, f1), pair.phi(f1, f2)), (pair.phi(f2, f1), pair.phi(f2, f2)))


def _hkey(S):
    return tuple(c for row in S for x in row for c in x.c)


def _to_tuple(S):
    a, (x, y), c = S[0][0].rational(), S[0][1].c, S[1][1].rational()
    t = (a, x, y, c)
    if any(Fraction(v).denominator != 1 for v in t):
        raise ValueError("Gram matrix is not integral")
    return tuple(int(v) for v in t)


def _from_tuple(order, t):
    K = order.field
    a, x, y, c = t
    s12 = K([x, y])
    return ((K(a), s12), (conj(s12), K(c)))


class _IntOrder:
    """Integer-coordinate arithmetic in O = Z[w], w^2 = D w - n."""

    def __init__(self, order):
        assert all(u.norm() == 1 for u in order.units())
        self.D = order.disc
        self.n = (order.disc ** 2 - order.disc) // 4
        unit_coords = [tuple(int(v) for v in u.c) for u in order.units()]
        self.units = [u for u in unit_coords if u != (1, 0)]

    def mul(self, p, q):
        a, b = p
        c, d = q
        return (a * c - self.n * b * d, a * d + b * c + self.D * b * d)

    def conj(self, p):
        a, b = p
        return (a + b * self.D, -b)

    def tr(self, p):
        return 2 * p[0] + p[1] * self.D

    def norm(self, p):
        a, b = p
        return a * a + self.D * a * b + self.n * b * b

    def moves(self, t):
        """Images of (S11, S12, S22) under the GL2(O) generators."""
        a, x, y, c = t
        s12 = (x, y)
        out = []
        for u in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            # f2 -> f2 + u f1
            n12 = self.conj(u)
            n12 = (a * n12[0] + x, a * n12[1] + y)
            c2 = self.norm(u) * a + self.tr(self.mul(u, s12)) + c
            out.append((a, n12[0], n12[1], c2))
            # f1 -> f1 + u f2
            s21 = self.conj(s12)
            a2 = a + self.tr(self.mul(u, s21)) + self.norm(u) * c
            n12 = self.mul(u, (c, 0))
            out.append((a2, x + n12[0], y + n12[1], c))
        for u in self.units:
            v = self.mul(u, s12)
            out.append((a, v[0], v[1], c))
        sc = self.conj(s12)
        out.append((c, sc[0], sc[1], a))
        return out


def _height(t):
    return max(abs(v) for v in t)


def _gl2_generators(order):
    K = order.field
    one, zero, w = K.one(), K(0), K.gen()
    gens = []
    for t in (one, -one, w, -w):
        gens.append(((one, t), (zero, one)))
        gens.append(((one, zero), (t, one)))
    for u in order.units():
        if u != one:
            gens.append(((u, zero), (zero, one)))
    gens.append(((zero, one), (one, zero)))
    return gens


def _act(g, S):
    """g^T S conj(g)."""
    gt = _matT(g)
    gb = _conj_mat(g)
    return tuple(tuple(x for x in row) for row in
                 [[sum((gt[i][k] * S[k][l] * gb[l][j] for k in range(2) for l in range(2)),
                       S[0][0] * 0) for j in range(2)] for i in range(2)])


def gl2_orbit_meet(S1, S2, order, height, max_nodes=200000):
    """Bidirectional BFS for g in GL2(O) with g^T S1 conj(g) = S2 within a height bound.

    True if found, False if both bounded orbits were exhausted, None if the node cap hit.
    """
    ar = _IntOrder(order)
    t1, t2 = _to_tuple(S1), _to_tuple(S2)
    if t1 == t2:
        return True
    seen = [{t1}, {t2}]
    fr = [deque([t1]), deque([t2])]
    nodes = 0
    while fr[0] and fr[1]:
        side = 0 if len(fr[0]) <= len(fr[1]) else 1
        for _ in range(len(fr[side])):
            t = fr[side].popleft()
            for u in ar.moves(t):
                if u in seen[side] or _height(u) > height:
                    continue
                if u in seen[1 - side]:
                    return True
                seen[side].add(u)
                fr[side].append(u)
                nodes += 1
                if nodes > max_nodes:
                    return None
    return False


def _line_ideal(pair, e):
    """The lattice {a in K : a e in M}."""
    rows = [_vec_coords(e), _vec_coords((pair.field.gen() * e[0], pair.field.gen() * e[1]))]
    Binv = mat_inv([list(r) for r in pair.lattice.basis])
    C = mat_mul(rows, Binv)  # coordinates on the basis of M
    cols = ZLattice([[C[0][j], C[1][j]] for j in range(4)])
    return ZLattice(_dual2(cols.basis, identity(2)))


@functools.lru_cache(maxsize=4096)
def hyperbolic_type(p):
    """b mod Tr(O) if M = Oe + Of with Gram [[0, 1], [1, b]], else None.

    Such a splitting exists iff some isotropic e in M has Phi(e, M) = O.  The
    isotropic line comes from the quaternion certificate and e is taken
    primitive on it, which suffices when the line ideal is principal.
    """
    K = p.field
    qd = diagonalize_and_isotropy(p.S, p.order)
    if not qd.isotropic or qd.certificate is None:
        return None
    e = qd.certificate
    gamma = _principal_generator(p.order, _line_ideal(p, e))
    if gamma is None:
        return None
    e = (gamma * e[0], gamma * e[1])
    B = p.zbasis()
    w = K.gen()
    img = [list(p.phi(m, e).c) for m in B] + [list(p.phi((w * m[0], w * m[1]), e).c) for m in B]
    if ZLattice(img) != ZLattice(identity(2)):
        return None
    comb = _integer_preimage(img[:4] + img[4:], [1, 0])
    f = [K(0), K(0)]
    for i in range(8):
        m = B[i % 4] if i < 4 else (w * B[i - 4][0], w * B[i - 4][1])
        f = [f[0] + m[0] * comb[i], f[1] + m[1] * comb[i]]
    assert p.phi(tuple(f), e) == K.one()
    trO = 1 if p.order.disc % 2 else 2
    return int(p.mu(tuple(f))) % trO


def rebase_pair(p, Dp):
    """The same (M, S) viewed over the order of discriminant Dp (same field, Dp = D / k^2)."""
    D = p.order.disc
    k2 = Fraction(D, Dp)
    k = math.isqrt(int(k2))
    if k * k != k2:
        raise ValueError("discriminants differ by a non-square")
    new = QuadraticOrder(Dp)
    Kn = new.field
    # w = (D + k sqrt(Dp)) / 2 and sqrt(Dp) = 2 w' - Dp
    w_img = (D + k * (2 * Kn.gen() - Dp)) / Kn(2)

    def mp(x):
        return Kn(x.c[0]) + w_img * x.c[1]
    B = [(mp(u), mp(v)) for u, v in p.zbasis()]
    S = tuple(tuple(mp(x) for x in row) for row in p.S)
    return HermitianPair(new, ZLattice([_vec_coords(b) for b in B]), S, p.tag)


def equivalence_verdict(p1, p2):
    """'equivalent', 'distinct' or 'unknown'."""
    if p1.order != p2.order:
        raise ValueError("pairs over different orders")
    if pair_invariants(p1) != pair_invariants(p2):
        return "distinct"
    if p1.definiteness == "definite":
        return "equivalent" if _isometric_definite(p1, p2) else "distinct"
    Dp = multiplier_disc(p1)
    if Dp != p1.order.disc:
        return equivalence_verdict(rebase_pair(p1, Dp), rebase_pair(p2, Dp))
    h1, h2 = hyperbolic_type(p1), hyperbolic_type(p2)
    if h1 is not None and h2 is not None:
        return "equivalent" if h1 == h2 else "distinct"
    t1, t2 = reduced_gram(p1), reduced_gram(p2)
    if t1 is None or t2 is None:
        log.info("indefinite equivalence undecided: module not free")
        return "unknown"
    S1 = _from_tuple(p1.order, t1)
    S2 = _from_tuple(p1.order, t2)
    S2c = tuple(tuple(-conj(x) for x in row) for row in S2)
    for h in (DEFAULT_HEIGHT, ESCALATED_HEIGHT):
        r = gl2_orbit_meet(S1, S2, p1.order, h)
        r2 = gl2_orbit_meet(S1, S2c, p1.order, h)
        if r is True or r2 is True:
            return "equivalent"
        if r is None or r2 is None:
            break
    log.info("indefinite equivalence undecided within height bound")
    return "unknown"


def pairs_equivalent(p1, p2):
    v = equivalence_verdict(p1, p2)
    if v == "unknown":
        log.info("equivalence unknown for %s and %s; treated as distinct", p1.tag, p2.tag)
    return v == "equivalent"


def standard_pair(order, S, tag=""):
    """(O x O, S)."""
    return make_pair(order, S, None, tag)


@functools.lru_cache(maxsize=4096)
def reduced_gram(p, radius=2):
    """Integer tuple (S11, S12 coords, S22) of a small Gram matrix on an O-basis of M, or None."""
    fb = p.module_basis()
    if fb is None:
        return None
    ar = _IntOrder(p.order)

    def size(t):
        a, x, y, c = t
        return (abs(a) + abs(c) + ar.norm((x, y)), y != 0, (x, y) != (0, 0), -a, t)
    t = _to_tuple(gram_on_basis(p, fb))
    improved = True
    while improved:
        improved = False
        layer, seen = [t], {t}
        for _ in range(radius):
            layer = [u for v in layer for u in ar.moves(v) if u not in seen and not seen.add(u)]
            best = min(layer, key=size)
            if size(best) < size(t):
                t, improved = best, True
                break
    return t


def _nice_representative(p):
    """(O x O, small Gram) when M is free, else p itself."""
    t = reduced_gram(p)
    if t is None:
        return p
    return standard_pair(p.order, _from_tuple(p.order, t), p.tag)


# ---------------------------------------------------------------------------
# Humbert components


@dataclass(frozen=True)
class HumbertComponent:
    l: int
    disc: int  # discriminant of the real order O1
    generator: tuple  # (trace, norm) of a generator of O1

    def to_json(self):
        return {"kind": "humbert_surface", "disc": self.disc, "order_generator": list(self.generator)}


def humbert_components(l):
    """Real orders O1 with Z[sqrt l] in O1 in O_K, one Humbert surface each."""
    if not is_prime(l):
        raise ValueError("l must be prime")
    comps = [HumbertComponent(l, 4 * l, (0, -l))]
    if l % 4 == 1:
        comps.append(HumbertComponent(l, l, (1, (1 - l) // 4)))
    return sorted(comps, key=lambda c: c.disc)


def humbert_canonical_pair(comp):
    """M = O1^2 with T = delta^-1 [[0, 1], [-1, 0]] (delta generates the different)."""
    t, n = comp.generator
    K = NumberField([n, -t, 1], "x")
    x = K.gen()
    dl = 2 * x - t
    T = ((K(0), 1 / dl), (-1 / dl, K(0)))
    return {"order": comp.disc, "M": "O1 x O1", "T": T}


# ---------------------------------------------------------------------------
# Polarized lattices and glueing


@dataclass(frozen=True)
class IdealLattice:
    """A lattice Z w1 + Z w2 in an imaginary quadratic field, with E(w1, w2) = sign."""
    field: NumberField
    basis: tuple

    @property
    def im_ratio(self):
        """Im(conj(w1) w2) / Im(g - conj(g)) for the generator g, a nonzero rational."""
        w1, w2 = self.basis
        z = conj(w1) * w2
        g = self.field.gen()
        t = (z - conj(z)) / (g - conj(g))
        return t.rational()

    @property
    def sign(self):
        return 1 if self.im_ratio > 0 else -1

    def coords(self, x):
        w1, w2 = self.basis
        M = [[w1.c[0], w2.c[0]], [w1.c[1], w2.c[1]]]
        return solve_linear(M, [x.c[0], x.c[1]])

    @classmethod
    def order_basis(cls, K, beta):
        return cls(K, (K.one(), beta))


@dataclass
class PolarizedLattice:
    factors: tuple  # (IdealLattice, IdealLattice)
    basis: list  # rows: coordinates in the reference basis of a1 x a2
    E: list  # Riemann form on the basis (integers)
    n: int = 1
    actions: dict = field(default_factory=dict)

    def basis_columns(self):
        return _matT(self.basis)


def _block_form(a1, a2, n):
    s1, s2 = a1.sign, a2.sign
    E = [[0] * 4 for _ in range(4)]
    E[0][1], E[1][0] = n * s1, -n * s1
    E[2][3], E[3][2] = n * s2, -n * s2
    return E


def glue_lattice(a1, a2, psi, n):
    """(a1 x a2 + graph(psi) lifts, n (E1 + E2)), checked principal of index n^2."""
    s1, s2 = a1.sign, a2.sign
    (p, q), (r, s) = psi.matrix
    if (p * s - q * r + s1 * s2) % n:
        raise GlueError("psi does not invert the Weil pairing: graph is not isotropic")
    gens = [[int(i == j) for j in range(4)] for i in range(4)]
    for k in range(2):
        e = [Fraction(int(k == 0), n), Fraction(int(k == 1), n)]
        img = [Fraction(psi.matrix[0][k], n), Fraction(psi.matrix[1][k], n)]
        gens.append(e + img)
    Lp = ZLattice(gens)
    B = [list(r) for r in Lp.basis]
    E0 = _block_form(a1, a2, n)
    E = mat_mul(mat_mul(B, E0), _matT(B))
    if any(x.denominator != 1 for row in E for x in row):
        raise GlueError("glued Riemann form is not integral")
    if det(E) != 1:
        raise GlueError("glued Riemann form is not principal")
    index = (1 / Lp.covolume())
    if index != n * n:
        raise GlueError("index %s != n^2" % index)
    return PolarizedLattice((a1, a2), B, [[int(x) for x in r] for r in E], n)


def _mult_block(src, dst, x):
    """Rational 2x2 matrix of u -> x u from src-coordinates to dst-coordinates."""
    cols = []
    for w in src.basis:
        y = x * w
        if not isinstance(y, NFElement):
            y = dst.field(y)
        if y.field != dst.field:
            raise ValueError("action does not map between these fields")
        cols.append(dst.coords(y))
    return [[cols[j][i] for j in range(2)] for i in range(2)]


def analytic_rational_rep(L, analytic):
    """Rational 4x4 matrix (column convention) on the reference basis."""
    a1, a2 = L.factors
    facs = (a1, a2)
    R = [[Fraction(0)] * 4 for _ in range(4)]
    if isinstance(analytic[0], (list, tuple)):
        A = analytic
    else:
        A = ((analytic[0], 0), (0, analytic[1]))
    for i in range(2):
        for j in range(2):
            x = A[i][j]
            if isinstance(x, int) and x == 0:
                continue
            if isinstance(x, (int, Fraction)):
                x = facs[i].field(x)
            blk = _mult_block(facs[j], facs[i], x)
            for r in range(2):
                for c in range(2):
                    R[2 * i + r][2 * j + c] = blk[r][c]
    return R


def induced_endomorphism(L, analytic, name=None, l=None):
    """The integral matrix of an analytic action on L, or None if L is not stable."""
    R0 = analytic_rational_rep(L, analytic)
    Bc = L.basis_columns()
    R = mat_mul(mat_mul(mat_inv(Bc), R0), Bc)
    if any(x.denominator != 1 for row in R for x in row):
        return None
    R = [[int(x) for x in row] for row in R]
    if l is not None:
        lhs = mat_mul(mat_mul(_matT(R), L.E), R)
        if lhs != [[l * x for x in row] for row in L.E]:
            raise ValueError("E(xu, xv) != l E(u, v)")
    if name is not None:
        L.actions[name] = (analytic, R)
    return R


def ll_property(L, R, l):
    return mat_mul(mat_mul(_matT(R), L.E), R) == [[l * x for x in row] for row in L.E]


def rosati_adjoint(L, R):
    """R' with E(R u, v) = E(u, R' v)."""
    Ei = mat_inv([[Fraction(x) for x in r] for r in L.E])
    return mat_mul(mat_mul(Ei, _matT(R)), L.E)


def _adjoint_analytic(L, analytic):
    """The analytic action adjoint to ``analytic`` for the product form on a1 x a2."""
    if isinstance(analytic[0], (list, tuple)):
        t = [abs(f.im_ratio) for f in L.factors]
        return tuple(tuple(conj(analytic[i][j]) * Fraction(t[j], 1) / t[i]
                           if isinstance(analytic[i][j], NFElement) else
                           analytic[i][j] * t[j] / t[i]
                           for i in range(2)) for j in range(2))
    return tuple(conj(x) if isinstance(x, NFElement) else x for x in analytic)


def char_polys(L, name):
    """(P_a, P_r) for a stored endomorphism, with P_r = P_a conj(P_a) verified.

    P_a is returned as a list of polynomials over the coefficient fields
    whose product is the analytic characteristic polynomial.
    """
    analytic, R = L.actions[name]
    Pr = char_poly([[Fraction(x) for x in r] for r in R])
    if isinstance(analytic[0], (list, tuple)):
        A = analytic
        tr = A[0][0] + A[1][1]
        dt = A[0][0] * A[1][1] - A[0][1] * A[1][0]
        Pa = [Polynomial([dt, -tr, tr * 0 + 1])]
    else:
        Pa = []
        for x, fac in zip(analytic, L.factors):
            x = fac.field(x) if not isinstance(x, NFElement) else x
            Pa.append(Polynomial([-x, x * 0 + 1]))
    prod_ = Polynomial([Fraction(1)])
    for P in Pa:
        Pc = P.map(conj)
        Q = P * Pc
        prod_ = prod_ * Polynomial([c.rational() for c in Q.c])
    if prod_ != Pr:
        raise ArithmeticError("P_r != P_a conj(P_a)")
    return Pa, Pr


def rosati_check(L, name):
    """The Rosati adjoint is the rational representation of the conjugate action."""
    analytic, R = L.actions[name]
    Rp = rosati_adjoint(L, [[Fraction(x) for x in r] for r in R])
    R0 = analytic_rational_rep(L, _adjoint_analytic(L, analytic))
    Bc = L.basis_columns()
    expected = mat_mul(mat_mul(mat_inv(Bc), R0), Bc)
    return Rp == expected


# ---------------------------------------------------------------------------
# Quartic CM pairs


@dataclass(frozen=True)
class CMPairCandidate:
    field: NumberField
    module: tuple  # four NFElements, a Z-basis of M
    xi: NFElement


def cm_gram(c):
    M = c.module
    return [[(c.xi * conj(x) * y).trace() for y in M] for x in M]


def cm_pair_check(c):
    """xi conj(M) = M^* with xi purely imaginary (so xi^2 is totally negative)."""
    if len(c.module) != 4:
        raise ValueError("M must have rank 4")
    vecs = [list(x.c) for x in c.module]
    if det(vecs) == 0:
        raise ValueError("degenerate module")
    if c.xi.is_zero() or conj(c.xi) != -c.xi:
        return False
    G = cm_gram(c)
    if any(x.denominator != 1 for r in G for x in r):
        return False
    return abs(det(G)) == 1


def find_xi(K, module, height=2):
    """Bounded search for xi = y / f'(g) with small y making (M, xi) a CM pair."""
    g = K.gen()
    fprime = sum((K(k * c) * g ** (k - 1) for k, c in enumerate(K.minpoly) if k), K(0))
    for coeffs in product(range(-height, height + 1), repeat=K.degree):
        if not any(coeffs):
            continue
        y = K(list(coeffs))
        xi = y / fprime
        if cm_pair_check(CMPairCandidate(K, tuple(module), xi)):
            return xi
    return None


# ---------------------------------------------------------------------------
# Quaternion structure of indefinite pairs


@dataclass(frozen=True)
class QuaternionData:
    s: Fraction
    diagonal_basis: tuple  # columns b1, b2 with Phi(b1,b1)=c, Phi(b2,b2)=c*s, Phi(b1,b2)=0
    scale: Fraction
    isotropic: bool
    certificate: tuple = None


def diagonalize_and_isotropy(S, order, height=10):
    """Diagonalize S to scale * diag(1, s) and decide isotropy of the form."""
    K = order.field
    S = [[x if isinstance(x, NFElement) else K(x) for x in row] for row in S]
    dS = (S[0][0] * S[1][1] - S[0][1] * S[1][0]).rational()
    if dS == 0:
        raise ValueError("singular S")
    e1 = (K.one(), K(0))
    e2 = (K(0), K.one())
    if S[0][0].is_zero():
        if not S[1][1].is_zero():
            e1, e2 = e2, e1
        else:
            e1 = (K.one(), K.one())
            e2 = (K(0), K.one())
    c = _phi(S, e1, e1).rational()
    if c == 0:
        e1 = (K.one(), K.gen())
        c = _phi(S, e1, e1).rational()
    # b2 = e2 - t e1 with Phi(e1, b2) = 0, i.e. conj(t) c = Phi(e1, e2)
    t = conj(_phi(S, e1, e2)) / c
    b2 = (e2[0] - t * e1[0], e2[1] - t * e1[1])
    c2 = _phi(S, b2, b2).rational()
    s = c2 / c
    iso = is_norm_from_quadratic(-s, order.disc)
    cert = None
    if iso:
        cert = _isotropic_certificate(order, S, s, e1, b2, height)
    return QuaternionData(s, (e1, b2), c, iso, cert)


def _isotropic_certificate(order, S, s, e1, b2, height):
    """u e1 + v b2 with N(u) + s N(v) = 0 for u, v in O of bounded height."""
    ar = _IntOrder(order)
    table = {}
    rng = range(-height, height + 1)
    for x in rng:
        for y in rng:
            table.setdefault(ar.norm((x, y)), (x, y))
    for n in sorted(table):
        if n == 0:
            continue
        t = -s * n
        if t.denominator == 1 and int(t) in table:
            u = order.elem(*table[int(t)])
            v = order.elem(*table[n])
            vec = (u * e1[0] + v * b2[0], u * e1[1] + v * b2[1])
            if _phi(S, vec, vec).is_zero():
                return vec
    return None

