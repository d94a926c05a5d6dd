"""Symplectic geometry on the n-torsion of a product of two elliptic curves.

Torsion vectors are integer 4-tuples modulo n.  The first two coordinates
belong to E1[n] and the last two to E2[n], each on a basis (1/n, beta/n).
The pairing exponent of that basis is +1 when Im beta > 0 and -1 otherwise.
"""

from dataclasses import dataclass
from itertools import product

from .exactmath import is_prime

MAX_ENUMERATION_N = 7


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _unit_normalizer(a, n):
    """A unit u mod n with u*a = gcd(a, n) mod n."""
    g = _gcd(a, n)
    if g == 0:
        return 1
    a_ = (a // g) % (n // g) if n // g > 1 else 0
    m = n // g
    if m == 1:
        return 1
    inv = pow(a_, -1, m)
    # lift inv to a unit modulo n
    u = inv
    while _gcd(u, n) != 1:
        u += m
    return u % n


def howell_form(rows, n):
    """Howell normal form of the Z/n-span of ``rows`` (list of integer vectors).

    Equal spans give identical forms.  Zero rows are dropped.
    """
    if not rows:
        return ()
    width = len(rows[0])
    A = [[x % n for x in r] for r in rows]
    A += [[0] * width for _ in range(max(0, width - len(A)))]
    r = 0
    for col in range(width):
        # gather the gcd of the column into row r
        for i in range(r + 1, len(A)):
            if A[i][col] == 0:
                continue
            if A[r][col] == 0:
                A[r], A[i] = A[i], A[r]
                continue
            g, s, t = _xgcd(A[r][col], A[i][col])
            u, v = A[r][col] // g, A[i][col] // g
            new_r = [(s * x + t * y) % n for x, y in zip(A[r], A[i])]
            new_i = [(-v * x + u * y) % n for x, y in zip(A[r], A[i])]
            A[r], A[i] = new_r, new_i
        if A[r][col] == 0:
            continue
        uu = _unit_normalizer(A[r][col], n)
        A[r] = [(uu * x) % n for x in A[r]]
        piv = A[r][col]
        # reduce the rows above
        for i in range(r):
            q = A[i][col] // piv
            A[i] = [(x - q * y) % n for x, y in zip(A[i], A[r])]
        # append the annihilator multiple to keep the Howell property
        ann = n // _gcd(piv, n)
        extra = [(ann * x) % n for x in A[r]]
        if any(extra):
            A.append(extra)
        r += 1
        if r >= len(A):
            break
    out = [tuple(row) for row in A[:r] if any(row)]
    return tuple(out)


def span(rows, n):
    """All elements of the Z/n-span (brute force; small groups only)."""
    width = len(rows[0])
    elems = {tuple([0] * width)}
    for r in rows:
        new = set()
        for e in elems:
            for k in range(n):
                new.add(tuple((x + k * y) % n for x, y in zip(e, r)))
        elems = new
    return frozenset(elems)


@dataclass(frozen=True)
class SymplecticSpace:
    n: int
    signs: tuple = (1, 1)

    @property
    def gram(self):
        s1, s2 = self.signs
        g = [[0] * 4 for _ in range(4)]
        g[0][1], g[1][0] = s1 % self.n, (-s1) % self.n
        g[2][3], g[3][2] = s2 % self.n, (-s2) % self.n
        return g


@dataclass(frozen=True)
class Subgroup:
    generators: tuple  # Howell form rows
    order: int
    n: int


@dataclass(frozen=True)
class AntiIsometry:
    matrix: tuple  # ((a, b), (c, d)) modulo n, acting on column vectors
    n: int
    source_sign: int = 1
    target_sign: int = 1

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if (a * d - b * c + self.source_sign * self.target_sign) % self.n:
            raise ValueError("matrix does not invert the Weil pairing")


def weil_pairing(u, v, S):
    g = S.gram
    return sum(u[i] * g[i][j] * v[j] for i in range(4) for j in range(4)) % S.n


def subgroup(rows, n):
    form = howell_form(rows, n)
    return Subgroup(form, len(span(list(form), n)) if form else 1, n)


def _rref_rank2(n):
    """All 2-dimensional subspaces of (Z/n)^4 for prime n, as reduced bases."""
    out = []
    for p1, p2 in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]:
        free = [(r, c) for r in range(2) for c in range(4)
                if c > (p1, p2)[r] and c not in (p1, p2)]
        for vals in product(range(n), repeat=len(free)):
            rows = [[0] * 4, [0] * 4]
            rows[0][p1] = 1
            rows[1][p2] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            out.append(rows)
    return out


def enumerate_maximal_isotropic(n, signs=(1, 1)):
    """All subgroups (Z/n)^2 of (Z/n)^4 on which the pairing vanishes."""
    if not is_prime(n):
        raise ValueError("enumeration requires a prime n")
    if n > MAX_ENUMERATION_N:
        raise MemoryError("enumeration is capped at n = %d" % MAX_ENUMERATION_N)
    S = SymplecticSpace(n, signs)
    out = []
    for rows in _rref_rank2(n):
        if weil_pairing(rows[0], rows[1], S) == 0:
            out.append(Subgroup(howell_form(rows, n), n * n, n))
    return out


def _solve_mod_prime(a, b, n):
    """Solve the 2x2 system a*x = b over Z/n (n prime) if a is invertible."""
    (p, q), (r, s) = a
    d = (p * s - q * r) % n
    if d == 0:
        return None
    di = pow(d, -1, n)
    inv = ((s * di) % n, (-q * di) % n), ((-r * di) % n, (p * di) % n)
    return [[(inv[i][0] * b[0][j] + inv[i][1] * b[1][j]) % n for j in range(2)] for i in range(2)]


def classify_maximal_isotropic(G, signs=(1, 1)):
    """('product', C1, C2) or ('graph', AntiIsometry) for prime n."""
    n = G.n
    S = SymplecticSpace(n, signs)
    rows = [list(r) for r in G.generators]
    if len(rows) != 2 or any(weil_pairing(rows[i], rows[j], S) for i in range(2) for j in range(2)):
        raise ValueError("not a maximal isotropic subgroup")
    first = [r[:2] for r in rows]
    second = [r[2:] for r in rows]
    det1 = (first[0][0] * first[1][1] - first[0][1] * first[1][0]) % n
    if det1 == 0:
        # G meets E2[n] (and hence E1[n]) nontrivially: a product C1 x C2
        elems = span(rows, n)
        c1 = sorted(e[:2] for e in elems if e[2:] == (0, 0) and any(e[:2]))
        c2 = sorted(e[2:] for e in elems if e[:2] == (0, 0) and any(e[2:]))
        return ("product", howell_form([list(c1[0])], n), howell_form([list(c2[0])], n))
    # rows are (P, psi P): solve psi * [P1 P2] = [Q1 Q2] for the column matrix
    P = [[first[0][0], first[1][0]], [first[0][1], first[1][1]]]
    Q = [[second[0][0], second[1][0]], [second[0][1], second[1][1]]]
    (p, q), (r, s) = P
    d = (p * s - q * r) % n
    di = pow(d, -1, n)
    Pinv = [[(s * di) % n, (-q * di) % n], [(-r * di) % n, (p * di) % n]]
    psi = tuple(tuple(sum(Q[i][k] * Pinv[k][j] for k in range(2)) % n for j in range(2))
                for i in range(2))
    return ("graph", AntiIsometry(psi, n, signs[0], signs[1]))


def graph_subgroup(psi):
    """The graph {(P, psi P)} of an anti-isometry as a Subgroup."""
    n = psi.n
    (a, b), (c, d) = psi.matrix
    rows = [[1, 0, a % n, c % n], [0, 1, b % n, d % n]]
    return Subgroup(howell_form(rows, n), n * n, n)


def is_isotropic(G, signs=(1, 1)):
    S = SymplecticSpace(G.n, signs)
    rows = G.generators
    return all(weil_pairing(u, v, S) == 0 for u in rows for v in rows)


def split_counts(n, signs=(1, 1)):
    prods = graphs = 0
    for G in enumerate_maximal_isotropic(n, signs):
        kind = classify_maximal_isotropic(G, signs)[0]
        if kind == "product":
            prods += 1
        else:
            graphs += 1
    return prods, graphs


def beta_matrix(t, N, p):
    """Multiplication by beta (beta^2 = t beta - N) on the basis 1/p, beta/p."""
    return ((0, (-N) % p), (1, t % p))


@dataclass(frozen=True)
class EquivariantProblem:
    B1: tuple
    B2: tuple
    p: int
    s1: int = 1
    s2: int = 1


def _mul2(a, b, p):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) % p for j in range(2))
                 for i in range(2))


def solve_equivariant_antiisometries(prob):
    """All psi in GL2(Z/p) with psi B1 = B2 psi and det psi = -s1 s2."""
    p = prob.p
    target = (-prob.s1 * prob.s2) % p
    out = []
    for a, b, c, d in product(range(p), repeat=4):
        psi = ((a, b), (c, d))
        if (a * d - b * c) % p != target:
            continue
        if _mul2(psi, prob.B1, p) == _mul2(prob.B2, psi, p):
            out.append(AntiIsometry(psi, p, prob.s1, prob.s2))
    return out


def unit_orbits(solutions, units, p):
    """Partition solutions into orbits under psi -> psi * u for u in ``units``."""
    remaining = {s.matrix for s in solutions}
    orbits = []
    while remaining:
        start = min(remaining)
        orbit = {_mul2(start, u, p) for u in units}
        orbits.append(sorted(orbit & ({s.matrix for s in solutions})))
        remaining -= orbit
    return orbits


def equivariant_cases_l2():
    """Equivariant problems for the three remaining normalized cases at l = 2.

    Returns {name: (problem, ...)}, keyed by the case index (1, 2 or 4).
    """
    c1 = EquivariantProblem(beta_matrix(2, 2, 2), beta_matrix(0, 2, 2), 2, 1, 1)
    c4 = EquivariantProblem(beta_matrix(1, 2, 2), beta_matrix(-1, 2, 2), 2, 1, 1)
    c2p = EquivariantProblem(beta_matrix(2, 2, 3), beta_matrix(-1, 2, 3), 3, 1, 1)
    c2m = EquivariantProblem(beta_matrix(2, 2, 3), beta_matrix(-1, 2, 3), 3, 1, -1)
    return {1: (c1,), 2: (c2p, c2m), 4: (c4,)}


def gaussian_units_mod3():
    """The automorphisms of Z[i] acting on (1/3)Z[1+i]/Z[1+i], basis (1/3, (1+i)/3)."""
    I = ((1, 0), (0, 1))
    B = beta_matrix(2, 2, 3)
    i_mat = tuple(tuple((B[r][c] - I[r][c]) % 3 for c in range(2)) for r in range(2))
    neg = lambda m: tuple(tuple((-x) % 3 for x in row) for row in m)
    return [I, neg(I), i_mat, neg(i_mat)]
