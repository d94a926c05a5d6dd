import itertools

import pytest

from isoclass import torsion


def _brute_isotropic_count(n):
    """Oracle: maximal isotropic subgroups of (Z/n)^4 for prime n by a subspace scan."""
    vecs = [v for v in itertools.product(range(n), repeat=4) if any(v)]

    def pair(u, v):
        return (u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1]) % n
    planes = set()
    for u in vecs:
        for v in vecs:
            if pair(u, v):
                continue
            span = frozenset(tuple((a * x + b * y) % n for x, y in zip(u, v))
                             for a in range(n) for b in range(n))
            if len(span) == n * n:
                planes.add(span)
    return len(planes)


@pytest.mark.parametrize("n,total,split", [(2, 15, (9, 6)), (3, 40, (16, 24)), (5, 156, (36, 120))])
def test_isotropic_counts(n, total, split):
    assert len(torsion.enumerate_maximal_isotropic(n)) == total
    assert torsion.split_counts(n) == split


@pytest.mark.parametrize("n", [2, 3])
def test_isotropic_count_oracle(n):
    assert _brute_isotropic_count(n) == len(torsion.enumerate_maximal_isotropic(n))


def test_graph_classification_roundtrip():
    graphs = 0
    for G in torsion.enumerate_maximal_isotropic(3):
        kind = torsion.classify_maximal_isotropic(G)
        if kind[0] == "graph":
            graphs += 1
            assert torsion.graph_subgroup(kind[1]) == G
    assert graphs == 24


def test_anti_isometry_validation():
    with pytest.raises(ValueError):
        torsion.AntiIsometry(((1, 0), (0, 1)), 3)


def test_equivariant_counts():
    cases = torsion.equivariant_cases_l2()
    assert len(torsion.solve_equivariant_antiisometries(cases[1][0])) == 2
    assert len(torsion.solve_equivariant_antiisometries(cases[4][0])) == 1
    assert [len(torsion.solve_equivariant_antiisometries(p)) for p in cases[2]] == [4, 4]
