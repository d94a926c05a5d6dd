from fractions import Fraction

import pytest

from isoclass import hermitian as hm
from isoclass import torsion
from isoclass.exactmath import det, quadratic_field


def test_order_basics():
    O = hm.QuadraticOrder(-8)
    w = O.w()
    assert w * w - O.disc * w + (O.disc ** 2 - O.disc) // 4 == O.field.zero()
    assert O.delta() * O.delta() == O.field(O.disc)
    assert len(O.units()) == 2
    assert len(hm.QuadraticOrder(-4).units()) == 4
    assert hm.QuadraticOrder(-12).conductor() == 2


def test_zlattice_hnf():
    L = hm.ZLattice([[2, 0], [0, 2], [1, 1]])
    assert L.covolume() == 2
    assert L.contains([3, 1]) and not L.contains([1, 0])
    assert hm.ZLattice([[1, 1], [0, 2]]) == L


@pytest.mark.parametrize("D,mode,n", [(-4, "definite", 1), (-7, "definite", 1),
                                      (-8, "definite", 2), (-8, "indefinite", 2),
                                      (-3, "definite", 1), (-11, "definite", 2)])
def test_class_counts(D, mode, n):
    res = hm.classify_pairs(hm.QuadraticOrder(D), mode)
    assert len(res.representatives) == n
    assert res.unresolved == 0
    for p in res.representatives:
        assert hm.det_index_check(p)


def test_det_index_equality_on_raw_pairs():
    for p in hm.raw_pairs(hm.QuadraticOrder(-7), "indefinite"):
        assert hm.det_index_check(p)


def test_odd_even_forms_distinct_at_minus8_equal_at_minus7():
    for D, expect in ((-8, "distinct"), (-7, "equivalent")):
        O = hm.QuadraticOrder(D)
        odd = hm.standard_pair(O, ((1, 0), (0, -1)))
        even = hm.standard_pair(O, ((0, 1), (1, 0)))
        assert hm.equivalence_verdict(odd, even) == expect
    O = hm.QuadraticOrder(-8)
    assert hm.hyperbolic_type(hm.standard_pair(O, ((1, 0), (0, -1)))) == 1
    assert hm.hyperbolic_type(hm.standard_pair(O, ((0, 1), (1, 0)))) == 0


def test_equivalence_under_gl2_change():
    O = hm.QuadraticOrder(-7)
    K = O.field
    p = hm.standard_pair(O, ((1, 0), (0, 2)))
    # the basis change (e1, e2) -> (e1 + w e2, e2) gives an isometric pair
    w = O.w()
    S = [[K(1), K(0)], [K(0), K(2)]]
    a = [[K(1), K(0)], [w, K(1)]]
    ah = [[x.conj() for x in row] for row in zip(*a)]
    Sn = [[sum((a[i][k] * S[k][l] * ah[l][j] for k in range(2) for l in range(2)), K(0))
           for j in range(2)] for i in range(2)]
    q = hm.standard_pair(O, tuple(tuple(r) for r in Sn))
    assert hm.equivalence_verdict(p, q) == "equivalent"


def test_humbert_components():
    assert [c.disc for c in hm.humbert_components(2)] == [8]
    assert sorted(c.disc for c in hm.humbert_components(5)) == [5, 20]
    assert [c.disc for c in hm.humbert_components(7)] == [28]


def test_sqrt_minus2_glueing():
    K = quadratic_field(-2)
    r = K.gen()
    a = hm.IdealLattice.order_basis(K, r)
    L = hm.glue_lattice(a, a, torsion.AntiIsometry(((1, 0), (1, 1)), 2), 2)
    assert det(L.E) == 1
    R = hm.induced_endomorphism(L, (r, r), "s", l=2)
    assert R is not None and hm.ll_property(L, R, 2)
    Pa, Pr = hm.char_polys(L, "s")
    assert list(Pr.c) == [4, 0, 4, 0, 1]
    assert hm.rosati_check(L, "s")


def test_unstable_glue_has_no_endomorphism():
    K = quadratic_field(-2)
    r = K.gen()
    a = hm.IdealLattice.order_basis(K, r)
    L = hm.glue_lattice(a, a, torsion.AntiIsometry(((1, 1), (0, 1)), 2), 2)
    assert hm.induced_endomorphism(L, (r, r), "s", l=2) is None


def test_cm_candidate_rejects_trivial_xi():
    from isoclass.exactmath import NumberField
    K = NumberField([1, 1, 1, 1, 1], "z")
    module = [K.gen() ** k for k in range(4)]
    assert not hm.cm_pair_check(hm.CMPairCandidate(K, module, K.one()))
    assert hm.find_xi(K, module) is not None
