from fractions import Fraction

import pytest

from isoclass.exactmath import (NumberField, Polynomial, char_poly, det, divisors, factor_int,
                                factor_over_q, hilbert_symbol, is_norm_from_quadratic, is_prime,
                                mat_inv, mat_mul, identity, quadratic_field, resultant,
                                squarefree_part, to_rational)


def test_integer_helpers():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert factor_int(360) == {2: 3, 3: 2, 5: 1} or sorted(dict(factor_int(360)).items()) == [(2, 3), (3, 2), (5, 1)]
    assert sorted(divisors(12)) == [1, 2, 3, 4, 6, 12]
    assert squarefree_part(-72) == (-2, 6)
    assert to_rational("3/4") == Fraction(3, 4)


def test_quadratic_field_arithmetic():
    K = quadratic_field(-7)
    a = K.gen()
    assert a * a == K(-7)
    x = K([1, 2])
    assert x.norm() == 1 + 4 * 7
    assert x.trace() == 2
    assert x * x.inverse() == K.one()
    assert x.conj() == K([1, -2])


def test_number_field_quartic():
    K = NumberField([1, -1, 1, -1, 1], "z")  # Q(zeta_10)
    z = K.gen()
    assert z ** 5 == K(-1)
    assert z.norm() == 1
    assert (z + 1).norm() == 5


def test_matrices():
    m = [[Fraction(2), Fraction(1)], [Fraction(7), Fraction(4)]]
    assert det(m) == 1
    assert mat_mul(m, mat_inv(m)) == identity(2)
    assert list(char_poly(m).c) == [1, -6, 1]


def test_polynomials():
    x = Polynomial.x()
    f = (x * x - 2) * (x + 3)
    facs = factor_over_q(f)
    assert sorted(g.degree() for g, _ in facs) == [1, 2]
    assert resultant(x * x - 2, x - 1) == -1


@pytest.mark.parametrize("a,b,p,expected", [(-1, -1, 2, -1), (-1, -1, 3, 1), (2, 5, 5, -1)])
def test_hilbert_symbol(a, b, p, expected):
    assert hilbert_symbol(a, b, p) == expected


def test_norms_from_quadratic():
    assert is_norm_from_quadratic(2, -4)
    assert not is_norm_from_quadratic(3, -4)
