from fractions import Fraction

import mpmath
import pytest

from isoclass import modular
from isoclass.genus2glue import IgusaPoint


@pytest.mark.parametrize("D,poly", [(-3, [0, 1]), (-4, [-1728, 1]), (-7, [3375, 1]),
                                    (-8, [-8000, 1]), (-15, [-121287375, 191025, 1])])
def test_hilbert_class_poly(D, poly):
    assert modular.hilbert_class_poly(D) == poly


def test_class_numbers():
    assert [modular.class_number(D) for D in (-3, -4, -15, -20, -23)] == [1, 1, 2, 2, 3]


def test_phi2_symmetric_and_verified():
    F = modular.load_modular_polynomial(2).polynomial
    assert F.swap() == F
    modular.verify_modular_polynomial(2, F)


def test_phi2_diagonal():
    facs, _ = modular.phi_diagonal_factorization(2)
    assert sorted(facs) == [(-8, 1), (-7, 2), (-4, 1)]
    for D, e in facs:
        assert e == modular.norm_orbit_count(D, 2)


def test_phi3_diagonal_exponents():
    facs, _ = modular.phi_diagonal_factorization(3)
    for D, e in facs:
        assert e == modular.norm_orbit_count(D, 3)


def test_corrupt_data_rejected(tmp_path):
    src = modular.data_dir() / "phi_2.txt"
    text = src.read_text().splitlines()
    for i, line in enumerate(text):
        parts = line.split()
        if len(parts) == 3 and parts[0] == "2" and parts[1] == "1":
            parts[-1] = str(int(parts[-1]) + 1)
            text[i] = " ".join(parts)
            break
    for f in modular.data_dir().iterdir():
        (tmp_path / f.name).write_bytes(f.read_bytes())
    (tmp_path / "phi_2.txt").write_text("\n".join(text) + "\n")
    modular.set_data_dir(tmp_path)
    try:
        with pytest.raises(modular.DataError):
            modular.load_modular_polynomial(2)
    finally:
        modular.set_data_dir(None)


def test_figure1_divides():
    assert modular.figure1_divides_phi7()


def test_humbert8_random_point_off():
    H = modular.load_humbert(8)
    p = IgusaPoint(Fraction(3), Fraction(5), Fraction(7), Fraction(11))
    assert not modular.humbert_contains(H, p)
    v = modular.humbert_eval_numeric(H, [mpmath.mpf(x) for x in (3, 5, 7, 11)], 50)
    assert v > mpmath.mpf(10) ** -10


def test_humbert_convention_mismatch():
    H = modular.load_humbert(8)

    class P:
        convention = ("A", "B", "C", "D")

        def values(self):
            return (1, 2, 3, 4)
    with pytest.raises(ValueError):
        modular.humbert_eval(H, P())
