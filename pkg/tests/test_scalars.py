from fractions import Fraction

import pytest

from crforge.scalars import (QC, conj, cube_root_dilation, exact_sqrt,
                             format_rational, is_exact, is_zero,
                             parse_rational, sqrt_positive)


def test_exact_arithmetic():
    a = QC(Fraction(1, 2), Fraction(1, 3))
    b = QC(2, -1)
    assert a + b == QC(Fraction(5, 2), Fraction(-2, 3))
    assert a * b == QC(Fraction(4, 3), Fraction(1, 6))
    assert (a / b) * b == a
    assert -a + a == QC(0)


def test_mixing_degrades_to_complex():
    a = QC(1, 2)
    z = a + 0.5
    assert isinstance(z, complex)
    assert z == 1.5 + 2j
    assert isinstance(a * 1j, complex)
    assert isinstance(1j * a, complex)
    # exact-exact stays exact
    assert is_exact(a * QC(Fraction(1, 7)))


def test_conj_and_zero():
    assert conj(QC(1, 2)) == QC(1, -2)
    assert conj(1 + 2j) == 1 - 2j
    assert is_zero(QC(0))
    assert not is_zero(QC(0, Fraction(1, 10 ** 12)))
    assert is_zero(1e-12 + 0j, tol=1e-9)
    assert not is_zero(1e-6 + 0j, tol=1e-9)


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(2)) is None
    assert sqrt_positive(QC(Fraction(9, 4))) == QC(Fraction(3, 2))
    s = sqrt_positive(QC(2))
    assert isinstance(s, complex) and abs(s * s - 2) < 1e-12


def test_sqrt_rejects_nonpositive():
    with pytest.raises(ValueError):
        sqrt_positive(QC(-1))
    with pytest.raises(ValueError):
        sqrt_positive(QC(0, 1))


def test_cube_root_dilation():
    for alpha in (2 + 0j, -1 + 1j, 0.3 - 2j, 1 + 0j):
        lam = cube_root_dilation(alpha)
        assert abs(lam * lam * lam.conjugate() - alpha) < 1e-12


def test_rational_io_round_trip():
    for text in ("3", "-7/2", "0"):
        assert format_rational(parse_rational(text)) == text
    assert parse_rational(5) == Fraction(5)
    with pytest.raises(ValueError):
        parse_rational(1.5)
