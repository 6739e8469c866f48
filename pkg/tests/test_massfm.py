from fractions import Fraction

import pytest

from sscurves.massfm import (EXTERNAL_CURVE_MASS, bernoulli, curve_mass_sum, fraction_text,
                             mass_indecomposable, mass_table, mass_total, zeta_factor)

CLOSURE_ORDERS = [12, 4, 24, 36, 72, 12, 3, 12, 3]


def test_bernoulli_numbers():
    expected = {0: Fraction(1), 2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42),
                8: Fraction(-1, 30), 10: Fraction(5, 66), 12: Fraction(-691, 2730),
                14: Fraction(7, 6), 16: Fraction(-3617, 510)}
    for n, v in expected.items():
        assert bernoulli(n) == v


def test_zeta_factors_are_positive():
    assert zeta_factor(1) == Fraction(1, 24)
    assert all(zeta_factor(i) > 0 for i in range(1, 9))


def test_total_mass():
    assert mass_total(4, 11) == Fraction(8485039, 497664)
    assert mass_total(1, 11) == Fraction(5, 12)
    for p in (2, 3, 5, 7, 11, 13):
        assert mass_total(1, p) == Fraction(p - 1, 24)
        assert all(mass_total(g, p) > 0 for g in range(1, 9))
    with pytest.raises(ValueError):
        mass_total(9, 11)


@pytest.mark.parametrize("p,value", [(2, Fraction(1, 3317760)), (3, Fraction(1, 46080)),
                                     (5, Fraction(539, 103680)), (7, Fraction(173, 1024)),
                                     (11, Fraction(1395421, 82944))])
def test_indecomposable_mass(p, value):
    assert mass_indecomposable(p) == value


def test_curve_mass():
    assert curve_mass_sum(CLOSURE_ORDERS) == Fraction(5, 8)
    assert curve_mass_sum(CLOSURE_ORDERS) < mass_indecomposable(11)
    assert curve_mass_sum([720]) == Fraction(1, 1440)
    assert curve_mass_sum([]) == 0
    with pytest.raises(ValueError):
        curve_mass_sum([0])


def test_mass_table_rows():
    rows = mass_table(CLOSURE_ORDERS)
    assert [r["p"] for r in rows] == [2, 3, 5, 7, 11]
    by_p = {r["p"]: r for r in rows}
    assert by_p[11]["M4"] == "8485039/497664"
    assert by_p[11]["curve_mass"] == ">= 5/8"
    assert by_p[5]["curve_mass"] == "1/720"
    assert by_p[5]["curve_mass_source"] == "external constant"
    assert EXTERNAL_CURVE_MASS[5] == Fraction(1, 720)
    assert fraction_text(Fraction(4, 2)) == "2"
