from fractions import Fraction
from math import ceil

import pytest
from hypothesis import given, strategies as st

from mrlrc.bounds import (HNotApplicable, compare, exponent_construction, exponent_gg22,
                          hu_yekhanin_alt_exponent, is_prime_power, lower_bound_exponent, table1_bounds)


def shape(g, h, a, r):
    return (g * r, r, h, a, g)


@pytest.mark.parametrize("g, h, a, expected", [(2, 4, 1, 3), (2, 6, 2, 5)])
def test_construction_exponent_examples(g, h, a, expected):
    assert exponent_construction(shape(g, h, a, 10)) == expected


@given(st.integers(1, 20), st.integers(1, 6), st.integers(8, 40))
def test_construction_exponent_g2_even_h(half, a, r):
    assert exponent_construction(shape(2, 2 * half, a, r)) == half + a


def test_gg22_example():
    assert exponent_gg22((16, 8, 6, 2, 2)) == (8, 6)
    assert exponent_gg22((16, 8, 7, 2, 2)) == (8, 6)        # h >= r - a gives r - a
    assert exponent_gg22((6, 2, 1, 1, 3)) == (3, 1)


def test_upper_bound_row_applicability():
    names = [b.name for b in table1_bounds(shape(2, 4, 1, 8))]
    assert any("4|h" in n for n in names)
    row3 = next(b for b in table1_bounds(shape(2, 4, 1, 8)) if "4|h" in b.name)
    assert row3.exponent == 2
    assert any(b.exponent == 1 and b.name.startswith("GGY20 (h=2)") for b in table1_bounds(shape(3, 2, 2, 5)))
    assert all("a=1" not in b.name for b in table1_bounds(shape(2, 4, 2, 8)))
    assert [b.name for b in table1_bounds(shape(2, 1, 2, 8))] == ["BHH12 (h<=1)"]
    assert any("r=3" in b.name for b in table1_bounds((6, 3, 3, 1, 2)))


def test_gg22_row_q0():
    rows = {b.name: b for b in table1_bounds(shape(4, 6, 1, 10))}
    row = next(b for n, b in rows.items() if n.startswith("GG22"))
    assert "q0=5" in row.name
    assert row.exponent == ceil(Fraction(6) * Fraction(4, 5))


def test_is_prime_power():
    assert [x for x in range(1, 30) if is_prime_power(x)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]


def test_lower_bound():
    base, alpha, simp = lower_bound_exponent(shape(2, 4, 1, 8))
    assert base == "n * r^alpha" and alpha == 0 and simp == 0
    _, alpha, simp = lower_bound_exponent(shape(4, 3, 2, 8))
    assert alpha == Fraction(min(2, 3 - 2), 1) and simp is None        # g >= h: min(a, h-2)
    _, alpha, simp = lower_bound_exponent(shape(6, 6, 3, 8))
    assert alpha == min(3, 6 - 2) and simp == min(Fraction(3 * 6, 6), 4)
    with pytest.raises(HNotApplicable):
        lower_bound_exponent(shape(2, 1, 1, 8))


def test_compare_examples():
    win = compare((16, 8, 6, 2, 2))
    assert win.construction.exponent == 5 and win.construction_wins and win.beats_gg22
    tie = compare(shape(2, 4, 2, 50))
    assert tie.construction.exponent == 4 == exponent_gg22(shape(2, 4, 2, 50))[1]
    assert not tie.beats_gg22
    lose = compare(shape(2, 4, 1, 8))
    assert lose.construction.exponent == 3
    assert any("4|h" in n for n in lose.best) and not lose.construction_wins
    assert compare((16, 8, 4, 1, 2)).footnotes


def test_compare_serialises():
    d = compare((16, 8, 6, 2, 2)).to_dict()
    assert d["construction"]["exponent"] == "5" and d["construction_wins"]
    assert "best (winner)" in compare((16, 8, 6, 2, 2)).table()


def test_hu_yekhanin_forms():
    assert hu_yekhanin_alt_exponent(shape(2, 4, 1, 8)) == 3
    assert hu_yekhanin_alt_exponent(shape(3, 4, 1, 8)) == 3


SWEEP = [shape(g, h, a, r) for g in (2, 3, 4) for h in range(1, 9) for a in (1, 2, 3) for r in (a + 1, 6, 12, 30)
         if r >= a + ceil(h / g)]


@pytest.mark.parametrize("params", SWEEP)
def test_sweep_properties(params):
    n, r, h, a, g = params
    e = exponent_construction(params)
    gg = exponent_gg22(params)[1]
    assert compare(params).beats_gg22 == (h - ceil(h / g) + a * (g - 1) < min(h, r - a))
    if a == 1:
        row2 = next(b for b in table1_bounds(params) if b.name == "HY16 (a=1)")
        assert row2.exponent == e
    if g == 2 and a < h / g and r - a >= h:
        assert e < gg
    for b in table1_bounds(params):
        assert b.exponent >= 0


def test_invalid_shape():
    with pytest.raises(ValueError):
        exponent_construction((9, 4, 2, 1, 2))
