from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bdist.core import Window, bit, fmt_rat, min_gap, mod2_sum, parity, parity_additivity_check, rat


@pytest.mark.parametrize("n,expected", [(0, 0), (7, 1), (4, 0)])
def test_parity(n, expected):
    assert parity(n) == expected


def test_parity_rejects_negative():
    with pytest.raises(ValueError):
        parity(-1)


@pytest.mark.parametrize("m,n,expected", [(0, 0, (0, 0)), (3, 4, (1, 1)), (5, 7, (0, 0))])
def test_parity_additivity_examples(m, n, expected):
    assert parity_additivity_check(m, n) == expected


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_parity_additivity(m, n):
    lhs, rhs = parity_additivity_check(m, n)
    assert lhs == rhs


@pytest.mark.parametrize("bits,expected", [([], 0), ([1, 1, 1], 1), ([1, 0, 1], 0)])
def test_mod2_sum(bits, expected):
    assert mod2_sum(bits) == expected


def test_rat_parsing():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(2) == Fraction(2)
    assert rat("-1/2") == Fraction(-1, 2)
    with pytest.raises((TypeError, ValueError)):
        rat(0.5)


def test_fmt_rat():
    assert fmt_rat(Fraction(-3, 2)) == "-3/2"
    assert fmt_rat(Fraction(4)) == "4"


def test_bit():
    assert bit(True) == 1 and bit(0) == 0


def test_window_ops():
    w = Window(0, 1)
    assert w.shift(2) == Window(2, 3)
    assert w.expand(1) == Window(-1, 2)
    assert w.hull(Window(3, 4)) == Window(0, 4)


def test_min_gap():
    assert min_gap([0, Fraction(1, 2), 3]) == Fraction(1, 2)
    assert min_gap([5]) is None
