from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thompsonf.dyadic import HALF, ONE, ZERO, Dyadic, compare, format_dyadic, log2_ratio, parse

from conftest import dyadics, frac


def test_canonical_form():
    assert Dyadic(6, 3) == Dyadic(3, 2)
    assert (Dyadic(6, 3).num, Dyadic(6, 3).exp) == (3, 2)
    assert (Dyadic(0, 9).num, Dyadic(0, 9).exp) == (0, 0)
    assert Dyadic(4, 0) == 4


def test_negative_exponent_folds_into_numerator():
    assert Dyadic(3, -2) == 12


@given(dyadics, dyadics)
def test_ring_ops_match_fractions(a, b):
    assert frac(a + b) == frac(a) + frac(b)
    assert frac(a - b) == frac(a) - frac(b)
    assert frac(a * b) == frac(a) * frac(b)
    assert compare(a, b) == (frac(a) > frac(b)) - (frac(a) < frac(b))


@given(dyadics, st.integers(-30, 30))
def test_shift_is_power_of_two_scaling(a, k):
    assert frac(a.shift(k)) == frac(a) * Fraction(2) ** k


@given(dyadics)
def test_text_round_trip(a):
    assert parse(format_dyadic(a)) == a
    assert hash(parse(str(a))) == hash(a)


@pytest.mark.parametrize("text,value", [("3/8", Dyadic(3, 3)), ("0", ZERO), ("1", ONE), ("-5/4", Dyadic(-5, 2)), (" 2/4 ", HALF)])
def test_parse(text, value):
    assert parse(text) == value


@pytest.mark.parametrize("text", ["1/3", "abc", "1/0", "", "1.5", "1//2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse(text)


def test_format():
    assert format_dyadic(Dyadic(3, 3)) == "3/8"
    assert format_dyadic(ZERO) == "0"
    assert format_dyadic(ONE) == "1"


def test_division_only_by_powers_of_two():
    assert Dyadic(3, 2) / 4 == Dyadic(3, 4)
    with pytest.raises((ValueError, ZeroDivisionError, TypeError)):
        Dyadic(1) / 3


def test_log2_ratio():
    assert log2_ratio(Dyadic(1, 3), Dyadic(1, 1)) == -2
    assert log2_ratio(Dyadic(3, 1), Dyadic(1, 1)) is None


def test_immutable():
    with pytest.raises(AttributeError):
        HALF.num = 3
