from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twistfm.errors import InputError
from twistfm.exact import GaussianRational, format_fraction, format_gaussian, parse_gaussian, to_fraction

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
gaussians = st.builds(GaussianRational, rationals, rationals)


@pytest.mark.parametrize("x, want", [(3, Fraction(3)), ("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), (Fraction(1, 3), Fraction(1, 3))])
def test_to_fraction(x, want):
    assert to_fraction(x) == want


@pytest.mark.parametrize("bad", [0.5, True, "x", "1/0"])
def test_to_fraction_rejects(bad):
    with pytest.raises((InputError, ZeroDivisionError)):
        to_fraction(bad)


def test_format_fraction():
    assert format_fraction(Fraction(-3, 6)) == "-1/2"
    assert format_fraction(Fraction(4)) == "4"


@pytest.mark.parametrize(
    "text, re, im",
    [("i", 0, 1), ("-i", 0, -1), ("3i", 0, 3), ("1+i", 1, 1), ("1/2-3/4i", Fraction(1, 2), Fraction(-3, 4)), ("5", 5, 0)],
)
def test_parse_gaussian(text, re, im):
    assert parse_gaussian(text) == GaussianRational(re, im)


@given(gaussians)
def test_gaussian_format_round_trip(z):
    assert parse_gaussian(format_gaussian(z)) == z


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a - a == GaussianRational()
    if b:
        assert (a / b) * b == a


def test_i_squared():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    assert (1 / i) == GaussianRational(0, -1)
    assert i.norm() == 1
