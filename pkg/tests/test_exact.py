from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tatezeta.errors import InvalidArgument
from tatezeta.exact import (
    INFINITY,
    abs_at_place,
    frac_p,
    is_prime,
    parse_rational,
    rational_primes,
    valuation,
)
from tatezeta.places import REAL, Place

PRIMES = [2, 3, 5, 7, 11, 101]

nonzero_rationals = st.builds(
    Fraction,
    st.integers(min_value=-10**9, max_value=10**9).filter(bool),
    st.integers(min_value=1, max_value=10**9),
)
rationals = st.builds(Fraction, st.integers(-10**9, 10**9), st.integers(1, 10**9))


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(0, 5) is INFINITY
    assert valuation(Fraction(1, 9), 3) == -2


def test_valuation_rejects_composite():
    with pytest.raises(InvalidArgument):
        valuation(12, 4)
    with pytest.raises(InvalidArgument):
        frac_p(Fraction(1, 2), 1)


def test_infinity_orders_above_integers():
    assert INFINITY > 10**100
    assert not INFINITY < -5
    assert min(INFINITY, 3) == 3
    assert INFINITY + 4 is INFINITY


def test_abs_at_place_examples():
    assert abs_at_place(12, Place(2)) == Fraction(1, 4)
    assert abs_at_place(-6, REAL) == 6
    assert abs_at_place(0, Place(7)) == 0


def test_frac_p_examples():
    assert frac_p(Fraction(3, 8), 2) == Fraction(3, 8)
    assert frac_p(Fraction(1, 3), 5) == 0
    # oracle: v_2(7/6 - 1/2) = v_2(2/3) = 1 >= 0, and 1/2 in [0, 1)
    r = frac_p(Fraction(7, 6), 2)
    assert valuation(Fraction(7, 6) - r, 2) >= 0 and 0 <= r < 1
    assert r == Fraction(1, 2)


@pytest.mark.parametrize("text,value", [("3/4", Fraction(3, 4)), ("-7", Fraction(-7)), ("-10/4", Fraction(-5, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "a/b", "--3", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(InvalidArgument):
        parse_rational(text)


def test_is_prime_small():
    brute = [n for n in range(200) if n > 1 and all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == brute


@given(nonzero_rationals, nonzero_rationals, st.sampled_from(PRIMES))
def test_valuation_multiplicative(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


@given(rationals, rationals, st.sampled_from(PRIMES))
def test_ultrametric(x, y, p):
    assert valuation(x + y, p) >= min(valuation(x, p), valuation(y, p))


@given(rationals, st.sampled_from(PRIMES))
def test_frac_p_defect_and_idempotence(x, p):
    r = frac_p(x, p)
    assert 0 <= r < 1
    assert valuation(x - r, p) >= 0
    assert frac_p(r, p) == r
    d = r.denominator
    while d % p == 0:
        d //= p
    assert d == 1
    assert (r == 0) == (valuation(x, p) >= 0)


def test_rational_primes():
    assert rational_primes(Fraction(-12, 35)) == [2, 3, 5, 7]
    assert rational_primes(Fraction(1)) == []
    assert rational_primes(Fraction(999983, 1000000)) == [2, 5, 999983]
