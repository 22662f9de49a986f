from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dioph.errors import DomainError, UndefinedValuationError
from dioph.ratcore import (
    as_rational,
    format_rational,
    p_adic_valuation,
    parse_rational,
    prime_factors,
    rational_sqrt,
)


def trial_division_valuation(n: int, p: int) -> int:
    n, k = abs(n), 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@pytest.mark.parametrize(
    "x, p, expected",
    [(8, 2, 3), (Fraction(9, 16), 2, -4), (Fraction(2393, 1728), 3, -3)],
)
def test_valuation_examples(x, p, expected):
    assert p_adic_valuation(x, p) == expected


def test_valuation_of_1728_by_trial_division():
    # 1728 = 2^6 * 3^3
    assert trial_division_valuation(1728, 2) == 6
    assert trial_division_valuation(1728, 3) == 3
    assert trial_division_valuation(2393, 3) == 0


def test_valuation_errors():
    with pytest.raises(UndefinedValuationError):
        p_adic_valuation(0, 2)
    with pytest.raises(DomainError):
        p_adic_valuation(8, 4)
    with pytest.raises(DomainError):
        p_adic_valuation(8, 1)


@pytest.mark.parametrize(
    "x, expected",
    [(144, 12), (0, 0), (Fraction(17, 3), None), (Fraction(49, 4), Fraction(7, 2)), (-4, None)],
)
def test_rational_sqrt_examples(x, expected):
    assert rational_sqrt(x) == expected


def test_as_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)


def test_parse_and_format_roundtrip():
    assert parse_rational("-161/27000") == Fraction(-161, 27000)
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-2, 4)) == "-1/2"


def test_prime_factors():
    assert prime_factors(1728) == [2, 3]
    assert prime_factors(2473) == [2473]
    assert all(type(p) is int for p in prime_factors(10**12 + 39))


nonzero = st.builds(
    Fraction,
    st.integers(min_value=1, max_value=10**9) | st.integers(min_value=-(10**9), max_value=-1),
    st.integers(min_value=1, max_value=10**9),
)
primes = st.sampled_from([2, 3, 5, 7, 11, 13, 101, 2473])


@given(nonzero, primes)
def test_valuation_matches_trial_division(x, p):
    expected = trial_division_valuation(x.numerator, p) - trial_division_valuation(x.denominator, p)
    assert p_adic_valuation(x, p) == expected


@given(nonzero, nonzero, primes)
def test_valuation_is_additive(x, y, p):
    assert p_adic_valuation(x * y, p) == p_adic_valuation(x, p) + p_adic_valuation(y, p)


@given(st.builds(Fraction, st.integers(-(10**6), 10**6), st.integers(1, 10**6)))
def test_sqrt_of_square(r):
    assert rational_sqrt(r * r) == abs(r)


@given(st.builds(Fraction, st.integers(0, 10**8), st.integers(1, 10**8)))
def test_sqrt_is_exact_or_absent(x):
    root = rational_sqrt(x)
    if root is not None:
        assert root >= 0 and root * root == x
