"""Exact rational helpers.

``Rational`` is :class:`fractions.Fraction`: always reduced, denominator
positive, immutable and hashable, which is everything the rest of the
package relies on.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from sympy import factorint, isprime

from dioph.errors import DomainError, UndefinedValuationError

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_adic_valuation(x: RationalLike, p: int) -> int:
    """Exponent of the prime ``p`` in ``x``; negative when p divides the denominator."""
    x = as_rational(x)
    if x == 0:
        raise UndefinedValuationError("valuation of 0 is undefined")
    if not isinstance(p, int) or not isprime(p):
        raise DomainError(f"{p} is not prime")
    return _int_valuation(abs(x.numerator), p) - _int_valuation(x.denominator, p)


def rational_sqrt(x: RationalLike) -> Optional[Fraction]:
    """Nonnegative rational square root of ``x``, or None if ``x`` is not a square."""
    x = as_rational(x)
    if x < 0:
        return None
    # numerator and denominator are coprime, so x is a square iff both are
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n|, ascending."""
    n = abs(n)
    if n < 2:
        return []
    return sorted(int(p) for p in factorint(n))
