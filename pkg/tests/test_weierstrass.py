from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import curve_with_points
from dioph.errors import CurveMismatchError, NotOnCurveError, SingularCurveError
from dioph.weierstrass import CurvePoint, LongWeierstrass

E96 = LongWeierstrass.short(-96, 0)
EQ30 = LongWeierstrass(F(26, 3), F(152, 9), 136, -204, F(-10336, 3))
EQ31 = LongWeierstrass(0, F(107, 3), 0, F(1156, 3), F(3536, 3))


def test_contains():
    assert E96.contains((-8, 16))
    assert E96.contains(E96.infinity)
    assert E96.contains("inf")
    assert not E96.contains((-8, 17))


def test_point_off_curve_raises():
    with pytest.raises(NotOnCurveError):
        E96.point(-8, 17)


def test_singular_curve_rejected():
    with pytest.raises(SingularCurveError):
        LongWeierstrass.short(0, 0)


def test_double_example():
    p = E96.point(-8, 16)
    assert E96.double(p) == E96.point(25, -115)
    assert 2 * p == E96.point(25, -115)


def test_double_on_completed_square_curve():
    g2 = EQ31.point(F(-152, 9), F(140, 27))
    assert EQ31.double(g2) == EQ31.point(F(373, 36), F(-21721, 216))


def test_identity_and_inverse():
    p = E96.point(-8, 16)
    assert E96.add(p, E96.infinity) == p
    assert E96.add(E96.infinity, p) == p
    assert E96.add(p, -p).is_infinity
    assert -p == E96.point(-8, -16)


def test_two_torsion_doubles_to_infinity():
    t = E96.point(0, 0)
    assert E96.double(t).is_infinity


def test_points_from_another_curve_rejected():
    other = LongWeierstrass.short(-54, 0)
    with pytest.raises(CurveMismatchError):
        E96.add(E96.point(-8, 16), other.point(-2, 10))


def test_complete_square_example():
    short, forward, inverse = EQ30.complete_square()
    assert short == EQ31
    p2 = EQ30.point(F(-44, 3), F(20, 9))
    g1 = forward(p2)
    assert g1 == EQ31.point(F(-44, 3), F(20, 3))
    assert inverse(g1) == p2


def test_complete_square_of_short_curve_is_identity():
    short, forward, inverse = E96.complete_square()
    assert short is E96
    p = E96.point(-8, 16)
    assert forward(p) == p and inverse(p) == p


def substitution_oracle(a4, a6, nb):
    """Every integral point with |x| <= nb, by direct substitution."""
    found = set()
    for x in range(-nb, nb + 1):
        rhs = x**3 + a4 * x + a6
        for y in range(-abs(rhs) - 1, abs(rhs) + 2):
            if y * y == rhs:
                found.add((F(x), F(y)))
    return found


def test_naive_search_against_exhaustive_oracle():
    curve = LongWeierstrass.short(0, 1)
    got = {(p.x, p.y) for p in curve.naive_search(3, 1)}
    expected = {(F(-1), F(0)), (F(0), F(1)), (F(0), F(-1)), (F(2), F(3)), (F(2), F(-3))}
    assert got == expected == substitution_oracle(0, 1, 3)


def test_naive_search_finds_generator():
    curve = LongWeierstrass.short(-54, 0)
    got = {(p.x, p.y) for p in curve.naive_search(10, 1)}
    assert (-2, 10) in got and (-2, -10) in got
    assert got == substitution_oracle(-54, 0, 10)


def test_naive_search_rational_window():
    # the bound is on the numerator of x itself, so -152/9 needs at least 152
    assert (F(-152, 9), F(140, 27)) not in {(p.x, p.y) for p in EQ31.naive_search(60, 9)}
    got = {(p.x, p.y) for p in EQ31.naive_search(160, 9)}
    assert (F(-44, 3), F(20, 3)) in got
    assert (F(-152, 9), F(140, 27)) in got
    assert all(EQ31.contains(p) for p in got)


def test_naive_search_empty_window():
    assert LongWeierstrass.short(0, 7).naive_search(0, 1) == []


def test_json_roundtrip():
    assert LongWeierstrass.from_json(EQ30.to_json()) == EQ30
    p = EQ30.point(F(-44, 3), F(20, 9))
    assert CurvePoint.from_json(EQ30, p.to_json()) == p
    assert CurvePoint.from_json(EQ30, "inf").is_infinity


@settings(max_examples=250)
@given(curve_with_points())
def test_group_axioms(data):
    curve, (p, q, r) = data
    o = curve.infinity
    for s in (p + q, p - q, 2 * p, p + q + r):
        assert curve.contains(s)
    assert p + o == p
    assert (p + (-p)).is_infinity
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert curve.add(p, p) == curve.double(p)


@settings(max_examples=200)
@given(curve_with_points(), st.integers(min_value=-8, max_value=8))
def test_scalar_mul_is_repeated_addition(data, n):
    curve, (p, _, _) = data
    acc = curve.infinity
    for _ in range(abs(n)):
        acc = acc + p
    if n < 0:
        acc = -acc
    assert curve.scalar_mul(n, p) == acc


@settings(max_examples=200)
@given(curve_with_points())
def test_complete_square_preserves_group_law(data):
    curve, (p, q, _) = data
    short, forward, inverse = curve.complete_square()
    assert short.a1 == 0 and short.a3 == 0
    fp, fq = forward(p), forward(q)
    assert short.contains(fp) and short.contains(fq)
    assert forward(p + q) == fp + fq
    assert forward(2 * p) == 2 * fp
    assert inverse(fp + fq) == p + q
