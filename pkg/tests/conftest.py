from fractions import Fraction

import pytest
from hypothesis import assume, settings
from hypothesis import strategies as st

from dioph.corpus import fixture_dir
from dioph.errors import SingularCurveError
from dioph.weierstrass import LongWeierstrass

settings.register_profile("default", deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-40, max_value=40)
small_rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=12))
nonzero_rationals = small_rationals.filter(lambda r: r != 0)


def _solve3(rows, rhs):
    """Cramer's rule on a 3x3 system over the rationals."""

    def det(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    d = det(rows)
    out = []
    for col in range(3):
        m = [list(r) for r in rows]
        for i in range(3):
            m[i][col] = rhs[i]
        out.append(det(m) / d)
    return out


@st.composite
def curve_with_points(draw, long_form=True):
    """A nonsingular curve through three random rational points (distinct x)."""
    xs = draw(st.lists(small_rationals, min_size=3, max_size=3, unique=True))
    ys = [draw(small_rationals) for _ in xs]
    a1 = draw(small_rationals) if long_form else Fraction(0)
    a3 = draw(small_rationals) if long_form else Fraction(0)
    rows = [(x * x, x, Fraction(1)) for x in xs]
    rhs = [y * y + a1 * x * y + a3 * y - x**3 for x, y in zip(xs, ys)]
    a2, a4, a6 = _solve3(rows, rhs)
    try:
        curve = LongWeierstrass(a1, a2, a3, a4, a6)
    except SingularCurveError:
        assume(False)
    return curve, [curve.point(x, y) for x, y in zip(xs, ys)]


@pytest.fixture
def fixtures_path():
    return fixture_dir()
