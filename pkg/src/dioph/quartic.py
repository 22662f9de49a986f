"""Quartic models v^2 = au^4 + bu^3 + cu^2 + du + e and their cubic models.

When the constant term is a nonzero square e = q^2 the quartic is
birational to

    y^2 + (d/q)xy + 2qb y = x^3 + (c - d^2/4q^2)x^2 - 4q^2a x + a2*a4

via x = (2q(v+q) + du)/u^2,
    y = (4q^2(v+q) + 2q(du + cu^2) - d^2u^2/2q)/u^3.

Otherwise, move a known rational point to u = 0 first (:meth:`Quartic.shift`).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Union

from dioph.errors import (
    CurveMismatchError,
    DomainError,
    ExceptionalPointError,
    NotOnCurveError,
    NotSquareError,
)
from dioph.ratcore import Rational, RationalLike, as_rational, format_rational, rational_sqrt
from dioph.weierstrass import CurvePoint, LongWeierstrass

_COEFFS = ("a", "b", "c", "d", "e")


@dataclass(frozen=True)
class QuarticPoint:
    u: Rational
    v: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", as_rational(self.u))
        object.__setattr__(self, "v", as_rational(self.v))

    def __str__(self) -> str:
        return f"({format_rational(self.u)}, {format_rational(self.v)})"

    def to_json(self) -> dict:
        return {"u": format_rational(self.u), "v": format_rational(self.v)}

    @classmethod
    def from_json(cls, data: dict) -> "QuarticPoint":
        return cls(as_rational(data["u"]), as_rational(data["v"]))


@dataclass(frozen=True)
class Quartic:
    a: Rational
    b: Rational = Rational(0)
    c: Rational = Rational(0)
    d: Rational = Rational(0)
    e: Rational = Rational(0)

    def __post_init__(self) -> None:
        for name in _COEFFS:
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a == 0:
            raise DomainError("leading coefficient of a quartic must be nonzero")

    @property
    def coefficients(self) -> tuple[Rational, Rational, Rational, Rational, Rational]:
        return (self.a, self.b, self.c, self.d, self.e)

    def __str__(self) -> str:
        a, b, c, d, e = (format_rational(k) for k in self.coefficients)
        return f"v^2 = ({a})u^4 + ({b})u^3 + ({c})u^2 + ({d})u + ({e})"

    def evaluate(self, u: RationalLike) -> Rational:
        u = as_rational(u)
        acc = Rational(0)
        for k in self.coefficients:
            acc = acc * u + k
        return acc

    def contains(self, pt: Union[QuarticPoint, tuple]) -> bool:
        if isinstance(pt, QuarticPoint):
            u, v = pt.u, pt.v
        else:
            u, v = (as_rational(c) for c in pt)
        return v * v == self.evaluate(u)

    def point(self, u: RationalLike, v: RationalLike) -> QuarticPoint:
        pt = QuarticPoint(as_rational(u), as_rational(v))
        if not self.contains(pt):
            raise NotOnCurveError(f"{pt} is not on {self}")
        return pt

    def points_above(self, u: RationalLike) -> list[QuarticPoint]:
        u = as_rational(u)
        root = rational_sqrt(self.evaluate(u))
        if root is None:
            return []
        if root == 0:
            return [QuarticPoint(u, root)]
        return [QuarticPoint(u, root), QuarticPoint(u, -root)]

    # -- shifting --------------------------------------------------------------

    def shift(self, u0: RationalLike) -> "Quartic":
        """The quartic in T obtained by substituting u = T + u0."""
        u0 = as_rational(u0)
        # coefficient list, highest degree first: a, b, c, d, e  (degree 4..0)
        old = list(self.coefficients)
        new = [Rational(0)] * 5
        for i, coeff in enumerate(old):
            deg = 4 - i
            for j in range(deg + 1):
                # coeff * C(deg, j) * T^j * u0^(deg-j)
                new[4 - j] += coeff * comb(deg, j) * u0 ** (deg - j)
        return Quartic(*new)

    def shift_to(self, pt: QuarticPoint) -> "Quartic":
        """Shift so that ``pt`` moves to u = 0; the new constant term is pt.v^2."""
        if not self.contains(pt):
            raise NotOnCurveError(f"{pt} is not on {self}")
        return self.shift(pt.u)

    # -- cubic model -------------------------------------------------------------

    def square_root_of_constant(self) -> Rational:
        q = rational_sqrt(self.e)
        if q is None or q == 0:
            raise NotSquareError(
                f"constant term {format_rational(self.e)} is not a nonzero rational square; "
                "shift by a known rational point first"
            )
        return q

    def to_cubic(self) -> tuple[LongWeierstrass, Rational]:
        """Long Weierstrass model and the positive root q with e = q^2."""
        q = self.square_root_of_constant()
        a, b, c, d, _ = self.coefficients
        a2 = c - d * d / (4 * q * q)
        a4 = -4 * q * q * a
        curve = LongWeierstrass(a1=d / q, a2=a2, a3=2 * q * b, a4=a4, a6=a2 * a4)
        return curve, q

    def to_cubic_point(
        self, pt: QuarticPoint, curve: LongWeierstrass = None, q: Rational = None
    ) -> CurvePoint:
        """Image of ``pt`` on :meth:`to_cubic`. (0, q) goes to infinity."""
        if curve is None or q is None:
            curve, q = self.to_cubic()
        if not self.contains(pt):
            raise NotOnCurveError(f"{pt} is not on {self}")
        _, _, c, d, _ = self.coefficients
        u, v = pt.u, pt.v
        if u == 0:
            if v == q:
                return curve.infinity
            return curve.point(-curve.a2, curve.a1 * curve.a2 - curve.a3)
        x = (2 * q * (v + q) + d * u) / (u * u)
        y = (4 * q * q * (v + q) + 2 * q * (d * u + c * u * u) - d * d * u * u / (2 * q)) / u**3
        return curve.point(x, y)

    def from_cubic_point(self, pt: CurvePoint, q: Rational = None) -> QuarticPoint:
        """Preimage of an affine point with y != 0 under :meth:`to_cubic_point`."""
        if q is None:
            q = self.square_root_of_constant()
        if pt.is_infinity or pt.y == 0:
            raise ExceptionalPointError(f"{pt} has no affine preimage on {self}")
        _, _, c, d, _ = self.coefficients
        x, y = pt.x, pt.y
        u = (2 * q * (x + c) - d * d / (2 * q)) / y
        v = -q + u * (u * x - d) / (2 * q)
        return self.point(u, v)

    def to_json(self) -> dict:
        return {name: format_rational(getattr(self, name)) for name in _COEFFS}

    @classmethod
    def from_json(cls, data: dict) -> "Quartic":
        return cls(**{name: as_rational(data.get(name, "0")) for name in _COEFFS})


# functional aliases matching the operation names used elsewhere


def to_cubic(q: Quartic) -> tuple[LongWeierstrass, Rational]:
    return q.to_cubic()


def _checked_root(q: Quartic, root: Rational) -> tuple[LongWeierstrass, Rational]:
    curve, positive = q.to_cubic()
    if as_rational(root) != positive:
        raise DomainError(f"root must be the positive square root {positive} of the constant term")
    return curve, positive


def quartic_to_cubic_point(q: Quartic, root: Rational, pt: QuarticPoint) -> CurvePoint:
    curve, root = _checked_root(q, root)
    return q.to_cubic_point(pt, curve, root)


def cubic_to_quartic_point(q: Quartic, root: Rational, pt: CurvePoint) -> QuarticPoint:
    curve, root = _checked_root(q, root)
    if pt.curve != curve:
        raise CurveMismatchError(f"point {pt} is not on the cubic model {curve}")
    return q.from_cubic_point(pt, root)


def shift_by_point(q: Quartic, u0: RationalLike) -> Quartic:
    return q.shift(u0)
