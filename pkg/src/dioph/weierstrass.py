"""Long Weierstrass curves y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6 over Q.

Points carry the curve they live on.  Combining points from two different
curves raises :class:`CurveMismatchError` instead of silently producing
garbage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterator, Optional, Union

from dioph.errors import CurveMismatchError, NotOnCurveError, SingularCurveError
from dioph.ratcore import Rational, RationalLike, as_rational, format_rational, rational_sqrt

PointMap = Callable[["CurvePoint"], "CurvePoint"]

_COEFFS = ("a1", "a2", "a3", "a4", "a6")


@dataclass(frozen=True)
class LongWeierstrass:
    a1: Rational = Rational(0)
    a2: Rational = Rational(0)
    a3: Rational = Rational(0)
    a4: Rational = Rational(0)
    a6: Rational = Rational(0)

    def __post_init__(self) -> None:
        for name in _COEFFS:
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurveError(f"singular curve {self}")

    @classmethod
    def short(cls, a4: RationalLike = 0, a6: RationalLike = 0) -> "LongWeierstrass":
        return cls(a4=as_rational(a4), a6=as_rational(a6))

    # -- invariants --------------------------------------------------------

    @property
    def b2(self) -> Rational:
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self) -> Rational:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Rational:
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self) -> Rational:
        a1, a2, a3, a4, a6 = self.coefficients
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def discriminant(self) -> Rational:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def coefficients(self) -> tuple[Rational, Rational, Rational, Rational, Rational]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_short(self) -> bool:
        return self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    def __str__(self) -> str:
        a1, a2, a3, a4, a6 = (format_rational(c) for c in self.coefficients)
        return f"y^2 + ({a1})xy + ({a3})y = x^3 + ({a2})x^2 + ({a4})x + ({a6})"

    # -- points ------------------------------------------------------------

    @property
    def infinity(self) -> "CurvePoint":
        return CurvePoint(self)

    def satisfies(self, x: Rational, y: Rational) -> bool:
        a1, a2, a3, a4, a6 = self.coefficients
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def contains(self, pt: Union["CurvePoint", tuple, str, None]) -> bool:
        """True iff ``pt`` is infinity or its coordinates satisfy this curve.

        Accepts a :class:`CurvePoint` (from any curve; only coordinates
        matter), an ``(x, y)`` pair, or ``"inf"``/``None``.
        """
        if pt is None or pt == "inf":
            return True
        if isinstance(pt, CurvePoint):
            if pt.is_infinity:
                return True
            x, y = pt.x, pt.y
        else:
            x, y = (as_rational(c) for c in pt)
        return self.satisfies(x, y)

    def point(self, x: RationalLike, y: RationalLike) -> "CurvePoint":
        """Build an affine point, raising :class:`NotOnCurveError` if it is off the curve."""
        x, y = as_rational(x), as_rational(y)
        if not self.satisfies(x, y):
            raise NotOnCurveError(f"({x}, {y}) is not on {self}")
        return CurvePoint(self, x, y)

    def _own(self, p: "CurvePoint") -> "CurvePoint":
        if not isinstance(p, CurvePoint):
            raise TypeError(f"expected CurvePoint, got {type(p).__name__}")
        if p.curve != self:
            raise CurveMismatchError(f"point {p} belongs to {p.curve}, not {self}")
        return p

    # -- group law -----------------------------------------------------------

    def negate(self, p: "CurvePoint") -> "CurvePoint":
        p = self._own(p)
        if p.is_infinity:
            return p
        return CurvePoint(self, p.x, -p.y - self.a1 * p.x - self.a3)

    def double(self, p: "CurvePoint") -> "CurvePoint":
        p = self._own(p)
        if p.is_infinity:
            return p
        a1, a2, a3, a4, a6 = self.coefficients
        x, y = p.x, p.y
        den = 2 * y + a1 * x + a3
        if den == 0:
            return self.infinity
        lam = (3 * x * x + 2 * a2 * x + a4 - a1 * y) / den
        nu = (-(x**3) + a4 * x + 2 * a6 - a3 * y) / den
        x3 = lam * lam + a1 * lam - a2 - 2 * x
        y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(self, x3, y3)

    def add(self, p: "CurvePoint", q: "CurvePoint") -> "CurvePoint":
        p, q = self._own(p), self._own(q)
        if p.is_infinity:
            return q
        if q.is_infinity:
            return p
        if p.x == q.x:
            if p.y + q.y + self.a1 * q.x + self.a3 == 0:
                return self.infinity
            return self.double(p)
        a1, a2, a3 = self.a1, self.a2, self.a3
        dx = q.x - p.x
        lam = (q.y - p.y) / dx
        nu = (p.y * q.x - q.y * p.x) / dx
        x3 = lam * lam + a1 * lam - a2 - p.x - q.x
        y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(self, x3, y3)

    def scalar_mul(self, n: int, p: "CurvePoint") -> "CurvePoint":
        """n*p by double-and-add; negative n goes through negate, n=0 gives infinity."""
        p = self._own(p)
        if n < 0:
            return self.scalar_mul(-n, self.negate(p))
        acc = self.infinity
        base = p
        while n:
            if n & 1:
                acc = self.add(acc, base)
            n >>= 1
            if n:
                base = self.double(base)
        return acc

    def multiples(self, p: "CurvePoint", count: int) -> Iterator[tuple[int, "CurvePoint"]]:
        """Yield (m, m*p) for m = 1..count, incrementally."""
        p = self._own(p)
        acc = self.infinity
        for m in range(1, count + 1):
            acc = self.add(acc, p)
            yield m, acc

    # -- models --------------------------------------------------------------

    def complete_square(self) -> tuple["LongWeierstrass", PointMap, PointMap]:
        """Remove the xy and y terms via y = M - (a1x + a3)/2.

        Returns ``(curve, forward, inverse)`` where the maps send points of
        ``self`` to the new curve and back.
        """
        if self.a1 == 0 and self.a3 == 0:
            return self, _identity, _identity
        a1, a2, a3, a4, a6 = self.coefficients
        target = LongWeierstrass(
            a2=a2 + a1 * a1 / 4,
            a4=a4 + a1 * a3 / 2,
            a6=a6 + a3 * a3 / 4,
        )
        source = self

        def forward(p: CurvePoint) -> CurvePoint:
            p = source._own(p)
            if p.is_infinity:
                return target.infinity
            return CurvePoint(target, p.x, p.y + (a1 * p.x + a3) / 2)

        def inverse(p: CurvePoint) -> CurvePoint:
            p = target._own(p)
            if p.is_infinity:
                return source.infinity
            return CurvePoint(source, p.x, p.y - (a1 * p.x + a3) / 2)

        return target, forward, inverse

    def points_above(self, x: Rational) -> list["CurvePoint"]:
        """All rational points with the given x, larger y first."""
        a1, a2, a3, a4, a6 = self.coefficients
        h = a1 * x + a3
        # (2y + h)^2 = 4(x^3 + a2x^2 + a4x + a6) + h^2
        root = rational_sqrt(4 * (x**3 + a2 * x * x + a4 * x + a6) + h * h)
        if root is None:
            return []
        if root == 0:
            return [CurvePoint(self, x, -h / 2)]
        return [CurvePoint(self, x, (root - h) / 2), CurvePoint(self, x, (-root - h) / 2)]

    def naive_search(self, numerator_bound: int, denominator_bound: int) -> list["CurvePoint"]:
        """Affine points with x = m/n, |m| <= numerator_bound, 1 <= n <= denominator_bound.

        Ordered by n, then m, then descending y.
        """
        found = []
        for n in range(1, denominator_bound + 1):
            for m in range(-numerator_bound, numerator_bound + 1):
                if gcd(m, n) != 1:
                    continue
                found.extend(self.points_above(Rational(m, n)))
        return found

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {name: format_rational(getattr(self, name)) for name in _COEFFS}

    @classmethod
    def from_json(cls, data: dict) -> "LongWeierstrass":
        unknown = set(data) - set(_COEFFS)
        if unknown:
            raise ValueError(f"unknown curve fields: {sorted(unknown)}")
        return cls(**{name: as_rational(data.get(name, "0")) for name in _COEFFS})


@dataclass(frozen=True)
class CurvePoint:
    """A rational point on ``curve``; ``x = y = None`` encodes infinity.

    Construct affine points through :meth:`LongWeierstrass.point`, which
    checks the curve equation.
    """

    curve: LongWeierstrass = field(repr=False)
    x: Optional[Rational] = None
    y: Optional[Rational] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "CurvePoint":
        return self.curve.negate(self)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        return self.curve.add(self, other)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return self.curve.add(self, self.curve.negate(other))

    def __mul__(self, n: int) -> "CurvePoint":
        if not isinstance(n, int):
            return NotImplemented
        return self.curve.scalar_mul(n, self)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"({format_rational(self.x)}, {format_rational(self.y)})"

    def to_json(self) -> Union[str, dict]:
        if self.is_infinity:
            return "inf"
        return {"x": format_rational(self.x), "y": format_rational(self.y)}

    @classmethod
    def from_json(cls, curve: LongWeierstrass, data: Union[str, dict]) -> "CurvePoint":
        if data == "inf":
            return curve.infinity
        return curve.point(data["x"], data["y"])


def _identity(p: CurvePoint) -> CurvePoint:
    return p
