"""Reductions of X^3 + Y^3 + Z^3 + aU^k = sum a_i U_i^t_i to elliptic curves.

Both pipelines substitute X = -Z + t, Y = -Z - t, which turns the left side
into -Z^3 - 6Zt^2 + aU^k and leaves

    t^2 = (a/6Z) U^k - Z^2/6 - S/(6Z),     S = sum a_i U_i^t_i.

k = 3: scaling by (a/6Z)^2 with X' = aU/6Z, Y' = -at/6Z gives the short
curve Y'^2 = X'^3 - a^2/216 - a^2 S/(216 Z^3).

k = 4: the right side is a quartic in U.  With constant Q = q^2 it maps to
Y'^2 = X'^3 + (aZ/9 + aS/(9Z^2)) X', inverse U = 2qX'/Y', t = -q + U^2 X'/2q.

A separate family handles Y1^3 + Y2^3 + Y3^3 = X1^5 + X2^5 + X3^5 through
Y1,2 = t +- v, Y3 = beta t, X1,2 = t +- x1, X3 = alpha t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from dioph.errors import (
    DomainError,
    ExceptionalPointError,
    NotOnCurveError,
    NotSquareError,
    VerificationError,
    WrongPipelineError,
)
from dioph.quartic import Quartic, QuarticPoint
from dioph.ratcore import Rational, RationalLike, as_rational, format_rational, rational_sqrt
from dioph.weierstrass import CurvePoint, LongWeierstrass

Number = Union[Rational, int]


@dataclass(frozen=True)
class Term:
    """One summand coeff * value**exp."""

    coeff: Rational
    exp: int
    value: Number

    def __post_init__(self) -> None:
        if not isinstance(self.exp, int) or isinstance(self.exp, bool) or self.exp < 0:
            raise DomainError(f"exponent must be a nonnegative integer, got {self.exp!r}")
        object.__setattr__(self, "coeff", as_rational(self.coeff))

    def evaluate(self) -> Rational:
        # Python already gives 0**0 == 1, which is the convention wanted here
        return self.coeff * Rational(self.value) ** self.exp

    def __str__(self) -> str:
        return self._render(self.coeff)

    def _render(self, coeff: Rational) -> str:
        value = format_rational(Rational(self.value))
        if coeff == 1:
            head = ""
        elif coeff == -1:
            head = "-"
        else:
            head = f"{format_rational(coeff)}*"
        if Rational(self.value) < 0 or "/" in value:
            value = f"({value})"
        return f"{head}{value}^{self.exp}"

    def to_json(self) -> dict:
        return {
            "coeff": format_rational(self.coeff),
            "exp": self.exp,
            "value": format_rational(Rational(self.value)),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Term":
        exp = data["exp"]
        if not isinstance(exp, int) or isinstance(exp, bool):
            raise ValueError(f"exponent must be an integer, got {exp!r}")
        return cls(as_rational(data.get("coeff", "1")), exp, as_rational(data["value"]))


def side_sum(terms: Iterable[Term]) -> Rational:
    return sum((t.evaluate() for t in terms), Rational(0))


def _format_side(terms: Sequence[Term]) -> str:
    out = ""
    for i, t in enumerate(terms):
        if i == 0:
            out = str(t)
        elif t.coeff < 0:
            out += " - " + t._render(-t.coeff)
        else:
            out += " + " + str(t)
    return out or "0"


def format_identity(lhs: Sequence[Term], rhs: Sequence[Term]) -> str:
    return _format_side(lhs) + " = " + _format_side(rhs)


def _is_trivial(lhs: Sequence[Term], rhs: Sequence[Term], zero_values: Iterable[Rational] = ()) -> bool:
    rhs_keys = {(t.coeff, t.exp, Rational(t.value)) for t in rhs}
    if any((t.coeff, t.exp, Rational(t.value)) in rhs_keys for t in lhs):
        return True
    return any(v == 0 for v in zero_values)


@dataclass(frozen=True)
class RationalSolution:
    """An exact identity sum(lhs) = sum(rhs) over the rationals.

    ``values`` keeps the named intermediate quantities (t, U, X, ...) for
    inspection; it does not take part in equality.
    """

    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]
    provenance: str = ""
    trivial: bool = False
    values: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def holds(self) -> bool:
        return side_sum(self.lhs) == side_sum(self.rhs)

    def __str__(self) -> str:
        return format_identity(self.lhs, self.rhs)


def _verified(sol: RationalSolution) -> RationalSolution:
    if not sol.holds:
        raise VerificationError(f"identity failed for {sol.provenance or 'solution'}: {sol}")
    return sol


# -- problem description ---------------------------------------------------------


@dataclass(frozen=True)
class DEProblem:
    """X^3 + Y^3 + Z^3 + a U^k = sum coeff_i * value_i^exp_i with Z fixed to ``z``."""

    a: Rational
    k: int
    terms: tuple[Term, ...]
    z: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "z", as_rational(self.z))
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.a == 0:
            raise DomainError("coefficient a of U^k must be nonzero")
        if self.z == 0:
            raise DomainError("Z must be nonzero")
        if self.k not in (3, 4):
            raise DomainError(f"k must be 3 or 4, got {self.k!r}")

    @property
    def S(self) -> Rational:
        return rhs_sum(self)

    def label(self) -> str:
        return f"k{self.k}:Z={format_rational(self.z)}"

    def to_json(self) -> dict:
        return {
            "a": format_rational(self.a),
            "k": self.k,
            "z": format_rational(self.z),
            "terms": [t.to_json() for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DEProblem":
        k = data["k"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise ValueError(f"k must be an integer, got {k!r}")
        return cls(
            a=as_rational(data.get("a", "1")),
            k=k,
            terms=tuple(Term.from_json(t) for t in data.get("terms", [])),
            z=as_rational(data["z"]),
        )


def rhs_sum(p: DEProblem) -> Rational:
    """S = sum a_i P_i^t_i, with 0^0 = 1."""
    return side_sum(p.terms)


def _lhs_terms(p: DEProblem, X: Rational, Y: Rational, U: Rational) -> tuple[Term, ...]:
    return (Term(1, 3, X), Term(1, 3, Y), Term(1, 3, p.z), Term(p.a, p.k, U))


def _solution(
    p: DEProblem, t: Rational, U: Rational, provenance: str
) -> RationalSolution:
    X, Y = -p.z + t, -p.z - t
    lhs = _lhs_terms(p, X, Y, U)
    sol = RationalSolution(
        lhs=lhs,
        rhs=p.terms,
        provenance=provenance,
        trivial=_is_trivial(lhs, p.terms, (X, Y, U)),
        values={"t": t, "U": U, "X": X, "Y": Y, "Z": p.z},
    )
    return _verified(sol)


# -- k = 3 ------------------------------------------------------------------------


def build_k3(p: DEProblem) -> LongWeierstrass:
    if p.k != 3:
        raise WrongPipelineError(f"build_k3 needs k=3, problem has k={p.k}")
    a, s, S = p.a, p.z, rhs_sum(p)
    return LongWeierstrass.short(a4=0, a6=-a * a / 216 - a * a * S / (216 * s**3))


def k3_point_to_solution(p: DEProblem, pt: CurvePoint, provenance: str = "") -> RationalSolution:
    """t = -6sY'/a, U = 6sX'/a."""
    curve = build_k3(p)
    if pt.is_infinity:
        raise ExceptionalPointError("the point at infinity gives no solution")
    if not curve.contains(pt):
        raise NotOnCurveError(f"{pt} is not on {curve}")
    t = -6 * p.z * pt.y / p.a
    U = 6 * p.z * pt.x / p.a
    return _solution(p, t, U, provenance or f"{p.label()}:{pt}")


def k3_curve_point(p: DEProblem, t: RationalLike, U: RationalLike) -> CurvePoint:
    """Forward map (t, U) -> (X', Y') = (aU/6s, -at/6s)."""
    t, U = as_rational(t), as_rational(U)
    return build_k3(p).point(p.a * U / (6 * p.z), -p.a * t / (6 * p.z))


# -- k = 4 ------------------------------------------------------------------------


def build_k4_quartic(p: DEProblem) -> Quartic:
    """t^2 = (a/6s) U^4 + Q, Q = -s^2/6 - S/(6s)."""
    if p.k != 4:
        raise WrongPipelineError(f"build_k4_quartic needs k=4, problem has k={p.k}")
    s = p.z
    Q = -s * s / 6 - rhs_sum(p) / (6 * s)
    return Quartic(p.a / (6 * s), 0, 0, 0, Q)


def build_k4_cubic(p: DEProblem) -> tuple[LongWeierstrass, Rational]:
    quartic = build_k4_quartic(p)
    q = rational_sqrt(quartic.e)
    if q is None or q == 0:
        raise NotSquareError(
            f"Q = {format_rational(quartic.e)} is not a nonzero rational square; "
            "supply a known point on the quartic and use the shifted route"
        )
    a, s, S = p.a, p.z, rhs_sum(p)
    return LongWeierstrass.short(a4=a * s / 9 + a * S / (9 * s * s), a6=0), q


def k4_point_to_solution(
    p: DEProblem, q: RationalLike, pt: CurvePoint, provenance: str = ""
) -> RationalSolution:
    """U = 2qX'/Y', t = -q + U^2 X'/(2q)."""
    curve, root = build_k4_cubic(p)
    q = as_rational(q)
    if q != root:
        raise DomainError(f"q must be the positive root {format_rational(root)} of Q")
    if pt.is_infinity or pt.y == 0:
        raise ExceptionalPointError(f"{pt} has no preimage on the quartic")
    if not curve.contains(pt):
        raise NotOnCurveError(f"{pt} is not on {curve}")
    U = 2 * q * pt.x / pt.y
    t = -q + U * U * pt.x / (2 * q)
    return _solution(p, t, U, provenance or f"{p.label()}:{pt}")


@dataclass(frozen=True)
class ShiftedK4:
    """k = 4 route for non-square Q: the quartic recentred at a known point U = u0."""

    problem: DEProblem
    u0: Rational
    quartic: Quartic
    curve: LongWeierstrass
    q: Rational

    def point_to_solution(self, pt: CurvePoint, provenance: str = "") -> RationalSolution:
        if pt.is_infinity or pt.y == 0:
            raise ExceptionalPointError(f"{pt} has no affine preimage on the quartic")
        qpt = self.quartic.from_cubic_point(pt, self.q)
        return k4_quartic_point_to_solution(
            self.problem, QuarticPoint(qpt.u + self.u0, qpt.v), provenance
        )


def k4_shifted(p: DEProblem, u0: RationalLike) -> ShiftedK4:
    """Shift the k = 4 quartic so the known point with U = u0 sits at the origin."""
    u0 = as_rational(u0)
    base = build_k4_quartic(p)
    if not base.points_above(u0):
        raise NotOnCurveError(f"no rational point with U = {format_rational(u0)} on {base}")
    shifted = base.shift(u0)
    curve, q = shifted.to_cubic()
    return ShiftedK4(p, u0, shifted, curve, q)


def k4_quartic_point_to_solution(
    p: DEProblem, pt: QuarticPoint, provenance: str = ""
) -> RationalSolution:
    """A point (U, t) on the k = 4 quartic is already a solution."""
    quartic = build_k4_quartic(p)
    if not quartic.contains(pt):
        raise NotOnCurveError(f"{pt} is not on {quartic}")
    return _solution(p, pt.v, pt.u, provenance or f"{p.label()}:{pt}")


# -- cubes against fifth powers ---------------------------------------------------


@dataclass(frozen=True)
class CubesFifthsParams:
    x1: Rational
    alpha: Rational
    beta: Rational

    def __post_init__(self) -> None:
        for name in ("x1", "alpha", "beta"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def to_json(self) -> dict:
        return {n: format_rational(getattr(self, n)) for n in ("x1", "alpha", "beta")}

    @classmethod
    def from_json(cls, data: dict) -> "CubesFifthsParams":
        return cls(*(as_rational(data[n]) for n in ("x1", "alpha", "beta")))


def build_cubes_fifths(cp: CubesFifthsParams) -> Quartic:
    """6v^2 = (2+alpha^5)t^4 + (20x1^2 - 2 - beta^3)t^2 + 10x1^4."""
    x1, alpha, beta = cp.x1, cp.alpha, cp.beta
    # 2 + alpha^5 never vanishes for rational alpha, so Quartic's a != 0 check cannot fire
    return Quartic(
        (2 + alpha**5) / 6,
        0,
        (20 * x1 * x1 - 2 - beta**3) / 6,
        0,
        Rational(5, 3) * x1**4,
    )


def cubes_fifths_point_to_solution(
    cp: CubesFifthsParams, pt: QuarticPoint, provenance: str = ""
) -> RationalSolution:
    quartic = build_cubes_fifths(cp)
    if not quartic.contains(pt):
        raise NotOnCurveError(f"{pt} is not on {quartic}")
    t, v = pt.u, pt.v
    if t == 0:
        raise ExceptionalPointError("t = 0 gives only the zero solution")
    lhs = (Term(1, 3, t + v), Term(1, 3, t - v), Term(1, 3, cp.beta * t))
    rhs = (Term(1, 5, t + cp.x1), Term(1, 5, t - cp.x1), Term(1, 5, cp.alpha * t))
    sol = RationalSolution(
        lhs=lhs,
        rhs=rhs,
        provenance=provenance or f"cubes-fifths:{pt}",
        trivial=_is_trivial(lhs, rhs, [term.value for term in lhs + rhs]),
        values={"t": t, "v": v},
    )
    return _verified(sol)


def solution_from_terms(
    lhs: Iterable[Term], rhs: Iterable[Term], provenance: str = "", trivial: Optional[bool] = None
) -> RationalSolution:
    """Wrap arbitrary terms without verifying (for checking externally supplied identities)."""
    lhs, rhs = tuple(lhs), tuple(rhs)
    if trivial is None:
        trivial = _is_trivial(lhs, rhs)
    return RationalSolution(lhs, rhs, provenance, trivial)
