"""Uniform front end over the three reduction routes.

A :class:`Pipeline` exposes the curve on which generators are given
(always with a1 = a3 = 0), and turns points of that curve into verified
rational solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from dioph.errors import ExceptionalPointError, NotOnCurveError
from dioph.quartic import Quartic, QuarticPoint
from dioph.ratcore import Rational, RationalLike, as_rational, format_rational
from dioph.reduction import (
    CubesFifthsParams,
    DEProblem,
    RationalSolution,
    build_cubes_fifths,
    build_k3,
    build_k4_cubic,
    build_k4_quartic,
    cubes_fifths_point_to_solution,
    k3_point_to_solution,
    k4_point_to_solution,
    k4_shifted,
)
from dioph.weierstrass import CurvePoint, LongWeierstrass

Problem = Union[DEProblem, CubesFifthsParams]


@dataclass(frozen=True)
class Pipeline:
    kind: str
    problem: Problem
    curve: LongWeierstrass
    label: str
    long_curve: Optional[LongWeierstrass] = None
    quartic: Optional[Quartic] = None
    shifted_quartic: Optional[Quartic] = None
    shift: Optional[Rational] = None
    q: Optional[Rational] = None
    _to_long: Optional[Callable[[CurvePoint], CurvePoint]] = None

    def exceptional(self, pt: CurvePoint) -> Optional[str]:
        """Why ``pt`` yields no usable solution, or None."""
        if pt.is_infinity:
            return "point at infinity"
        if self.kind == "k3":
            return "Y' = 0 gives t = 0" if pt.y == 0 else None
        long_pt = self._to_long(pt) if self._to_long else pt
        if long_pt.y == 0:
            return "y = 0 on the cubic model has no affine quartic preimage"
        if self.kind == "cubes_fifths":
            qpt = self.shifted_quartic.from_cubic_point(long_pt, self.q)
            if qpt.u + self.shift == 0:
                return "t = 0"
        return None

    def solution(self, pt: CurvePoint, provenance: str = "") -> RationalSolution:
        if pt.curve != self.curve:
            pt = self.curve.infinity if pt.is_infinity else self.curve.point(pt.x, pt.y)
        if self.kind == "k3":
            # Y' = 0 is degenerate (t = 0) but still a valid identity
            return k3_point_to_solution(self.problem, pt, provenance)
        reason = self.exceptional(pt)
        if reason:
            raise ExceptionalPointError(reason)
        if self.kind == "k4":
            return k4_point_to_solution(self.problem, self.q, pt, provenance)
        long_pt = self._to_long(pt)
        if self.kind == "k4_shifted":
            return k4_shifted(self.problem, self.shift).point_to_solution(long_pt, provenance)
        qpt = self.shifted_quartic.from_cubic_point(long_pt, self.q)
        return cubes_fifths_point_to_solution(
            self.problem, QuarticPoint(qpt.u + self.shift, qpt.v), provenance
        )

    def to_json(self) -> dict:
        out = {"kind": self.kind, "curve": self.curve.to_json()}
        if self.q is not None:
            out["q"] = format_rational(self.q)
        if self.quartic is not None:
            out["quartic"] = self.quartic.to_json()
        if self.shift is not None:
            out["shift"] = format_rational(self.shift)
            out["shifted_quartic"] = self.shifted_quartic.to_json()
        if self.long_curve is not None and self.long_curve != self.curve:
            out["long_curve"] = self.long_curve.to_json()
        return out


def _shifted_route(quartic: Quartic, u0: Rational):
    shifted = quartic.shift(u0)
    long_curve, q = shifted.to_cubic()
    curve, _, inverse = long_curve.complete_square()
    return shifted, long_curve, q, curve, inverse


def build_pipeline(problem: Problem, shift: Optional[RationalLike] = None) -> Pipeline:
    """Pick the route for ``problem``.

    ``shift`` is the u-coordinate of a known rational point on the quartic;
    it is required when the quartic's constant term is not a square.
    """
    if isinstance(problem, CubesFifthsParams):
        label = "cf:x1={},alpha={},beta={}".format(
            *(format_rational(v) for v in (problem.x1, problem.alpha, problem.beta))
        )
        quartic = build_cubes_fifths(problem)
        u0 = as_rational(shift) if shift is not None else Rational(0)
        if shift is not None and not quartic.points_above(u0):
            raise NotOnCurveError(f"no rational point with t = {format_rational(u0)} on {quartic}")
        shifted, long_curve, q, curve, inverse = _shifted_route(quartic, u0)
        return Pipeline(
            "cubes_fifths", problem, curve, f"{label}:shift={format_rational(u0)}",
            long_curve, quartic, shifted, u0, q, inverse,
        )
    if problem.k == 3:
        return Pipeline("k3", problem, build_k3(problem), problem.label())
    if shift is None:
        curve, q = build_k4_cubic(problem)
        return Pipeline("k4", problem, curve, problem.label(), q=q)
    route = k4_shifted(problem, shift)
    curve, _, inverse = route.curve.complete_square()
    return Pipeline(
        "k4_shifted", problem, curve, f"{problem.label()}:shift={format_rational(route.u0)}",
        route.curve, build_k4_quartic(problem), route.quartic, route.u0, route.q, inverse,
    )


def load_problem(data: dict) -> Problem:
    """DEProblem or CubesFifthsParams from JSON (bare, or wrapped as a corpus fixture)."""
    if "problem" in data:
        return DEProblem.from_json(data["problem"])
    if "params" in data:
        return CubesFifthsParams.from_json(data["params"])
    if "x1" in data:
        return CubesFifthsParams.from_json(data)
    return DEProblem.from_json(data)
