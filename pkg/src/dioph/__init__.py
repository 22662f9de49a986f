"""Exact reductions of X^3+Y^3+Z^3+aU^k = sum a_i U_i^t_i (k=3,4) to elliptic curves."""

from dioph.ratcore import Rational, p_adic_valuation, rational_sqrt
from dioph.weierstrass import CurvePoint, LongWeierstrass
from dioph.quartic import Quartic, QuarticPoint
from dioph.reduction import (
    CubesFifthsParams,
    DEProblem,
    RationalSolution,
    Term,
    build_cubes_fifths,
    build_k3,
    build_k4_cubic,
    build_k4_quartic,
    cubes_fifths_point_to_solution,
    k3_point_to_solution,
    k4_point_to_solution,
    rhs_sum,
)
from dioph.integerize import IntegerSolution, scale_to_integers, verify

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "p_adic_valuation",
    "rational_sqrt",
    "CurvePoint",
    "LongWeierstrass",
    "Quartic",
    "QuarticPoint",
    "CubesFifthsParams",
    "DEProblem",
    "RationalSolution",
    "Term",
    "build_cubes_fifths",
    "build_k3",
    "build_k4_cubic",
    "build_k4_quartic",
    "cubes_fifths_point_to_solution",
    "k3_point_to_solution",
    "k4_point_to_solution",
    "rhs_sum",
    "IntegerSolution",
    "scale_to_integers",
    "verify",
]
