"""Denominator clearing and exact verification of power-sum identities."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

from sympy import factorint, isprime, perfect_power

from dioph.errors import ScalingError, VerificationError
from dioph.ratcore import (
    Rational,
    as_rational,
    format_rational,
)
from dioph.reduction import RationalSolution, Term, format_identity, side_sum


@dataclass(frozen=True)
class IntegerSolution:
    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]
    mu: int = 1
    provenance: str = ""
    trivial: bool = False
    source: Optional[RationalSolution] = field(default=None, compare=False, repr=False)
    # False only when a huge denominator could not be factored completely
    mu_minimal: bool = field(default=True, compare=False)

    @property
    def holds(self) -> bool:
        return side_sum(self.lhs) == side_sum(self.rhs)

    def __str__(self) -> str:
        return format_identity(self.lhs, self.rhs)

    def to_json(self, verified: Optional[bool] = None) -> dict:
        return {
            "lhs": [t.to_json() for t in self.lhs],
            "rhs": [t.to_json() for t in self.rhs],
            "mu": str(self.mu),
            "verified": self.holds if verified is None else verified,
            "trivial": self.trivial,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntegerSolution":
        lhs = tuple(_integer_term(t) for t in data["lhs"])
        rhs = tuple(_integer_term(t) for t in data["rhs"])
        return cls(
            lhs=lhs,
            rhs=rhs,
            mu=int(data.get("mu", "1")),
            provenance=str(data.get("provenance", "")),
            trivial=bool(data.get("trivial", False)),
        )


def _integer_term(data: dict) -> Term:
    term = Term.from_json(data)
    value = Rational(term.value)
    if value.denominator != 1:
        raise ValueError(f"non-integer value {format_rational(value)} in integer record")
    if term.exp == 0:
        raise ValueError("integer records need positive exponents")
    return Term(term.coeff, term.exp, value.numerator)


def verify(sol: Union[RationalSolution, IntegerSolution]) -> bool:
    """Exact check that both sides agree."""
    return side_sum(sol.lhs) == side_sum(sol.rhs)


def _all_terms(sol) -> list[Term]:
    return list(sol.lhs) + list(sol.rhs)


def exponent_lcm(terms: Iterable[Term]) -> int:
    exps = [t.exp for t in terms if t.exp > 0]
    return lcm(*exps) if exps else 1


# composite cofactors up to this size are split completely; beyond it they
# are kept as atoms of a coprime base and minimality is no longer guaranteed
FULL_FACTOR_DIGITS = 50


def _split_composite(n: int) -> int:
    """Strip perfect powers: n = r^k with r not a perfect power -> r."""
    while True:
        pp = perfect_power(n)
        if not pp:
            return n
        n = int(pp[0])


def _refine(atoms: set[int]) -> set[int]:
    """Pairwise coprime set generating the same multiplicative structure."""
    atoms = {a for a in atoms if a > 1}
    changed = True
    while changed:
        changed = False
        ordered = sorted(atoms)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                g = gcd(a, b)
                if g > 1:
                    atoms -= {a, b}
                    atoms |= {x for x in (g, a // g, b // g) if x > 1}
                    changed = True
                    break
            if changed:
                break
    return atoms


def _atom_exponents(n: int, atoms: set[int]) -> tuple[dict[int, int], int]:
    exps = {}
    for b in atoms:
        k = 0
        while n % b == 0:
            n //= b
            k += 1
        if k:
            exps[b] = k
    return exps, n


def _factor_over_base(dens: list[int]) -> tuple[list[dict[int, int]], bool]:
    """Write each denominator as a product of powers of pairwise coprime atoms.

    Atoms are primes when factoring succeeds; the flag reports whether all are.
    """
    atoms: set[int] = set()
    for den in dens:
        for f in factorint(den, limit=2**16):
            f = int(f)
            if not isprime(f) and len(str(f)) <= FULL_FACTOR_DIGITS:
                atoms |= {int(p) for p in factorint(f)}
            elif isprime(f):
                atoms.add(f)
            else:
                atoms.add(_split_composite(f))
    while True:
        atoms = {_split_composite(a) for a in _refine(atoms)}
        decomposed = [_atom_exponents(den, atoms) for den in dens]
        leftovers = {rest for _, rest in decomposed if rest > 1}
        if not leftovers:
            break
        atoms |= {_split_composite(r) for r in leftovers}
    return [exps for exps, _ in decomposed], all(isprime(a) for a in atoms)


def scale_factor(terms: Sequence[Term]) -> tuple[int, int, bool]:
    """(mu, L, proven_minimal): least mu with mu^(L/e) * value integral for every term.

    Per prime p, v_p(mu) = max over terms of ceil(v_p(den(value)) * e / L).
    """
    if any(t.exp < 0 for t in terms):
        raise ScalingError("negative exponents cannot be cleared by an integer scale")
    L = exponent_lcm(terms)
    pairs = [(Rational(t.value).denominator, t.exp) for t in terms if t.exp > 0]
    factored, all_prime = _factor_over_base([den for den, _ in pairs])
    need: dict[int, int] = {}
    for exps, (_, e) in zip(factored, pairs):
        for atom, k in exps.items():
            need[atom] = max(need.get(atom, 0), -(-k * e // L))
    mu = 1
    for atom in sorted(need):
        mu *= atom ** need[atom]
    return mu, L, all_prime


def minimal_scale(terms: Sequence[Term]) -> tuple[int, int]:
    mu, L, _ = scale_factor(terms)
    return mu, L


def _scale_term(term: Term, mu: int, L: int) -> Term:
    if term.exp == 0:
        # a bare constant c becomes c * 1^L, which scales like everything else
        return Term(term.coeff, L, mu)
    value = Rational(term.value) * mu ** (L // term.exp)
    if value.denominator != 1:
        raise ScalingError(f"scale {mu} leaves {format_rational(value)} non-integral")
    return Term(term.coeff, term.exp, value.numerator)


def scale_to_integers(sol: RationalSolution) -> IntegerSolution:
    """Multiply the identity by mu^L, giving every exponent-e value the factor mu^(L/e).

    Coefficients are left alone.  Bare constants (exponent 0) are rewritten
    as c * mu^L, i.e. an exponent-L term with value mu.
    """
    mu, L, minimal = scale_factor(_all_terms(sol))
    lhs = tuple(_scale_term(t, mu, L) for t in sol.lhs)
    rhs = tuple(_scale_term(t, mu, L) for t in sol.rhs)
    out = IntegerSolution(lhs, rhs, mu, sol.provenance, sol.trivial, sol, minimal)
    if verify(sol) and not verify(out):
        raise VerificationError(f"scaling by {mu} broke the identity {sol}")
    return out


def is_prime_wise_minimal(sol: RationalSolution, mu: int) -> bool:
    """True iff lowering the exponent of any prime in mu breaks integrality.

    Factors mu over the same bounded base as :func:`scale_factor`; if an atom
    could not be split into primes, only that atom as a whole is tried.
    """
    terms = [t for t in _all_terms(sol) if t.exp > 0]
    L = exponent_lcm(terms)

    def integral(m: Rational) -> bool:
        return all((Rational(t.value) * m ** (L // t.exp)).denominator == 1 for t in terms)

    if not integral(Rational(mu)):
        return False
    (atoms,), _ = _factor_over_base([mu])
    return all(not integral(Rational(mu, p)) for p in atoms)


# -- canonical form -------------------------------------------------------------------


def canonical_form(sol) -> tuple[tuple[int, Rational, Rational], ...]:
    """Normal form of the identity sum(lhs) - sum(rhs) = 0.

    Odd powers absorb the sign of their value into the coefficient, even
    powers drop it; terms with equal (exp, |value|) are merged and zero
    terms dropped; the overall sign is fixed by taking the smaller of the
    form and its negation.  Two identities with the same form differ only
    by term order, moving terms across the equals sign, or swapping
    variables.
    """
    merged: dict[tuple[int, Rational], Rational] = {}
    for sign, side in ((1, sol.lhs), (-1, sol.rhs)):
        for t in side:
            value = Rational(t.value)
            coeff = sign * t.coeff
            if t.exp == 0:
                value, coeff = Rational(1), coeff
            elif value == 0:
                continue
            elif value < 0:
                value = -value
                if t.exp % 2:
                    coeff = -coeff
            key = (t.exp, value) if t.exp else (0, Rational(1))
            merged[key] = merged.get(key, Rational(0)) + coeff
    form = tuple(sorted((e, v, c) for (e, v), c in merged.items() if c != 0))
    negated = tuple((e, v, -c) for e, v, c in form)
    return min(form, negated)


def same_identity(first, second) -> bool:
    return canonical_form(first) == canonical_form(second)


# -- text identities ------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""^\s*(?P<sign>[+-])?\s*
        (?:(?P<coeff>\d+(?:/\d+)?)\s*[*.]\s*)?
        (?:\((?P<pvalue>[+-]?\s*\d+(?:/\d+)?)\)|(?P<value>\d+(?:/\d+)?))
        (?:\s*\^\s*(?P<exp>\d+))?\s*$""",
    re.VERBOSE,
)


def _split_terms(side: str) -> list[str]:
    parts, depth, current = [], 0, ""
    for ch in side:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        starts_term = depth == 0 and current.strip() and not current.rstrip().endswith(("*", ".", "^"))
        if ch in "+-" and starts_term:
            parts.append(current)
            current = ch
        else:
            current += ch
    if current.strip():
        parts.append(current)
    return parts


def _parse_term(text: str) -> Term:
    m = _TERM_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse term {text!r}")
    coeff = as_rational(m["coeff"]) if m["coeff"] else Rational(1)
    if m["sign"] == "-":
        coeff = -coeff
    value = as_rational((m["pvalue"] or m["value"]).replace(" ", ""))
    if value.denominator == 1:
        value = value.numerator
    return Term(coeff, int(m["exp"] or 1), value)


def parse_identity(text: str) -> Union[IntegerSolution, RationalSolution]:
    """Parse e.g. "9^3+18^3 = (-5)^3 + 136*(529)^6" ("c.(v)^e" also accepted).

    Returns a RationalSolution when some value is not an integer.
    """
    if text.count("=") != 1:
        raise ValueError(f"expected exactly one '=' in {text!r}")
    left, right = text.split("=")
    lhs = tuple(_parse_term(t) for t in _split_terms(left))
    rhs = tuple(_parse_term(t) for t in _split_terms(right))
    if not lhs or not rhs:
        raise ValueError(f"empty side in {text!r}")
    if all(isinstance(t.value, int) and t.exp > 0 for t in lhs + rhs):
        return IntegerSolution(lhs, rhs, provenance="text")
    return RationalSolution(lhs, rhs, provenance="text")
