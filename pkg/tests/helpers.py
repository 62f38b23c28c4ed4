"""Shared generators and brute-force oracles for the test suite.

Oracles here deliberately avoid the code paths they check: residues come from
plain evaluation at known poles, reconstruction checks use ring arithmetic
only, and expected values are computed independently before being compared.
"""

from __future__ import annotations

import random
from fractions import Fraction

from liouvillian.algebra import Poly, RatFunc, gcd


def rand_fraction(rng: random.Random, span: int = 9, max_den: int = 4,
                  nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-span, span), rng.randint(1, max_den))
        if value != 0 or not nonzero:
            return value


def rand_poly(rng: random.Random, var: str, max_deg: int = 3, span: int = 9,
              nonzero: bool = False) -> Poly:
    while True:
        degree = rng.randint(0, max_deg)
        p = Poly(var, [rand_fraction(rng, span) for _ in range(degree + 1)])
        if not p.is_zero() or not nonzero:
            return p


def rand_ratfunc(rng: random.Random, var: str, max_deg: int = 3,
                 span: int = 6, nonzero: bool = False) -> RatFunc:
    while True:
        f = RatFunc(rand_poly(rng, var, max_deg, span),
                    rand_poly(rng, var, max_deg, span, nonzero=True))
        if not f.is_zero() or not nonzero:
            return f


def rand_distinct_fractions(rng: random.Random, count: int, span: int = 4,
                            max_den: int = 2) -> list[Fraction]:
    values: set[Fraction] = set()
    while len(values) < count:
        values.add(rand_fraction(rng, span, max_den))
    return sorted(values)


def poly_from_roots(var: str, roots: list[Fraction]) -> Poly:
    p = Poly.const(var, 1)
    for root in roots:
        p = p * Poly(var, (-root, 1))
    return p


def split_proper_fraction(rng: random.Random, var: str, pole_count: int,
                          span: int = 3) -> tuple[RatFunc, list[Fraction]]:
    """A proper fraction whose denominator splits into distinct rational
    linear factors, none of which cancels against the numerator.

    Coefficients are kept small: residue and ratio polynomials of these
    fractions feed divisor enumeration, whose budget is deliberately finite.
    """
    while True:
        poles = rand_distinct_fractions(rng, pole_count)
        den = poly_from_roots(var, poles)
        num = rand_poly(rng, var, pole_count - 1, span)
        if num.is_zero():
            continue
        if any(num(c) == 0 for c in poles):
            continue
        return RatFunc(num, den), poles


def brute_residues(h: RatFunc, poles: list[Fraction]) -> set[Fraction]:
    """Residues at simple rational poles by direct evaluation num(c)/den'(c)."""
    dden = h.den.diff()
    return {h.num(c) / dden(c) for c in poles}


def fraction_from_residues(rng: random.Random, var: str, pole_count: int,
                           residue_span: int = 3, residue_den: int = 3,
                           ) -> tuple[RatFunc, dict[Fraction, Fraction]]:
    """Builds sum(r_i / (var - c_i)) from chosen small residues, so witness
    exponents stay at desk scale; returns the fraction and {pole: residue}."""
    poles = rand_distinct_fractions(rng, pole_count)
    residues = [rand_fraction(rng, residue_span, residue_den, nonzero=True)
                for _ in poles]
    total = RatFunc.zero(var)
    for pole, residue in zip(poles, residues):
        total = total + RatFunc(Poly.const(var, residue), Poly(var, (-pole, 1)))
    return total, dict(zip(poles, residues))


def compose_poly(p: Poly, value: RatFunc) -> RatFunc:
    """p evaluated at a rational function, as a rational function."""
    result = RatFunc.zero(value.var)
    for c in reversed(p.coeffs):
        result = result * value + c
    return result


def compose(f: RatFunc, value: RatFunc) -> RatFunc:
    return compose_poly(f.num, value) / compose_poly(f.den, value)


def invert_variable(rhs: RatFunc) -> RatFunc:
    """Right-hand side after the substitution w = 1/y: -w^2 * R(1/w)."""
    w = RatFunc.gen(rhs.var)
    return -(w**2) * compose(rhs, 1 / w)


def is_canonical(f: RatFunc) -> bool:
    if f.num.is_zero():
        return f.den.is_constant() and f.den.constant_value() == 1
    return f.den.leading() == 1 and gcd(f.num, f.den).is_constant()
