"""Independent verification of emitted witnesses.

Every check substitutes a witness back into its defining identity and tests
exact equality over Q or over the quadratic extension Q(lam), using only the
base arithmetic module — never the reduction code paths that produced the
witness — so a reduction bug cannot certify its own output.  There are no
tolerances: the residual is an exact field element and "passed" means it is
the zero element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .algebra import Poly, RatFunc
from .parser import render, render_poly
from .towers import (ANTIDERIVATIVE, EXPONENTIAL, Generator, QuadValue,
                     TowerWitness)


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    passed: bool
    residual: str  # exact rendering; "0" exactly when passed


def is_rational_square(value: Fraction) -> bool:
    if value < 0:
        return False
    num_root = isqrt(value.numerator)
    den_root = isqrt(value.denominator)
    return num_root * num_root == value.numerator and \
        den_root * den_root == value.denominator


def rational_square_root(value: Fraction) -> Fraction:
    if not is_rational_square(value):
        raise ValueError(f"{value} is not a rational square")
    return Fraction(isqrt(value.numerator), isqrt(value.denominator))


class MalformedWitnessError(ValueError):
    """The witness does not have a shape this verifier supports."""


class _QuadField:
    """Arithmetic in Q(lam)(g): pairs (a, b) meaning a + lam*b with a, b
    rational functions in the generator variable and lam^2 a fixed rational.

    With no extension declared the lam components must be identically zero;
    extensions whose square is a rational square are rejected (the pair ring
    would have zero divisors, and no emitted witness needs them).
    """

    def __init__(self, var: str, square: Fraction | None, symbol: str = "lam"):
        if square is not None:
            if square == 0 or is_rational_square(square):
                raise MalformedWitnessError(
                    "quadratic extension must adjoin a genuine irrational square root")
        self.var = var
        self.square = square
        self.symbol = symbol
        self.zero_rf = RatFunc.zero(var)

    def lift(self, value: QuadValue) -> tuple[RatFunc, RatFunc]:
        if self.square is None and not value.lam_part.is_zero():
            raise MalformedWitnessError(
                "expression uses the extension symbol but no extension is declared")
        if value.base.var != self.var or value.lam_part.var != self.var:
            raise MalformedWitnessError("expression variable does not match generator")
        return value.base, value.lam_part

    def const(self, c) -> tuple[RatFunc, RatFunc]:
        return RatFunc.const(self.var, c), self.zero_rf

    def add(self, lhs, rhs):
        return lhs[0] + rhs[0], lhs[1] + rhs[1]

    def sub(self, lhs, rhs):
        return lhs[0] - rhs[0], lhs[1] - rhs[1]

    def mul(self, lhs, rhs):
        cross = lhs[0] * rhs[1] + lhs[1] * rhs[0]
        if self.square is None:
            return lhs[0] * rhs[0], cross
        return lhs[0] * rhs[0] + self.square * lhs[1] * rhs[1], cross

    def is_zero(self, value) -> bool:
        return value[0].is_zero() and value[1].is_zero()

    def derive(self, value, generator: Generator):
        """Derivative under the declared generator rule (lam' = 0)."""
        raw = (value[0].diff(), value[1].diff())
        if generator.kind == ANTIDERIVATIVE:
            return raw
        if generator.kind == EXPONENTIAL:
            if generator.rate is None:
                raise MalformedWitnessError("exponential generator needs a rate")
            rate = self.lift_constant(generator.rate)
            gen_rf = (RatFunc.gen(self.var), self.zero_rf)
            return self.mul(self.mul(raw, rate), gen_rf)
        raise MalformedWitnessError(f"unknown generator kind {generator.kind!r}")

    def lift_constant(self, value: QuadValue):
        base, lam = self.lift(value)
        if not (base.is_constant() and lam.is_constant()):
            raise MalformedWitnessError("generator rate must be constant")
        return base, lam

    def eval_poly(self, p: Poly, point):
        result = self.const(0)
        for c in reversed(p.coeffs):
            result = self.add(self.mul(result, point), self.const(c))
        return result

    def render(self, value) -> str:
        return _render_pair(value[0], value[1], self.symbol)


def _render_pair(base: RatFunc, lam: RatFunc, symbol: str) -> str:
    if lam.is_zero():
        return render(base)
    lam_s = render(lam)
    if lam_s == "1":
        tail = symbol
    elif lam_s == "-1":
        tail = f"-{symbol}"
    else:
        if any(ch in lam_s for ch in "+-/"):
            lam_s = f"({lam_s})"
        tail = f"{symbol}*{lam_s}"
    if base.is_zero():
        return tail
    if tail.startswith("-"):
        return f"{render(base)} - {tail[1:]}"
    return f"{render(base)} + {tail}"


def render_quad_value(value: QuadValue, symbol: str = "lam") -> str:
    """Human rendering of ``base + symbol*lam_part``."""
    return _render_pair(value.base, value.lam_part, symbol)


def verify_autonomous_witness(rhs: RatFunc, branch: str, z: RatFunc,
                              scale: Fraction | None = None) -> VerificationReport:
    """Check an autonomous-equation witness by exact substitution.

    Antiderivative branch: R * dz/dy = 1.  Logarithmic branch:
    R * dz/dy = a * z.  Both are literal rational-function identities.
    """
    if branch == "antiderivative":
        identity = f"({render(rhs)}) * d/dy[{render(z)}] = 1"
        residual = rhs * z.diff() - 1
    elif branch == "log_derivative":
        if scale is None:
            raise MalformedWitnessError("logarithmic witness needs its constant")
        identity = f"({render(rhs)}) * d/dy[{render(z)}] = {scale} * ({render(z)})"
        residual = rhs * z.diff() - scale * z
    else:
        raise MalformedWitnessError(f"unknown branch {branch!r}")
    return VerificationReport(identity, residual.is_zero(), render(residual))


def verify_square_witness(p: Poly, witness: TowerWitness) -> VerificationReport:
    """Check a squared-equation witness: compute y' from the declared
    generator rule by the chain rule and test (y')^2 - P(y) = 0 exactly."""
    if len(witness.generators) != 1:
        raise MalformedWitnessError("witness must use exactly one generator")
    generator = witness.generators[0]
    square = witness.quad_ext.square if witness.quad_ext else None
    symbol = witness.quad_ext.symbol if witness.quad_ext else "lam"
    field = _QuadField(generator.name, square, symbol)
    value = field.lift(witness.expression)
    derivative = field.derive(value, generator)
    residual = field.sub(field.mul(derivative, derivative), field.eval_poly(p, value))
    identity = (f"(y')^2 = {render_poly(p)} with y = "
                f"{field.render(value)}, {describe_generator(generator, witness)}")
    return VerificationReport(identity, field.is_zero(residual), field.render(residual))


def check_leibniz(f: RatFunc, g: RatFunc) -> VerificationReport:
    """(f*g)' = f'*g + f*g', checked exactly."""
    residual = (f * g).diff() - f.diff() * g - f * g.diff()
    identity = f"d[{render(f)} * {render(g)}] = d[{render(f)}]*{render(g)} + {render(f)}*d[{render(g)}]"
    return VerificationReport(identity, residual.is_zero(), render(residual))


def describe_generator(generator: Generator, witness: TowerWitness) -> str:
    if generator.kind == ANTIDERIVATIVE:
        text = f"{generator.name}' = 1"
    else:
        field = _QuadField(generator.name,
                           witness.quad_ext.square if witness.quad_ext else None,
                           witness.quad_ext.symbol if witness.quad_ext else "lam")
        rate = field.render(field.lift(generator.rate))
        text = f"{generator.name}' = ({rate})*{generator.name}"
    if witness.quad_ext is not None:
        text += f", {witness.quad_ext.symbol}^2 = {witness.quad_ext.square}"
    return text
