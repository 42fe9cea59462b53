"""Weierstrass models over a number field, and their reductions at prime ideals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import finfield as ff
from .arith import factorize
from .errors import (
    BadReductionAtIdeal,
    FieldTooLargeForEnumeration,
    InvariantViolation,
    NotLIntegral,
    SingularCurve,
)
from .intpoly import IntPoly
from .numfield import KElement, NumberField, PrimeIdealData, element_norm, residue_reduction

ODD_ENUMERATION_LIMIT = 2**20
EVEN_ENUMERATION_LIMIT = ff.CHAR2_ENUMERATION_LIMIT

COEFF_NAMES = ("a1", "a2", "a3", "a4", "a6")
WEIGHTS = (1, 2, 3, 4, 6)


class CurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over K, with Tate's invariants."""

    def __init__(self, field: NumberField, a1=0, a2=0, a3=0, a4=0, a6=0):
        self.field = field
        K = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (K(a) for a in (a1, a2, a3, a4, a6))
        a1, a2, a3, a4, a6 = self.coefficients
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.c4 = b2 * b2 - 24 * b4
        self.c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        self.discriminant = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if not self.discriminant:
            raise SingularCurve("discriminant is zero")
        if self.c4**3 - self.c6**2 != 1728 * self.discriminant:
            raise InvariantViolation("c4^3 - c6^2 != 1728 Delta")
        if 4 * b8 != b2 * b6 - b4 * b4:
            raise InvariantViolation("4 b8 != b2 b6 - b4^2")
        self.j = self.c4**3 / self.discriminant

    @property
    def coefficients(self) -> tuple[KElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __repr__(self):
        parts = ", ".join(f"{n}={a}" for n, a in zip(COEFF_NAMES, self.coefficients) if a)
        return f"CurveModel({parts})"

    def __eq__(self, other):
        return isinstance(other, CurveModel) and self.field == other.field and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def is_integral(self) -> bool:
        return all(a.is_integral() for a in self.coefficients)

    def norm_discriminant(self) -> Fraction:
        return element_norm(self.field, self.discriminant)

    def rescale(self, u) -> CurveModel:
        """The isomorphic model with a_i replaced by a_i / u^i."""
        u = self.field(u)
        return CurveModel(self.field, *(a / u**w for a, w in zip(self.coefficients, WEIGHTS)))

    def contains(self, x, y) -> bool:
        K = self.field
        x, y = K(x), K(y)
        a1, a2, a3, a4, a6 = self.coefficients
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6


def _scaling_for(den: int, weight: int) -> int:
    """Least u with den | u^weight."""
    u = 1
    for p, e in factorize(den).factors:
        u *= p ** -(-e // weight)
    return u


def integralize(curve: CurveModel) -> CurveModel:
    """Scale a_i by u^i, with the least u clearing every power-basis denominator."""
    u = math.lcm(*(_scaling_for(a.den, w) for a, w in zip(curve.coefficients, WEIGHTS)))
    if u == 1:
        return curve
    return CurveModel(curve.field, *(a * u**w for a, w in zip(curve.coefficients, WEIGHTS)))


def change_coordinates(curve: CurveModel, u=1, r=0, s=0, t=0) -> CurveModel:
    """The isomorphic model for x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    K = curve.field
    u, r, s, t = K(u), K(r), K(s), K(t)
    a1, a2, a3, a4, a6 = curve.coefficients
    b1 = (a1 + 2 * s) / u
    b2 = (a2 - s * a1 + 3 * r - s * s) / u**2
    b3 = (a3 + r * a1 + 2 * t) / u**3
    b4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
    b6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
    new = CurveModel(K, b1, b2, b3, b4, b6)
    if new.discriminant * u**12 != curve.discriminant:
        raise InvariantViolation("discriminant did not transform by u^-12")
    return new


def good_reduction_at(curve: CurveModel, ell: int) -> bool:
    """Sufficient test for good reduction at every prime above ell: ell does not divide Norm(Delta)."""
    if not curve.is_integral():
        raise NotLIntegral("good_reduction_at needs an integral model")
    n = curve.norm_discriminant()
    return n.numerator % ell != 0


@dataclass(frozen=True)
class FrobeniusData:
    ideal: PrimeIdealData
    trace: int
    norm: int

    def __post_init__(self):
        if self.trace * self.trace > 4 * self.norm:
            raise InvariantViolation(f"trace {self.trace} violates the Hasse bound for N = {self.norm}")

    @property
    def frobenius_poly(self) -> IntPoly:
        return IntPoly((self.norm, -self.trace, 1))


def _count_points_prime_field(a, p: int) -> int:
    """Projective point count over F_p, with integer arithmetic only."""
    a1, a2, a3, a4, a6 = (c % p for c in a)
    if p == 2:
        count = 1
        for x in range(2):
            lin = (a1 * x + a3) % 2
            rhs = (x + a2 * x + a4 * x + a6) % 2  # x^3 = x^2 = x on F_2
            count += sum(1 for y in range(2) if (y * y + lin * y + rhs) % 2 == 0)
        return count
    chi = [-1] * p
    for y in range(p):
        chi[y * y % p] = 1
    chi[0] = 0
    b2 = (a1 * a1 + 4 * a2) % p
    b4 = (2 * a4 + a1 * a3) % p
    b6 = (a3 * a3 + 4 * a6) % p
    s = 0
    for x in range(p):
        s += chi[(((4 * x + b2) * x + 2 * b4) * x + b6) % p]
    return p + 1 + s


def count_points(F: ff.FiniteField, a) -> int:
    """Projective point count of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F.

    Odd characteristic completes the square and sums the quadratic character
    of 4x^3 + b2 x^2 + 2 b4 x + b6; characteristic 2 enumerates y.
    """
    a = [F(c) for c in a]
    if F.p == 2:
        if F.q > EVEN_ENUMERATION_LIMIT:
            raise FieldTooLargeForEnumeration(f"q = {F.q} exceeds {EVEN_ENUMERATION_LIMIT}")
    elif F.q > ODD_ENUMERATION_LIMIT:
        raise FieldTooLargeForEnumeration(f"q = {F.q} exceeds {ODD_ENUMERATION_LIMIT}")
    if F.degree == 1:
        return _count_points_prime_field([c.rep[0] if c.rep else 0 for c in a], F.p)
    a1, a2, a3, a4, a6 = (c.rep for c in a)
    if F.p == 2:
        one = F.one()
        count = 1
        for x in F.elements():
            lin = F(a1) * x + F(a3)
            rhs = ((x + F(a2)) * x + F(a4)) * x + F(a6)
            count += ff.count_quadratic_roots(one, lin, -rhs)
        return count
    mul, add = F.mul, F.add
    b2 = F.reduce(add(mul(a1, a1), mul((4,), a2)))
    b4 = F.reduce(add(mul((2,), a4), mul(a1, a3)))
    b6 = F.reduce(add(mul(a3, a3), mul((4,), a6)))
    four, two_b4 = F.reduce((4,)), mul((2,), b4)
    chi = F.character_table
    s = 0
    for x in F.reps():
        v = add(mul(add(mul(add(mul(four, x), b2), x), two_b4), x), b6)
        s += chi[v]
    return F.q + 1 + s


def reduce_at(curve: CurveModel, q: PrimeIdealData) -> tuple[ff.FqElement, ...]:
    """The coefficients a1..a6 reduced into O_K/q."""
    return tuple(residue_reduction(curve.field, q, a) for a in curve.coefficients)


def reduced_discriminant(curve: CurveModel, q: PrimeIdealData) -> ff.FqElement:
    a1, a2, a3, a4, a6 = reduce_at(curve, q)
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def trace_of_frobenius(curve: CurveModel, q: PrimeIdealData) -> FrobeniusData:
    """t_q = N(q) + 1 - #E(O_K/q)."""
    coeffs = reduce_at(curve, q)
    if not reduced_discriminant(curve, q):
        raise BadReductionAtIdeal(f"Delta reduces to zero modulo {q.label}")
    F = q.residue_field()
    a_q = count_points(F, coeffs)
    return FrobeniusData(q, F.q + 1 - a_q, F.q)


def is_order_two_point(curve: CurveModel, x, y) -> bool:
    """(x, y) lies on the curve and equals its own negative: 2y + a1 x + a3 = 0."""
    K = curve.field
    x, y = K(x), K(y)
    return curve.contains(x, y) and not (2 * y + curve.a1 * x + curve.a3)
