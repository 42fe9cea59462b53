"""Number fields K = Q[theta]/(f) given by a monic irreducible integer polynomial.

Elements are stored in the power basis of theta with one common positive
denominator. Prime ideals come from Dedekind's factorization of f mod ell,
which is only valid when ell does not divide the index [O_K : Z[theta]];
for such primes an explicit override must be supplied.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import finfield as ff
from .errors import IndexDivisor, InvariantViolation, NotLIntegral
from .intpoly import IntPoly, resultant, resultant_poly

# ---------------------------------------------------------------------------
# polynomials with rational coefficients


class RatPoly:
    """Immutable polynomial over Q (lowest degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            other = RatPoly(other.coeffs)
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def to_intpoly(self) -> IntPoly:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return IntPoly(int(a) for a in self.coeffs)

    def monic(self) -> RatPoly:
        lc = self.coeffs[-1]
        return RatPoly(a / lc for a in self.coeffs)

    def derivative(self) -> RatPoly:
        return RatPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def divmod(self, other: RatPoly) -> tuple[RatPoly, RatPoly]:
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return RatPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / other.coeffs[-1]
            quot[k] = q
            if q:
                for j in range(db + 1):
                    rem[k + j] -= q * other.coeffs[j]
        return RatPoly(quot), RatPoly(rem[:db])

    def __mul__(self, other: RatPoly) -> RatPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RatPoly(out)

    def __sub__(self, other: RatPoly) -> RatPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self[i] - other[i] for i in range(n))

    def __repr__(self):
        if self.is_integral():
            return f"RatPoly({self.to_intpoly()})"
        return f"RatPoly({[str(a) for a in self.coeffs]})"


def rat_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while b.coeffs:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a.coeffs else a


def rat_xgcd(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """(g, s, t) with s a + t b = g."""
    r0, r1 = a, b
    s0, s1 = RatPoly([1]), RatPoly()
    t0, t1 = RatPoly(), RatPoly([1])
    while r1.coeffs:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


# ---------------------------------------------------------------------------
# fields and elements


@dataclass(frozen=True)
class PrimeIdealData:
    """A prime q above ell, described by its residue-field generator mod ell."""

    ell: int
    gen: IntPoly
    e: int
    f: int
    source: str = "computed"

    @property
    def norm(self) -> int:
        return self.ell**self.f

    @property
    def label(self) -> str:
        return f"({self.ell}, {self.gen})"

    def residue_field(self) -> ff.FiniteField:
        return _residue_field(self.ell, self.gen.coeffs)


_FIELD_CACHE: dict = {}


def _residue_field(ell, gen_coeffs):
    key = (ell, gen_coeffs)
    F = _FIELD_CACHE.get(key)
    if F is None:
        F = _FIELD_CACHE[key] = ff.FiniteField(ell, gen_coeffs)
    return F


def poly_discriminant(f: IntPoly) -> int:
    """Discriminant of a monic polynomial."""
    d = f.degree
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


class NumberField:
    """K = Q[theta]/(f) together with the supplied invariants D_K and h.

    The field discriminant and class number are inputs; the constructor only
    checks that D_K divides disc(f) with a square quotient.
    """

    def __init__(
        self,
        poly,
        disc: int,
        class_number: int = 1,
        overrides: dict[int, Sequence[PrimeIdealData]] | None = None,
        name: str | None = None,
        class_number_asserted: bool = True,
        check_irreducible: bool = True,
    ):
        f = poly if isinstance(poly, IntPoly) else IntPoly(poly)
        if f.degree < 1 or not f.is_monic():
            raise ValueError(f"defining polynomial {f} must be monic of degree >= 1")
        self.poly = f
        self.degree = f.degree
        self.poly_disc = poly_discriminant(f)
        if self.poly_disc == 0:
            raise ValueError(f"{f} has a repeated root")
        if check_irreducible and not is_irreducible_over_q(f):
            raise ValueError(f"{f} is reducible over Q")
        if disc == 0 or self.poly_disc % disc:
            raise ValueError(f"D_K = {disc} does not divide disc(f) = {self.poly_disc}")
        quotient = self.poly_disc // disc
        root = math.isqrt(quotient) if quotient > 0 else -1
        if root * root != quotient:
            raise ValueError(f"disc(f) / D_K = {quotient} is not a perfect square")
        self.disc = disc
        self.index = root
        if class_number < 1:
            raise ValueError("class number must be positive")
        self.class_number = class_number
        self.class_number_asserted = class_number_asserted
        self.overrides: dict[int, tuple[PrimeIdealData, ...]] = {}
        for ell, ideals in (overrides or {}).items():
            ideals = tuple(ideals)
            if sum(q.e * q.f for q in ideals) != self.degree:
                raise ValueError(f"override for {ell}: sum of e*f is not {self.degree}")
            self.overrides[ell] = ideals
        self.name = name or f"Q[x]/({f})"

    def __repr__(self):
        return f"NumberField({self.poly}, disc={self.disc})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and (self.poly, self.disc) == (other.poly, other.disc)

    def __hash__(self):
        return hash((self.poly, self.disc))

    # element construction
    def __call__(self, value=0, den: int = 1) -> KElement:
        if isinstance(value, KElement):
            if value.field != self:
                raise ValueError("element belongs to another field")
            return value
        if isinstance(value, Fraction):
            return KElement(self, IntPoly((value.numerator,)), value.denominator * den)
        if isinstance(value, int):
            return KElement(self, IntPoly((value,)), den)
        if isinstance(value, IntPoly):
            return KElement(self, value, den)
        return KElement(self, IntPoly(value), den)

    def gen(self) -> KElement:
        return self((0, 1))

    def from_rational_coords(self, coords: Sequence) -> KElement:
        coords = [Fraction(c) for c in coords]
        den = math.lcm(*(c.denominator for c in coords)) if coords else 1
        return KElement(self, IntPoly(int(c * den) for c in coords), den)


class KElement:
    """numerator(theta) / denominator, canonical: gcd(content, denominator) = 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, num: IntPoly, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if num.degree >= field.degree:
            num = _reduce_mod_monic(num, field.poly)
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num.content(), den)
        if g > 1:
            num = IntPoly(a // g for a in num.coeffs)
            den //= g
        if not num:
            den = 1
        self.field = field
        self.num = num
        self.den = den

    def coords(self) -> list[Fraction]:
        return [Fraction(self.num[i], self.den) for i in range(self.field.degree)]

    def is_integral(self) -> bool:
        """Integral over Z[theta] (denominator 1)."""
        return self.den == 1

    def is_rational(self) -> bool:
        return self.num.degree <= 0

    def _other(self, other):
        if isinstance(other, KElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return KElement(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return KElement(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> KElement:
        if not self.num:
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = rat_xgcd(RatPoly(self.num.coeffs), RatPoly(self.field.poly.coeffs))
        if g.degree != 0:
            raise InvariantViolation("defining polynomial is not irreducible")
        s = RatPoly(c / g.coeffs[0] for c in s.coeffs)
        return self.field.from_rational_coords(s.coeffs) * self.den

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, (KElement, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        body = str(self.num).replace("X", "a")
        return f"({body})/{self.den}" if self.den != 1 else f"({body})"


def _reduce_mod_monic(a: IntPoly, f: IntPoly) -> IntPoly:
    rem = list(a.coeffs)
    d = f.degree
    for k in range(len(rem) - 1, d - 1, -1):
        c = rem[k]
        if c:
            for j in range(d + 1):
                rem[k - d + j] -= c * f[j]
    return IntPoly(rem[:d])


# ---------------------------------------------------------------------------
# irreducibility over Q


def _possible_factor_degrees(f: IntPoly, primes: Iterable[int]) -> set[int]:
    """Degrees k, 1 <= k <= d/2, compatible with every factorization pattern mod p."""
    d = f.degree
    possible = set(range(1, d // 2 + 1))
    disc = poly_discriminant(f)
    for p in primes:
        if not possible:
            break
        if disc % p == 0:
            continue
        degs = [g.degree for g, e in ff.factor_mod_p(f, p) for _ in range(e)]
        sums = {0}
        for k in degs:
            sums |= {s + k for s in sums}
        possible &= sums
    return possible


def is_irreducible_over_q(f: IntPoly) -> bool:
    """Exact irreducibility test for a monic squarefree integer polynomial.

    A factor of degree k must be compatible with the factorization pattern
    modulo every good prime; degrees surviving that sieve are settled by
    forming the candidate factor from each k-subset of high-precision complex
    roots, rounding, and testing exact divisibility.
    """
    import mpmath

    d = f.degree
    if d <= 1:
        return True
    if f[0] == 0:
        return False
    from .arith import primes_up_to

    possible = _possible_factor_degrees(f, primes_up_to(200))
    if not possible:
        return True
    bound = max(abs(a) for a in f.coeffs)
    with mpmath.workdps(60 + 2 * len(str(bound)) * d):
        roots = mpmath.polyroots([mpmath.mpf(a) for a in reversed(f.coeffs)], maxsteps=500, extraprec=400)
        for k in sorted(possible):
            for subset in itertools.combinations(roots, k):
                coeffs = [mpmath.mpc(1)]
                for r in subset:
                    coeffs = [mpmath.mpc(0)] + coeffs
                    for i in range(len(coeffs) - 1):
                        coeffs[i] -= r * coeffs[i + 1]
                cand = IntPoly(int(mpmath.nint(c.real)) for c in coeffs)
                if cand.degree != k:
                    continue
                try:
                    f.exact_div(cand)
                except InvariantViolation:
                    continue
                return False
    return True


# ---------------------------------------------------------------------------
# norms and characteristic polynomials


def element_norm(K: NumberField, x: KElement) -> Fraction:
    """N_{K/Q}(x) = Res(f, numerator) / denominator^d."""
    x = K(x)
    if not x.num:
        return Fraction(0)
    return Fraction(resultant(K.poly, x.num), x.den**K.degree)


def char_poly(K: NumberField, x: KElement) -> RatPoly:
    """Characteristic polynomial of multiplication by x."""
    x = K(x)
    d = K.degree
    a = [IntPoly((c,)) for c in K.poly.coeffs]
    # X - g(Y), as a polynomial in Y with coefficients in Z[X]
    b = [IntPoly((-x.num[0], 1))] + [IntPoly((-c,)) for c in x.num.coeffs[1:]]
    while len(b) > 1 and not b[-1]:
        b.pop()
    cp = resultant_poly(a, b)
    e = x.den
    return RatPoly(Fraction(cp[k] * e**k, e**d) for k in range(d + 1))


def min_poly(K: NumberField, x: KElement) -> RatPoly:
    """Minimal polynomial of x over Q: the squarefree part of its characteristic polynomial."""
    cp = char_poly(K, x)
    g = rat_gcd(cp, cp.derivative())
    return cp.divmod(g)[0].monic()


# ---------------------------------------------------------------------------
# prime decomposition


def dedekind_index_test(K: NumberField, ell: int) -> bool:
    """True iff ell does not divide [O_K : Z[theta]] (Dedekind's criterion)."""
    if K.poly_disc % (ell * ell):
        return True
    factors = ff.factor_mod_p(K.poly, ell)
    g = IntPoly((1,))
    h = IntPoly((1,))
    for gi, ei in factors:
        g = g * gi
        h = h * gi ** (ei - 1)
    diff = K.poly - g * h
    F = IntPoly(c // ell for c in diff.coeffs)
    if any(c % ell for c in diff.coeffs):
        raise InvariantViolation("lifted factorization does not agree with f mod ell")
    common = ff.pgcd(ff.reduce_poly(F, ell), ff.reduce_poly(g, ell), ell)
    common = ff.pgcd(common, ff.reduce_poly(h, ell), ell) if common else ff.reduce_poly(h, ell)
    return len(ff.pmonic(common, ell)) <= 1


def factor_prime(K: NumberField, ell: int, seed: int = 0) -> list[PrimeIdealData]:
    """Prime ideals above ell, from f mod ell = prod g_i^e_i, or the supplied override."""
    if ell in K.overrides:
        return list(K.overrides[ell])
    if not dedekind_index_test(K, ell):
        raise IndexDivisor(ell)
    ideals = [
        PrimeIdealData(ell, g, e, g.degree, "computed")
        for g, e in ff.factor_mod_p(K.poly, ell, seed=seed)
    ]
    if sum(q.e * q.f for q in ideals) != K.degree:
        raise InvariantViolation(f"sum of e*f over primes above {ell} is not {K.degree}")
    return ideals


def residue_reduction(K: NumberField, q: PrimeIdealData, x) -> ff.FqElement:
    """Image of an ell-integral x in O_K/q = F_ell[t]/(g), with theta -> t."""
    x = K(x)
    ell = q.ell
    if x.den % ell == 0:
        raise NotLIntegral(f"denominator {x.den} is divisible by {ell}")
    F = q.residue_field()
    inv = pow(x.den, -1, ell)
    return F(tuple(c * inv for c in x.num.coeffs))
