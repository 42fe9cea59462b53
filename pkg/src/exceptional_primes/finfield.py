"""Prime fields, their extensions F_p[t]/(m), and polynomial factorization over F_p.

Polynomials over F_p are tuples of residues in [0, p), lowest degree first,
without trailing zeros (``()`` is zero).
"""
from __future__ import annotations

import random
from functools import cached_property
from typing import Iterator

from .arith import is_prime
from .errors import (
    DegreeDropped,
    EvenCharacteristic,
    FieldMismatch,
    FieldTooLargeForEnumeration,
    ZeroModP,
)
from .intpoly import IntPoly

CHAR2_ENUMERATION_LIMIT = 2**16


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def reduce_poly(P, p: int) -> tuple[int, ...]:
    coeffs = P.coeffs if isinstance(P, IntPoly) else P
    return _trim([a % p for a in coeffs])


def padd(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) - 1 < db:
        return (), tuple(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] % p
        if c:
            q = c * inv % p
            quot[k] = q
            for j in range(db + 1):
                rem[k + j] = (rem[k + j] - q * b[j]) % p
    return _trim(quot), _trim(rem[:db])


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def pgcd(a, b, p):
    while b:
        a, b = b, pmod(a, b, p)
    return pmonic(a, p)


def pderiv(a, p):
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def ppowmod(a, e, m, p):
    result = (1,)
    base = pmod(a, m, p)
    while e:
        if e & 1:
            result = pmod(pmul(result, base, p), m, p)
        base = pmod(pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pth_root(a, p):
    # a(X) = b(X^p) over F_p, and b^p = a since Frobenius fixes F_p.
    return tuple(a[i] for i in range(0, len(a), p))


def squarefree_decomposition(f, p) -> list[tuple[tuple[int, ...], int]]:
    """Monic squarefree factors with multiplicities (Yun's algorithm, char p)."""
    f = pmonic(f, p)
    out: list[tuple[tuple[int, ...], int]] = []
    if len(f) <= 1:
        return out
    d = pderiv(f, p)
    if not d:
        return [(g, e * p) for g, e in squarefree_decomposition(_pth_root(f, p), p)]
    c = pgcd(f, d, p)
    w = pdivmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(w, c, p)
        z = pdivmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = pdivmod(c, y, p)[0]
    if len(c) > 1:
        out.extend((g, e * p) for g, e in squarefree_decomposition(_pth_root(c, p), p))
    return out


def distinct_degree(f, p) -> list[tuple[tuple[int, ...], int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    h = (0, 1)
    x = (0, 1)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(f, psub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng: random.Random) -> list[tuple[int, ...]]:
    """Cantor-Zassenhaus splitting of f, a product of irreducibles of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            # absolute trace to F_2 of a in F_2[X]/(f)
            t, s = a, a
            for _ in range(d - 1):
                s = pmod(pmul(s, s, p), f, p)
                t = padd(t, s, p)
            g = pgcd(f, t, p)
        else:
            b = ppowmod(a, (p**d - 1) // 2, f, p)
            g = pgcd(f, psub(b, (1,), p), p)
        if 1 < len(g) < len(f):
            h = pdivmod(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def factor_mod_p(P, p: int, seed: int = 0) -> list[tuple[IntPoly, int]]:
    """Factor P mod p into monic irreducibles, with multiplicities.

    The leading coefficient is dropped; factors are sorted by (degree,
    coefficients) so that the output is deterministic.
    """
    f = reduce_poly(P, p)
    if not f:
        raise ZeroModP(f"polynomial vanishes mod {p}")
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                out.append((irr, e))
    out.sort(key=lambda fe: (len(fe[0]), fe[0][::-1]))
    return [(IntPoly(g), e) for g, e in out]


def is_irreducible_mod_p(P, p: int) -> bool:
    """Whether P mod p is irreducible over F_p; P must keep its degree mod p."""
    coeffs = P.coeffs if isinstance(P, IntPoly) else tuple(P)
    f = reduce_poly(coeffs, p)
    if len(f) != len(coeffs):
        raise DegreeDropped(f"degree drops when reducing mod {p}")
    n = len(f) - 1
    if n < 1:
        raise ValueError("constant polynomial")
    if n == 1:
        return True
    if n == 2:
        c, b, a = f
        if p == 2:
            return f == (1, 1, 1)
        disc = (b * b - 4 * a * c) % p
        return disc != 0 and pow(disc, (p - 1) // 2, p) == p - 1
    # Rabin: X^(p^n) = X mod f and gcd(X^(p^(n/r)) - X, f) = 1 for primes r | n
    f = pmonic(f, p)
    x = (0, 1)
    for r in {q for q in range(2, n + 1) if n % q == 0 and is_prime(q)}:
        h = x
        for _ in range(n // r):
            h = ppowmod(h, p, f, p)
        if len(pgcd(f, psub(h, x, p), p)) > 1:
            return False
    h = x
    for _ in range(n):
        h = ppowmod(h, p, f, p)
    return psub(h, x, p) == ()


# ---------------------------------------------------------------------------
# finite fields


class FiniteField:
    """F_q with q = p^f, realized as F_p[t]/(modulus)."""

    def __init__(self, p: int, modulus=(0, 1)):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        m = pmonic(reduce_poly(modulus, p), p)
        if len(m) < 2 or not is_irreducible_mod_p(m, p):
            raise ValueError(f"modulus {m} is not irreducible over F_{p}")
        self.p = p
        self.modulus = m
        self.degree = len(m) - 1
        self.q = p**self.degree

    @classmethod
    def prime(cls, p: int) -> FiniteField:
        return cls(p, (0, 1))

    @property
    def key(self):
        return (self.p, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.degree == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.degree}[t]/({IntPoly(self.modulus)})"

    # raw representative arithmetic (tuples)
    def reduce(self, rep) -> tuple[int, ...]:
        return pmod(reduce_poly(rep, self.p), self.modulus, self.p)

    def add(self, a, b):
        return padd(a, b, self.p)

    def sub(self, a, b):
        return psub(a, b, self.p)

    def mul(self, a, b):
        return pmod(pmul(a, b, self.p), self.modulus, self.p)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return ppowmod(a, e, self.modulus, self.p)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(a, self.q - 2)

    # element-level API
    def __call__(self, value) -> FqElement:
        if isinstance(value, FqElement):
            if value.field != self:
                raise FieldMismatch(f"{value.field} != {self}")
            return value
        if isinstance(value, int):
            return FqElement(self, self.reduce((value,)))
        return FqElement(self, self.reduce(tuple(value)))

    def gen(self) -> FqElement:
        return FqElement(self, self.reduce((0, 1)))

    def zero(self) -> FqElement:
        return FqElement(self, ())

    def one(self) -> FqElement:
        return FqElement(self, (1,))

    def reps(self) -> Iterator[tuple[int, ...]]:
        """Every representative, in a fixed order."""
        p, f = self.p, self.degree
        for code in range(self.q):
            digits = []
            for _ in range(f):
                code, r = divmod(code, p)
                digits.append(r)
            yield _trim(digits)

    def elements(self) -> Iterator[FqElement]:
        for r in self.reps():
            yield FqElement(self, r)

    @cached_property
    def character_table(self) -> dict[tuple[int, ...], int]:
        """Quadratic character of every element, found by squaring every element."""
        if self.p == 2:
            raise EvenCharacteristic("quadratic character needs odd characteristic")
        table = dict.fromkeys(self.reps(), -1)
        for r in self.reps():
            table[self.mul(r, r)] = 1
        table[()] = 0
        return table


class FqElement:
    __slots__ = ("field", "rep")

    def __init__(self, field: FiniteField, rep: tuple[int, ...]):
        self.field = field
        self.rep = rep

    def _other(self, other):
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} != {self.field}")
            return other.rep
        if isinstance(other, int):
            return self.field.reduce((other,))
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FqElement(self.field, self.field.add(self.rep, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FqElement(self.field, self.field.sub(self.rep, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FqElement(self.field, self.field.sub(o, self.rep))

    def __neg__(self):
        return FqElement(self.field, self.field.sub((), self.rep))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FqElement(self.field, self.field.mul(self.rep, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FqElement(self.field, self.field.mul(self.rep, self.field.inv(o)))

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.rep, e))

    def __eq__(self, other):
        if isinstance(other, (FqElement, int)):
            return self.rep == self._other(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.rep))

    def __bool__(self):
        return bool(self.rep)

    def __repr__(self):
        if self.field.degree == 1:
            return f"{self.rep[0] if self.rep else 0} in {self.field!r}"
        return f"({IntPoly(self.rep)})(t) in {self.field!r}"


def quadratic_character(a: FqElement) -> int:
    """0, 1 or -1 according to a being zero, a nonzero square, or a non-square."""
    F = a.field
    if F.p == 2:
        raise EvenCharacteristic("quadratic character needs odd characteristic")
    if not a:
        return 0
    return 1 if F.pow(a.rep, (F.q - 1) // 2) == (1,) else -1


def count_quadratic_roots(A: FqElement, B: FqElement, C: FqElement) -> int:
    """Number of y in F_q with A y^2 + B y + C = 0 (A nonzero)."""
    F = A.field
    B, C = F(B), F(C)
    if not A:
        raise ValueError("leading coefficient must be nonzero")
    if F.p != 2:
        return 1 + quadratic_character(B * B - 4 * A * C)
    if F.q > CHAR2_ENUMERATION_LIMIT:
        raise FieldTooLargeForEnumeration(f"q = {F.q} exceeds {CHAR2_ENUMERATION_LIMIT}")
    return sum(1 for y in F.elements() if not (A * y * y + B * y + C))
