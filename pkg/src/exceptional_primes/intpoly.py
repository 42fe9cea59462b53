"""Dense univariate integer polynomials and the composed-product monoid.

Coefficients are stored lowest degree first, with no trailing zeros; the
zero polynomial has no coefficients. The monoid M_Z is the set of monic
polynomials with nonzero constant term, closed under ``star``.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import InternalInconsistency, NotInMonoid, ZeroPolynomial


class IntPoly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self._hash = None

    # constructors
    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, a: int) -> IntPoly:
        return cls((a,))

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> IntPoly:
        return cls([0] * k + [a])

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    # basic accessors
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def is_monic(self) -> bool:
        return self.lc == 1

    def in_monoid(self) -> bool:
        return self.lc == 1 and self[0] != 0

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(a * other for a in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = IntPoly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting + and *."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def content(self) -> int:
        from math import gcd

        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def exact_div(self, other: IntPoly) -> IntPoly:
        """Quotient self / other over Z; raises InternalInconsistency if inexact."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lc
        if len(rem) - 1 < db:
            if rem:
                raise InternalInconsistency("inexact polynomial division")
            return IntPoly()
        quot = [0] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c:
                q, r = divmod(c, lb)
                if r:
                    raise InternalInconsistency("inexact polynomial division")
                quot[k] = q
                for j in range(db + 1):
                    rem[k + j] -= q * bc[j]
        if any(rem):
            raise InternalInconsistency("inexact polynomial division")
        return IntPoly(quot)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = "X" if i == 1 else f"X^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    return NotImplemented


X = IntPoly.x()
ONE = IntPoly((1,))


def psi(r: int) -> IntPoly:
    """X^r - 1."""
    return IntPoly.monomial(r) - 1


# ---------------------------------------------------------------------------
# determinants and resultants


def bareiss_det(matrix: Sequence[Sequence], one, divexact: Callable):
    """Fraction-free Gaussian elimination over an integral domain.

    ``matrix`` entries must support +, -, * and truthiness (zero is falsy);
    ``divexact(a, b)`` must return the exact quotient a / b.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            f = rowi[k]
            for j in range(k + 1, n):
                num = rowi[j] * pivot - f * rowk[j]
                rowi[j] = divexact(num, prev) if num else num
            rowi[k] = one * 0
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(a: Sequence, b: Sequence, zero) -> list[list]:
    """Sylvester matrix of two coefficient sequences (lowest degree first)."""
    n, m = len(a) - 1, len(b) - 1
    size = n + m
    rows = []
    ra, rb = list(reversed(a)), list(reversed(b))
    for i in range(m):
        rows.append([zero] * i + ra + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + rb + [zero] * (size - m - 1 - i))
    return rows


def _int_divexact(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise InternalInconsistency("inexact integer division in Bareiss elimination")
    return q


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a."""
    if not a or not b:
        raise ZeroPolynomial("resultant of a zero polynomial")
    if a.degree == 0:
        return a.lc**b.degree
    if b.degree == 0:
        return b.lc**a.degree
    return bareiss_det(sylvester_matrix(a.coeffs, b.coeffs, 0), 1, _int_divexact)


def resultant_poly(a: Sequence[IntPoly], b: Sequence[IntPoly]) -> IntPoly:
    """Resultant in Z of polynomials whose coefficients lie in Z[X]."""
    n, m = len(a) - 1, len(b) - 1
    if n < 0 or m < 0:
        raise ZeroPolynomial("resultant of a zero polynomial")
    if n == 0:
        return a[0] ** m
    if m == 0:
        return b[0] ** n
    return bareiss_det(sylvester_matrix(a, b, IntPoly()), ONE, IntPoly.exact_div)


# ---------------------------------------------------------------------------
# the composed-product monoid


def _check_monoid(*polys: IntPoly) -> None:
    for p in polys:
        if not p.in_monoid():
            raise NotInMonoid(f"{p} is not monic with nonzero constant term")


def star(p: IntPoly, q: IntPoly) -> IntPoly:
    """Composed product: the monic polynomial whose roots are all a*b, p(a) = q(b) = 0.

    Computed as Res_Z(p(Z), q(X/Z) Z^deg q) by fraction-free elimination of
    a Sylvester matrix with entries in Z[X].
    """
    _check_monoid(p, q)
    n, m = p.degree, q.degree
    a = [IntPoly((c,)) for c in p.coeffs]
    # coefficient of Z^k in q(X/Z) Z^m is q_{m-k} X^{m-k}
    b = [IntPoly.monomial(m - k, q[m - k]) for k in range(m + 1)]
    result = resultant_poly(a, b)
    if result.degree != n * m or result.lc != 1:
        raise InternalInconsistency(f"star produced {result}, expected monic of degree {n * m}")
    return result


def star_pow(p: IntPoly, k: int) -> IntPoly:
    """p * p * ... * p (k factors); X - 1 for k = 0."""
    _check_monoid(p)
    if k < 0:
        raise ValueError("exponent must be >= 0")
    if k == 0:
        return psi(1)
    result = p
    for _ in range(k - 1):
        result = star(result, p)
    return result


def adams(p: IntPoly, r: int) -> IntPoly:
    """p^(r): the polynomial whose roots are the r-th powers of the roots of p.

    Read off from p * (X^r - 1), whose coefficients vanish outside the
    multiples of r.
    """
    _check_monoid(p)
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return p
    s = star(p, psi(r))
    for i, c in enumerate(s.coeffs):
        if i % r and c:
            raise InternalInconsistency(f"coefficient of X^{i} in p * psi_{r} is {c}, expected 0")
    return IntPoly(s.coeffs[::r])


# ---------------------------------------------------------------------------
# recurrences


def lucas_v(n: int, t: int, q: int) -> int:
    """alpha^n + beta^n where alpha, beta are the roots of X^2 - t X + q."""
    if n < 0:
        raise ValueError("n must be >= 0")
    v0, v1 = 2, t
    if n == 0:
        return v0
    for _ in range(n - 1):
        v0, v1 = v1, t * v1 - q * v0
    return v1


def chebyshev_t(n: int) -> IntPoly:
    """T_n with T_n(cos x) = cos(n x)."""
    t0, t1 = ONE, X
    if n == 0:
        return t0
    for _ in range(n - 1):
        t0, t1 = t1, 2 * X * t1 - t0
    return t1


def dickson(n: int) -> IntPoly:
    """2 T_n(X/2), the monic integer normalization of T_n."""
    d0, d1 = IntPoly((2,)), X
    if n == 0:
        return d0
    for _ in range(n - 1):
        d0, d1 = d1, X * d1 - d0
    return d1


def chebyshev(n: int) -> tuple[IntPoly, IntPoly]:
    """(2 T_n(X/2), T_n); both have integer coefficients."""
    return dickson(n), chebyshev_t(n)
