import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exceptional_primes.errors import NotInMonoid
from exceptional_primes.intpoly import (
    IntPoly,
    adams,
    bareiss_det,
    chebyshev,
    chebyshev_t,
    dickson,
    lucas_v,
    psi,
    resultant,
    star,
    star_pow,
)

from oracles import adams_newton, star_newton

X = IntPoly.x()


def monoid_poly(max_degree=3, bound=20):
    """Strategy for monic integer polynomials with nonzero constant term."""
    return st.builds(
        lambda body, c0: IntPoly([c0] + body + [1]),
        st.lists(st.integers(-bound, bound), min_size=0, max_size=max_degree - 1),
        st.integers(-bound, bound).filter(bool),
    )


def test_canonical_form():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0]).coeffs == ()
    assert IntPoly().degree == -1
    assert IntPoly([3, 0, 1]).in_monoid()
    assert not IntPoly([0, 1]).in_monoid()


def test_star_examples():
    P = IntPoly([25, 4, 1])
    assert star(psi(1), P) == P
    assert star(X - 2, X - 3) == X - 6
    assert star(IntPoly([6, -5, 1]), X - 2) == IntPoly([24, -10, 1])


def test_star_rejects_non_monoid():
    with pytest.raises(NotInMonoid):
        star(X, X - 1)
    with pytest.raises(NotInMonoid):
        star(2 * X - 1, X - 1)


def test_star_pow_examples():
    assert star_pow(IntPoly([25, 4, 1]), 0) == X - 1
    assert star_pow(X - 2, 3) == X - 8
    assert star_pow(IntPoly([25, 4, 1]), 1) == IntPoly([25, 4, 1])


def test_adams_examples():
    P = IntPoly([25, 4, 1])
    assert adams(P, 1) == P
    assert adams(P, 12) == IntPoly([5**24, -2 * 47 * 1163039, 1])
    assert adams(X - 2, 5) == X - 32
    assert adams(IntPoly([1, 0, 1]), 2) == (X + 1) ** 2


def test_adams_of_m_gamma5_is_not_the_printed_square():
    # The printed (X^2 - 2*73*19441 X + 5^12)^2 is not the 12th Adams power of
    # X^4 + 17X^2 + 25; the frozen value below comes from the power-sum oracle.
    m = IntPoly([25, 0, 17, 0, 1])
    expected = IntPoly(adams_newton(list(m.coeffs), 12))
    assert expected == IntPoly([59604644775390625, -6447165039062500, 174340664275686, -26407588, 1])
    assert adams(m, 12) == expected
    assert adams(m, 12) != IntPoly([5**12, -2 * 73 * 19441, 1]) ** 2


def test_resultant_examples():
    P = IntPoly([7, -3, 2, 1])
    # evaluation identity: Res(X - 1, P) = P(1), and Res(P, X - 1) = (-1)^deg P P(1)
    assert resultant(X - 1, P) == P(1)
    assert resultant(P, X - 1) == (-1) ** P.degree * P(1)
    Q = IntPoly([5**24, -2 * 47 * 1163039, 1])
    assert resultant(Q, X - 1) == Q(1)
    assert resultant(IntPoly([2, -3, 1]), IntPoly([-1, 0, 1])) == 0
    # Res(A, B) = lc(A)^deg B * prod B(alpha)
    assert resultant(X - 2, IntPoly([1, 0, 1])) == 5


def test_resultant_convention_with_leading_coefficient():
    # A = 2X - 1 has root 1/2; B = X - 3: lc(A)^1 * B(1/2) = 2 * (-5/2) = -5
    assert resultant(2 * X - 1, X - 3) == -5
    # swapping the arguments of odd degrees changes the sign by (-1)^(1*1)
    assert resultant(X - 3, 2 * X - 1) == 5


def test_bareiss_det_small():
    m = [[2, 0, 1], [1, 3, 2], [1, 1, 1]]
    assert bareiss_det(m, 1, lambda a, b: a // b) == 2 * (3 - 2) - 0 + 1 * (1 - 3)


def test_lucas_v():
    # frozen from a 40-digit mpmath evaluation of alpha^12 + beta^12 for X^2 + 4X + 25
    assert lucas_v(12, -4, 25) == 109325666
    assert lucas_v(0, 7, 3) == 2
    assert lucas_v(1, 7, 3) == 7
    assert lucas_v(2, 7, 3) == 49 - 6


@given(st.integers(-50, 50), st.integers(1, 60), st.integers(0, 30))
def test_lucas_v_matches_adams(t, q, n):
    if n == 0:
        return
    P = IntPoly([q, -t, 1])
    assert adams(P, n) == IntPoly([q**n, -lucas_v(n, t, q), 1])


def test_chebyshev_t12():
    assert chebyshev_t(12) == IntPoly([1, 0, -72, 0, 840, 0, -3584, 0, 6912, 0, -6144, 0, 2048])
    assert chebyshev_t(1) == X
    assert chebyshev_t(0) == IntPoly([1])


def test_chebyshev_identities():
    T3, T12, T24 = chebyshev_t(3), chebyshev_t(12), chebyshev_t(24)
    assert T24 == 2 * T12 * T12 - 1
    assert 1 - T12 == 8 * (1 - T3) * (1 + T3) * T3 * T3


def test_dickson_normalization():
    for n in range(1, 15):
        D, T = chebyshev(n)
        assert D == dickson(n)
        # D(X) = 2 T(X/2): compare coefficients scaled by 2^(k-1)
        for k, c in enumerate(T.coeffs):
            assert D[k] * 2 ** k == 2 * c


@settings(max_examples=150, deadline=None)
@given(monoid_poly(), monoid_poly())
def test_star_matches_power_sum_oracle(P, Q):
    assert star(P, Q) == IntPoly(star_newton(list(P.coeffs), list(Q.coeffs)))


@settings(max_examples=100, deadline=None)
@given(monoid_poly(), st.integers(1, 12))
def test_adams_matches_power_sum_oracle(P, r):
    assert adams(P, r) == IntPoly(adams_newton(list(P.coeffs), r))
