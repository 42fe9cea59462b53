from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exceptional_primes.config import load_fixture
from exceptional_primes.errors import IndexDivisor, NotLIntegral
from exceptional_primes.intpoly import IntPoly
from exceptional_primes.numfield import (
    NumberField,
    PrimeIdealData,
    char_poly,
    dedekind_index_test,
    element_norm,
    factor_prime,
    is_irreducible_over_q,
    min_poly,
    poly_discriminant,
    residue_reduction,
)

X = IntPoly.x()
QI = NumberField([1, 0, 1], -4)
QS2 = NumberField([-2, 0, 1], 8)
QS5 = NumberField([-1, -1, 1], 5)
QS13 = NumberField([-3, -1, 1], 13)
BIQ = NumberField([1, 0, 5, 0, 1], 441)


def test_construction_checks():
    with pytest.raises(ValueError):
        NumberField([1, 0, 2], -4)  # -4 does not divide disc = -8 with a square quotient
    with pytest.raises(ValueError):
        NumberField([-1, 0, 1], 4)  # reducible
    with pytest.raises(ValueError):
        NumberField([1, 2], 1, class_number=0)
    assert NumberField([-5, 0, 1], 20).index == 1
    assert NumberField([-12, 0, 1], 12).index == 2


def test_override_must_cover_degree():
    bad = {2: [PrimeIdealData(2, IntPoly([1, 1]), 1, 1)]}
    with pytest.raises(ValueError):
        NumberField([-12, 0, 1], 12, overrides=bad)


def test_poly_discriminant():
    assert poly_discriminant(IntPoly([1, 0, 1])) == -4
    assert poly_discriminant(IntPoly([1, -3, 0, 1])) == 81
    assert poly_discriminant(IntPoly([1, 0, 5, 0, 1])) == 441 * 16


def test_irreducibility_over_q():
    assert is_irreducible_over_q(IntPoly([1, 0, 5, 0, 1]))
    assert not is_irreducible_over_q(IntPoly([4, 0, 0, 0, 1]))  # (X^2+2X+2)(X^2-2X+2)
    assert not is_irreducible_over_q(IntPoly([1, 0, 3, 0, 1]) * IntPoly([1, 1]))
    assert is_irreducible_over_q(IntPoly([1, -3, 0, 1]))


def test_element_arithmetic():
    i = QI.gen()
    assert i * i == QI(-1)
    a = QI([3, 2])
    assert a * a.inverse() == QI(1)
    assert (a / 2).den == 2
    assert a ** -2 * a**2 == QI(1)
    assert QI(Fraction(3, 4)).coords() == [Fraction(3, 4), 0]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=4, max_size=4), st.lists(st.integers(-30, 30), min_size=4, max_size=4))
def test_norm_is_multiplicative(u, v):
    a, b = BIQ(u), BIQ(v)
    assert element_norm(BIQ, a * b) == element_norm(BIQ, a) * element_norm(BIQ, b)


def test_element_norm_examples():
    w = QS13.gen()
    assert element_norm(QS13, 213629 + 167568 * w) == -1153 * 2430503
    assert element_norm(QS13, QS13(1)) == 1
    assert element_norm(QS13, 11 + 8 * w) == 17


def test_char_poly_examples():
    assert char_poly(BIQ, BIQ.gen()) == IntPoly([1, 0, 5, 0, 1])
    assert char_poly(BIQ, BIQ(3)) == (X - 3) ** 4


def test_min_poly_examples():
    assert min_poly(BIQ, BIQ(Fraction(2, 3))).coeffs == (Fraction(-2, 3), 1)
    assert min_poly(BIQ, BIQ.gen()) == IntPoly([1, 0, 5, 0, 1])
    gamma5 = BIQ([0, -3, 0, -1])
    assert min_poly(BIQ, gamma5) == IntPoly([25, 0, 17, 0, 1])
    gamma7 = BIQ([-1, 1])
    assert min_poly(BIQ, gamma7) == IntPoly([7, 14, 11, 4, 1])
    sqrt21 = BIQ([-5, 0, -2])
    assert min_poly(BIQ, sqrt21) == IntPoly([-21, 0, 1])


def test_min_poly_of_cm_j_invariant():
    cfg = load_fixture("q_sqrt3")
    j = cfg.curve.j
    assert min_poly(cfg.field, j) == IntPoly([-1790957481984, -153542016, 1])


def test_dedekind_index_test():
    assert dedekind_index_test(QI, 5)
    assert dedekind_index_test(QS2, 7)
    assert dedekind_index_test(BIQ, 3)
    # Z[sqrt 12] has index 2 in the maximal order
    K = NumberField([-12, 0, 1], 12)
    assert not dedekind_index_test(K, 2)
    assert dedekind_index_test(K, 3)
    with pytest.raises(IndexDivisor):
        factor_prime(K, 2)


def test_override_replaces_factorization():
    q = PrimeIdealData(2, IntPoly([0, 1]), 2, 1, source="override")
    K = NumberField([-12, 0, 1], 12, overrides={2: [q]})
    assert factor_prime(K, 2) == [q]


def test_factor_prime_examples():
    ideals = factor_prime(QI, 5)
    assert [(q.e, q.f) for q in ideals] == [(1, 1), (1, 1)]
    (q7,) = factor_prime(QS5, 7)
    assert (q7.e, q7.f, q7.norm) == (1, 2, 49)
    assert [(q.e, q.f) for q in factor_prime(BIQ, 5)] == [(1, 2), (1, 2)]
    (q2,) = factor_prime(QI, 2)
    assert (q2.e, q2.f) == (2, 1)
    assert [(q.e, q.f) for q in factor_prime(BIQ, 3)] == [(2, 2)]


@pytest.mark.parametrize("K", [QI, QS2, QS5, QS13, BIQ], ids=lambda K: str(K.poly))
@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13, 17, 19])
def test_sum_ef_equals_degree(K, ell):
    if K.poly_disc % (ell * ell) == 0 and not dedekind_index_test(K, ell):
        pytest.skip("index divisor")
    assert sum(q.e * q.f for q in factor_prime(K, ell)) == K.degree


def test_residue_reduction():
    q = next(q for q in factor_prime(QI, 5) if q.gen == IntPoly([3, 1]))  # X - 2
    F = q.residue_field()
    assert residue_reduction(QI, q, QI.gen()) == F(2)
    assert residue_reduction(QI, q, QI(7)) == F(2)
    assert residue_reduction(QI, q, QI([1, 1], 4)) == F(3) / F(4)
    with pytest.raises(NotLIntegral):
        residue_reduction(QI, q, QI(1, 5))


def test_residue_reduction_is_a_ring_map():
    for q in factor_prime(BIQ, 13):
        F = q.residue_field()
        for u, v in [([1, 2, 3, 4], [5, -1, 0, 2]), ([0, 1], [7, 0, 0, 1])]:
            a, b = BIQ(u), BIQ(v)
            ra, rb = residue_reduction(BIQ, q, a), residue_reduction(BIQ, q, b)
            assert residue_reduction(BIQ, q, a * b) == ra * rb
            assert residue_reduction(BIQ, q, a + b) == ra + rb
        assert F.q == 13**q.f
