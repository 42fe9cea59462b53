import random
from fractions import Fraction

import pytest

from exceptional_primes.config import load_fixture
from exceptional_primes.ellcurve import (
    CurveModel,
    FrobeniusData,
    change_coordinates,
    count_points,
    good_reduction_at,
    integralize,
    is_order_two_point,
    trace_of_frobenius,
)
from exceptional_primes.errors import BadReductionAtIdeal, InvariantViolation, NotLIntegral, SingularCurve
from exceptional_primes.finfield import FiniteField
from exceptional_primes.intpoly import IntPoly
from exceptional_primes.numfield import NumberField, PrimeIdealData, factor_prime

from oracles import count_points_brute

QI = NumberField([1, 0, 1], -4)
QQ = NumberField([-1, 1], 1)  # Q itself, as a degree-one field

# every odd prime power up to 49, with a modulus for the extension fields
ODD_FIELDS = [(p, (0, 1)) for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)] + [
    (3, (1, 0, 1)),  # F_9
    (5, (2, 0, 1)),  # F_25
    (3, (1, 2, 0, 1)),  # F_27
    (7, (1, 0, 1)),  # F_49
]


def test_invariants_q_i_curve():
    E = load_fixture("q_i").curve
    a = E.field([3, 2])
    # Delta = -2^6 (3+2i)^2 (51+16i)
    assert E.discriminant == -64 * a * a * E.field([51, 16])
    assert E.c4**3 - E.c6**2 == 1728 * E.discriminant
    assert 4 * E.b8 == E.b2 * E.b6 - E.b4 * E.b4


def test_singular_model_rejected():
    with pytest.raises(SingularCurve):
        CurveModel(QQ, a4=0, a6=0)
    with pytest.raises(SingularCurve):
        CurveModel(QQ, a4=-3, a6=2)  # x^3 - 3x + 2 = (x-1)^2 (x+2)


@pytest.mark.parametrize("p,modulus", ODD_FIELDS, ids=lambda v: str(v))
def test_character_sum_matches_enumeration(p, modulus):
    F = FiniteField(p, modulus)
    rng = random.Random(p * 100 + len(modulus))
    f = F.degree
    for _ in range(6):
        a = [tuple(rng.randrange(p) for _ in range(f)) for _ in range(5)]
        assert count_points(F, a) == count_points_brute(p, modulus, a)


@pytest.mark.parametrize("modulus", [(0, 1), (1, 1, 1), (1, 1, 0, 1)])
def test_characteristic_two_matches_enumeration(modulus):
    F = FiniteField(2, modulus)
    rng = random.Random(len(modulus))
    f = F.degree
    for _ in range(10):
        a = [tuple(rng.randrange(2) for _ in range(f)) for _ in range(5)]
        assert count_points(F, a) == count_points_brute(2, modulus, a)


def test_supersingular_curve_over_f2():
    # y^2 + y = x^3 has 3 points over F_2, so t = 0
    assert count_points(FiniteField.prime(2), [0, 0, 1, 0, 0]) == 3


def test_traces_of_worked_examples():
    E = load_fixture("q_sqrt5").working_curve
    (q7,) = factor_prime(E.field, 7)
    assert trace_of_frobenius(E, q7).trace == -12
    E = load_fixture("q_sqrt2").working_curve
    for ell, t in [(11, 4), (13, -14), (19, 26), (29, 1)]:
        (q,) = factor_prime(E.field, ell)
        assert trace_of_frobenius(E, q).trace == t


def test_bad_reduction_at_ideal():
    E = load_fixture("q_i").working_curve
    (q2,) = factor_prime(E.field, 2)
    with pytest.raises(BadReductionAtIdeal):
        trace_of_frobenius(E, q2)


def test_frobenius_data_hasse_check():
    q = PrimeIdealData(5, IntPoly([0, 1]), 1, 1)
    assert FrobeniusData(q, 4, 5).frobenius_poly == IntPoly([5, -4, 1])
    with pytest.raises(InvariantViolation):
        FrobeniusData(q, 5, 5)


def test_integralize():
    E = load_fixture("q_i").curve
    assert integralize(E) is E
    # a4 with denominator 4 needs u = 2 and multiplies Delta by 2^12
    E4 = CurveModel(QI, a4=QI([1, 1], 4), a6=QI([3]))
    F = integralize(E4)
    assert F.is_integral()
    assert F.a4 == E4.a4 * 16 and F.a6 == E4.a6 * 64
    assert F.discriminant == E4.discriminant * 2**12
    # denominators 2 and 3 give u = 6
    E6 = CurveModel(QQ, a2=Fraction(1, 2), a6=Fraction(1, 3))
    assert integralize(E6).discriminant == E6.discriminant * 6**12


def test_change_coordinates_round_trip():
    E = load_fixture("q_i").curve
    K = E.field
    u, r, s, t = K([1, 1]), K([2]), K([0, 1]), K([-1, 3])
    F = change_coordinates(E, u, r, s, t)
    assert F.j == E.j
    assert F.discriminant * u**12 == E.discriminant
    # the inverse change: x = u'^2 x'' + r' with u' = 1/u, r' = -r/u^2, ...
    back = change_coordinates(F, 1 / u, -r / u**2, -s / u, (r * s - t) / u**3)
    assert back == E


def test_biquadratic_change_restores_good_reduction_at_3():
    cfg = load_fixture("biquadratic")
    assert not good_reduction_at(integralize(cfg.curve), 3)
    assert good_reduction_at(cfg.working_curve, 3)
    assert cfg.working_curve.j == cfg.curve.j


def test_good_reduction_examples():
    E = load_fixture("q_i").working_curve
    assert good_reduction_at(E, 5)
    assert not good_reduction_at(E, 2)
    E5 = load_fixture("q_sqrt5").working_curve
    assert good_reduction_at(E5, 7)
    with pytest.raises(NotLIntegral):
        good_reduction_at(CurveModel(QI, a4=QI(1, 2), a6=1), 5)


def test_order_two_points():
    E = load_fixture("q_sqrt5").curve
    assert is_order_two_point(E, 0, 0)
    E3 = load_fixture("q_sqrt3").curve
    K = E3.field
    s3 = K.gen()
    x = -4 * 7 * (15 + 8 * s3)
    y = 8 * 3 * 49 * (13 + 4 * s3)
    assert is_order_two_point(E3, x, y)
    assert not is_order_two_point(E3, x + 1, y)
    assert not is_order_two_point(E, 1, 1)
