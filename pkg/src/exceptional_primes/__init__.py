"""Exceptional primes of elliptic curves over number fields.

Computes sieve integers whose prime divisors contain every prime p for
which the mod-p Galois representation of E/K is reducible, and then tries
to rule out each surviving candidate with an explicit Frobenius polynomial.
"""

__version__ = "0.1.0"

from .arith import AllPrimes, Factorization, divisor_set_intersection, factorize, is_prime
from .config import RunConfig, load_fixture, parse_config
from .criteria import (
    CandidateReport,
    PhiConclusion,
    PhiInput,
    SieveResult,
    b_ell,
    eliminate,
    exceptional_candidates,
    p_ell_star,
    phi_uniform_test,
    quadratic_fast_path,
    r_ideal,
    reduced_forms,
    x0_witness,
)
from .ellcurve import (
    CurveModel,
    FrobeniusData,
    change_coordinates,
    good_reduction_at,
    integralize,
    is_order_two_point,
    trace_of_frobenius,
)
from .finfield import FiniteField, factor_mod_p, is_irreducible_mod_p, quadratic_character
from .intpoly import IntPoly, adams, chebyshev, lucas_v, resultant, star, star_pow
from .numfield import NumberField, PrimeIdealData, char_poly, element_norm, factor_prime, min_poly
from .pipeline import run_pipeline
