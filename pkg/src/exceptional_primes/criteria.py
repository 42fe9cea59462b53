"""Sieve criteria for exceptional primes of an elliptic curve over a number field.

The B_ell sieve multiplies values of the composed-product polynomial P_ell*
built from the Frobenius polynomials above ell. The R_q criterion replaces
ell^(12k) by powers of a generator gamma of q^h. Candidates surviving both
are tested one at a time by looking for a Frobenius polynomial that stays
irreducible modulo p.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import arith
from .arith import AllPrimes, Factorization, FactorizationTimeout
from .ellcurve import CurveModel, FrobeniusData, good_reduction_at, integralize, trace_of_frobenius
from .errors import (
    BadDiscriminant,
    BadReductionPrime,
    IllegalPhiOrder,
    IndexDivisor,
    InternalInconsistency,
    InvariantViolation,
    NormMismatch,
    NoUsablePrimes,
    WrongDegree,
)
from .finfield import is_irreducible_mod_p
from .intpoly import IntPoly, adams, lucas_v, resultant, star, star_pow
from .numfield import PrimeIdealData, factor_prime

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# P_ell* and B_ell


def ideal_traces(curve: CurveModel, ell: int, seed: int = 0, cache=None) -> list[FrobeniusData]:
    """Frobenius data for every prime above ell (which must pass the Norm(Delta) screen)."""
    if not good_reduction_at(curve, ell):
        raise BadReductionPrime(f"{ell} divides Norm(Delta)")
    out = []
    for q in factor_prime(curve.field, ell, seed=seed):
        fd = cache.get(curve, q) if cache is not None else None
        if fd is None:
            fd = trace_of_frobenius(curve, q)
            if cache is not None:
                cache.put(curve, fd)
        out.append(fd)
    return out


def p_ell_star_from_traces(traces: Sequence[FrobeniusData]) -> IntPoly:
    """The star product over q | ell of P_q^(12 e_q)."""
    if not traces:
        raise ValueError("no Frobenius data")
    result = None
    for fd in traces:
        term = adams(fd.frobenius_poly, 12 * fd.ideal.e)
        result = term if result is None else star(result, term)
    return result


def sieve_values(poly: IntPoly, ell: int, degree: int) -> list[int]:
    """P_ell*(ell^(12k)) for k = 0 .. floor(d/2)."""
    return [poly(ell ** (12 * k)) for k in range(degree // 2 + 1)]


def check_p_ell_star(poly: IntPoly, ell: int, degree: int, n_ideals: int) -> None:
    """Degree, constant term and weighted-palindrome invariants of P_ell*."""
    n = poly.degree
    if n != 2**n_ideals:
        raise InvariantViolation(f"deg P_{ell}* = {n}, expected {2 ** n_ideals}")
    if poly[0] != ell ** (12 * degree * 2 ** (n_ideals - 1)):
        raise InvariantViolation(f"P_{ell}*(0) is not ell^(12 d 2^(g-1))")
    M = ell ** (6 * degree)
    for i in range(n // 2 + 1):
        if poly[n - i] * M ** (n - 2 * i) != poly[i]:
            raise InvariantViolation(f"P_{ell}* fails the weighted palindrome at index {i}")


@dataclass(frozen=True)
class SieveResult:
    ell: int
    p_ell_star: IntPoly
    b_ell: int
    values: tuple[int, ...]
    traces: tuple[FrobeniusData, ...]
    divisors: object = None  # frozenset of primes, AllPrimes, or None before factoring
    factorization: Factorization | None = None
    degree: int = 0
    unsplit: tuple[int, ...] = ()  # cofactors left when factorization timed out

    def __post_init__(self):
        check_p_ell_star(self.p_ell_star, self.ell, self.degree, len(self.traces))
        for k, v in enumerate(self.values):
            if k and v % self.ell:
                raise InvariantViolation(f"P_{self.ell}*(ell^{12 * k}) is not divisible by ell")


def sieve_from_traces(traces: Sequence[FrobeniusData], ell: int, degree: int) -> SieveResult:
    poly = p_ell_star_from_traces(traces)
    values = sieve_values(poly, ell, degree)
    return SieveResult(ell, poly, math.prod(values), tuple(values), tuple(traces), degree=degree)


def p_ell_star(curve: CurveModel, ell: int, seed: int = 0, cache=None) -> SieveResult:
    """P_ell* and B_ell for one ell, not yet factored."""
    return sieve_from_traces(ideal_traces(curve, ell, seed, cache), ell, curve.field.degree)


def b_ell(curve: CurveModel, ell: int, seed: int = 0, cache=None) -> int:
    return p_ell_star(curve, ell, seed, cache).b_ell


def _factor_or_partial(n: int, **budget):
    """(divisors, factorization, unsplit cofactors); divisors is None when incomplete."""
    if n == 0:
        return AllPrimes, None, ()
    try:
        fac = arith.factorize(n, **budget)
    except FactorizationTimeout as exc:
        return None, exc.partial, tuple(exc.composites)
    return fac.primes, fac, ()


def factor_sieve(result: SieveResult, **budget) -> SieveResult:
    divisors, fac, unsplit = _factor_or_partial(result.b_ell, **budget)
    return replace(result, divisors=divisors, factorization=fac, unsplit=unsplit)


# ---------------------------------------------------------------------------
# quadratic fields


class Splitting(str, enum.Enum):
    RAMIFIED = "ramified"
    INERT = "inert"
    SPLIT = "split"


class VanishingReason(str, enum.Enum):
    NONE = "none"
    SUPERSINGULAR = "supersingular"
    EQUAL_TRACES = "equal_traces"  # t1 = +-t2
    THREE_ELL = "three_ell"  # t1^2 + t2^2 +- t1 t2 = 3 ell
    FOUR_ELL = "four_ell"  # t1^2 + t2^2 = 4 ell


@dataclass(frozen=True)
class QuadraticSieve:
    poly: IntPoly
    value_at_ell12: int
    reason: VanishingReason


def splitting_type(traces: Sequence[FrobeniusData]) -> Splitting:
    if len(traces) == 2:
        return Splitting.SPLIT
    if len(traces) == 1 and traces[0].ideal.e == 2:
        return Splitting.RAMIFIED
    if len(traces) == 1 and traces[0].ideal.f == 2:
        return Splitting.INERT
    raise WrongDegree("Frobenius data do not describe a prime of a quadratic field")


def quadratic_fast_path(traces: Sequence[FrobeniusData], ell: int, splitting=None) -> QuadraticSieve:
    """P_ell* for d = 2 from Lucas sequences, with P_ell*(ell^12) from its factored closed form."""
    splitting = Splitting(splitting) if splitting is not None else splitting_type(traces)
    if sum(fd.ideal.e * fd.ideal.f for fd in traces) != 2:
        raise WrongDegree("the quadratic fast path needs a degree-2 field")
    L12 = ell**12
    reason = VanishingReason.NONE
    if splitting is Splitting.RAMIFIED:
        (t,) = (fd.trace for fd in traces)
        poly = IntPoly((ell**24, -lucas_v(24, t, ell), 1))
        u = t * t
        value = -(ell**12) * u * (u - ell) ** 2 * (u - 4 * ell) * (u - 2 * ell) ** 2 * (u - 3 * ell) ** 2
        value *= (u * u - 4 * ell * u + ell * ell) ** 2
        if t % ell == 0:
            reason = VanishingReason.SUPERSINGULAR
    elif splitting is Splitting.INERT:
        (t,) = (fd.trace for fd in traces)
        poly = IntPoly((ell**24, -lucas_v(12, t, ell * ell), 1))
        u, e2 = t * t, ell * ell
        value = -(ell**12) * u * (u - e2) ** 2 * (u - 4 * e2) * (u - 3 * e2) ** 2
        if t % ell == 0:
            reason = VanishingReason.SUPERSINGULAR
    else:
        t1, t2 = (fd.trace for fd in traces)
        a, c = lucas_v(12, t1, ell), lucas_v(12, t2, ell)
        b = d = L12
        poly = IntPoly((b * b * d * d, -a * b * c * d, d * a * a + b * c * c - 2 * b * d, -a * c, 1))
        u1, u2 = t1 * t1, t2 * t2
        s, pr = u1 + u2, u1 * u2
        value = ell**36 * (u1 - u2) ** 2 * ((s - 3 * ell) ** 2 - pr) ** 2 * (s - 4 * ell) ** 2
        value *= ((s - ell) ** 2 - 3 * pr) ** 2
        if u1 == u2:
            reason = VanishingReason.EQUAL_TRACES
        elif s + t1 * t2 == 3 * ell or s - t1 * t2 == 3 * ell:
            reason = VanishingReason.THREE_ELL
        elif s == 4 * ell:
            reason = VanishingReason.FOUR_ELL
    if poly(L12) != value:
        raise InternalInconsistency(f"closed form of P_{ell}*(ell^12) disagrees with the polynomial")
    if (value == 0) != (reason is not VanishingReason.NONE):
        raise InternalInconsistency(f"vanishing of P_{ell}*(ell^12) not explained")
    return QuadraticSieve(poly, value, reason)


# ---------------------------------------------------------------------------
# R_q


@dataclass(frozen=True)
class RIdealResult:
    ideal: PrimeIdealData
    h: int
    m_gamma: IntPoly
    frobenius: FrobeniusData
    p_adams: IntPoly  # P_q^(12h)
    m_adams: IntPoly  # m_gamma^(12)
    factors: tuple[int, ...]  # Res(P_q^(12h), (m_gamma^(12))^{*k}) for k = 0 .. d/2
    value: int
    divisors: object = None
    factorization: Factorization | None = None
    unsplit: tuple[int, ...] = ()
    asserted: bool = True  # gamma generating q^h is only checked through its norm

    def star_power(self, k: int) -> IntPoly:
        return star_pow(self.m_adams, k)


def r_ideal_data(curve: CurveModel, q: PrimeIdealData, h: int, m_gamma, cache=None) -> RIdealResult:
    m = m_gamma if isinstance(m_gamma, IntPoly) else IntPoly(m_gamma)
    d = curve.field.degree
    if h < 1:
        raise ValueError("h must be positive")
    if not m.is_monic() or m.degree != d:
        raise NormMismatch(f"minimal polynomial {m} must be monic of degree {d}")
    if abs(m[0]) != q.norm**h:
        raise NormMismatch(f"|m(0)| = {abs(m[0])} but N(q)^h = {q.norm ** h}")
    if not good_reduction_at(curve, q.ell):
        raise BadReductionPrime(f"{q.ell} divides Norm(Delta)")
    fd = cache.get(curve, q) if cache is not None else None
    if fd is None:
        fd = trace_of_frobenius(curve, q)
    p12 = adams(fd.frobenius_poly, 12 * h)
    m12 = adams(m, 12)
    factors = tuple(resultant(p12, star_pow(m12, k)) for k in range(d // 2 + 1))
    return RIdealResult(q, h, m, fd, p12, m12, factors, math.prod(factors))


def r_ideal(curve: CurveModel, q: PrimeIdealData, h: int, m_gamma) -> int:
    """R_q = prod_k Res(P_q^(12h), (m_gamma^(12))^{*k}), k = 0 .. floor(d/2)."""
    return r_ideal_data(curve, q, h, m_gamma).value


def factor_r(result: RIdealResult, **budget) -> RIdealResult:
    divisors, fac, unsplit = _factor_or_partial(result.value, **budget)
    return replace(result, divisors=divisors, factorization=fac, unsplit=unsplit)


@dataclass(frozen=True)
class RInput:
    """An ideal q together with h and the minimal polynomial of a generator of q^h."""

    ideal: PrimeIdealData
    m_gamma: IntPoly
    h: int = 1
    h_defaulted: bool = False


# ---------------------------------------------------------------------------
# candidate statuses


@dataclass(frozen=True)
class Eliminated:
    p: int
    ideal: PrimeIdealData
    trace: int

    @property
    def frobenius_poly(self) -> IntPoly:
        return IntPoly((self.ideal.norm, -self.trace, 1))

    def describe(self) -> str:
        return f"P_q = {self.frobenius_poly} irreducible mod {self.p}, q = {self.ideal.label}"


@dataclass(frozen=True)
class WitnessedExceptional:
    p: int
    witness: str

    def describe(self) -> str:
        return self.witness


@dataclass(frozen=True)
class Undecided:
    p: int

    def describe(self) -> str:
        return "undecided"


@dataclass
class CandidateReport:
    screening_primes: frozenset
    sieve_results: list[SieveResult]
    r_results: list[RIdealResult]
    candidates: object  # frozenset or AllPrimes
    statuses: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)  # ell -> reason
    gaps: list = field(default_factory=list)  # factorization timeouts
    quadratic_checks: dict = field(default_factory=dict)  # ell -> QuadraticSieve
    seed: int = 0
    meta: dict = field(default_factory=dict)  # run description echoed into reports
    survivors: object = AllPrimes  # primes admitted by every sieve, before screening is added

    @property
    def exceptional_candidates(self) -> frozenset:
        """Primes not eliminated: witnessed or undecided."""
        return frozenset(p for p, s in self.statuses.items() if not isinstance(s, Eliminated))


def screening_primes(curve: CurveModel, **budget) -> frozenset:
    n = curve.norm_discriminant()
    if n.denominator != 1:
        raise ValueError("screening needs an integral model")
    return frozenset(arith.factorize(6 * curve.field.disc * abs(n.numerator), **budget).primes)


def sieve_intersection(entries: Sequence[tuple[int, frozenset]], **budget):
    """Primes admitted by every sieve entry (value, extra primes never excluded).

    A prime is admitted by an entry when it divides the value or is one of
    its extras. The primes dividing every value are those of their gcd, so
    only the gcd is factored; an extra prime survives when every other entry
    admits it as well.
    """
    if not entries:
        return AllPrimes
    common = arith.divisor_set_intersection([v for v, _ in entries], **budget)
    if common is AllPrimes:
        return AllPrimes
    result = set(common)
    for v, extras in entries:
        for p in extras:
            if all(w % p == 0 or p in ex for w, ex in entries):
                result.add(p)
    return frozenset(result)


def exceptional_candidates(
    curve: CurveModel,
    ells: Iterable[int],
    r_inputs: Sequence[RInput] = (),
    seed: int = 0,
    cache=None,
    **budget,
) -> CandidateReport:
    """Screening primes together with every prime surviving all the sieves.

    Each ell failing the Norm(Delta) screen or the index test is skipped with
    a recorded reason. The candidate set is exact even when an individual
    B_ell or R_q cannot be fully factored; such values are reported with
    their unsplit cofactors.
    """
    curve = integralize(curve)
    screen = screening_primes(curve, **budget)
    d = curve.field.degree
    ells = sorted(set(ells))
    report = CandidateReport(screen, [], [], AllPrimes, seed=seed)
    entries: list[tuple[int, frozenset]] = []
    for ell in ells:
        if not arith.is_prime(ell):
            raise ValueError(f"{ell} is not prime")
        try:
            res = p_ell_star(curve, ell, seed, cache)
        except BadReductionPrime as exc:
            report.skipped[ell] = f"bad reduction screen: {exc}"
            log.info("skipping ell = %d: %s", ell, exc)
            continue
        except IndexDivisor as exc:
            report.skipped[ell] = f"index divisor: {exc}"
            log.info("skipping ell = %d: %s", ell, exc)
            continue
        if d == 2:
            quad = quadratic_fast_path(res.traces, ell)
            if quad.poly != res.p_ell_star:
                raise InternalInconsistency(f"quadratic fast path disagrees with the resultant path at {ell}")
            report.quadratic_checks[ell] = quad
        res = factor_sieve(res, **budget)
        if res.unsplit:
            report.gaps.append({"kind": "B_ell", "ell": ell, "unsplit": list(res.unsplit)})
        report.sieve_results.append(res)
        entries.append((res.b_ell, frozenset({ell}) if d == 1 else frozenset()))
    for ri in r_inputs:
        try:
            rr = r_ideal_data(curve, ri.ideal, ri.h, ri.m_gamma, cache)
        except BadReductionPrime as exc:
            report.skipped[f"R{ri.ideal.label}"] = str(exc)
            continue
        rr = factor_r(rr, **budget)
        if rr.unsplit:
            report.gaps.append({"kind": "R_q", "ideal": ri.ideal.label, "unsplit": list(rr.unsplit)})
        report.r_results.append(rr)
        entries.append((rr.value, frozenset({ri.ideal.ell}) if d == 1 else frozenset()))
    if (ells or r_inputs) and not entries:
        raise NoUsablePrimes("every supplied ell was skipped")
    survivors = sieve_intersection(entries, **budget) if entries else frozenset()
    report.survivors = survivors
    report.candidates = arith.union(screen, survivors)
    if report.candidates is not AllPrimes:
        report.statuses = {p: Undecided(p) for p in sorted(report.candidates)}
    return report


# ---------------------------------------------------------------------------
# elimination


class _TraceTable:
    """Lazily computed Frobenius data for every usable ell up to a bound."""

    def __init__(self, curve: CurveModel, seed: int, cache=None):
        self.curve = curve
        self.seed = seed
        self.cache = cache
        self.norm = curve.norm_discriminant().numerator
        self._data: dict[int, list[FrobeniusData]] = {}

    def get(self, ell: int) -> list[FrobeniusData]:
        if ell not in self._data:
            try:
                self._data[ell] = ideal_traces(self.curve, ell, self.seed, self.cache)
            except (BadReductionPrime, IndexDivisor):
                self._data[ell] = []
        return self._data[ell]


def verify_certificate(curve: CurveModel, status: Eliminated) -> bool:
    fresh = trace_of_frobenius(curve, status.ideal)
    return fresh.trace == status.trace and is_irreducible_mod_p(fresh.frobenius_poly, status.p)


def eliminate(
    curve: CurveModel,
    candidates: Iterable[int],
    search_bound: int,
    statuses: dict | None = None,
    seed: int = 0,
    cache=None,
) -> dict:
    """Try to show each candidate p is not exceptional.

    A prime q above ell, with ell != p and ell prime to Norm(Delta), whose
    P_q is irreducible mod p rules p out. Every certificate is re-verified
    from a fresh trace before it is returned.
    """
    curve = integralize(curve)
    out = dict(statuses or {})
    table = _TraceTable(curve, seed, cache)
    ells = arith.primes_up_to(search_bound)
    for p in sorted(candidates):
        current = out.get(p)
        if isinstance(current, (Eliminated, WitnessedExceptional)):
            continue
        found = None
        for ell in ells:
            if ell == p:
                continue
            for fd in table.get(ell):
                if is_irreducible_mod_p(fd.frobenius_poly, p):
                    found = Eliminated(p, fd.ideal, fd.trace)
                    break
            if found:
                break
        if found is not None:
            if not verify_certificate(curve, found):
                raise InvariantViolation(f"certificate for {p} failed to re-verify")
            out[p] = found
        else:
            out[p] = Undecided(p)
    return out


# ---------------------------------------------------------------------------
# witnesses


def j_x0(N: int, x):
    """The hardcoded j-map of X_0(N) for N = 3 and 13."""
    if N == 3:
        return (x + 3) ** 3 * (x + 27) / x
    if N == 13:
        return (x * x + 5 * x + 13) * (x**4 + 7 * x**3 + 20 * x * x + 19 * x + 1) ** 3 / x
    raise ValueError(f"no j-map stored for X_0({N})")


def x0_witness(curve: CurveModel, N: int, x) -> bool:
    """True when j(X_0(N))(x) = j(E), so E has a rational N-isogeny."""
    x = curve.field(x)
    if not x:
        raise ZeroDivisionError("the X_0(N) parameter must be nonzero")
    return j_x0(N, x) == curve.j


# ---------------------------------------------------------------------------
# semistability defect


class PhiConclusion(str, enum.Enum):
    IRREDUCIBLE_ALL_P_GE_5 = "IrreducibleAllPGe5"
    IRREDUCIBLE_ALL_P_GE_3_EXCEPT_ELL = "IrreducibleAllPGe3ExceptEll"
    NO_CONCLUSION = "NoConclusion"


LEGAL_PHI_ORDERS = {2: frozenset({2, 3, 4, 6, 8, 24}), 3: frozenset({2, 3, 4, 6, 12})}
LEGAL_PHI_ORDERS_GENERIC = frozenset({2, 3, 4, 6})


def legal_phi_orders(ell: int) -> frozenset:
    return LEGAL_PHI_ORDERS.get(ell, LEGAL_PHI_ORDERS_GENERIC)


@dataclass(frozen=True)
class PhiInput:
    ell: int
    residue_degree: int
    phi_order: int

    def __post_init__(self):
        if self.residue_degree < 1:
            raise ValueError("residue degree must be positive")
        if self.phi_order not in legal_phi_orders(self.ell):
            raise IllegalPhiOrder(f"|Phi| = {self.phi_order} is not possible above {self.ell}")


def phi_uniform_test(inp: PhiInput) -> PhiConclusion:
    ell, f, n = inp.ell, inp.residue_degree, inp.phi_order
    if (ell == 2 and n in (8, 24)) or (ell == 3 and n == 12):
        return PhiConclusion.IRREDUCIBLE_ALL_P_GE_5
    if ell == 2 and n in (3, 6) and f % 2:
        return PhiConclusion.IRREDUCIBLE_ALL_P_GE_5
    if ell == 3 and n == 4 and f % 2:
        return PhiConclusion.IRREDUCIBLE_ALL_P_GE_5
    m = n
    while m % ell == 0:
        m //= ell
    if (ell**f - 1) % m:
        return PhiConclusion.IRREDUCIBLE_ALL_P_GE_3_EXCEPT_ELL
    return PhiConclusion.NO_CONCLUSION


def phi_order_from_valuation(v: int) -> int:
    """|Phi_q| = 12 / gcd(v, 12) for ell >= 5, from v = v_q(Delta) of a minimal model.

    The valuation is an asserted input: minimal models are not computed here.
    """
    return 12 // math.gcd(v, 12)


# ---------------------------------------------------------------------------
# binary quadratic forms


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Primitive reduced positive definite forms (a, b, c) of discriminant D."""
    if D >= 0 or D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not a negative discriminant")
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if math.gcd(a, b, c) == 1:
                forms.append((a, b, c))
        a += 1
    return sorted(forms)
