"""End-to-end runs, JSON reports and the on-disk trace cache."""
from __future__ import annotations

import hashlib
import json
import random
import threading
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .arith import AllPrimes, Factorization
from .config import RunConfig
from .criteria import (
    CandidateReport,
    Eliminated,
    QuadraticSieve,
    RIdealResult,
    SieveResult,
    Undecided,
    VanishingReason,
    WitnessedExceptional,
    eliminate,
    exceptional_candidates,
    x0_witness,
)
from .ellcurve import CurveModel, FrobeniusData, is_order_two_point, trace_of_frobenius
from .errors import InvariantViolation
from .intpoly import IntPoly
from .numfield import PrimeIdealData

REPORT_SCHEMA = 1
CACHE_SCHEMA = 1


# ---------------------------------------------------------------------------
# trace cache


def _digest(*parts) -> str:
    return hashlib.sha256(repr(parts).encode()).hexdigest()[:16]


def curve_key(curve: CurveModel) -> tuple[str, str]:
    fkey = _digest(curve.field.poly.coeffs)
    ckey = _digest(tuple((a.num.coeffs, a.den) for a in curve.coefficients))
    return fkey, ckey


class TraceCache:
    """Append-only JSON-lines store of Frobenius traces.

    Records are keyed by (field hash, curve hash, ell, residue generator).
    With ``verify`` set, the first hit and a seeded sample of later hits are
    recomputed and compared; a mismatch is an invariant violation.
    """

    def __init__(self, path, verify: bool = False, sample_rate: float = 0.25, seed: int = 0):
        self.path = Path(path)
        self.verify = verify
        self.sample_rate = sample_rate
        self._rng = random.Random(seed)
        self._lock = threading.Lock()
        self._data: dict[tuple, dict] = {}
        self.hits = 0
        self.misses = 0
        self.verified = 0
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                rec = json.loads(line)
                if rec.get("schema") != CACHE_SCHEMA:
                    continue
                self._data[self._key(rec["field"], rec["curve"], rec["ell"], rec["gen"])] = rec

    @staticmethod
    def _key(fkey, ckey, ell, gen):
        return (fkey, ckey, int(ell), tuple(int(c) for c in gen))

    def get(self, curve: CurveModel, q: PrimeIdealData) -> FrobeniusData | None:
        fkey, ckey = curve_key(curve)
        rec = self._data.get(self._key(fkey, ckey, q.ell, q.gen.coeffs))
        if rec is None:
            self.misses += 1
            return None
        self.hits += 1
        fd = FrobeniusData(q, int(rec["trace"]), int(rec["norm"]))
        if self.verify and (self.verified == 0 or self._rng.random() < self.sample_rate):
            fresh = trace_of_frobenius(curve, q)
            self.verified += 1
            if (fresh.trace, fresh.norm) != (fd.trace, fd.norm):
                raise InvariantViolation(f"cached trace for {q.label} is {fd.trace}, recomputed {fresh.trace}")
        return fd

    def put(self, curve: CurveModel, fd: FrobeniusData) -> None:
        fkey, ckey = curve_key(curve)
        q = fd.ideal
        rec = {
            "schema": CACHE_SCHEMA,
            "field": fkey,
            "curve": ckey,
            "ell": q.ell,
            "gen": list(q.gen.coeffs),
            "e": q.e,
            "f": q.f,
            "trace": fd.trace,
            "norm": fd.norm,
        }
        with self._lock:
            key = self._key(fkey, ckey, q.ell, q.gen.coeffs)
            if key in self._data:
                return
            self._data[key] = rec
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# running


@dataclass
class WitnessResult:
    p: int
    kind: str
    description: str
    holds: bool


@dataclass
class PipelineResult:
    report: CandidateReport
    witnesses: list[WitnessResult] = field(default_factory=list)


def check_witnesses(config: RunConfig) -> list[WitnessResult]:
    out = []
    curve = config.curve
    for w in config.order_two:
        ok = is_order_two_point(curve, w.x, w.y)
        out.append(WitnessResult(2, "order_two", f"2-torsion point ({w.x}, {w.y})", ok))
    for w in config.x0:
        ok = x0_witness(curve, w.N, w.x)
        out.append(WitnessResult(w.N, "x0", f"j(X_0({w.N}))({w.x}) = j(E)", ok))
    return out


def run_pipeline(config: RunConfig, seed: int | None = None, cache=None, eliminate_bound: int | None = None,
                 ells=None) -> PipelineResult:
    """Screen, sieve, intersect, eliminate and check witnesses."""
    seed = config.seed if seed is None else seed
    bound = config.eliminate_bound if eliminate_bound is None else eliminate_bound
    ells = config.sieve_primes() if ells is None else ells
    curve = config.working_curve
    report = exceptional_candidates(curve, ells, config.r_inputs(), seed=seed, cache=cache, **config.budget)
    report.meta = report_meta(config, seed, bound)
    if report.candidates is not AllPrimes:
        report.statuses = eliminate(curve, report.candidates, bound, report.statuses, seed=seed, cache=cache)
    witnesses = check_witnesses(config)
    for w in witnesses:
        if not w.holds:
            continue
        current = report.statuses.get(w.p)
        if isinstance(current, Eliminated):
            raise InvariantViolation(f"{w.p} has both an elimination certificate and an exceptional witness")
        if report.candidates is not AllPrimes and w.p not in report.candidates:
            raise InvariantViolation(f"witnessed exceptional prime {w.p} is missing from the candidate set")
        if not isinstance(current, WitnessedExceptional):
            report.statuses[w.p] = WitnessedExceptional(w.p, w.description)
    report.meta["witnesses"] = [
        {"p": w.p, "kind": w.kind, "description": w.description, "holds": w.holds} for w in witnesses
    ]
    return PipelineResult(report, witnesses)


def report_meta(config: RunConfig, seed: int, bound: int) -> dict:
    K = config.field
    return {
        "name": config.name,
        "field_poly": [str(c) for c in K.poly.coeffs],
        "field_disc": str(K.disc),
        "curve": {
            n: {"num": [str(c) for c in a.num.coeffs], "den": str(a.den)}
            for n, a in zip(("a1", "a2", "a3", "a4", "a6"), config.working_curve.coefficients)
        },
        "asserted": _jsonable(config.asserted_inputs()),
        "eliminate_bound": bound,
        "seed": seed,
        "version": __version__,
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    return str(obj)


# ---------------------------------------------------------------------------
# serialization: big integers always as decimal strings


def _s(n: int) -> str:
    return str(n)


def _poly_out(p: IntPoly) -> list[str]:
    return [str(c) for c in p.coeffs]


def _poly_in(v) -> IntPoly:
    return IntPoly(int(c) for c in v)


def _ideal_out(q: PrimeIdealData) -> dict:
    return {"ell": _s(q.ell), "gen": _poly_out(q.gen), "e": q.e, "f": q.f, "source": q.source}


def _ideal_in(d) -> PrimeIdealData:
    return PrimeIdealData(int(d["ell"]), _poly_in(d["gen"]), int(d["e"]), int(d["f"]), d["source"])


def _frob_out(fd: FrobeniusData) -> dict:
    return {"ideal": _ideal_out(fd.ideal), "trace": _s(fd.trace), "norm": _s(fd.norm)}


def _frob_in(d) -> FrobeniusData:
    return FrobeniusData(_ideal_in(d["ideal"]), int(d["trace"]), int(d["norm"]))


def _primes_out(s):
    if s is None:
        return None
    if s is AllPrimes:
        return "all"
    return [_s(p) for p in sorted(s)]


def _primes_in(v):
    if v is None:
        return None
    if v == "all":
        return AllPrimes
    return frozenset(int(p) for p in v)


def _integer_out(value: int, fac: Factorization | None, unsplit) -> dict:
    out = {"decimal": _s(value)}
    if value == 0:
        out["factored"] = "0"
        return out
    if fac is not None:
        out["factored"] = str(fac)
        out["factors"] = [[_s(p), e] for p, e in fac.factors]
        out["sign"] = fac.sign
    if unsplit:
        out["unsplit"] = [_s(c) for c in unsplit]
    return out


def _factorization_in(d) -> Factorization | None:
    if "factors" not in d:
        return None
    return Factorization(tuple((int(p), int(e)) for p, e in d["factors"]), int(d["sign"]))


def _status_out(s) -> dict:
    if isinstance(s, Eliminated):
        return {"p": _s(s.p), "status": "eliminated", "ideal": _ideal_out(s.ideal), "trace": _s(s.trace),
                "certificate": s.describe()}
    if isinstance(s, WitnessedExceptional):
        return {"p": _s(s.p), "status": "witnessed_exceptional", "witness": s.witness}
    return {"p": _s(s.p), "status": "undecided"}


def _status_in(d):
    p = int(d["p"])
    if d["status"] == "eliminated":
        return Eliminated(p, _ideal_in(d["ideal"]), int(d["trace"]))
    if d["status"] == "witnessed_exceptional":
        return WitnessedExceptional(p, d["witness"])
    return Undecided(p)


def _skip_key(kv):
    # ells ascending, then R_q entries by label
    k = kv[0]
    return (1, str(k)) if isinstance(k, str) else (0, k)


def report_to_dict(report: CandidateReport) -> dict:
    sieves = []
    for r in sorted(report.sieve_results, key=lambda r: r.ell):
        entry = {
            "ell": _s(r.ell),
            "degree": r.degree,
            "traces": [_frob_out(fd) for fd in r.traces],
            "p_ell_star": _poly_out(r.p_ell_star),
            "values": [_s(v) for v in r.values],
            "b_ell": _integer_out(r.b_ell, r.factorization, r.unsplit),
            "divisors": _primes_out(r.divisors),
        }
        quad = report.quadratic_checks.get(r.ell)
        if quad is not None:
            entry["quadratic_check"] = {"value_at_ell12": _s(quad.value_at_ell12), "vanishing": quad.reason.value}
        sieves.append(entry)
    rs = []
    for r in report.r_results:
        rs.append({
            "ideal": _ideal_out(r.ideal),
            "h": r.h,
            "m_gamma": _poly_out(r.m_gamma),
            "frobenius": _frob_out(r.frobenius),
            "p_adams": _poly_out(r.p_adams),
            "m_adams": _poly_out(r.m_adams),
            "factors": [_s(v) for v in r.factors],
            "value": _integer_out(r.value, r.factorization, r.unsplit),
            "divisors": _primes_out(r.divisors),
            "asserted": r.asserted,
        })
    return {
        "schema": REPORT_SCHEMA,
        "meta": report.meta,
        "seed": report.seed,
        "screening_primes": _primes_out(report.screening_primes),
        "sieves": sieves,
        "r_ideals": rs,
        "survivors": _primes_out(report.survivors),
        "candidates": _primes_out(report.candidates),
        "statuses": [_status_out(report.statuses[p]) for p in sorted(report.statuses)],
        "skipped": {str(k): v for k, v in sorted(report.skipped.items(), key=_skip_key)},
        "gaps": [_jsonable(g) for g in report.gaps],
    }


def report_from_dict(d: dict) -> CandidateReport:
    if d.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"unsupported report schema {d.get('schema')}")
    sieves, quads = [], {}
    for e in d["sieves"]:
        b = e["b_ell"]
        r = SieveResult(
            int(e["ell"]),
            _poly_in(e["p_ell_star"]),
            int(b["decimal"]),
            tuple(int(v) for v in e["values"]),
            tuple(_frob_in(t) for t in e["traces"]),
            divisors=_primes_in(e["divisors"]),
            factorization=_factorization_in(b),
            degree=e["degree"],
            unsplit=tuple(int(c) for c in b.get("unsplit", ())),
        )
        sieves.append(r)
        if "quadratic_check" in e:
            qc = e["quadratic_check"]
            quads[r.ell] = QuadraticSieve(r.p_ell_star, int(qc["value_at_ell12"]), VanishingReason(qc["vanishing"]))
    rs = []
    for e in d["r_ideals"]:
        v = e["value"]
        rs.append(RIdealResult(
            _ideal_in(e["ideal"]),
            e["h"],
            _poly_in(e["m_gamma"]),
            _frob_in(e["frobenius"]),
            _poly_in(e["p_adams"]),
            _poly_in(e["m_adams"]),
            tuple(int(x) for x in e["factors"]),
            int(v["decimal"]),
            divisors=_primes_in(e["divisors"]),
            factorization=_factorization_in(v),
            unsplit=tuple(int(c) for c in v.get("unsplit", ())),
            asserted=e["asserted"],
        ))
    statuses = {int(s["p"]): _status_in(s) for s in d["statuses"]}
    rep = CandidateReport(
        _primes_in(d["screening_primes"]),
        sieves,
        rs,
        _primes_in(d["candidates"]),
        statuses=statuses,
        skipped={int(k) if k.isdigit() else k: v for k, v in d["skipped"].items()},
        gaps=list(d["gaps"]),
        quadratic_checks=quads,
        seed=d["seed"],
        meta=d["meta"],
        survivors=_primes_in(d["survivors"]),
    )
    return rep


def serialize(report: CandidateReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def parse_report(text: str) -> CandidateReport:
    return report_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# human-readable rendering


def render_text(report: CandidateReport) -> str:
    lines = []
    meta = report.meta or {}
    if meta.get("name"):
        lines.append(f"curve: {meta['name']}")
    lines.append(f"seed: {report.seed}")
    lines.append("screening primes: " + ", ".join(map(str, sorted(report.screening_primes))))
    if report.survivors is not AllPrimes:
        lines.append("sieve survivors: " + (", ".join(map(str, sorted(report.survivors))) or "none"))
    for r in sorted(report.sieve_results, key=lambda r: r.ell):
        traces = ", ".join(f"{fd.trace} at {fd.ideal.label}" for fd in r.traces)
        lines.append(f"ell = {r.ell}: traces {traces}")
        lines.append(f"  P_{r.ell}* = {r.p_ell_star}")
        lines.append(f"  B_{r.ell} = {r.b_ell}")
        if r.factorization is not None and r.b_ell:
            extra = f" * [unsplit {', '.join(map(str, r.unsplit))}]" if r.unsplit else ""
            lines.append(f"        = {r.factorization}{extra}")
        quad = report.quadratic_checks.get(r.ell)
        if quad is not None and quad.reason is not VanishingReason.NONE:
            lines.append(f"  P_{r.ell}*(ell^12) = 0: {quad.reason.value}")
    for r in report.r_results:
        lines.append(f"R at {r.ideal.label} (h = {r.h}, m_gamma = {r.m_gamma}, asserted): {r.value}")
        if r.factorization is not None:
            lines.append(f"        = {r.factorization}")
    for k, why in sorted(report.skipped.items(), key=_skip_key):
        lines.append(f"skipped {k}: {why}")
    for g in report.gaps:
        lines.append(f"gap: {g}")
    cands = "all primes" if report.candidates is AllPrimes else ", ".join(map(str, sorted(report.candidates)))
    lines.append(f"candidates: {cands}")
    width = max((len(str(p)) for p in report.statuses), default=1)
    for p in sorted(report.statuses):
        s = report.statuses[p]
        kind = {Eliminated: "eliminated", WitnessedExceptional: "EXCEPTIONAL", Undecided: "undecided"}[type(s)]
        detail = "" if isinstance(s, Undecided) else f"  {s.describe()}"
        lines.append(f"  {p:>{width}}  {kind}{detail}")
    return "\n".join(lines) + "\n"
