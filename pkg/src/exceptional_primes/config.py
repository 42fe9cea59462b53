"""Run configuration: a TOML file describing the field, the curve and the sieve.

Number-field elements are written in the power basis of the generator theta
of the defining polynomial, lowest degree first. Either a plain list of
integers, or a table ``{num = [...], den = n}`` for a common denominator.
Integers too large for TOML may be given as decimal strings.

    [field]
    poly = [1, 0, 1]            # X^2 + 1, ascending and monic
    disc = -4
    class_number = 1            # optional; an asserted input

    [[field.overrides]]         # only for primes dividing the index
    ell = 2
    ideals = [{gen = [1, 1], e = 2, f = 1}]

    [[field.gammas]]            # optional data for the R_q criterion
    ell = 5
    gen = [2, 0, 1]             # residue generator selecting q
    m_gamma = [25, 0, 17, 0, 1] # minimal polynomial of a generator of q^h
    h = 1

    [curve]
    a4 = [6, 4]
    a6 = [6, 4]

    [curve.change]              # optional x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
    u = [-3]
    r = [-6, 0, -6]

    [sieve]
    ells = [5, 7]               # or ell_bound = 10
    eliminate_bound = 10
    rho_iterations = 4194304    # optional factorization budget
    seed = 0

    [[witnesses.order_two]]
    x = [0]
    y = [0]

    [[witnesses.x0]]
    N = 13
    x = [0, 1]
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import arith
from .ellcurve import COEFF_NAMES, CurveModel, change_coordinates, integralize
from .errors import ParseError, ValidationError
from .intpoly import IntPoly
from .numfield import KElement, NumberField, PrimeIdealData, factor_prime

BUDGET_KEYS = ("trial_bound", "rho_iterations", "rho_seeds")


@dataclass(frozen=True)
class GammaSpec:
    ell: int
    gen: IntPoly
    m_gamma: IntPoly
    h: int = 1
    h_defaulted: bool = False


@dataclass(frozen=True)
class OrderTwoWitness:
    x: KElement
    y: KElement


@dataclass(frozen=True)
class X0Witness:
    N: int
    x: KElement


@dataclass
class RunConfig:
    field: NumberField
    curve: CurveModel
    change: dict | None = None
    ells: list[int] | None = None
    ell_bound: int | None = None
    eliminate_bound: int = 50
    budget: dict = field(default_factory=dict)
    seed: int = 0
    gammas: list[GammaSpec] = field(default_factory=list)
    order_two: list[OrderTwoWitness] = field(default_factory=list)
    x0: list[X0Witness] = field(default_factory=list)
    name: str = ""
    source: str | None = None

    @property
    def working_curve(self) -> CurveModel:
        """The integral model used for every reduction: the curve after the optional change of variables."""
        c = self.curve
        if self.change:
            c = change_coordinates(c, **self.change)
        return integralize(c)

    def sieve_primes(self) -> list[int]:
        if self.ells is not None:
            return sorted(self.ells)
        if self.ell_bound is not None:
            return list(arith.primes_up_to(self.ell_bound))
        return []

    def asserted_inputs(self) -> dict:
        out = {"class_number": self.field.class_number, "field_discriminant": self.field.disc}
        if self.gammas:
            out["gamma_generators"] = [
                {"ell": g.ell, "gen": str(g.gen), "m_gamma": str(g.m_gamma), "h": g.h, "h_defaulted": g.h_defaulted}
                for g in self.gammas
            ]
        overrides = {
            ell: [{"gen": str(q.gen), "e": q.e, "f": q.f} for q in ideals]
            for ell, ideals in self.field.overrides.items()
        }
        if overrides:
            out["ideal_overrides"] = overrides
        return out

    def r_inputs(self):
        """Resolve every gamma block to a prime ideal of the field."""
        from .criteria import RInput

        out = []
        for i, g in enumerate(self.gammas):
            ideals = factor_prime(self.field, g.ell, seed=self.seed)
            match = [q for q in ideals if q.gen == g.gen]
            if not match:
                gens = ", ".join(str(q.gen) for q in ideals)
                raise ValidationError(f"field.gammas[{i}].gen", f"{g.gen} is not one of {gens}")
            out.append(RInput(match[0], g.m_gamma, g.h, g.h_defaulted))
        return out


# ---------------------------------------------------------------------------
# parsing helpers


def _int(value, where: str) -> int:
    if isinstance(value, bool):
        raise ValidationError(where, "expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.replace("_", ""))
        except ValueError:
            pass
    raise ValidationError(where, f"expected an integer, got {value!r}")


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise ValidationError(where, "expected a list of integers")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _poly(value, where: str) -> IntPoly:
    return IntPoly(_int_list(value, where))


def _element(K: NumberField, value, where: str) -> KElement:
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return K(_int(value, where))
    if isinstance(value, list):
        coeffs = _int_list(value, where)
        den = 1
    elif isinstance(value, dict):
        unknown = set(value) - {"num", "den"}
        if unknown:
            raise ValidationError(where, f"unknown keys {sorted(unknown)}")
        if "num" not in value:
            raise ValidationError(where, "missing 'num'")
        coeffs = _int_list(value["num"], f"{where}.num")
        den = _int(value.get("den", 1), f"{where}.den")
        if den == 0:
            raise ValidationError(f"{where}.den", "denominator must be nonzero")
    else:
        raise ValidationError(where, "expected a coefficient list or {num, den} table")
    if len(coeffs) > K.degree:
        raise ValidationError(where, f"at most {K.degree} power-basis coefficients expected")
    return K(IntPoly(coeffs), den)


def _table(doc: dict, key: str, where: str, required: bool = True) -> dict:
    if key not in doc:
        if required:
            raise ValidationError(where + key, "missing section")
        return {}
    value = doc[key]
    if not isinstance(value, dict):
        raise ValidationError(where + key, "expected a table")
    return value


def _check_keys(table: dict, allowed, where: str) -> None:
    unknown = set(table) - set(allowed)
    if unknown:
        raise ValidationError(where, f"unknown keys {sorted(unknown)}")


def _parse_field(doc: dict) -> NumberField:
    f = _table(doc, "field", "")
    _check_keys(f, ("name", "poly", "disc", "class_number", "overrides", "gammas"), "field")
    if "poly" not in f:
        raise ValidationError("field.poly", "missing defining polynomial")
    if "disc" not in f:
        raise ValidationError("field.disc", "missing field discriminant D_K")
    poly = _poly(f["poly"], "field.poly")
    if not poly.is_monic() or poly.degree < 1:
        raise ValidationError("field.poly", f"{poly} must be monic of degree >= 1")
    disc = _int(f["disc"], "field.disc")
    h = _int(f.get("class_number", 1), "field.class_number")
    overrides: dict[int, list[PrimeIdealData]] = {}
    for i, ov in enumerate(f.get("overrides", [])):
        where = f"field.overrides[{i}]"
        if not isinstance(ov, dict):
            raise ValidationError(where, "expected a table")
        _check_keys(ov, ("ell", "ideals"), where)
        ell = _int(ov.get("ell"), f"{where}.ell")
        if not arith.is_prime(ell):
            raise ValidationError(f"{where}.ell", f"{ell} is not prime")
        ideals = []
        for j, q in enumerate(ov.get("ideals", [])):
            qw = f"{where}.ideals[{j}]"
            if not isinstance(q, dict):
                raise ValidationError(qw, "expected a table")
            _check_keys(q, ("gen", "e", "f"), qw)
            gen = _poly(q.get("gen"), f"{qw}.gen")
            e, fq = _int(q.get("e"), f"{qw}.e"), _int(q.get("f"), f"{qw}.f")
            if gen.degree != fq:
                raise ValidationError(f"{qw}.gen", f"degree {gen.degree} does not match f = {fq}")
            ideals.append(PrimeIdealData(ell, gen, e, fq, "override"))
        total = sum(q.e * q.f for q in ideals)
        if total != poly.degree:
            raise ValidationError(f"{where}.ideals", f"sum of e*f is {total}, expected {poly.degree}")
        overrides[ell] = ideals
    try:
        return NumberField(
            poly, disc, class_number=h, overrides=overrides, name=f.get("name"),
            class_number_asserted=True,
        )
    except ValueError as exc:
        raise ValidationError("field", str(exc)) from exc


def _parse_gammas(doc: dict, K: NumberField) -> list[GammaSpec]:
    out = []
    for i, g in enumerate(doc["field"].get("gammas", [])):
        where = f"field.gammas[{i}]"
        if not isinstance(g, dict):
            raise ValidationError(where, "expected a table")
        _check_keys(g, ("ell", "gen", "m_gamma", "h"), where)
        for key in ("ell", "gen", "m_gamma"):
            if key not in g:
                raise ValidationError(f"{where}.{key}", "missing")
        m = _poly(g["m_gamma"], f"{where}.m_gamma")
        if not m.is_monic() or m.degree != K.degree:
            raise ValidationError(f"{where}.m_gamma", f"must be monic of degree {K.degree}")
        h = _int(g.get("h", 1), f"{where}.h")
        if h < 1:
            raise ValidationError(f"{where}.h", "must be positive")
        out.append(GammaSpec(_int(g["ell"], f"{where}.ell"), _poly(g["gen"], f"{where}.gen"), m, h, "h" not in g))
    return out


def _parse_curve(doc: dict, K: NumberField) -> tuple[CurveModel, dict | None]:
    c = _table(doc, "curve", "")
    _check_keys(c, COEFF_NAMES + ("change",), "curve")
    coeffs = [_element(K, c.get(n, 0), f"curve.{n}") for n in COEFF_NAMES]
    try:
        curve = CurveModel(K, *coeffs)
    except Exception as exc:
        raise ValidationError("curve", str(exc)) from exc
    change = None
    if "change" in c:
        ch = c["change"]
        if not isinstance(ch, dict):
            raise ValidationError("curve.change", "expected a table")
        _check_keys(ch, ("u", "r", "s", "t"), "curve.change")
        change = {k: _element(K, v, f"curve.change.{k}") for k, v in ch.items()}
        if "u" in change and not change["u"]:
            raise ValidationError("curve.change.u", "must be nonzero")
    return curve, change


def parse_config_dict(doc: dict, source: str | None = None) -> RunConfig:
    _check_keys(doc, ("field", "curve", "sieve", "witnesses", "name"), "<root>")
    K = _parse_field(doc)
    gammas = _parse_gammas(doc, K)
    curve, change = _parse_curve(doc, K)
    s = _table(doc, "sieve", "", required=False)
    _check_keys(s, ("ells", "ell_bound", "eliminate_bound", "seed") + BUDGET_KEYS, "sieve")
    ells = None
    if "ells" in s:
        ells = _int_list(s["ells"], "sieve.ells")
        for i, ell in enumerate(ells):
            if not arith.is_prime(ell):
                raise ValidationError(f"sieve.ells[{i}]", f"{ell} is not prime")
    ell_bound = _int(s["ell_bound"], "sieve.ell_bound") if "ell_bound" in s else None
    budget = {k: _int(s[k], f"sieve.{k}") for k in BUDGET_KEYS if k in s}
    for k, v in budget.items():
        if v < 1:
            raise ValidationError(f"sieve.{k}", "must be positive")
    w = _table(doc, "witnesses", "", required=False)
    _check_keys(w, ("order_two", "x0"), "witnesses")
    order_two = []
    for i, pt in enumerate(w.get("order_two", [])):
        where = f"witnesses.order_two[{i}]"
        if not isinstance(pt, dict) or "x" not in pt or "y" not in pt:
            raise ValidationError(where, "expected a table with x and y")
        order_two.append(OrderTwoWitness(_element(K, pt["x"], f"{where}.x"), _element(K, pt["y"], f"{where}.y")))
    x0 = []
    for i, item in enumerate(w.get("x0", [])):
        where = f"witnesses.x0[{i}]"
        if not isinstance(item, dict) or "N" not in item or "x" not in item:
            raise ValidationError(where, "expected a table with N and x")
        N = _int(item["N"], f"{where}.N")
        if N not in (3, 13):
            raise ValidationError(f"{where}.N", "only N = 3 and N = 13 are available")
        x0.append(X0Witness(N, _element(K, item["x"], f"{where}.x")))
    return RunConfig(
        field=K,
        curve=curve,
        change=change,
        ells=ells,
        ell_bound=ell_bound,
        eliminate_bound=_int(s.get("eliminate_bound", 50), "sieve.eliminate_bound"),
        budget=budget,
        seed=_int(s.get("seed", 0), "sieve.seed"),
        gammas=gammas,
        order_two=order_two,
        x0=x0,
        name=str(doc.get("name", K.name)),
        source=source,
    )


def parse_config_text(text: str, source: str | None = None) -> RunConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{source or '<string>'}: {exc}") from exc
    return parse_config_dict(doc, source)


def parse_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_config_text(text, str(path))


def fixture_path(name: str) -> Path:
    """Path of a shipped example configuration (``data/<name>.toml``)."""
    return Path(__file__).parent / "data" / f"{name}.toml"


def load_fixture(name: str) -> RunConfig:
    return parse_config(fixture_path(name))
