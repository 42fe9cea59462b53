import pytest

from exceptional_primes.config import fixture_path, load_fixture, parse_config, parse_config_text
from exceptional_primes.errors import ParseError, ValidationError
from exceptional_primes.intpoly import IntPoly

FIXTURES = ["q_i", "q_sqrt2", "q_sqrt3", "q_sqrt5", "q_sqrt13", "cubic9", "biquadratic"]

BASE = """
[field]
poly = [1, 0, 1]
disc = -4

[curve]
a4 = [6, 4]
a6 = [6, 4]
"""


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_parse(name):
    cfg = load_fixture(name)
    assert cfg.working_curve.is_integral()
    assert cfg.source == str(fixture_path(name))


def test_q_i_fixture_contents():
    cfg = load_fixture("q_i")
    assert cfg.field.poly == IntPoly([1, 0, 1])
    a = cfg.field([6, 4])
    assert cfg.curve.a4 == a and cfg.curve.a6 == a
    assert cfg.ells == [5, 7] and cfg.eliminate_bound == 10


def test_minimal_config_defaults():
    cfg = parse_config_text(BASE)
    assert cfg.ells is None and cfg.sieve_primes() == []
    assert cfg.eliminate_bound == 50 and cfg.seed == 0
    assert cfg.asserted_inputs() == {"class_number": 1, "field_discriminant": -4}


def test_ell_bound():
    cfg = parse_config_text(BASE + "[sieve]\nell_bound = 12\n")
    assert cfg.sieve_primes() == [2, 3, 5, 7, 11]


def test_rational_coefficients():
    cfg = parse_config_text(BASE.replace("a4 = [6, 4]", 'a4 = {num = [1, 1], den = 4}\na2 = "3"'))
    assert cfg.curve.a4.den == 4
    assert cfg.curve.a2 == cfg.field(3)
    assert cfg.working_curve.is_integral()


@pytest.mark.parametrize(
    "text,location",
    [
        (BASE.replace("disc = -4\n", ""), "field.disc"),
        (BASE.replace("poly = [1, 0, 1]", "poly = [1, 0, 2]"), "field.poly"),
        (BASE.replace("disc = -4", "disc = -3"), "field"),
        (BASE.replace("a6 = [6, 4]", "a6 = [0]").replace("a4 = [6, 4]", "a4 = [0]"), "curve"),
        (BASE + "[sieve]\nells = [5, 9]\n", "sieve.ells[1]"),
        (BASE + "[sieve]\nrho_iterations = 0\n", "sieve.rho_iterations"),
        (BASE + "[sieve]\nbogus = 1\n", "sieve"),
        (BASE + "[[witnesses.x0]]\nN = 5\nx = [1]\n", "witnesses.x0[0].N"),
        (BASE.replace("a4 = [6, 4]", "a4 = [6, 4.5]"), "curve.a4[1]"),
        (BASE.replace("[curve]", "[[field.overrides]]\nell = 2\nideals = [{gen = [1, 1], e = 1, f = 1}]\n\n[curve]"),
         "field.overrides[0].ideals"),
        (BASE.replace("[curve]", "[[field.gammas]]\nell = 5\ngen = [2, 1]\nm_gamma = [5, 1]\n\n[curve]"),
         "field.gammas[0].m_gamma"),
    ],
    ids=lambda v: "cfg" if "\n" in v else v,
)
def test_validation_errors_carry_location(text, location):
    with pytest.raises(ValidationError) as info:
        parse_config_text(text)
    assert info.value.location == location


def test_missing_sections():
    with pytest.raises(ValidationError) as info:
        parse_config_text("[curve]\na4 = [1]\n")
    assert info.value.location == "field"


def test_parse_errors(tmp_path):
    with pytest.raises(ParseError):
        parse_config_text("[field\npoly = 1")
    with pytest.raises(ParseError):
        parse_config(tmp_path / "missing.toml")


def test_override_is_used(tmp_path):
    text = """
[field]
poly = [-12, 0, 1]
disc = 12

[[field.overrides]]
ell = 2
ideals = [{gen = [1, 1], e = 2, f = 1}]

[curve]
a4 = [1]
a6 = [0, 1]
"""
    cfg = parse_config_text(text)
    assert cfg.field.overrides[2][0].source == "override"
    assert cfg.asserted_inputs()["ideal_overrides"] == {2: [{"gen": "X + 1", "e": 2, "f": 1}]}


def test_gamma_resolution():
    cfg = load_fixture("biquadratic")
    ris = cfg.r_inputs()
    assert [(ri.ideal.ell, ri.h, ri.h_defaulted) for ri in ris] == [(5, 1, False), (7, 1, False)]
    bad = BASE.replace("[curve]", "[[field.gammas]]\nell = 5\ngen = [1, 1]\nm_gamma = [5, 0, 1]\n\n[curve]")
    with pytest.raises(ValidationError):
        parse_config_text(bad).r_inputs()


def test_h_defaulted_flag():
    text = BASE.replace("[curve]", "[[field.gammas]]\nell = 5\ngen = [3, 1]\nm_gamma = [5, -2, 1]\n\n[curve]")
    (g,) = parse_config_text(text).gammas
    assert g.h == 1 and g.h_defaulted
