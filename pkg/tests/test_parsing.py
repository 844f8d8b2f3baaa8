from fractions import Fraction

import pytest

from nfoldsusy import ParseError, format_poly, parse, poly_from_json, poly_to_json
from nfoldsusy.formatting import format_monomial


def test_zero():
    assert parse("0", 2).is_zero()


def test_rationals_and_powers():
    assert parse("3/4*w1^2", 2) == parse("w1*w1", 2) * Fraction(3, 4)
    assert parse("-w1^2", 2) == -parse("w1^2", 2)


def test_derivative_syntaxes_agree():
    assert parse("D^2(w1)", 2) == parse("w1''", 2)
    assert parse("D(w1*u0)", 2) == parse("w1'*u0 + w1*u0'", 2)


def test_all_generator_tokens():
    for token in ("w1", "u0", "V+", "V-", "C0", "alpha0", "beta2", "gamma7"):
        poly = parse(token, 4)
        assert format_poly(poly) == token


def test_prime_then_power_binds_power_to_generator():
    assert parse("w1'^2", 2) == parse("w1'*w1'", 2)


def test_sixteen_j1_example():
    p = parse("2*w1*w1'' - w1'^2 + 4*w1^2*u0", 2)
    assert p.weight() == 4
    assert len(p.terms) == 3


def test_parse_error_position_and_expected():
    with pytest.raises(ParseError) as err:
        parse("w1 + ", 2)
    assert err.value.position == 5
    with pytest.raises(ParseError) as err:
        parse("w1 + %", 2)
    assert err.value.position == 5
    with pytest.raises(ParseError):
        parse("q0", 2)
    with pytest.raises(ParseError):
        parse("w1^0", 2)
    with pytest.raises(ParseError):
        parse("C1'", 2)
    with pytest.raises(ParseError):
        parse("(w1", 2)


def test_format_parse_round_trip_on_displays():
    samples = [
        "w1''' + 4*w1'*u0 + 2*w1*u0' - 2*4*w1^2*w1'",
        "-1/2*w1 + 3*u0 - C1 + alpha0*w1^2",
        "V+'' - V-''",
    ]
    for s in samples:
        p = parse(s, 2)
        assert parse(format_poly(p), 2) == p


def test_json_round_trip_and_stability():
    p = parse("2*w1*w1'' - w1'^2 + 4*w1^2*u0 - 3/7*C1", 2)
    blob = poly_to_json(p)
    assert poly_from_json(blob) == p
    assert poly_to_json(poly_from_json(blob)) == blob


def test_latex_rendering():
    p = parse("3/2*w1'^2 - alpha0*V+", 2)
    tex = format_poly(p, "latex")
    assert r"\frac{3}{2}" in tex and "(w_{1}')^{2}" in tex
    assert r"\alpha_{0}" in tex and "V^{+}" in tex
    assert format_monomial(parse("w1^2", 2).leading_monomial(), "latex") == "(w_{1})^{2}"


def test_canonical_term_order_is_weight_graded():
    p = parse("w1 + w1^2 + w1''", 2)
    rendered = format_poly(p)
    # leading (heaviest) monomial first
    assert rendered.startswith("w1^2") or rendered.startswith("w1''")
    assert rendered.split(" ")[-1] == "w1"
