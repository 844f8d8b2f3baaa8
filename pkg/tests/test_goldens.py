import pytest

from nfoldsusy import format_poly, parse, poly_from_json, poly_to_json
from nfoldsusy import goldens, suites


def test_corpus_loads_with_unique_ids():
    entries = goldens.corpus()
    assert len(entries) > 100
    assert "2fC1" in entries and "4fc5pp" in entries


def test_every_expression_parses_homogeneous_and_round_trips():
    for e in goldens.corpus().values():
        for expr in e.expressions():
            poly = parse(expr, e.n)
            assert poly.is_homogeneous(), (e.id, expr)
            assert parse(format_poly(poly), e.n) == poly, (e.id, expr)
            assert poly_from_json(poly_to_json(poly)) == poly, (e.id, expr)


def test_displayed_j_normalization():
    # the first twofold integral: 16*J1 equals the stored display
    j1 = goldens.displayed_j(2, 1)
    assert j1 * 16 == goldens.entry("2fC1").poly()
    # the fourfold chain replaces C1 inside the second integral
    j2 = goldens.displayed_j(4, 2)
    assert parse("C1", 4).terms.keys().isdisjoint(j2.terms.keys())


def test_integral_relation_vanishes_on_shell():
    rel = goldens.integral_relation(3, 1)
    assert rel == parse("u1'' + 2*w2*u0 + 12*u1^2 + 4*C1", 3)


@pytest.mark.parametrize("suite", suites.SUITE_NAMES)
def test_suites_pass(suite):
    (report,) = suites.run_suite(suite)
    failures = [r for r in report.results if not r.passed]
    assert not failures, failures[:5]
