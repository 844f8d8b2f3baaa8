import json

import pytest

from nfoldsusy import (
    DerivOrderError,
    DiffOperator,
    ideal_membership,
    operator_from_dict,
    operator_to_dict,
    operator_to_json,
    parse,
    transformed_conditions,
)
from nfoldsusy.config import max_deriv_order, search_deriv_bound


def test_operator_json_round_trip():
    op = DiffOperator(2, {2: parse("1", 2), 0: parse("w0 - 1/3*w1'", 2)})
    data = operator_to_dict(op)
    assert data["ambientN"] == 2
    assert operator_from_dict(json.loads(operator_to_json(op))) == op


def test_decomposition_serializes():
    cs = transformed_conditions(2, "paper")
    target = parse("w1", 2) * cs.condition(0)
    dec = ideal_membership(target, cs)
    data = dec.to_dict()
    assert data["kind"] == "ideal-member"
    assert data["multipliers"][0]["condition"] == 0


def test_deriv_order_cap(monkeypatch):
    monkeypatch.setenv("NFOLDSUSY_MAX_DERIV", "3")
    assert max_deriv_order() == 3
    p = parse("w1'''", 2)
    with pytest.raises(DerivOrderError):
        p.derive()
    from nfoldsusy import ParseError

    with pytest.raises(ParseError):
        parse("w1''''", 2)
    monkeypatch.delenv("NFOLDSUSY_MAX_DERIV")
    assert parse("w1''''", 2).derive().max_deriv() == 5


def test_search_bound_env(monkeypatch):
    monkeypatch.setenv("NFOLDSUSY_DERIV_BOUND", "4")
    assert search_deriv_bound() == 4
    from nfoldsusy import monomial_basis
    from nfoldsusy.diffring import w

    basis = monomial_basis(2, 6, [w(1)])
    assert all(m.max_deriv() <= 4 for m in basis)
