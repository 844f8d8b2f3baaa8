"""Deterministic rendering of polynomials and operators.

``plain`` output round-trips through the parser; ``latex`` mirrors the
prime/power typesetting conventions of the source identities; ``json`` is
the canonical serialization (terms in descending canonical monomial order,
so equal values always serialize to identical bytes).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .diffring import DiffPoly, Family, Generator, Monomial

_PARAM_LATEX = {"alpha": r"\alpha", "beta": r"\beta", "gamma": r"\gamma"}


def _gen_latex(gen: Generator) -> str:
    primes = "'" * gen.deriv
    if gen.family is Family.W:
        return f"w_{{{gen.index}}}{primes}"
    if gen.family is Family.U:
        return f"u_{{{gen.index}}}{primes}"
    if gen.family is Family.VPLUS:
        return f"V^{{+}}{primes}"
    if gen.family is Family.VMINUS:
        return f"V^{{-}}{primes}"
    if gen.family is Family.C:
        return f"C_{{{gen.index}}}"
    token = gen.token()
    head = token.rstrip("0123456789")
    return f"{_PARAM_LATEX[head]}_{{{token[len(head):]}}}"


def _factor_plain(gen: Generator, exp: int) -> str:
    tok = gen.token()
    return tok if exp == 1 else f"{tok}^{exp}"


def _factor_latex(gen: Generator, exp: int) -> str:
    tex = _gen_latex(gen)
    if exp == 1:
        return tex
    return f"({tex})^{{{exp}}}"


def _coeff_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return rf"{sign}\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def format_monomial(mono: Monomial, style: str = "plain") -> str:
    if mono.is_unit():
        return "1"
    if style == "latex":
        return " ".join(_factor_latex(g, e) for g, e in mono.exps)
    return "*".join(_factor_plain(g, e) for g, e in mono.exps)


def format_poly(poly: DiffPoly, style: str = "plain") -> str:
    if style == "json":
        return poly_to_json(poly)
    if not poly.terms:
        return "0"
    parts: list[str] = []
    for mono in poly.monomials():
        q = poly.terms[mono]
        mag = abs(q)
        body = format_monomial(mono, style)
        if mono.is_unit():
            chunk = _coeff_latex(mag) if style == "latex" else str(mag)
        elif mag == 1:
            chunk = body
        elif style == "latex":
            chunk = f"{_coeff_latex(mag)}{body}"
        else:
            chunk = f"{mag}*{body}"
        if not parts:
            parts.append(chunk if q > 0 else f"-{chunk}")
        else:
            parts.append(f"+ {chunk}" if q > 0 else f"- {chunk}")
    return " ".join(parts)


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_to_dict(poly: DiffPoly) -> dict:
    terms = []
    for mono in poly.monomials():
        terms.append(
            {
                "monomial": [[g.token(), e] for g, e in mono.exps],
                "coeff": _fraction_str(poly.terms[mono]),
            }
        )
    return {"ambientN": poly.n, "terms": terms}


def poly_to_json(poly: DiffPoly) -> str:
    return json.dumps(poly_to_dict(poly), separators=(",", ":"))


def poly_from_dict(data: dict) -> DiffPoly:
    from .parsing import _generator_from_token

    n = data["ambientN"]
    terms: dict[Monomial, Fraction] = {}
    for entry in data["terms"]:
        mono = Monomial(
            (_generator_from_token(tok, 0), exp) for tok, exp in entry["monomial"]
        )
        terms[mono] = Fraction(entry["coeff"])
    return DiffPoly(n, terms)


def poly_from_json(text: str) -> DiffPoly:
    return poly_from_dict(json.loads(text))


# -- operators ---------------------------------------------------------------


def format_operator(op, style: str = "plain") -> str:
    if style == "json":
        return operator_to_json(op)
    if not op.coeffs:
        return "0"
    parts: list[str] = []
    for order in sorted(op.coeffs, reverse=True):
        coeff = op.coeffs[order]
        if style == "latex":
            dsym = "" if order == 0 else (r"\del" if order == 1 else rf"\del^{{{order}}}")
        else:
            dsym = "" if order == 0 else ("d" if order == 1 else f"d^{order}")
        body = format_poly(coeff, style)
        if order == 0:
            parts.append(f"({body})" if " " in body else body)
        elif coeff == DiffPoly.constant(op.n, 1):
            parts.append(dsym)
        else:
            wrap = f"({body})" if (" " in body or "*" in body) else body
            parts.append(f"{wrap}*{dsym}" if style == "plain" else f"{wrap}{dsym}")
    return " + ".join(parts)


def operator_to_dict(op) -> dict:
    return {
        "ambientN": op.n,
        "coeffs": {str(i): poly_to_dict(op.coeffs[i]) for i in sorted(op.coeffs)},
    }


def operator_to_json(op) -> str:
    return json.dumps(operator_to_dict(op), separators=(",", ":"))


def operator_from_dict(data: dict):
    from .diffop import DiffOperator

    n = data["ambientN"]
    coeffs = {int(i): poly_from_dict(d) for i, d in data["coeffs"].items()}
    return DiffOperator(n, coeffs)
