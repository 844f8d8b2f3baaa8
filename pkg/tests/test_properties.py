"""Randomized algebraic property suites, 1000 cases each with fixed seeds."""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from nfoldsusy import (
    DiffPoly,
    Decomposition,
    antiderivative,
    format_poly,
    parse,
    poly_from_json,
    poly_to_json,
    transformed_conditions,
)
from randgen import (
    default_pool,
    random_homogeneous,
    random_operator,
    random_poly,
    random_substitution,
)

CASES = 1000


def test_ring_axioms():
    rng = random.Random(101)
    for _ in range(CASES):
        n = rng.choice((2, 3, 4))
        a, b, c = (random_poly(rng, n) for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_derivation_linearity_and_leibniz():
    rng = random.Random(102)
    for _ in range(CASES):
        n = rng.choice((2, 3, 4))
        a, b = random_poly(rng, n), random_poly(rng, n)
        q = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        assert (a + b * q).derive() == a.derive() + b.derive() * q
        assert (a * b).derive() == a.derive() * b + a * b.derive()


def test_derive_raises_weight_by_one():
    rng = random.Random(103)
    for _ in range(CASES):
        n = rng.choice((2, 3, 4))
        p = random_homogeneous(rng, n)
        dp = p.derive()
        if dp:
            assert dp.weight() == p.weight() + 1


def test_substitute_commutes_with_derive():
    rng = random.Random(104)
    for _ in range(CASES):
        n = rng.choice((2, 3))
        p = random_poly(rng, n)
        sub = random_substitution(rng, n)
        assert sub.apply(p.derive()) == sub.apply(p).derive()


def test_weight_preserving_substitution_preserves_weight():
    rng = random.Random(105)
    from nfoldsusy.susy import ansatz_substitution

    subs = {n: ansatz_substitution(n) for n in (2, 3, 4)}
    for _ in range(CASES):
        n = rng.choice((2, 3, 4))
        p = random_homogeneous(rng, n, pool=[g for g in default_pool(n) if g.family.name == "W"])
        image = subs[n].apply(p)
        if image:
            assert image.weight() == p.weight()


def test_transpose_involution_and_antimultiplicativity():
    rng = random.Random(106)
    for _ in range(CASES):
        n = rng.choice((2, 3))
        a = random_operator(rng, n, max_deriv=1)
        b = random_operator(rng, n, max_deriv=1)
        assert a.transpose().transpose() == a
        assert (a * b).transpose() == b.transpose() * a.transpose()


def test_composition_associativity():
    rng = random.Random(107)
    for _ in range(CASES):
        n = rng.choice((2, 3))
        a, b, c = (random_operator(rng, n, max_order=3, max_deriv=1) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_antiderivative_round_trip():
    rng = random.Random(108)
    done = 0
    while done < CASES:
        n = rng.choice((2, 3, 4))
        p = random_homogeneous(rng, n)
        # strip derivation constants: they are invisible to the derivation
        p = DiffPoly(n, {m: q for m, q in p.terms.items() if not m.is_constant()})
        if not p:
            continue
        dec = antiderivative(p.derive())
        assert dec is not None
        assert dec.antiderivative == p
        done += 1


def test_certificate_re_expansion():
    rng = random.Random(109)
    cs = {n: transformed_conditions(n, "paper") for n in (2, 3, 4)}
    for _ in range(CASES):
        n = rng.choice((2, 3, 4))
        conditions = list(cs[n].items())
        mults = []
        target = DiffPoly.zero(n)
        for j, cond in conditions:
            if rng.random() < 0.5:
                continue
            m = rng.randint(0, 1)
            factor = random_poly(rng, n, max_terms=2, max_deriv=1)
            if not factor:
                continue
            mults.append(((j, m), factor))
            target = target + factor * cond.derive(m)
        dec = Decomposition(
            "ideal-member",
            target,
            multipliers=tuple(mults),
            conditions=tuple(conditions),
        )
        assert dec.expansion() == target


def test_canonical_serialization_of_equal_polynomials():
    rng = random.Random(110)
    for _ in range(CASES):
        n = rng.choice((2, 3, 4))
        p = random_poly(rng, n, max_terms=4)
        items = list(p.terms.items())
        rng.shuffle(items)
        rebuilt = DiffPoly.zero(n)
        for mono, coeff in items:
            rebuilt = rebuilt + DiffPoly.monomial(n, mono, coeff)
        assert rebuilt == p
        assert poly_to_json(rebuilt) == poly_to_json(p)
        assert format_poly(rebuilt) == format_poly(p)


# -- parser round trip through hypothesis ---------------------------------------

_tokens = st.sampled_from(
    ["w1", "w0", "u0", "w1'", "w1''", "u0'", "V+", "V-", "C0", "C1", "alpha0"]
)
_coeffs = st.integers(min_value=-30, max_value=30), st.integers(min_value=1, max_value=12)


@st.composite
def expressions(draw):
    terms = []
    for _ in range(draw(st.integers(min_value=1, max_value=4))):
        num = draw(_coeffs[0])
        den = draw(_coeffs[1])
        factors = draw(st.lists(_tokens, min_size=1, max_size=3))
        power = draw(st.integers(min_value=1, max_value=3))
        head = f"{num}/{den}"
        body = "*".join(factors[:-1] + [f"{factors[-1]}^{power}"])
        terms.append(f"{head}*{body}")
    return " + ".join(terms)


@given(expressions())
@settings(max_examples=1000, deadline=None)
def test_parse_format_round_trip(expr):
    p = parse(expr, 2)
    assert parse(format_poly(p), 2) == p
    assert poly_from_json(poly_to_json(p)) == p
