import pytest

from nfoldsusy import (
    AmbientMismatchError,
    DiffPoly,
    InhomogeneousError,
    Monomial,
    Substitution,
    ZeroPolynomialError,
    parse,
    replace_constants,
)
from nfoldsusy.diffring import c, w


def P(s, n=2):
    return parse(s, n)


def test_additive_identity_and_inverse():
    w1 = P("w1")
    assert w1 + DiffPoly.zero(2) == w1
    assert (w1 + (-1) * w1).is_zero()


def test_like_term_merge():
    assert P("2*w1*w0") + P("3*w1*w0") == P("5*w1*w0")


def test_multiplicative_identity_and_square():
    assert P("w1") * P("w1") == P("w1^2")
    assert DiffPoly.constant(2, 1) * P("w1 + w0") == P("w1 + w0")


def test_ambient_mismatch_raises():
    with pytest.raises(AmbientMismatchError):
        parse("w1", 2) + parse("w1", 3)
    with pytest.raises(AmbientMismatchError):
        parse("w1", 2) * parse("w1", 3)


def test_weights():
    # for the twofold system, w1 carries weight 1 and each prime adds one
    assert P("w1^2*w1'").weight() == 4
    assert P("2*w1*w1'' - w1'^2 + 4*w1^2*u0").weight() == 4
    assert parse("C1", 2).weight() == 4
    assert parse("alpha0", 2).weight() == 0
    assert parse("V+''", 2).weight() == 4


def test_weight_of_inhomogeneous_lists_offenders():
    with pytest.raises(InhomogeneousError) as err:
        P("w1 + w1^2").weight()
    assert len(err.value.offenders) == 2


def test_weight_of_zero_polynomial():
    with pytest.raises(ZeroPolynomialError):
        DiffPoly.zero(2).weight()


def test_derive_basics():
    assert P("w1").derive() == P("w1'")
    assert parse("C1", 2).derive().is_zero()
    assert parse("alpha0", 2).derive().is_zero()
    assert P("w1*w0").derive() == P("w1'*w0 + w1*w0'")


def test_derive_raises_weight_by_one():
    p = P("w1^2*w0")
    assert p.derive().weight() == p.weight() + 1


def test_substitute_twofold_ansatz_image():
    # w0 -> u0 + w1'/2 - alpha0 w1^2 with the parameter kept symbolic
    sub = Substitution(2, {w(0): P("u0 + 1/2*w1' - alpha0*w1^2")})
    assert sub.apply(P("w0")) == P("u0 + 1/2*w1' - alpha0*w1^2")
    # derivative orders extend through the derivation
    assert sub.apply(P("w0'")) == P("u0 + 1/2*w1' - alpha0*w1^2").derive()


def test_identity_substitution():
    sub = Substitution(2, {})
    p = P("w1''*w0 - 3*u0^2")
    assert sub.apply(p) == p


def test_substitution_on_eliminated_constraint_gives_transformed_one():
    sub = Substitution(2, {w(0): P("u0 + 1/2*w1' - alpha0*w1^2")})
    cleared = P("w1''' - w1*w1'' - 2*w1'^2 + 4*w1'*w0 + 2*w1*w0' - 2*w1^2*w1'")
    expected = P("w1''' + 4*w1'*u0 + 2*w1*u0' - 2*(4*alpha0 + 1)*w1^2*w1'")
    assert sub.apply(cleared) == expected


def test_substitution_weight_preserving_check():
    good = Substitution(2, {w(0): P("u0 + 1/2*w1' - alpha0*w1^2")})
    assert good.is_weight_preserving()
    bad = Substitution(2, {w(0): P("w1")})  # weight 1 into a weight-2 slot
    assert not bad.is_weight_preserving()


def test_substitution_rejects_nonconstant_constant_images():
    with pytest.raises(ValueError):
        Substitution(2, {c(1): P("w1'")})


def test_replace_constants():
    p = P("16*C1 + C1*w1")
    out = replace_constants(p, {c(1): P("w1^2*u0")})
    assert out == P("16*w1^2*u0 + w1^3*u0")


def test_monomial_division():
    a = P("w1^2*w1'").leading_monomial()
    b = P("w1*w1'").leading_monomial()
    assert b.divides(a)
    assert a / b == Monomial.of(w(1))


def test_homogeneous_part():
    p = P("w1 + w1^2 + u0")
    assert p.homogeneous_part(2) == P("w1^2 + u0")


def test_pow():
    p = P("w1 + 1")
    assert p**0 == DiffPoly.constant(2, 1)
    assert p**3 == p * p * p
