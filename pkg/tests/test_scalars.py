import random
from fractions import Fraction

import pytest

from invarforms.expr import ExprError, parse_scalar, scalar_to_expr
from invarforms.scalars import (ConstraintError, GaussRat, ParamRegistry,
                                RegistryError, Scalar, random_scalar)


def reg_std():
    return (ParamRegistry()
            .with_complex("t")
            .with_complex("u", nonzero=True)
            .with_real("g", positive=True)
            .with_real("beta"))


def test_gauss_rat_field_ops():
    a = GaussRat(Fraction(1, 2), Fraction(3))
    b = GaussRat(Fraction(-2), Fraction(1, 5))
    assert (a * b) * a.inverse() == b * (a * a.inverse())
    assert a * a.inverse() == GaussRat(Fraction(1))
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    with pytest.raises(ZeroDivisionError):
        GaussRat().inverse()


def test_zero_normal_form():
    reg = reg_std()
    t = Scalar.var("t", reg)
    z = t - t
    assert z.is_zero()
    assert z.terms == {}
    assert z == Scalar.const(0)


def test_conjugation_involution_fixed_points():
    reg = reg_std()
    t, g = Scalar.var("t", reg), Scalar.var("g", reg)
    assert g.conj() == g
    assert t.conj() != t
    assert t.conj().conj() == t
    p = t * t.conj() + 3 * g
    assert p.is_real()
    assert p.real_part() == p
    assert p.imag_part().is_zero()


def test_randomized_ring_identities():
    # distributivity, associativity, conjugation multiplicativity
    rng = random.Random(20240809)
    reg = reg_std()
    for _ in range(1000):
        a = random_scalar(rng, reg)
        b = random_scalar(rng, reg)
        c = random_scalar(rng, reg)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert (a * b).conj() == a.conj() * b.conj()
        assert a.conj().conj() == a


def test_exact_division():
    rng = random.Random(7)
    reg = reg_std()
    for _ in range(200):
        a = random_scalar(rng, reg)
        b = random_scalar(rng, reg)
        if b.is_zero():
            continue
        assert (a * b).exact_div(b) == a
    t = Scalar.var("t", reg)
    with pytest.raises(ValueError):
        (t + 1).exact_div(t)


def test_evaluate_respects_constraints():
    reg = reg_std()
    p = Scalar.var("u", reg) * Scalar.var("g", reg)
    with pytest.raises(ConstraintError):
        p.evaluate({"u": 0})
    with pytest.raises(ConstraintError):
        p.evaluate({"g": -1})
    with pytest.raises(ConstraintError):
        p.evaluate({"g": GaussRat(Fraction(0), Fraction(1))})
    v = p.evaluate({"u": GaussRat(Fraction(1), Fraction(1)), "g": Fraction(2)})
    assert v == Scalar.const(GaussRat(Fraction(2), Fraction(2)))


def test_evaluate_assigns_conjugate_partner():
    reg = reg_std()
    t = Scalar.var("t", reg)
    p = t * t.conj()
    v = p.evaluate({"t": GaussRat(Fraction(1), Fraction(2))}).const_value()
    assert v == GaussRat(Fraction(5))  # |1 + 2i|^2


def test_expr_roundtrip():
    rng = random.Random(99)
    reg = reg_std()
    for _ in range(300):
        p = random_scalar(rng, reg)
        assert parse_scalar(scalar_to_expr(p), reg) == p


def test_expr_parser_errors():
    reg = reg_std()
    with pytest.raises(RegistryError):
        parse_scalar("nope + 1", reg)
    with pytest.raises(ExprError):
        parse_scalar("1/(2*t)", reg)   # division by a non-constant
    with pytest.raises(ExprError):
        parse_scalar("t + ", reg)
    assert parse_scalar("(1/2 - i)*t*conj(t) + g^2", reg) == \
        Scalar.const(GaussRat(Fraction(1, 2), Fraction(-1))) * Scalar.var("t", reg) \
        * Scalar.var("t", reg, conjugated=True) + Scalar.var("g", reg) ** 2


def test_registry_conflicts():
    reg = ParamRegistry().with_real("x")
    with pytest.raises(RegistryError):
        reg.with_complex("x")
    assert "x" in reg and "y" not in reg
