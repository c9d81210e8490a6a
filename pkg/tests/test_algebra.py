from fractions import Fraction

import pytest

from invarforms.algebra import (ParseError, exterior_d, parse_complex_dsl,
                                parse_salamon, spec_from_json,
                                spec_to_json, to_complex_dsl, to_salamon,
                                validate_spec)
from invarforms.catalog import catalog_names, load_catalog
from invarforms.forms import Bidegree, Form
from invarforms.scalars import GaussRat


def test_salamon_examples():
    spec = parse_salamon("(0,0,0,0,0,12+34)")
    d6 = spec.d_of_generator(6)
    assert d6 == (Form.monomial(spec.frame, (1, 2)) + Form.monomial(spec.frame, (3, 4)))
    assert validate_spec(spec).jacobi_valid

    trivial = parse_salamon("(0,0,0,0,0,0)")
    rep = validate_spec(trivial)
    assert rep.jacobi_valid and rep.unimodular and rep.nilpotent

    bad = parse_salamon("(0,12,13,23)")
    assert not validate_spec(bad).jacobi_valid
    # d^2 e4 = 2 e1^e2^e3, expanded by hand
    dd = exterior_d(bad, bad.d_of_generator(4))
    assert dd == Form.monomial(bad.frame, (1, 2, 3), 2)


def test_salamon_rationals_and_errors():
    spec = parse_salamon("(0,0,1/212)")
    assert spec.d_of_generator(3).coeff((1, 2)).const_value() == GaussRat(Fraction(1, 2))
    with pytest.raises(ParseError):
        parse_salamon("(0,0,0,0,0,0,0,0,0,0)")
    with pytest.raises(ParseError):
        parse_salamon("(0,0,19)")
    with pytest.raises(ParseError):
        parse_salamon("0,0,12")
    assert to_salamon(parse_salamon("(0,0,12,13,14-23)")) == "(0,0,12,13,14-23)"


def test_dsl_parse_and_errors():
    spec = parse_complex_dsl("""
frame complex 3
d phi1 = 0
d phi2 = 0
d phi3 = phi1^cphi1 + phi2^cphi2
""")
    assert spec.d_of_generator(3).coeff((1, 4)).const_value() == GaussRat(Fraction(1))
    with pytest.raises(ParseError):
        parse_complex_dsl("frame complex 3\nd phi3 = t*phi1^phi2\n")  # undeclared
    with pytest.raises(ParseError):
        parse_complex_dsl("frame complex 2\nd phi3 = phi1^phi2\n")    # index range
    with pytest.raises(ParseError):
        parse_complex_dsl("d phi1 = 0\n")                              # no header
    with pytest.raises(ParseError):
        parse_complex_dsl("frame complex 2\nd phi1 = phi1\n")          # wrong degree


def test_dsl_roundtrip():
    for name in ("h3_Jplus", "nakamura", "inoue_Spm", "class7"):
        spec = load_catalog(name)
        again = parse_complex_dsl(to_complex_dsl(spec))
        assert again.frame == spec.frame
        for g in range(1, spec.frame.n + 1):
            assert again.d_of_generator(g) == spec.d_of_generator(g)


def test_json_roundtrip():
    for name in ("h19minus_Jplus", "nakamura", "kodaira_primary"):
        spec = load_catalog(name)
        text = spec_to_json(spec)
        again = spec_from_json(text)
        assert spec_to_json(again) == text
        for g in range(1, spec.frame.n + 1):
            assert again.d_of_generator(g) == spec.d_of_generator(g)


def test_catalog_fixtures_all_validate():
    for name in catalog_names():
        spec = load_catalog(name)
        rep = validate_spec(spec)
        assert rep.ok, (name, rep.failures)


def test_catalog_flags():
    assert validate_spec(load_catalog("h8")).abelian_J
    assert validate_spec(load_catalog("h9")).abelian_J
    assert not validate_spec(load_catalog("h19minus_Jplus")).abelian_J
    nak = validate_spec(load_catalog("nakamura"))
    assert nak.jacobi_valid and nak.integrable and nak.unimodular and not nak.nilpotent
    for name in ("class1", "class2", "class3", "class4", "class5", "class6", "class7"):
        rep = validate_spec(load_catalog(name))
        assert rep.ok and not rep.nilpotent, name


def test_real_complex_conversion_consistency():
    # heis5xR with the standard complex structure is the h3 J+ coframe; the
    # abelian flag matches d(phi^j) having no (2,0) or (0,2) parts
    spec = load_catalog("heis5xR_Jplus")
    rep = validate_spec(spec)
    d3 = spec.d_of_generator(3)
    pure11 = d3 == d3.bidegree_project(Bidegree(1, 1))
    assert rep.abelian_J == pure11 == True


def test_instantiation_constraints():
    class1 = load_catalog("class1")
    with pytest.raises(ValueError):
        class1.instantiate({"A": GaussRat(Fraction(1, 2))})  # not on the circle
    ok = class1.instantiate({"A": GaussRat(Fraction(3, 5), Fraction(4, 5))})
    assert validate_spec(ok).ok
    with pytest.raises(ValueError):
        load_catalog("class3", A=GaussRat(Fraction(1)), s11=1)  # Re A * s11 != 0
    with pytest.raises(ValueError):
        load_catalog("class2", g=Fraction(-1))


def test_table_structure_equation_spot_checks():
    # evaluating the circle parameter at i gives d(phi1) = i w13 + i w1c3
    spec = load_catalog("class1", A=GaussRat(Fraction(0), Fraction(1)))
    d1 = spec.d_of_generator(1)
    assert d1.coeff((1, 3)).const_value() == GaussRat(Fraction(0), Fraction(1))
    assert d1.coeff((1, 6)).const_value() == GaussRat(Fraction(0), Fraction(1))
    # class (2): d(phi3) carries 1/2 on w12 and -i/2 on w2c1 at g = 1... the
    # coefficient of w2c1 is i/(4g)
    spec2 = load_catalog("class2", g=Fraction(1, 2))
    assert spec2.d_of_generator(3).coeff((2, 4)).const_value() == \
        GaussRat(Fraction(0), Fraction(1, 2))
    # class (7): d(phi2) has -i/2 on w2c1
    spec7 = load_catalog("class7")
    assert spec7.d_of_generator(2).coeff((2, 4)).const_value() == \
        GaussRat(Fraction(0), Fraction(-1, 2))
    # Inoue S+-: d(phi1) carries (q i / 2) on w2c2
    sp = load_catalog("inoue_Spm", q=Fraction(3))
    assert sp.d_of_generator(1).coeff((2, 4)).const_value() == \
        GaussRat(Fraction(0), Fraction(3, 2))
