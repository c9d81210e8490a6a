"""Property-based checks for the algebraic substrate."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from invarforms.algebra import parse_salamon, to_salamon, validate_spec
from invarforms.forms import COMPLEX_FRAME, Form, Frame, basis_monomials
from invarforms.scalars import GaussRat, ParamRegistry, Scalar

REG = ParamRegistry().with_complex("t").with_real("g")

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
gauss = st.builds(GaussRat, rationals, rationals)


def scalars():
    base = st.sampled_from([Scalar.var("t", REG), Scalar.var("t", REG, conjugated=True),
                            Scalar.var("g", REG)])
    consts = gauss.map(lambda c: Scalar.const(c, REG))

    def combine(children):
        return st.one_of(
            st.tuples(children, children).map(lambda ab: ab[0] + ab[1]),
            st.tuples(children, children).map(lambda ab: ab[0] * ab[1]),
            children.map(lambda a: -a),
        )
    return st.recursive(st.one_of(base, consts), combine, max_leaves=8)


@given(scalars(), scalars(), scalars())
@settings(max_examples=120, deadline=None)
def test_scalar_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a
    assert (a - a).is_zero() and not (a - a).terms


FR2 = Frame(COMPLEX_FRAME, 2)


def forms(degree):
    coeffs = gauss.map(lambda c: Scalar.const(c, REG))
    monos = st.sampled_from(basis_monomials(FR2, degree))
    term = st.tuples(monos, coeffs).map(lambda mc: Form.monomial(FR2, mc[0], mc[1]))
    return st.lists(term, max_size=4).map(
        lambda ts: sum(ts, Form.zero(FR2)))


@given(st.integers(0, 2), st.integers(0, 2), st.data())
@settings(max_examples=100, deadline=None)
def test_wedge_laws(p, q, data):
    a = data.draw(forms(p))
    b = data.draw(forms(q))
    sign = -1 if (p * q) % 2 else 1
    assert a.wedge(b) == b.wedge(a).scaled(sign)
    assert a.wedge(b).conjugate() == a.conjugate().wedge(b.conjugate())
    # no zero coefficients are ever stored
    for f in (a, b, a.wedge(b), a + b.scaled(-1) if p == q else a):
        assert all(not c.is_zero() for c in f.terms.values())


@given(st.lists(st.sampled_from(["0", "12", "13", "23", "12+34", "14-23"]),
               min_size=3, max_size=6))
@settings(max_examples=60, deadline=None)
def test_salamon_roundtrip(entries):
    # clip wedge indices to the tuple's dimension to keep entries well formed
    dim = len(entries)
    cleaned = []
    for e in entries:
        ok = e == "0" or all(1 <= int(ch) <= dim for part in
                             e.replace("-", "+").split("+") for ch in part)
        cleaned.append(e if ok else "0")
    text = "(" + ",".join(cleaned) + ")"
    spec = parse_salamon(text)
    assert to_salamon(spec) == text
    validate_spec(spec)  # must not raise, whatever the flags say
