"""Exact exterior calculus on an invariant co-frame, from the ground up.

Builds the scalar ring and the exterior algebra, parses structure equations,
and verifies the first conformally-closed metric by hand.
"""

from fractions import Fraction

from invarforms.algebra import exterior_d, parse_complex_dsl, parse_form, parse_salamon, validate_spec
from invarforms.catalog import load_catalog
from invarforms.forms import Form
from invarforms.scalars import ParamRegistry, Scalar

print("== scalars: Gaussian-rational polynomials with a conjugation involution ==")
reg = ParamRegistry().with_complex("t").with_real("g", positive=True)
t = Scalar.var("t", reg)
p = t * t.conj() + 3 * Scalar.var("g", reg)
print(f"p          = {p}")
print(f"conj(p)    = {p.conj()}   (real: {p.is_real()})")
print(f"p at t=1+2i: {p.evaluate({'t': __import__('invarforms.scalars', fromlist=['GaussRat']).GaussRat(Fraction(1), Fraction(2))})}")

print()
print("== forms: canonical monomials, sorting signs, conjugation ==")
spec = load_catalog("h3_Jplus")
fr = spec.frame
w = Form.gen(fr, 1).wedge(Form.gen(fr, 2)).wedge(Form.gen(fr, 4).wedge(Form.gen(fr, 5)))
print(f"(phi1^phi2)^(cphi1^cphi2) = {w}")
print(f"conj(phi1)                = {Form.gen(fr, 1).conjugate()}")

print()
print("== structure equations: three input formats ==")
print("Salamon tuple:", parse_salamon("(0,0,0,0,0,12+34)").name or "(0,0,0,0,0,12+34)")
dsl = parse_complex_dsl("""
frame complex 3
d phi1 = 0
d phi2 = 0
d phi3 = phi1^cphi1 + phi2^cphi2
""")
rep = validate_spec(dsl)
print(f"complex frame flags: jacobi={rep.jacobi_valid} integrable={rep.integrable} "
      f"nilpotent={rep.nilpotent} abelian={rep.abelian_J}")

print()
print("== the nilpotent lcK fixture: d(omega) = theta ^ omega exactly ==")
om = parse_form("i*(phi1^cphi1 + phi2^cphi2 + phi3^cphi3)", fr)
th = parse_form("phi3 + cphi3", fr)
print(f"omega      = {om}")
print(f"d(omega)   = {exterior_d(spec, om)}")
print(f"theta^omega= {th.wedge(om)}")
print(f"residual   = {exterior_d(spec, om) - th.wedge(om)}")
