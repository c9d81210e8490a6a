"""The one-parameter solvable deformation family, fully symbolically.

The family is holomorphically parallelizable at the centre; for every
parameter value the diagonal metric is balanced, no invariant metric is
pluriclosed, and the degree-1 Gauduchon scalar is strictly positive.
"""

from fractions import Fraction

from invarforms.algebra import exterior_d, parse_form, del_bar, del_hol
from invarforms.catalog import load_catalog
from invarforms.feasibility import (build_ansatz, forced_zero_unknowns,
                                    k_gauduchon_scalar, residual_pluriclosed)
from invarforms.scalars import Scalar

nak = load_catalog("nakamura")
print("structure equations (parameter t):")
for j in (1, 2, 3):
    print(f"  d phi{j} = {nak.d_of_generator(j)}")

an = build_ansatz(nak, "pluriclosed")
print()
print("generic Hermitian form:")
print(f"  omega = {an.Omega}")

ddb = del_hol(nak, del_bar(nak, an.Omega))
print()
print("ddbar(omega), symbolically in t and the metric coefficients:")
for mono, coeff in sorted(ddb.terms.items()):
    print(f"  [{mono}] {coeff}")

top = ddb.wedge(an.Omega).top_coefficient()
print()
print(f"top coefficient of ddbar(omega)^omega:\n  {top}")

one = Scalar.const(1, an.reg)
t = Scalar.var("t", an.reg)
forced = forced_zero_unknowns(residual_pluriclosed(nak, an.Omega),
                              an.structure_names(), nonzero_exprs=[one + t, one - t])
print()
print(f"pluriclosed condition forces these coefficients to vanish: {sorted(forced)}")
print("(the diagonal ones are positive, so no invariant metric is pluriclosed)")

om = parse_form("i*(phi1^cphi1 + phi2^cphi2 + phi3^cphi3)", nak.frame)
print()
print(f"balanced witness: d(omega_0^2) = {exterior_d(nak, om.wedge_power(2))}")
for tv in (Fraction(1, 2), Fraction(-1, 3)):
    spec_t = nak.instantiate({"t": tv})
    c = k_gauduchon_scalar(spec_t, om, 1)
    print(f"degree-1 Gauduchon scalar at t = {tv}: {c}")
