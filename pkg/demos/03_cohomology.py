"""Invariant cohomology tables and the predicates built on them."""

from invarforms.algebra import parse_form
from invarforms.catalog import load_catalog
from invarforms.cohomology import (bc_to_dolbeault_injectivity, betti_numbers,
                                   cohomology_dims, ddbar_lemma_check,
                                   delta_degree, weak_ddbar_check)

t3 = load_catalog("torus(3)")
print("== torus: all theories agree with the binomial picture ==")
dol = cohomology_dims(t3, "dolbeault")
print("h^{p,q}:", {f"{p},{q}": v for (p, q), v in sorted(dol.table.items()) if v})
_, glob = ddbar_lemma_check(t3)
print(f"full ddbar lemma: {glob}")

print()
print("== the one-dimensional-center nilmanifold h8 ==")
h8 = load_catalog("h8")
print("betti:", betti_numbers(h8))
print("BC:   ", {f"{p},{q}": v for (p, q), v in sorted(cohomology_dims(h8, 'bottChern').table.items())})
print("degree defects ( sum h_BC + h_A - 2 b_k ):",
      [delta_degree(h8, k) for k in range(7)])
print(f"weak lemma in (2,2)->(2,3): {weak_ddbar_check(h8)}, "
      f"but the comparison map in (2,3) injective: {bc_to_dolbeault_injectivity(h8, 2, 3)}")

print()
print("== twisted cohomology vanishes on nilpotent algebras for nonzero twists ==")
h3 = load_catalog("h3")
for expr in ("e1", "e5", "e1 - e4"):
    th = parse_form(expr, h3.frame)
    rep = cohomology_dims(h3, "morseNovikov", th)
    print(f"H_theta for theta = {expr}: {rep.table}")
rep0 = cohomology_dims(h3, "morseNovikov", parse_form("0", h3.frame))
print(f"zero twist recovers de Rham: {rep0.table == betti_numbers(h3)}")
