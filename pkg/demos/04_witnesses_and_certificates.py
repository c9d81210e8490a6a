"""Existence by witness, nonexistence by certificate.

The search half re-verifies closed-form witnesses exactly; the refutation
half replays machine-checkable contradiction proofs against the residual
systems of generic ansatze.
"""

from fractions import Fraction

from invarforms.catalog import load_catalog
from invarforms.certificates import (certificate_check, check_certificate,
                                     load_certificate, shipped_certificate_names)
from invarforms.feasibility import build_ansatz, residual_conformal, witness_search
from invarforms.library import witness_candidates
from invarforms.scalars import GaussRat

print("== witnesses on the compact complex surfaces ==")
for name, mode, params in [
    ("kodaira_primary", "lcK", {}),
    ("inoue_SM", "lcK", {"alpha": Fraction(1), "beta": Fraction(2)}),
    ("inoue_Spm", "lcht", {"q": Fraction(1)}),
]:
    spec = load_catalog(name, **params)
    an = build_ansatz(spec, mode)
    w = witness_search(spec, an, budget=50, seed=0,
                       suggested=witness_candidates(spec, an, {
                           k: GaussRat.of(v) for k, v in params.items()}))
    print(f"{name} {params or ''} [{mode}]: {w.as_strings()}  theta = {w.theta}")

print()
print("== the residual system behind a refutation ==")
h3m = load_catalog("h3_Jminus")
an = build_ansatz(h3m, "lcht", reduce_offdiag=True)
print(f"twist closedness forces: {an.closedness_notes}")
system = residual_conformal(h3m, an.Omega, an.theta, 1)
for entry in system.entries:
    if entry.label in ("1-3-c1", "2-3-c2", "1-3-c3", "2-3-c3"):
        print(f"  [{entry.label}] {entry.poly} = 0")

print()
print("== shipped certificates, re-validated from scratch ==")
for name in shipped_certificate_names():
    res = check_certificate(load_certificate(name))
    print(f"  {name:32s} {'VALID' if res.valid else 'INVALID'}")

print()
print("== a corrupted coefficient is always caught ==")
cert = load_certificate("h3_Jminus_lcht")
cert["tree"]["nonzero"]["terms"][0][0] = "2*c"   # tamper with a combination
res = check_certificate(cert)
print(f"tampered h3 J- proof: {'VALID' if res.valid else 'INVALID'} ({res.failure})")
