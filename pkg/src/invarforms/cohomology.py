"""Exact cohomology of the invariant complexes and derived predicates.

de Rham / Morse-Novikov dimensions come from exact ranks of the (twisted)
differential; Dolbeault, Bott-Chern, and Aeppli tables live on the bidegree
decomposition of a complex frame.  Predicates (the ddbar lemma, injectivity
of the Bott-Chern comparison map, the weak lemma on real forms, and the
degree-sum defects) are decided by exact subspace arithmetic; the weak lemma
works over the reals by splitting Gaussian-rational coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraSpec, del_bar, del_hol, exterior_d
from .forms import COMPLEX_FRAME, Form, basis_monomials, bidegree_monomials
from .linalg import (nullspace, rank, subspace_intersection, subspace_le)
from .operators import OperatorMatrix, form_to_vector, matrix_of, twisted_d
from .scalars import GR_ONE, GR_ZERO, GaussRat

THEORIES = ("deRham", "dolbeault", "bottChern", "aeppli", "morseNovikov")


class CohomologyError(ValueError):
    pass


@dataclass
class CohomologyReport:
    theory: str
    table: dict       # k -> dim, or (p, q) -> dim
    theta: Form | None = None
    notes: list[str] = field(default_factory=list)

    def total(self, k: int) -> int:
        if self.theory in ("deRham", "morseNovikov"):
            return self.table.get(k, 0)
        return sum(d for (p, q), d in self.table.items() if p + q == k)

    def as_sorted_items(self) -> list[tuple[str, int]]:
        if self.theory in ("deRham", "morseNovikov"):
            return [(str(k), v) for k, v in sorted(self.table.items())]
        return [(f"{p},{q}", v) for (p, q), v in sorted(self.table.items())]


def _require_constant(spec: AlgebraSpec) -> None:
    for f in spec.d_table.values():
        if not f.is_constant():
            raise CohomologyError("cohomology needs fully instantiated structure constants; "
                                  "symbolic parameters remain")


def _bidegree_operator(spec: AlgebraSpec, which: str, p: int, q: int) -> OperatorMatrix:
    fr = spec.frame
    if which == "del":
        fn, dst = (lambda f: del_hol(spec, f)), (p + 1, q)
    elif which == "delbar":
        fn, dst = (lambda f: del_bar(spec, f)), (p, q + 1)
    else:
        raise CohomologyError(which)
    src_b = bidegree_monomials(fr, p, q)
    dst_b = bidegree_monomials(fr, *dst) if 0 <= dst[0] <= fr.n and 0 <= dst[1] <= fr.n else []
    return matrix_of(fn, fr, src_b, dst_b)


def _ddbar_operator(spec: AlgebraSpec, p: int, q: int) -> OperatorMatrix:
    fr = spec.frame
    src_b = bidegree_monomials(fr, p, q)
    dst_b = bidegree_monomials(fr, p + 1, q + 1) if p + 1 <= fr.n and q + 1 <= fr.n else []
    return matrix_of(lambda f: del_hol(spec, del_bar(spec, f)), fr, src_b, dst_b)


def _column_vectors(m: OperatorMatrix) -> list[list[GaussRat]]:
    return [[m.entries[i][j] for i in range(len(m.dst_basis))]
            for j in range(len(m.src_basis))]


def cohomology_dims(spec: AlgebraSpec, theory: str, theta: Form | None = None) -> CohomologyReport:
    if theory not in THEORIES:
        raise CohomologyError(f"unknown theory {theory!r}; expected one of {THEORIES}")
    _require_constant(spec)
    fr = spec.frame
    if theory in ("deRham", "morseNovikov"):
        if theory == "morseNovikov":
            if theta is None:
                raise CohomologyError("morseNovikov needs a twisting 1-form")
            if not exterior_d(spec, theta).is_zero():
                raise CohomologyError("theta must be d-closed")
        else:
            theta = Form.zero(fr)
        table = {}
        mats = [matrix_of(lambda f: twisted_d(spec, theta, f, 1), fr,
                          basis_monomials(fr, k), basis_monomials(fr, k + 1))
                for k in range(fr.dim + 1)]
        for k in range(fr.dim + 1):
            dim_k = len(basis_monomials(fr, k))
            rk = mats[k].rank()
            rk_prev = mats[k - 1].rank() if k else 0
            table[k] = dim_k - rk - rk_prev
        return CohomologyReport(theory, table, theta=theta if theory == "morseNovikov" else None)

    if fr.kind != COMPLEX_FRAME:
        raise CohomologyError(f"{theory} needs a complex frame")

    table = {}
    for p in range(fr.n + 1):
        for q in range(fr.n + 1):
            dim_pq = len(bidegree_monomials(fr, p, q))
            if theory == "dolbeault":
                dbar = _bidegree_operator(spec, "delbar", p, q)
                prev = _bidegree_operator(spec, "delbar", p, q - 1) if q else None
                table[(p, q)] = dim_pq - dbar.rank() - (prev.rank() if prev else 0)
            elif theory == "bottChern":
                dhol = _bidegree_operator(spec, "del", p, q)
                dbar = _bidegree_operator(spec, "delbar", p, q)
                stacked = dhol.entries + dbar.entries
                kdim = dim_pq - (rank(stacked) if stacked else 0)
                img = _ddbar_operator(spec, p - 1, q - 1).rank() if p and q else 0
                table[(p, q)] = kdim - img
            else:  # aeppli
                ddb = _ddbar_operator(spec, p, q)
                kdim = dim_pq - ddb.rank()
                gens: list[list[GaussRat]] = []
                if p:
                    gens += _column_vectors(_bidegree_operator(spec, "del", p - 1, q))
                if q:
                    gens += _column_vectors(_bidegree_operator(spec, "delbar", p, q - 1))
                img = rank(gens) if gens else 0
                table[(p, q)] = kdim - img
    return CohomologyReport(theory, table)


def betti_numbers(spec: AlgebraSpec) -> dict[int, int]:
    return cohomology_dims(spec, "deRham").table


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def ddbar_lemma_check(spec: AlgebraSpec) -> tuple[dict[tuple[int, int], bool], bool]:
    """Per-(p,q): ker del ∩ ker delbar ∩ (im del + im delbar) ⊆ im del delbar."""
    _require_constant(spec)
    fr = spec.frame
    if fr.kind != COMPLEX_FRAME:
        raise CohomologyError("ddbar lemma needs a complex frame")
    out: dict[tuple[int, int], bool] = {}
    for p in range(fr.n + 1):
        for q in range(fr.n + 1):
            dim_pq = len(bidegree_monomials(fr, p, q))
            if dim_pq == 0:
                out[(p, q)] = True
                continue
            dhol = _bidegree_operator(spec, "del", p, q)
            dbar = _bidegree_operator(spec, "delbar", p, q)
            stacked = dhol.entries + dbar.entries
            closed = nullspace(stacked, GR_ZERO, GR_ONE) if stacked else \
                [[GR_ONE if i == j else GR_ZERO for j in range(dim_pq)] for i in range(dim_pq)]
            gens: list[list[GaussRat]] = []
            if p:
                gens += _column_vectors(_bidegree_operator(spec, "del", p - 1, q))
            if q:
                gens += _column_vectors(_bidegree_operator(spec, "delbar", p, q - 1))
            inter = subspace_intersection(closed, gens, GR_ZERO, GR_ONE) if gens else []
            img = _column_vectors(_ddbar_operator(spec, p - 1, q - 1)) if p and q else []
            out[(p, q)] = subspace_le(inter, img)
    return out, all(out.values())


def bc_to_dolbeault_injectivity(spec: AlgebraSpec, p: int, q: int) -> bool:
    """ker del ∩ ker delbar ∩ im delbar ⊆ im del delbar on (p,q)-forms."""
    _require_constant(spec)
    fr = spec.frame
    dim_pq = len(bidegree_monomials(fr, p, q))
    if dim_pq == 0:
        return True
    dhol = _bidegree_operator(spec, "del", p, q)
    dbar = _bidegree_operator(spec, "delbar", p, q)
    stacked = dhol.entries + dbar.entries
    closed = nullspace(stacked, GR_ZERO, GR_ONE) if stacked else \
        [[GR_ONE if i == j else GR_ZERO for j in range(dim_pq)] for i in range(dim_pq)]
    dbar_img = _column_vectors(_bidegree_operator(spec, "delbar", p, q - 1)) if q else []
    inter = subspace_intersection(closed, dbar_img, GR_ZERO, GR_ONE) if dbar_img else []
    img = _column_vectors(_ddbar_operator(spec, p - 1, q - 1)) if p and q else []
    return subspace_le(inter, img)


def _split_real(vec: Sequence[GaussRat]) -> list[Fraction]:
    out: list[Fraction] = []
    for c in vec:
        out.append(c.re)
        out.append(c.im)
    return out


def _complex_span_real(vectors: list[list[GaussRat]]) -> list[list[Fraction]]:
    out = []
    for v in vectors:
        out.append(_split_real(v))
        out.append(_split_real([GaussRat(Fraction(0), Fraction(1)) * c for c in v]))
    return out


def weak_ddbar_check(spec: AlgebraSpec) -> bool:
    """Weak lemma in bidegree (n-1, n): for real (n-1,n-1)-forms alpha with
    delbar(alpha) del-exact, delbar(alpha) lies in i*del*delbar of (n-2,n-1)-forms.

    The reality constraint makes this a real-linear condition, so the test
    runs over the rationals after splitting real and imaginary coordinates.
    """
    _require_constant(spec)
    fr = spec.frame
    if fr.kind != COMPLEX_FRAME:
        raise CohomologyError("weak ddbar lemma needs a complex frame")
    n = fr.n
    target_basis = bidegree_monomials(fr, n - 1, n)
    real_gens: list[list[Fraction]] = []
    for m in bidegree_monomials(fr, n - 1, n - 1):
        x = Form.monomial(fr, m)
        for alpha in (x + x.conjugate(), (x - x.conjugate()).scaled(GaussRat(Fraction(0), Fraction(1)))):
            img = del_bar(spec, alpha)
            real_gens.append(_split_real(form_to_vector(img, target_basis)))
    del_img = _column_vectors(_bidegree_operator(spec, "del", n - 2, n))
    ddb_img = _column_vectors(_ddbar_operator(spec, n - 2, n - 1))
    inter = subspace_intersection(real_gens, _complex_span_real(del_img),
                                  Fraction(0), Fraction(1)) if del_img else []
    return subspace_le(inter, _complex_span_real(ddb_img))


def delta_degree(spec: AlgebraSpec, k: int, verbose: bool = False) -> int | tuple[int, int]:
    """Degree-k defect: sum of Bott-Chern and Aeppli dimensions minus 2 b_k.

    ``verbose`` also returns the variant normalized with a single b_k.
    """
    bc = cohomology_dims(spec, "bottChern")
    ae = cohomology_dims(spec, "aeppli")
    b = betti_numbers(spec)[k]
    s = bc.total(k) + ae.total(k)
    if verbose:
        return s - 2 * b, s - b
    return s - 2 * b


def abelian_degeneracies(spec: AlgebraSpec) -> tuple[bool, bool]:
    """For abelian structures: del kills (n-1,n) and del delbar kills (n-2,n-1)."""
    fr = spec.frame
    n = fr.n
    return (_bidegree_operator(spec, "del", n - 1, n).is_zero(),
            _ddbar_operator(spec, n - 2, n - 1).is_zero())
