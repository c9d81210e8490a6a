"""Exact linear algebra over the Gaussian rationals (and plain rationals).

Kernels, solves, and subspace arithmetic use ordinary exact Gauss-Jordan
elimination; ranks go through fraction-free Bareiss elimination, which also
works for matrices of symbolic Scalar entries via exact polynomial division.
No numerical thresholds anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, TypeVar

from .scalars import GR_ONE, GR_ZERO, GaussRat, Scalar

T = TypeVar("T")

Matrix = list[list[T]]


def mat_copy(m: Sequence[Sequence[T]]) -> Matrix:
    return [list(row) for row in m]


def identity(nrows: int, zero: T, one: T) -> Matrix:
    return [[one if i == j else zero for j in range(nrows)] for i in range(nrows)]


def rref(m: Sequence[Sequence[T]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    a = mat_copy(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv_pivot = a[r][c]
        a[r] = [x / inv_pivot for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(m: Sequence[Sequence[T]]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[T]], zero: T, one: T) -> list[list[T]]:
    """Basis of the right kernel {x : m x = 0}; vectors of length ncols."""
    if not m:
        return []
    ncols = len(m[0])
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence[T]], b: Sequence[T], zero: T) -> list[T] | None:
    """One solution of m x = b (free variables set to zero), or None."""
    if not m:
        return [] if not any(b) else None
    ncols = len(m[0])
    aug = [list(row) + [bv] for row, bv in zip(m, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def row_space_basis(m: Sequence[Sequence[T]]) -> Matrix:
    red, pivots = rref(m)
    return [red[i] for i in range(len(pivots))]


def subspace_dim(vectors: Sequence[Sequence[T]]) -> int:
    return rank(list(vectors)) if vectors else 0


def subspace_le(inner: Sequence[Sequence[T]], outer: Sequence[Sequence[T]]) -> bool:
    """span(inner) <= span(outer) by an exact rank test."""
    inner = [v for v in inner if any(v)]
    if not inner:
        return True
    outer = list(outer)
    return rank(outer) == rank(outer + list(inner))


def subspace_intersection(u: Sequence[Sequence[T]], v: Sequence[Sequence[T]],
                          zero: T, one: T) -> list[list[T]]:
    """Basis of span(u) ∩ span(v); u, v are lists of spanning vectors."""
    u = [w for w in u if any(w)]
    v = [w for w in v if any(w)]
    if not u or not v:
        return []
    ncols = len(u[0])
    # columns: coefficients on u followed by coefficients on v
    stacked = [[(u[j][c] if j < len(u) else -v[j - len(u)][c]) for j in range(len(u) + len(v))]
               for c in range(ncols)]
    out = []
    for combo in nullspace(stacked, zero, one):
        vec = [zero] * ncols
        for j, a in enumerate(combo[:len(u)]):
            if a:
                vec = [x + a * y for x, y in zip(vec, u[j])]
        if any(vec):
            out.append(vec)
    return row_space_basis(out) if out else []


# ---------------------------------------------------------------------------
# Fraction-free rank (Bareiss), usable for symbolic Scalar matrices
# ---------------------------------------------------------------------------

def _exact_quot(num: T, den: T) -> T:
    if isinstance(num, Scalar):
        return num.exact_div(den)
    return num / den


def rank_bareiss(m: Sequence[Sequence[T]], one: T) -> int:
    """Rank by fraction-free (Bareiss) elimination over an integral domain."""
    a = mat_copy(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = one
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pivot = a[r][c]
        for i in range(r + 1, nrows):
            fi = a[i][c]
            for j in range(ncols):
                a[i][j] = _exact_quot(pivot * a[i][j] - fi * a[r][j], prev)
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r


def gauss_zero() -> GaussRat:
    return GR_ZERO


def gauss_one() -> GaussRat:
    return GR_ONE


def frac_zero() -> Fraction:
    return Fraction(0)


def frac_one() -> Fraction:
    return Fraction(1)
