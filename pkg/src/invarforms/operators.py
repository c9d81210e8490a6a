"""Exact operators: d, del/delbar, twisted differentials, Lefschetz sl(2), Hodge star.

All operators act on :class:`~invarforms.forms.Form` values and can be
materialized as exact matrices in the canonical monomial bases.  Conventions
pinned by the calibration tests in the suite:

* the Weil operator J acts on (p,q)-forms as multiplication by ``i^(p-q)``;
* ``Lambda`` is the bivector contraction against the inverse matrix of the
  nondegenerate 2-form, normalized so that ``[L, Lambda] = (k - n) id`` on
  degree k (hence ``Lambda(omega) = n``);
* the coframe pairing is ``<phi^j, cphi^k> = (H^{-1})_{kj}`` for
  ``omega = i sum H_jk phi^j ^ cphi^k``, extended bilinearly, with
  ``vol = omega^n / n!``;
* the Hodge star is complex linear and satisfies ``star(star(a)) = (-1)^k a``
  on k-forms (even total dimension), together with the Weyl identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import AlgebraSpec, exterior_d
from .forms import (COMPLEX_FRAME, Bidegree, Form, Frame, Mono, basis_monomials)
from .linalg import nullspace, rref, solve
from .scalars import GR_I, GR_ONE, GR_ZERO, GaussRat, Scalar


class OperatorError(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrices of operators in the canonical monomial bases
# ---------------------------------------------------------------------------

@dataclass
class OperatorMatrix:
    frame: Frame
    src_basis: list[Mono]
    dst_basis: list[Mono]
    entries: list[list[GaussRat]]   # dst x src

    def apply_vector(self, vec: Sequence[GaussRat]) -> list[GaussRat]:
        return [sum((row[j] * vec[j] for j in range(len(vec)) if vec[j]), GR_ZERO)
                for row in self.entries]

    def compose(self, inner: "OperatorMatrix") -> "OperatorMatrix":
        if inner.dst_basis != self.src_basis:
            raise OperatorError("operator shapes do not compose")
        cols = [self.apply_vector([inner.entries[i][j] for i in range(len(inner.dst_basis))])
                for j in range(len(inner.src_basis))]
        entries = [[cols[j][i] for j in range(len(inner.src_basis))]
                   for i in range(len(self.dst_basis))]
        return OperatorMatrix(self.frame, inner.src_basis, self.dst_basis, entries)

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def rank(self) -> int:
        from .linalg import rank
        if not self.entries or not self.entries[0]:
            return 0
        return rank(self.entries)


def form_to_vector(form: Form, basis: list[Mono]) -> list[GaussRat]:
    index = {m: i for i, m in enumerate(basis)}
    vec = [GR_ZERO] * len(basis)
    for m, c in form.terms.items():
        if m not in index:
            raise OperatorError(f"monomial {m} outside basis")
        vec[index[m]] = c.const_value()
    return vec


def vector_to_form(frame: Frame, vec: Sequence[GaussRat], basis: list[Mono]) -> Form:
    out = Form.zero(frame)
    for c, m in zip(vec, basis):
        if c:
            out = out + Form(frame, {m: Scalar.const(c)})
    return out


def matrix_of(fn: Callable[[Form], Form], frame: Frame,
              src_basis: list[Mono], dst_basis: list[Mono]) -> OperatorMatrix:
    cols = []
    for m in src_basis:
        image = fn(Form.monomial(frame, m))
        cols.append(form_to_vector(image, dst_basis))
    entries = [[cols[j][i] for j in range(len(src_basis))] for i in range(len(dst_basis))]
    return OperatorMatrix(frame, src_basis, dst_basis, entries)


def assemble_d(spec: AlgebraSpec, degree: int) -> OperatorMatrix:
    """Matrix of d from degree k to k+1 (constant structure coefficients)."""
    frame = spec.frame
    return matrix_of(lambda f: exterior_d(spec, f), frame,
                     basis_monomials(frame, degree), basis_monomials(frame, degree + 1))


def closed_one_forms(spec: AlgebraSpec) -> list[Form]:
    """Basis of d-closed invariant 1-forms (constant coefficients)."""
    d1 = assemble_d(spec, 1)
    basis = basis_monomials(spec.frame, 1)
    return [vector_to_form(spec.frame, v, basis)
            for v in nullspace(d1.entries, GR_ZERO, GR_ONE)]


# ---------------------------------------------------------------------------
# twisted differentials and the Weil operator
# ---------------------------------------------------------------------------

def weil_J(form: Form, power: int = 1) -> Form:
    """J acting on (p,q)-components as i^(p-q); `power` gives J^power."""
    if form.frame.kind != COMPLEX_FRAME:
        raise OperatorError("the Weil operator needs a complex frame")
    out = Form.zero(form.frame)
    for m, c in form.terms.items():
        p, q = form.mono_bidegree(m)
        k = ((p - q) * power) % 4
        factor = (GR_ONE, GR_I, -GR_ONE, -GR_I)[k]
        out.terms[m] = c * factor
    return out


def twisted_d(spec: AlgebraSpec, theta: Form, form: Form,
              weight: Fraction | int = 1, variant: str = "plain") -> Form:
    """d_{w·theta} = d - w·theta ^ (plain) or its J-conjugate (c_twist)."""
    if theta.terms and theta.degree() != 1:
        raise OperatorError("theta must be a 1-form")
    if not exterior_d(spec, theta).is_zero():
        raise OperatorError("theta must be d-closed")
    w = Fraction(weight)
    if variant == "plain":
        out = exterior_d(spec, form)
        if w:
            out = out - theta.wedge(form).scaled(w)
        return out
    if variant == "c_twist":
        return weil_J(twisted_d(spec, theta, weil_J(form, 1), w, "plain"), -1)
    raise OperatorError(f"unknown variant {variant!r}")


def twisted_d_matrix(spec: AlgebraSpec, theta: Form, degree: int,
                     weight: Fraction | int = 1, variant: str = "plain") -> OperatorMatrix:
    frame = spec.frame
    return matrix_of(lambda f: twisted_d(spec, theta, f, weight, variant), frame,
                     basis_monomials(frame, degree), basis_monomials(frame, degree + 1))


# ---------------------------------------------------------------------------
# metric data
# ---------------------------------------------------------------------------

def _det(m: list[list[GaussRat]]) -> GaussRat:
    n = len(m)
    if n == 0:
        return GR_ONE
    if n == 1:
        return m[0][0]
    out = GR_ZERO
    sign = 1
    for j in range(n):
        if m[0][j]:
            minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
            term = m[0][j] * _det(minor)
            out = out + (term if sign > 0 else -term)
        sign = -sign
    return out


def _invert(m: list[list[GaussRat]]) -> list[list[GaussRat]]:
    n = len(m)
    aug = [list(row) + [GR_ONE if i == j else GR_ZERO for j in range(n)]
           for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise OperatorError("matrix is singular")
    return [row[n:] for row in red]


class MetricData:
    """Taming 2-form with its Hermitian (1,1)-part, pairings, and volume.

    Real frames get the symplectic half only (L, Lambda, H); the Hodge star
    and Gram pairings need a complex frame with a positive (1,1)-part.
    """

    def __init__(self, spec: AlgebraSpec, Omega: Form, require_positive: bool = True):
        if Omega.is_zero() or Omega.degree() != 2:
            raise OperatorError("Omega must be a nonzero 2-form")
        if not Omega.is_constant():
            raise OperatorError("metric data needs constant coefficients")
        if not Omega.is_real():
            raise OperatorError("Omega must be real")
        self.spec = spec
        self.frame = spec.frame
        self.Omega = Omega
        dim = self.frame.dim
        if dim % 2:
            raise OperatorError("even dimension required")
        self.n = dim // 2

        # full antisymmetric matrix of Omega and its inverse bivector
        W = [[GR_ZERO] * dim for _ in range(dim)]
        for (a, b), c in Omega.terms.items():
            v = c.const_value()
            W[a - 1][b - 1] = v
            W[b - 1][a - 1] = -v
        self.W = W
        try:
            self.pi = _invert(W)
        except OperatorError:
            raise OperatorError("Omega is degenerate") from None

        self.omega = Omega
        self.Hmat: list[list[GaussRat]] | None = None
        self.Hinv: list[list[GaussRat]] | None = None
        self.minors: list[GaussRat] = []
        self.positive = False
        if self.frame.kind == COMPLEX_FRAME:
            n = self.frame.n
            self.omega = Omega.bidegree_project(Bidegree(1, 1))
            H = [[Omega.coeff((j, n + k)).const_value() / GR_I for k in range(1, n + 1)]
                 for j in range(1, n + 1)]
            for j in range(n):
                for k in range(n):
                    if H[k][j] != H[j][k].conj():
                        raise OperatorError("(1,1)-part is not Hermitian")
            self.Hmat = H
            self.minors = [_det([row[:k] for row in H[:k]]) for k in range(1, n + 1)]
            self.positive = all(mv.is_real() and mv.re > 0 for mv in self.minors)
            if require_positive and not self.positive:
                raise OperatorError(f"(1,1)-part is not positive: minors {self.minors}")
            if self.positive:
                self.Hinv = _invert(H)

        self.vol = self.omega.wedge_power(self.n).scaled(Fraction(1, math.factorial(self.n)))
        if self.frame.kind == COMPLEX_FRAME and self.positive:
            self._gen_pairing = self._build_gen_pairing()
        self._star_cache: dict[int, OperatorMatrix] = {}

    # -- sl(2) operators ------------------------------------------------------

    def L(self, form: Form) -> Form:
        return self.Omega.wedge(form)

    def Lpow(self, j: int, form: Form) -> Form:
        out = form
        for _ in range(j):
            out = self.L(out)
        return out

    def Lambda(self, form: Form) -> Form:
        return form.contract_bivector(self.pi)

    def H(self, form: Form) -> Form:
        out = Form.zero(self.frame)
        for k in form.degrees():
            out = out + form.degree_project(k).scaled(self.n - k)
        return out

    def lefschetz_matrices(self, degree: int) -> dict[str, OperatorMatrix]:
        fr = self.frame
        b = basis_monomials(fr, degree)
        return {
            "L": matrix_of(self.L, fr, b, basis_monomials(fr, degree + 2)),
            "Lambda": matrix_of(self.Lambda, fr, b, basis_monomials(fr, max(degree - 2, 0))),
            "H": matrix_of(self.H, fr, b, b),
        }

    # -- primitive forms --------------------------------------------------------

    def primitive_basis(self, k: int) -> list[Form]:
        fr = self.frame
        if k <= 1:
            return [Form.monomial(fr, m) for m in basis_monomials(fr, k)]
        b = basis_monomials(fr, k)
        lam = matrix_of(self.Lambda, fr, b, basis_monomials(fr, k - 2))
        return [vector_to_form(fr, v, b) for v in nullspace(lam.entries, GR_ZERO, GR_ONE)]

    def primitive_decompose(self, form: Form) -> list[tuple[int, Form]]:
        """Write a homogeneous form as sum of L^j b_j with b_j primitive."""
        k = form.degree()
        fr = self.frame
        basis_k = basis_monomials(fr, k)
        columns: list[list[GaussRat]] = []
        tags: list[tuple[int, int]] = []
        prim: dict[int, list[Form]] = {}
        for j in range(0, self.n + 1):
            deg = k - 2 * j
            if deg < 0:
                break
            prim[j] = self.primitive_basis(deg)
            for idx, p in enumerate(prim[j]):
                columns.append(form_to_vector(self.Lpow(j, p), basis_k))
                tags.append((j, idx))
        rows = [[columns[c][r] for c in range(len(columns))] for r in range(len(basis_k))]
        sol = solve(rows, form_to_vector(form, basis_k), GR_ZERO)
        if sol is None:
            raise OperatorError("Lefschetz decomposition failed")
        parts: dict[int, Form] = {}
        for coeff, (j, idx) in zip(sol, tags):
            if coeff:
                comp = parts.setdefault(j, Form.zero(fr))
                parts[j] = comp + prim[j][idx].scaled(coeff)
        return sorted(parts.items())

    # -- Gram pairings and the Hodge star ------------------------------------------

    def _build_gen_pairing(self) -> list[list[GaussRat]]:
        n = self.frame.n
        dim = self.frame.dim
        G = [[GR_ZERO] * dim for _ in range(dim)]
        assert self.Hinv is not None
        for j in range(n):
            for k in range(n):
                c = self.Hinv[k][j]
                G[j][n + k] = c
                G[n + k][j] = c
        return G

    def pairing(self, a: Form, b: Form) -> GaussRat:
        """Complex-bilinear extension of the metric pairing on forms."""
        if self.frame.kind != COMPLEX_FRAME or not self.positive:
            raise OperatorError("pairing needs a positive complex metric")
        total = GR_ZERO
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                if len(m1) != len(m2):
                    continue
                gram = [[self._gen_pairing[x - 1][y - 1] for y in m2] for x in m1]
                g = _det(gram)
                if g:
                    total = total + c1.const_value() * c2.const_value() * g
        return total

    def hermitian_norm_sq(self, a: Form) -> GaussRat:
        return self.pairing(a, a.conjugate())

    def star_matrix(self, degree: int) -> OperatorMatrix:
        if degree in self._star_cache:
            return self._star_cache[degree]
        if self.frame.kind != COMPLEX_FRAME or not self.positive:
            raise OperatorError("the Hodge star needs a positive complex metric")
        fr = self.frame
        dim = fr.dim
        src = basis_monomials(fr, degree)
        dst = basis_monomials(fr, dim - degree)
        topv = self.vol.top_coefficient().const_value()
        # P[i][j] = top coefficient of src_i ^ dst_j
        P = [[Form.monomial(fr, bi).wedge(Form.monomial(fr, xj)).top_coefficient().const_value()
              for xj in dst] for bi in src]
        Pinv = _invert(P)
        cols = []
        for m in src:
            target = Form.monomial(fr, m)
            rhs = [self.pairing(Form.monomial(fr, bi), target) * topv for bi in src]
            cols.append([sum((Pinv[i][r] * rhs[r] for r in range(len(rhs))), GR_ZERO)
                         for i in range(len(dst))])
        entries = [[cols[j][i] for j in range(len(src))] for i in range(len(dst))]
        out = OperatorMatrix(fr, src, dst, entries)
        self._star_cache[degree] = out
        return out

    def star(self, form: Form) -> Form:
        if form.is_zero():
            return form
        out = Form.zero(self.frame)
        for k in form.degrees():
            comp = form.degree_project(k)
            mat = self.star_matrix(k)
            vec = mat.apply_vector(form_to_vector(comp, mat.src_basis))
            out = out + vector_to_form(self.frame, vec, mat.dst_basis)
        return out


def lefschetz_ops(m: MetricData) -> dict[str, Callable[[Form], Form]]:
    return {"L": m.L, "Lambda": m.Lambda, "H": m.H}


# ---------------------------------------------------------------------------
# identity verification
# ---------------------------------------------------------------------------

def commutator_defect(m: MetricData, j: int, degree: int) -> list[Form]:
    """[L^j, Lambda] - j(k - n + j - 1) L^(j-1) on all basis monomials of degree k."""
    fr = m.frame
    c = j * (degree - m.n + j - 1)
    out = []
    for mono in basis_monomials(fr, degree):
        x = Form.monomial(fr, mono)
        bracket = m.Lpow(j, m.Lambda(x)) - m.Lambda(m.Lpow(j, x))
        expected = m.Lpow(j - 1, x).scaled(c) if j >= 1 else Form.zero(fr)
        out.append(bracket - expected)
    return out


def weyl_defect(m: MetricData, j: int, k: int) -> list[Form]:
    """star L^j - (-1)^{k(k+1)/2} j!/(n-k-j)! L^{n-k-j} J on a primitive basis."""
    n = m.n
    if j < 0 or k < 0 or n - k - j < 0:
        raise OperatorError("inadmissible (j, k)")
    sign = -1 if (k * (k + 1) // 2) % 2 else 1
    factor = Fraction(math.factorial(j), math.factorial(n - k - j)) * sign
    out = []
    for alpha in m.primitive_basis(k):
        lhs = m.star(m.Lpow(j, alpha))
        rhs = m.Lpow(n - k - j, weil_J(alpha)).scaled(factor)
        out.append(lhs - rhs)
    return out


def lcs_commutation_defect(spec: AlgebraSpec, m: MetricData, theta: Form,
                           k: int, ell: int, degree: int) -> list[Form]:
    """d_{(ell+k)theta} L^k - L^k d_{ell*theta} on basis monomials of the degree."""
    out = []
    for mono in basis_monomials(spec.frame, degree):
        x = Form.monomial(spec.frame, mono)
        lhs = twisted_d(spec, theta, m.Lpow(k, x), ell + k)
        rhs = m.Lpow(k, twisted_d(spec, theta, x, ell))
        out.append(lhs - rhs)
    return out


def lefschetz_piece_basis(m: MetricData, j: int, k: int) -> list[Form]:
    return [m.Lpow(j, p) for p in m.primitive_basis(k)]


def verify_twisted_kahler_identity(m: MetricData, theta: Form,
                                   j: int, k: int, ell: int) -> list[Form]:
    """Residuals of the twisted commutation identity on a basis of L^j P^k.

    For x in L^j P^k the defect is
    (Lambda d_{ell th} - d_{(ell-1) th} Lambda)(x)
      - (star J^{-1} d_{(n+ell-k-2j) th} J star)(x),
    which must vanish for conformally closed positive data.
    """
    spec = m.spec
    out = []
    eta_weight = m.n + ell - k - 2 * j
    for x in lefschetz_piece_basis(m, j, k):
        lhs = m.Lambda(twisted_d(spec, theta, x, ell)) \
            - twisted_d(spec, theta, m.Lambda(x), ell - 1)
        rhs = m.star(weil_J(twisted_d(spec, theta, weil_J(m.star(x), 1), eta_weight), -1))
        out.append(lhs - rhs)
    return out


def check_lck(spec: AlgebraSpec, omega: Form, theta: Form) -> bool:
    """Is (omega, theta) conformally closed positive (1,1) data?"""
    if not exterior_d(spec, theta).is_zero():
        return False
    if omega.bidegree_project(Bidegree(2, 0)).terms or \
       omega.bidegree_project(Bidegree(0, 2)).terms:
        return False
    res = exterior_d(spec, omega) - theta.wedge(omega)
    return res.is_zero()
