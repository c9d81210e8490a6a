"""Exterior algebra on a complex or real invariant co-frame.

Complex frames of rank ``n`` have generators ``1..n`` (the holomorphic
co-frame ``phi^1..phi^n``) and ``n+1..2n`` (their conjugates).  Real frames
of dimension ``m`` have generators ``1..m``.  A form is a map from canonical
monomials (strictly increasing index tuples) to scalar coefficients; sorting
signs come from permutation parity, and zero coefficients are never stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .scalars import EMPTY_REGISTRY, GaussRat, ParamRegistry, RatLike, Scalar

COMPLEX_FRAME = "complex"
REAL_FRAME = "real"


class FrameError(ValueError):
    """Mixing forms over different frames, or indices out of range."""


class Bidegree(NamedTuple):
    p: int
    q: int


@dataclass(frozen=True)
class Frame:
    kind: str
    n: int  # complex rank, or real dimension for real frames

    @property
    def dim(self) -> int:
        return 2 * self.n if self.kind == COMPLEX_FRAME else self.n

    def conj_index(self, j: int) -> int:
        if self.kind != COMPLEX_FRAME:
            return j
        return j + self.n if j <= self.n else j - self.n

    def gen_name(self, j: int) -> str:
        if self.kind == COMPLEX_FRAME:
            return f"phi{j}" if j <= self.n else f"cphi{j - self.n}"
        return f"e{j}"


Mono = tuple[int, ...]

ScalarLike = Union[Scalar, GaussRat, RatLike]


def sort_with_sign(indices: Sequence[int]) -> tuple[Mono, int]:
    """Sort an index sequence, returning (sorted tuple, permutation sign).

    Returns sign 0 when an index repeats.
    """
    idx = list(indices)
    sign = 1
    # insertion sort keeps the parity bookkeeping obvious; degrees are tiny
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and idx[j - 1] == idx[j]:
            return tuple(idx), 0
    return tuple(idx), sign


def merge_monos(a: Mono, b: Mono) -> tuple[Mono, int]:
    """Merge two sorted disjoint monomials with the shuffle sign; 0 if they meet."""
    out = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return (), 0
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a)-i generators of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


class Form:
    """Graded exterior-algebra element with Scalar coefficients."""

    __slots__ = ("frame", "terms")

    def __init__(self, frame: Frame, terms: Mapping[Mono, Scalar] | None = None):
        self.frame = frame
        self.terms: dict[Mono, Scalar] = {}
        if terms:
            for m, c in terms.items():
                if isinstance(c, (int, GaussRat)):
                    c = Scalar.const(c)
                if c.is_zero():
                    continue
                if any(not (1 <= g <= frame.dim) for g in m):
                    raise FrameError(f"generator index out of range in {m}")
                self.terms[m] = c

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def zero(frame: Frame) -> "Form":
        return Form(frame)

    @staticmethod
    def unit(frame: Frame, value: ScalarLike = 1) -> "Form":
        c = value if isinstance(value, Scalar) else Scalar.const(value)
        return Form(frame, {(): c})

    @staticmethod
    def gen(frame: Frame, index: int) -> "Form":
        return Form(frame, {(index,): Scalar.const(1)})

    @staticmethod
    def monomial(frame: Frame, indices: Sequence[int], coeff: ScalarLike = 1) -> "Form":
        mono, sign = sort_with_sign(indices)
        if sign == 0:
            return Form.zero(frame)
        c = coeff if isinstance(coeff, Scalar) else Scalar.const(coeff)
        return Form(frame, {mono: c * sign})

    # -- linear structure ---------------------------------------------------------

    def _check(self, other: "Form") -> None:
        if self.frame != other.frame:
            raise FrameError(f"frame mismatch: {self.frame} vs {other.frame}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        out = Form(self.frame)
        out.terms = terms
        return out

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        out = Form(self.frame)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def scaled(self, factor: ScalarLike) -> "Form":
        f = factor if isinstance(factor, Scalar) else Scalar.const(factor)
        if f.is_zero():
            return Form.zero(self.frame)
        out = Form(self.frame)
        out.terms = {m: c * f for m, c in self.terms.items()}
        return out

    def __rmul__(self, factor: ScalarLike) -> "Form":
        return self.scaled(factor)

    # -- the graded product ----------------------------------------------------------

    def wedge(self, other: "Form") -> "Form":
        self._check(other)
        terms: dict[Mono, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m, sign = merge_monos(m1, m2)
                if sign == 0:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = terms.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(m, None)
                else:
                    terms[m] = s
        out = Form(self.frame)
        out.terms = terms
        return out

    def wedge_power(self, k: int) -> "Form":
        out = Form.unit(self.frame)
        for _ in range(k):
            out = out.wedge(self)
        return out

    # -- grading -------------------------------------------------------------------------

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise FrameError(f"form is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def mono_bidegree(self, m: Mono) -> Bidegree:
        if self.frame.kind != COMPLEX_FRAME:
            raise FrameError("bidegree needs a complex frame")
        p = sum(1 for g in m if g <= self.frame.n)
        return Bidegree(p, len(m) - p)

    def bidegree_project(self, pq: Bidegree | tuple[int, int]) -> "Form":
        p, q = pq
        out = Form(self.frame)
        out.terms = {m: c for m, c in self.terms.items()
                     if self.mono_bidegree(m) == (p, q)}
        return out

    def degree_project(self, k: int) -> "Form":
        out = Form(self.frame)
        out.terms = {m: c for m, c in self.terms.items() if len(m) == k}
        return out

    def is_bidegree_homogeneous(self) -> bool:
        return len({self.mono_bidegree(m) for m in self.terms}) <= 1

    # -- involutions and extraction --------------------------------------------------------

    def conjugate(self) -> "Form":
        """Conjugate form: swaps phi^j with its partner and conjugates coefficients."""
        terms: dict[Mono, Scalar] = {}
        for m, c in self.terms.items():
            mono, sign = sort_with_sign([self.frame.conj_index(g) for g in m])
            cc = c.conj()
            if sign < 0:
                cc = -cc
            s = terms.get(mono)
            s = cc if s is None else s + cc
            if s.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = s
        out = Form(self.frame)
        out.terms = terms
        return out

    def is_real(self) -> bool:
        return self.conjugate() == self

    def coeff(self, indices: Sequence[int]) -> Scalar:
        mono, sign = sort_with_sign(indices)
        if sign == 0:
            return Scalar.const(0)
        c = self.terms.get(mono)
        if c is None:
            return Scalar.const(0)
        return c if sign > 0 else -c

    def top_coefficient(self) -> Scalar:
        """Coefficient of the canonical top monomial; needs degree = dim."""
        top = tuple(range(1, self.frame.dim + 1))
        if self.terms and self.degree() != self.frame.dim:
            raise FrameError(f"top_coefficient needs degree {self.frame.dim}")
        return self.terms.get(top, Scalar.const(0))

    # -- interior products --------------------------------------------------------------------

    def interior(self, index: int) -> "Form":
        """Interior product with the frame vector dual to generator `index`."""
        terms: dict[Mono, Scalar] = {}
        for m, c in self.terms.items():
            for pos, g in enumerate(m):
                if g == index:
                    mono = m[:pos] + m[pos + 1:]
                    cc = c if pos % 2 == 0 else -c
                    s = terms.get(mono)
                    s = cc if s is None else s + cc
                    if s.is_zero():
                        terms.pop(mono, None)
                    else:
                        terms[mono] = s
                    break
        out = Form(self.frame)
        out.terms = terms
        return out

    def contract_bivector(self, pi: Sequence[Sequence[ScalarLike]]) -> "Form":
        """Double interior product (1/2) pi^{ab} i_a i_b against a skew matrix."""
        dim = self.frame.dim
        out = Form.zero(self.frame)
        for a in range(dim):
            for b in range(dim):
                coeff = pi[a][b]
                c = coeff if isinstance(coeff, Scalar) else Scalar.const(coeff)
                if c.is_zero():
                    continue
                contracted = self.interior(b + 1).interior(a + 1)
                if contracted.terms:
                    out = out + contracted.scaled(c)
        return out.scaled(Fraction(1, 2))

    # -- parameters ------------------------------------------------------------------------------

    def evaluate_params(self, assignment: Mapping[str, GaussRat | RatLike],
                        check_constraints: bool = True) -> "Form":
        out = Form(self.frame)
        terms: dict[Mono, Scalar] = {}
        for m, c in self.terms.items():
            cc = c.evaluate(assignment, check_constraints=check_constraints)
            if not cc.is_zero():
                terms[m] = cc
        out.terms = terms
        return out

    def registry(self) -> ParamRegistry:
        reg = EMPTY_REGISTRY
        for c in self.terms.values():
            reg = reg.merged(c.reg)
        return reg

    def variables(self) -> set[str]:
        out: set[str] = set()
        for c in self.terms.values():
            out |= c.variables()
        return out

    def is_constant(self) -> bool:
        return all(c.is_const() for c in self.terms.values())

    # -- equality and rendering --------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Form) and self.frame == other.frame
                and self.terms.keys() == other.terms.keys()
                and all(self.terms[m] == other.terms[m] for m in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def mono_str(self, m: Mono) -> str:
        if not m:
            return "1"
        return "^".join(self.frame.gen_name(g) for g in m)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: (len(mm), mm)):
            c = self.terms[m]
            cs = str(c)
            if m and (len(c.terms) > 1 or "+" in cs or "-" in cs[1:] or cs.startswith("-")):
                cs = f"({cs})"
            parts.append(f"{cs}*{self.mono_str(m)}" if m else cs)
        return " + ".join(parts)

    __repr__ = __str__


def basis_monomials(frame: Frame, degree: int) -> list[Mono]:
    return list(itertools.combinations(range(1, frame.dim + 1), degree))


def bidegree_monomials(frame: Frame, p: int, q: int) -> list[Mono]:
    if frame.kind != COMPLEX_FRAME:
        raise FrameError("bidegree basis needs a complex frame")
    out = []
    for holo in itertools.combinations(range(1, frame.n + 1), p):
        for anti in itertools.combinations(range(frame.n + 1, 2 * frame.n + 1), q):
            out.append(holo + anti)
    return out


def form_from_mono_coeffs(frame: Frame, entries: Iterable[tuple[Sequence[int], ScalarLike]]) -> Form:
    out = Form.zero(frame)
    for indices, coeff in entries:
        out = out + Form.monomial(frame, indices, coeff)
    return out
