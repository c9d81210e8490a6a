"""Exact scalar ring: multivariate polynomials over the Gaussian rationals.

Every coefficient in the workbench lives here.  A scalar is a sparse
polynomial whose coefficients are Gaussian rationals (pairs of
``fractions.Fraction``) and whose indeterminates are either *real* or
*complex*; a complex indeterminate ``t`` comes with a formal conjugate
partner written ``conj(t)``.  Conjugation is a ring involution fixing real
indeterminates and swapping complex partners.  There is no division by
polynomials: cancellation of nonzero factors is the certificate checker's
job, which keeps the ring total and decidable.  Zero has the unique normal
form of an empty term list.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union


class ConstraintError(ValueError):
    """A parameter assignment violates a declared constraint tag."""


class RegistryError(ValueError):
    """Inconsistent or missing indeterminate declarations."""


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

RatLike = Union[int, Fraction]


@dataclass(frozen=True)
class GaussRat:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: "GaussRat | RatLike") -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        return GaussRat(Fraction(value), Fraction(0))

    def __add__(self, other: "GaussRat | RatLike") -> "GaussRat":
        o = GaussRat.of(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other: "GaussRat | RatLike") -> "GaussRat":
        return self + (-GaussRat.of(other))

    def __rsub__(self, other: "GaussRat | RatLike") -> "GaussRat":
        return GaussRat.of(other) + (-self)

    def __mul__(self, other: "GaussRat | RatLike") -> "GaussRat":
        o = GaussRat.of(other)
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other: "GaussRat | RatLike") -> "GaussRat":
        return self * GaussRat.of(other).inverse()

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            if self.im == 1:
                s = "i"
            elif self.im == -1:
                s = "-i"
            else:
                s = f"{self.im}*i"
            if parts and not s.startswith("-"):
                s = "+" + s
            parts.append(s)
        return "".join(parts)


GR_ZERO = GaussRat()
GR_ONE = GaussRat(Fraction(1), Fraction(0))
GR_I = GaussRat(Fraction(0), Fraction(1))


# ---------------------------------------------------------------------------
# Indeterminate registry
# ---------------------------------------------------------------------------

REAL = "real"
COMPLEX = "complex"


@dataclass(frozen=True)
class VarSpec:
    name: str
    kind: str = REAL
    nonzero: bool = False
    positive: bool = False

    def __post_init__(self):
        if self.kind not in (REAL, COMPLEX):
            raise RegistryError(f"unknown kind {self.kind!r} for {self.name!r}")
        if self.positive and self.kind != REAL:
            raise RegistryError(f"{self.name!r}: only real indeterminates can be tagged positive")


class ParamRegistry:
    """Immutable table of declared indeterminates (parameters and unknowns)."""

    def __init__(self, specs: Iterable[VarSpec] = ()):
        table = {}
        for s in specs:
            if s.name in table and table[s.name] != s:
                raise RegistryError(f"conflicting declarations for {s.name!r}")
            table[s.name] = s
        self._table: dict[str, VarSpec] = table

    def with_real(self, name: str, nonzero: bool = False, positive: bool = False) -> "ParamRegistry":
        return self._extended(VarSpec(name, REAL, nonzero or positive, positive))

    def with_complex(self, name: str, nonzero: bool = False) -> "ParamRegistry":
        return self._extended(VarSpec(name, COMPLEX, nonzero, False))

    def _extended(self, spec: VarSpec) -> "ParamRegistry":
        if spec.name in self._table:
            if self._table[spec.name] == spec:
                return self
            raise RegistryError(f"conflicting declarations for {spec.name!r}")
        reg = ParamRegistry()
        reg._table = dict(self._table)
        reg._table[spec.name] = spec
        return reg

    def merged(self, other: "ParamRegistry") -> "ParamRegistry":
        if other is self or not other._table:
            return self
        if not self._table:
            return other
        reg = ParamRegistry()
        reg._table = dict(self._table)
        for name, spec in other._table.items():
            if name in reg._table and reg._table[name] != spec:
                raise RegistryError(f"conflicting declarations for {name!r}")
            reg._table[name] = spec
        return reg

    def __contains__(self, name: str) -> bool:
        return name in self._table

    def __getitem__(self, name: str) -> VarSpec:
        try:
            return self._table[name]
        except KeyError:
            raise RegistryError(f"undeclared indeterminate {name!r}") from None

    def names(self) -> list[str]:
        return sorted(self._table)

    def specs(self) -> list[VarSpec]:
        return [self._table[n] for n in self.names()]

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamRegistry) and self._table == other._table

    def __repr__(self) -> str:
        return f"ParamRegistry({list(self._table.values())!r})"


EMPTY_REGISTRY = ParamRegistry()


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------
#
# A variable occurrence is the key (name, conjugated); a monomial is a sorted
# tuple of ((name, conjugated), exponent) with positive exponents.

VarKey = tuple[str, bool]
Mono = tuple[tuple[VarKey, int], ...]

EMPTY_MONO: Mono = ()


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_str(m: Mono) -> str:
    if not m:
        return "1"
    parts = []
    for (name, conjed), e in m:
        v = f"conj({name})" if conjed else name
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


# grevlex-style order used only for exact division pivoting
def _mono_order_key(m: Mono):
    return (_mono_degree(m), m)


class Scalar:
    """Sparse multivariate polynomial over the Gaussian rationals.

    Immutable; the term dict maps monomials to nonzero GaussRat coefficients.
    """

    __slots__ = ("terms", "reg", "_key")

    def __init__(self, terms: Mapping[Mono, GaussRat] | None = None,
                 reg: ParamRegistry = EMPTY_REGISTRY):
        self.terms: dict[Mono, GaussRat] = {m: c for m, c in (terms or {}).items() if c}
        self.reg = reg
        self._key = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(value: GaussRat | RatLike, reg: ParamRegistry = EMPTY_REGISTRY) -> "Scalar":
        c = GaussRat.of(value)
        return Scalar({EMPTY_MONO: c} if c else {}, reg)

    @staticmethod
    def var(name: str, reg: ParamRegistry, conjugated: bool = False) -> "Scalar":
        spec = reg[name]
        if spec.kind == REAL and conjugated:
            conjugated = False
        return Scalar({(((name, conjugated), 1),): GR_ONE}, reg)

    @staticmethod
    def i(reg: ParamRegistry = EMPTY_REGISTRY) -> "Scalar":
        return Scalar.const(GR_I, reg)

    # -- ring structure ------------------------------------------------------

    def _join(self, other: "Scalar | GaussRat | RatLike") -> tuple["Scalar", ParamRegistry]:
        if isinstance(other, Scalar):
            return other, self.reg.merged(other.reg)
        return Scalar.const(other), self.reg

    def __add__(self, other: "Scalar | GaussRat | RatLike") -> "Scalar":
        o, reg = self._join(other)
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m, GR_ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Scalar(terms, reg)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({m: -c for m, c in self.terms.items()}, self.reg)

    def __sub__(self, other: "Scalar | GaussRat | RatLike") -> "Scalar":
        o, _ = self._join(other)
        return self + (-o)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: "Scalar | GaussRat | RatLike") -> "Scalar":
        o, reg = self._join(other)
        terms: dict[Mono, GaussRat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m, GR_ZERO) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Scalar(terms, reg)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            raise ValueError("negative powers are not ring operations")
        out = Scalar.const(1, self.reg)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def conj(self) -> "Scalar":
        terms: dict[Mono, GaussRat] = {}
        for m, c in self.terms.items():
            mm = []
            for (name, conjed), e in m:
                if self.reg[name].kind == COMPLEX:
                    mm.append((((name, not conjed)), e))
                else:
                    mm.append(((name, conjed), e))
            terms[tuple(sorted(mm))] = c.conj()
        return Scalar(terms, self.reg)

    # -- predicates and parts -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and EMPTY_MONO in self.terms)

    def const_value(self) -> GaussRat:
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        return self.terms.get(EMPTY_MONO, GR_ZERO)

    def is_real(self) -> bool:
        return self.conj() == self

    def real_part(self) -> "Scalar":
        two = Scalar.const(Fraction(1, 2), self.reg)
        return (self + self.conj()) * two

    def imag_part(self) -> "Scalar":
        half_over_i = Scalar.const(GaussRat(Fraction(0), Fraction(-1, 2)), self.reg)
        return (self - self.conj()) * half_over_i

    def variables(self) -> set[str]:
        return {name for m in self.terms for (name, _), _ in m}

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    # -- substitution ----------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, GaussRat | RatLike],
                 check_constraints: bool = True) -> "Scalar":
        """Substitute Gaussian-rational values for named indeterminates.

        Conjugate occurrences automatically receive the conjugate value.
        Constraint tags (nonzero, positive; real kind needs a real value) are
        enforced unless disabled.
        """
        values: dict[str, GaussRat] = {}
        for name, raw in assignment.items():
            spec = self.reg[name] if name in self.reg else None
            v = GaussRat.of(raw)
            if spec is not None and check_constraints:
                if spec.kind == REAL and not v.is_real():
                    raise ConstraintError(f"{name} is real; got {v}")
                if spec.nonzero and not v:
                    raise ConstraintError(f"{name} is tagged nonzero")
                if spec.positive and not (v.is_real() and v.re > 0):
                    raise ConstraintError(f"{name} is tagged positive; got {v}")
            values[name] = v
        terms: dict[Mono, GaussRat] = {}
        for m, c in self.terms.items():
            coeff = c
            rest = []
            for (name, conjed), e in m:
                if name in values:
                    v = values[name]
                    if conjed:
                        v = v.conj()
                    for _ in range(e):
                        coeff = coeff * v
                else:
                    rest.append(((name, conjed), e))
            if not coeff:
                continue
            mm = tuple(sorted(rest))
            s = terms.get(mm, GR_ZERO) + coeff
            if s:
                terms[mm] = s
            else:
                terms.pop(mm, None)
        # rebase the registry onto the surviving indeterminates, so fully
        # instantiated scalars merge freely with any other registry
        remaining = {name for m in terms for (name, _), _ in m}
        reg = ParamRegistry(spec for name, spec in self.reg._table.items()
                            if name in remaining)
        return Scalar(terms, reg)

    # -- exact division ---------------------------------------------------------

    def leading(self) -> tuple[Mono, GaussRat]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_mono_order_key)
        return m, self.terms[m]

    def exact_div(self, divisor: "Scalar") -> "Scalar":
        """Quotient self/divisor when the division is exact; raises otherwise.

        Leading terms are taken in graded lex order over the union of the
        occurring variables (a multiplicative order, so leading terms of
        exact multiples always divide).
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        reg = self.reg.merged(divisor.reg)
        varlist = sorted({k for m in self.terms for k, _ in m}
                         | {k for m in divisor.terms for k, _ in m})
        index = {k: i for i, k in enumerate(varlist)}

        def grlex_key(m: Mono):
            vec = [0] * len(varlist)
            for k, e in m:
                vec[index[k]] = e
            return (_mono_degree(m), tuple(vec))

        dm = max(divisor.terms, key=grlex_key)
        dinv = divisor.terms[dm].inverse()
        rem = Scalar(self.terms, reg)
        qterms: dict[Mono, GaussRat] = {}
        while rem.terms:
            rm = max(rem.terms, key=grlex_key)
            rc = rem.terms[rm]
            rd = dict(rm)
            for k, e in dm:
                if rd.get(k, 0) < e:
                    raise ValueError("division is not exact")
                rd[k] -= e
                if rd[k] == 0:
                    del rd[k]
            qm = tuple(sorted(rd.items()))
            qc = rc * dinv
            qterms[qm] = qterms.get(qm, GR_ZERO) + qc
            rem = rem - Scalar({qm: qc}, reg) * divisor
        return Scalar({m: c for m, c in qterms.items() if c}, reg)

    # -- canonical key, equality, rendering --------------------------------------

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(self.terms.items(), key=lambda t: _mono_order_key(t[0])))
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussRat)):
            other = Scalar.const(other)
        return isinstance(other, Scalar) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in sorted(self.terms.items(), key=lambda t: _mono_order_key(t[0]), reverse=True):
            cs = str(c)
            ms = _mono_str(m)
            if m == EMPTY_MONO:
                term = cs
            elif c == GR_ONE:
                term = ms
            elif c == -GR_ONE:
                term = f"-{ms}"
            elif c.re and c.im:
                term = f"({cs})*{ms}"
            else:
                term = f"{cs}*{ms}"
            if out and not term.startswith("-"):
                out.append("+" + term)
            else:
                out.append(term)
        return "".join(out)

    __repr__ = __str__


def random_scalar(rng: random.Random, reg: ParamRegistry, max_terms: int = 4,
                  max_degree: int = 3, bound: int = 9) -> Scalar:
    """Deterministic sparse random polynomial for algebraic identity tests."""
    names = reg.names()
    terms: dict[Mono, GaussRat] = {}
    for _ in range(rng.randint(0, max_terms)):
        mono: dict[VarKey, int] = {}
        for _ in range(rng.randint(0, max_degree)):
            if not names:
                break
            name = rng.choice(names)
            conjed = reg[name].kind == COMPLEX and rng.random() < 0.5
            key = (name, conjed)
            mono[key] = mono.get(key, 0) + 1
        c = GaussRat(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                     Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
        m = tuple(sorted(mono.items()))
        s = terms.get(m, GR_ZERO) + c
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    return Scalar(terms, reg)


def random_name(rng: random.Random, k: int = 4) -> str:
    return "".join(rng.choice(string.ascii_lowercase) for _ in range(k))
