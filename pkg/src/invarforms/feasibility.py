"""Structure ansätze, residual systems, positivity, and witness search.

The generic 2-form ansatz on a rank-n complex frame uses the diagonal
unknowns ``r2, s2, t2`` (tagged positive), off-diagonal ``u, v, z`` and
(2,0)-part ``L, M, N`` (complex), and a twisting 1-form with coefficients
``a, b, c``; closedness of the twist is solved symbolically and substituted
before any residual is formed.  Everything is exact; a search that fails to
find a witness reports UNKNOWN, never nonexistence.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import AlgebraSpec, del_bar, del_hol, exterior_d
from .forms import (COMPLEX_FRAME, REAL_FRAME, Bidegree, Form, Frame, Mono,
                    basis_monomials)
from .linalg import nullspace, rref, solve
from .operators import closed_one_forms, form_to_vector, matrix_of, vector_to_form
from .scalars import (EMPTY_REGISTRY, GR_I, GR_ONE, GR_ZERO, GaussRat,
                      ParamRegistry, RatLike, Scalar)

MODES = ("lcK", "lcb", "lcht", "balanced", "pluriclosed", "kGauduchon", "kahler")

# canonical unknown names per complex rank
_DIAG_NAMES = {2: ["r2", "s2"], 3: ["r2", "s2", "t2"]}
_OFF_NAMES = {2: {(1, 2): "u"}, 3: {(1, 2): "u", (2, 3): "v", (1, 3): "z"}}
_TWO_ZERO_NAMES = {2: {(1, 2): "L"}, 3: {(1, 2): "L", (1, 3): "M", (2, 3): "N"}}
_THETA_NAMES = {2: ["a", "b"], 3: ["a", "b", "c"]}


class FeasibilityError(ValueError):
    pass


def mono_label(frame: Frame, mono: Mono) -> str:
    if frame.kind == REAL_FRAME:
        return "-".join(str(g) for g in mono)
    return "-".join(str(g) if g <= frame.n else f"c{g - frame.n}" for g in mono)


# ---------------------------------------------------------------------------
# provable sign conditions (shared with the certificate checker)
# ---------------------------------------------------------------------------

def provably_positive_combination(p: Scalar, nonzero: set[str] = frozenset()) -> bool:
    """True when p is a sum of visibly nonnegative terms, at least one strict.

    Terms must have positive rational coefficients; a monomial is nonnegative
    when it factors into positive-tagged variables, even powers of real
    variables, and x*conj(x) pairs; it is strict when every factor is strict
    (positive tags, or even powers / moduli of nonzero variables).
    """
    if p.is_zero():
        return False
    reg = p.reg
    some_strict = False
    for mono, coeff in p.terms.items():
        if not (coeff.is_real() and coeff.re > 0):
            return False
        occ: dict[str, dict[bool, int]] = {}
        for (name, conjed), e in mono:
            occ.setdefault(name, {False: 0, True: 0})[conjed] += e
        strict = True
        for name, byconj in occ.items():
            spec = reg[name]
            known_nonzero = spec.nonzero or spec.positive or name in nonzero
            if spec.kind == "real":
                exp = byconj[False] + byconj[True]
                if spec.positive:
                    continue
                if exp % 2:
                    return False
                if not known_nonzero:
                    strict = False
            else:
                if byconj[False] != byconj[True]:
                    return False
                if not known_nonzero:
                    strict = False
        some_strict = some_strict or strict
    return some_strict


def provably_nonzero(p: Scalar, nonzero: set[str] = frozenset()) -> bool:
    """Is p visibly nonzero for every admissible assignment of its variables?"""
    if p.is_zero():
        return False
    if p.is_const():
        return True
    if len(p.terms) == 1:
        (mono, _coeff), = p.terms.items()
        if all(p.reg[name].nonzero or p.reg[name].positive or name in nonzero
               for (name, _), _ in mono):
            return True
    norm = p * p.conj()
    if norm.is_real():
        return provably_positive_combination(norm, nonzero)
    return False


# ---------------------------------------------------------------------------
# the generic ansatz
# ---------------------------------------------------------------------------

@dataclass
class GenericAnsatz:
    spec: AlgebraSpec
    mode: str
    power: int                      # m in d(Omega^m) = theta ^ Omega^m
    reg: ParamRegistry              # unknowns merged with the spec parameters
    Omega: Form
    theta: Form
    kG_k: int | None = None
    reduce_offdiag: bool = False
    closedness_notes: list[str] = field(default_factory=list)
    closedness_leftover: list[Scalar] = field(default_factory=list)
    diag_names: list[str] = field(default_factory=list)
    off_names: list[str] = field(default_factory=list)
    two_zero_names: list[str] = field(default_factory=list)
    theta_names: list[str] = field(default_factory=list)

    def unknown_names(self) -> list[str]:
        return self.diag_names + self.off_names + self.two_zero_names + self.theta_names

    def structure_names(self) -> list[str]:
        return self.diag_names + self.off_names + self.two_zero_names


@dataclass
class ResidualEntry:
    label: str
    mono: Mono
    poly: Scalar


@dataclass
class ResidualSystem:
    spec: AlgebraSpec
    mode: str
    power: int
    entries: list[ResidualEntry]

    def is_empty(self) -> bool:
        return all(e.poly.is_zero() for e in self.entries)

    def by_label(self) -> dict[str, Scalar]:
        return {e.label: e.poly for e in self.entries}


@dataclass
class PositivityProfile:
    hmat: list[list[Scalar]]
    minors: list[Scalar]


@dataclass
class Witness:
    mode: str
    assignment: dict[str, GaussRat]
    Omega: Form
    theta: Form
    minors: list[GaussRat]

    def as_strings(self) -> dict[str, str]:
        return {k: str(v) for k, v in sorted(self.assignment.items())}


# -- closedness of the twisting 1-form ---------------------------------------------

def _strip_var(mono, key):
    """Remove one occurrence of a degree-1 variable key; None if absent."""
    entries = dict(mono)
    if entries.get(key, 0) != 1:
        return None
    rest = {k: e for k, e in entries.items() if k != key}
    return tuple(sorted(rest.items()))


def _scalar_row_space(coeffs: list[Scalar]) -> list[Scalar]:
    """RREF combinations of coefficient polynomials over the Gaussian rationals."""
    monos = sorted({m for c in coeffs for m in c.terms})
    if not monos:
        return []
    rows = [[c.terms.get(m, GR_ZERO) for m in monos] for c in coeffs]
    red, pivots = rref(rows)
    reg = coeffs[0].reg
    return [Scalar({m: red[i][j] for j, m in enumerate(monos) if red[i][j]}, reg)
            for i in range(len(pivots))]


def _theta_closedness(spec: AlgebraSpec, reg: ParamRegistry, names: list[str]) \
        -> tuple[ParamRegistry, dict[str, Scalar], list[str], list[Scalar]]:
    """Normal form for d(theta) = 0: each coefficient becomes zero, real,
    imaginary, or stays free; anything else is returned as leftover equations."""
    frame = spec.frame
    theta = Form.zero(frame)
    for j, nm in enumerate(names, start=1):
        x = Scalar.var(nm, reg)
        theta = theta + Form.monomial(frame, (j,), x) \
            + Form.monomial(frame, (frame.conj_index(j),), x.conj())
    equations = list(exterior_d(spec, theta).terms.values())

    zero: set[str] = set()
    real: set[str] = set()
    imag: set[str] = set()
    name_set = set(names)

    def substituted(p: Scalar) -> Scalar:
        terms: dict = {}
        for mono, coeff in p.terms.items():
            if any(name in zero for (name, _), _ in mono):
                continue
            sign = GR_ONE
            merged: dict = {}
            for (name, conjed), e in mono:
                if name in real and conjed:
                    key = (name, False)
                elif name in imag and conjed:
                    key = (name, False)
                    if e % 2:
                        sign = -sign
                else:
                    key = (name, conjed)
                merged[key] = merged.get(key, 0) + e
            key_t = tuple(sorted(merged.items()))
            c = coeff * sign
            prev = terms.get(key_t, GR_ZERO) + c
            if prev:
                terms[key_t] = prev
            else:
                terms.pop(key_t, None)
        return Scalar(terms, p.reg)

    leftover: list[Scalar] = []
    changed = True
    while changed:
        changed = False
        current = [q for q in (substituted(e) for e in equations) if not q.is_zero()]
        groups: dict[tuple[str, bool], list[Scalar]] = {}
        pair_eqs: list[tuple[str, Scalar, Scalar]] = []
        for eq in current:
            theta_deg_ok = all(
                sum(e for (name, _), e in mono if name in name_set) <= 1
                for mono in eq.terms)
            vars_in = {name for mono in eq.terms for (name, _), _ in mono
                       if name in name_set}
            if not theta_deg_ok or len(vars_in) != 1:
                continue
            name = vars_in.pop()
            cp = Scalar({m2: c for m, c in eq.terms.items()
                         for m2 in [_strip_var(m, (name, False))] if m2 is not None}, eq.reg)
            cc = Scalar({m2: c for m, c in eq.terms.items()
                         for m2 in [_strip_var(m, (name, True))] if m2 is not None}, eq.reg)
            recon = cp * Scalar.var(name, eq.reg) + cc * Scalar.var(name, eq.reg, conjugated=True)
            if recon != eq:
                continue
            if cc.is_zero() and not cp.is_zero():
                groups.setdefault((name, False), []).append(cp)
            elif cp.is_zero() and not cc.is_zero():
                groups.setdefault((name, True), []).append(cc)
            else:
                pair_eqs.append((name, cp, cc))
        for (name, _conjed), coeffs in groups.items():
            if name in zero:
                continue
            for combo in _scalar_row_space(coeffs):
                if provably_nonzero(combo):
                    zero.add(name)
                    changed = True
                    break
        for name, cp, cc in pair_eqs:
            if name in zero or name in real or name in imag:
                continue
            if cp.is_const() and cc.is_const() and not cp.is_zero():
                a, b = cp.const_value(), cc.const_value()
                if a + b == GR_ZERO:
                    real.add(name)
                    changed = True
                elif a == b:
                    imag.add(name)
                    changed = True
                elif (a * a.conj()) != (b * b.conj()):
                    zero.add(name)
                    changed = True
        if not changed:
            leftover = current

    new_reg = EMPTY_REGISTRY.merged(spec.params)
    subs: dict[str, Scalar] = {}
    notes: list[str] = []
    for nm in names:
        if nm in zero:
            subs[nm] = Scalar.const(0, new_reg)
            notes.append(f"{nm} = 0")
        elif nm in real:
            new_reg = new_reg.with_real(nm)
            subs[nm] = Scalar.var(nm, new_reg)
            notes.append(f"{nm} real")
        elif nm in imag:
            new_reg = new_reg.with_real(nm + "_im")
            subs[nm] = Scalar.i(new_reg) * Scalar.var(nm + "_im", new_reg)
            notes.append(f"{nm} imaginary")
        else:
            new_reg = new_reg.with_complex(nm)
            subs[nm] = Scalar.var(nm, new_reg)
    return new_reg, subs, notes, leftover


def build_ansatz(spec: AlgebraSpec, mode: str, k: int | None = None,
                 reduce_offdiag: bool = False) -> GenericAnsatz:
    """Generic structure ansatz for the requested conformal-closure mode.

    ``reduce_offdiag`` drops the v, z off-diagonal unknowns (the standard
    normal form for invariant Hermitian metrics on the algebras where a
    coframe change makes them vanish).
    """
    if mode not in MODES:
        raise FeasibilityError(f"unknown mode {mode!r}; expected one of {MODES}")
    frame = spec.frame
    if frame.kind != COMPLEX_FRAME:
        raise FeasibilityError("ansatz construction needs a complex frame")
    n = frame.n
    if n not in _DIAG_NAMES:
        raise FeasibilityError(f"ansatz names are defined for ranks {sorted(_DIAG_NAMES)}")

    reg = EMPTY_REGISTRY.merged(spec.params)
    diag = list(_DIAG_NAMES[n])
    for nm in diag:
        reg = reg.with_real(nm, positive=True)
    off_names = []
    for (_j, _k), nm in sorted(_OFF_NAMES[n].items()):
        if reduce_offdiag and nm in ("v", "z"):
            continue
        reg = reg.with_complex(nm)
        off_names.append(nm)
    with_two_zero = mode == "lcht"
    tz_names = []
    if with_two_zero:
        for (_j, _k), nm in sorted(_TWO_ZERO_NAMES[n].items()):
            reg = reg.with_complex(nm)
            tz_names.append(nm)

    with_theta = mode in ("lcK", "lcb", "lcht")
    theta = Form.zero(frame)
    notes: list[str] = []
    leftover: list[Scalar] = []
    theta_names: list[str] = []
    if with_theta:
        tn = _THETA_NAMES[n]
        treg = reg
        for nm in tn:
            treg = treg.with_complex(nm)
        treg2, subs, notes, leftover = _theta_closedness(spec, treg, tn)
        reg = reg.merged(treg2)
        for j, nm in enumerate(tn, start=1):
            s = subs[nm]
            if not s.is_zero():
                theta = theta + Form.monomial(frame, (j,), s) \
                    + Form.monomial(frame, (frame.conj_index(j),), s.conj())
            for v in sorted(s.variables()):
                if v not in theta_names and v not in spec.params:
                    theta_names.append(v)

    Omega = Form.zero(frame)
    for j, nm in enumerate(diag, start=1):
        Omega = Omega + Form.monomial(frame, (j, n + j), Scalar.i(reg) * Scalar.var(nm, reg))
    for (j, kk), nm in sorted(_OFF_NAMES[n].items()):
        if reduce_offdiag and nm in ("v", "z"):
            continue
        x = Scalar.var(nm, reg)
        Omega = Omega + Form.monomial(frame, (j, n + kk), x) \
            - Form.monomial(frame, (kk, n + j), x.conj())
    if with_two_zero:
        for (j, kk), nm in sorted(_TWO_ZERO_NAMES[n].items()):
            x = Scalar.var(nm, reg)
            Omega = Omega + Form.monomial(frame, (j, kk), x) \
                + Form.monomial(frame, (n + j, n + kk), x.conj())

    power = {"lcK": 1, "lcht": 1, "kahler": 1,
             "lcb": n - 1, "balanced": n - 1,
             "pluriclosed": 1, "kGauduchon": 1}[mode]
    if mode == "kGauduchon" and (k is None or not (1 <= k <= n - 1)):
        raise FeasibilityError("kGauduchon needs k in 1..n-1")

    return GenericAnsatz(spec=spec, mode=mode, power=power, reg=reg, Omega=Omega,
                         theta=theta, kG_k=k, reduce_offdiag=reduce_offdiag,
                         closedness_notes=notes, closedness_leftover=leftover,
                         diag_names=diag, off_names=off_names,
                         two_zero_names=tz_names, theta_names=theta_names)


# ---------------------------------------------------------------------------
# residual systems
# ---------------------------------------------------------------------------

def residual_conformal(spec: AlgebraSpec, Omega: Form, theta: Form, m: int) -> ResidualSystem:
    """Coefficients of d(Omega^m) - theta ^ Omega^m, one entry per monomial."""
    if not exterior_d(spec, theta).is_zero():
        raise FeasibilityError("theta must be d-closed")
    base = Omega if m == 1 else Omega.wedge_power(m)
    res = exterior_d(spec, base) - theta.wedge(base)
    entries = [ResidualEntry(mono_label(spec.frame, mo), mo, c)
               for mo, c in sorted(res.terms.items())]
    return ResidualSystem(spec, "conformal", m, entries)


def residual_pluriclosed(spec: AlgebraSpec, omega: Form) -> ResidualSystem:
    res = del_hol(spec, del_bar(spec, omega))
    entries = [ResidualEntry(mono_label(spec.frame, mo), mo, c)
               for mo, c in sorted(res.terms.items())]
    return ResidualSystem(spec, "pluriclosed", 1, entries)


def forced_zero_unknowns(system: ResidualSystem, unknowns: Iterable[str],
                         nonzero_exprs: Sequence[Scalar] = ()) -> set[str]:
    """Unknowns x with a residual equation f*x = 0 (or f*conj(x) = 0) for f a
    visibly nonzero factor, possibly after peeling declared nonzero factors."""
    targets = set(unknowns)
    forced: set[str] = set()

    def peels_to_nonzero(coeff: Scalar) -> bool:
        queue = [coeff]
        seen = 0
        while queue and seen < 64:
            c = queue.pop()
            seen += 1
            if provably_nonzero(c) or (c.is_const() and not c.is_zero()):
                return True
            for nz in nonzero_exprs:
                for factor in (nz, nz.conj()):
                    try:
                        queue.append(c.exact_div(factor))
                    except (ValueError, ZeroDivisionError):
                        continue
        return False

    for entry in system.entries:
        p = entry.poly
        if p.is_zero():
            continue
        vars_in = {name for mono in p.terms for (name, _), _ in mono if name in targets}
        if len(vars_in) != 1:
            continue
        name = vars_in.pop()
        for conjed in (False, True):
            coeff = Scalar({m2: c for m, c in p.terms.items()
                            for m2 in [_strip_var(m, (name, conjed))] if m2 is not None},
                           p.reg)
            if coeff.is_zero():
                continue
            rest = p - coeff * Scalar.var(name, p.reg, conjugated=conjed)
            if rest.is_zero() and peels_to_nonzero(coeff):
                forced.add(name)
    return forced


# ---------------------------------------------------------------------------
# positivity
# ---------------------------------------------------------------------------

def _scalar_det(m: list[list[Scalar]]) -> Scalar:
    k = len(m)
    if k == 0:
        return Scalar.const(1)
    if k == 1:
        return m[0][0]
    out = Scalar.const(0)
    for j in range(k):
        if m[0][j].is_zero():
            continue
        minor = [[m[i][c] for c in range(k) if c != j] for i in range(1, k)]
        term = m[0][j] * _scalar_det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def positivity_profile(Omega: Form, n: int) -> PositivityProfile:
    """Hermitian matrix of the i-normalized (1,1)-part with leading minors."""
    minus_i = Scalar.const(-GR_I)
    hmat = [[Omega.coeff((j, n + kk)) * minus_i for kk in range(1, n + 1)]
            for j in range(1, n + 1)]
    for j in range(n):
        for kk in range(n):
            if hmat[kk][j] != hmat[j][kk].conj():
                raise FeasibilityError("(1,1)-part is not Hermitian-real")
    minors = [_scalar_det([row[:k] for row in hmat[:k]]) for k in range(1, n + 1)]
    return PositivityProfile(hmat, minors)


def positivity_check(Omega: Form) -> tuple[PositivityProfile, bool]:
    """Exact positivity of the (1,1)-part (all leading principal minors > 0)."""
    frame = Omega.frame
    if frame.kind != COMPLEX_FRAME:
        raise FeasibilityError("positivity needs a complex frame")
    if not Omega.is_constant():
        raise FeasibilityError("positivity check needs constant coefficients")
    profile = positivity_profile(Omega, frame.n)
    verdict = all(mv.const_value().is_real() and mv.const_value().re > 0
                  for mv in profile.minors)
    return profile, verdict


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------

def evaluate_ansatz(ansatz: GenericAnsatz, assignment: Mapping[str, GaussRat | RatLike]) \
        -> tuple[Form, Form]:
    Om = ansatz.Omega.evaluate_params(assignment, check_constraints=False)
    th = ansatz.theta.evaluate_params(assignment, check_constraints=False)
    return Om, th


def verify_witness(ansatz: GenericAnsatz, assignment: Mapping[str, GaussRat | RatLike]) \
        -> Witness | None:
    """Re-verify from scratch: residual exactly empty, minors exactly positive."""
    Om, th = evaluate_ansatz(ansatz, assignment)
    spec = ansatz.spec
    if ansatz.mode in ("lcK", "lcb", "lcht", "balanced", "kahler"):
        if not residual_conformal(spec, Om, th, ansatz.power).is_empty():
            return None
    elif ansatz.mode == "pluriclosed":
        if not residual_pluriclosed(spec, Om).is_empty():
            return None
    else:
        if not k_gauduchon_scalar(spec, Om, ansatz.kG_k).is_zero():
            return None
    profile, positive = positivity_check(Om)
    if not positive:
        return None
    minors = [mv.const_value() for mv in profile.minors]
    full = {nm: GaussRat.of(assignment.get(nm, 0)) for nm in ansatz.unknown_names()}
    return Witness(ansatz.mode, full, Om, th, minors)


def real_closed_one_forms(spec: AlgebraSpec) -> list[Form]:
    """Basis of the real d-closed invariant 1-forms (the Lee form candidates)."""
    frame = spec.frame
    if frame.kind == REAL_FRAME:
        gens = [Form.gen(frame, j) for j in range(1, frame.dim + 1)]
    else:
        gens = []
        for j in range(1, frame.n + 1):
            gens.append(Form.gen(frame, j) + Form.gen(frame, frame.conj_index(j)))
            gens.append((Form.gen(frame, j) - Form.gen(frame, frame.conj_index(j)))
                        .scaled(GR_I))
    images = [exterior_d(spec, g) for g in gens]
    monos = sorted({m for im in images for m in im.terms})
    rows: list[list[Fraction]] = []
    for m in monos:
        vals = [im.terms.get(m, Scalar.const(0)).const_value() for im in images]
        rows.append([v.re for v in vals])
        rows.append([v.im for v in vals])
    if not rows:
        combos = [[Fraction(1) if i == j else Fraction(0) for j in range(len(gens))]
                  for i in range(len(gens))]
    else:
        combos = nullspace(rows, Fraction(0), Fraction(1))
    out = []
    for combo in combos:
        th = Form.zero(frame)
        for c, g in zip(combo, gens):
            if c:
                th = th + g.scaled(c)
        out.append(th)
    return out


def theta_samples(spec: AlgebraSpec, extra: Sequence[Form] = (), cap: int = 400) -> list[Form]:
    """Deterministic sample of real closed invariant 1-forms: zero, suggested
    forms, the kernel basis, then small integer combinations."""
    out: list[Form] = [Form.zero(spec.frame)]
    out.extend(extra)
    basis = real_closed_one_forms(spec)
    out.extend(basis)
    for combo in itertools.product((0, 1, -1), repeat=len(basis)):
        if sum(1 for c in combo if c) < 2:
            continue
        th = Form.zero(spec.frame)
        for c, b in zip(combo, basis):
            if c:
                th = th + b.scaled(c)
        out.append(th)
        if len(out) >= cap:
            break
    seen: list[Form] = []
    for th in out:
        if not any(th == s for s in seen):
            seen.append(th)
    return seen


def _real_structure_coords(ansatz: GenericAnsatz) -> list[tuple[str, str]]:
    coords: list[tuple[str, str]] = []
    for nm in ansatz.diag_names:
        coords.append((nm, "re"))
    for nm in ansatz.off_names + ansatz.two_zero_names:
        coords.append((nm, "re"))
        coords.append((nm, "im"))
    return coords


def _assignment_from_vector(coords, vec) -> dict[str, GaussRat]:
    out: dict[str, GaussRat] = {}
    for (nm, part), val in zip(coords, vec):
        g = out.get(nm, GR_ZERO)
        out[nm] = g + (GaussRat(val) if part == "re" else GaussRat(Fraction(0), val))
    return out


def theta_assignment_for(ansatz: GenericAnsatz, theta: Form) -> dict[str, GaussRat] | None:
    """Coefficient values that realize a concrete twist within the ansatz
    family, or None when the twist is not representable (so not closed)."""
    frame = ansatz.spec.frame
    basis = basis_monomials(frame, 1)
    cols: list[list[GaussRat]] = []
    coords: list[tuple[str, str]] = []
    for nm in ansatz.theta_names:
        parts = ("re",) if ansatz.reg[nm].kind == "real" else ("re", "im")
        for part in parts:
            unit = GR_ONE if part == "re" else GR_I
            values: dict[str, GaussRat] = {o: GR_ZERO for o in ansatz.theta_names}
            values[nm] = unit
            image = ansatz.theta.evaluate_params(values, check_constraints=False)
            cols.append(form_to_vector(image, basis))
            coords.append((nm, part))
    target = form_to_vector(theta, basis)
    if not cols:
        return {} if not any(target) else None
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(basis))]
    sol = solve(rows, target, GR_ZERO)
    if sol is None:
        return None
    out: dict[str, GaussRat] = {}
    for (nm, part), val in zip(coords, sol):
        g = out.get(nm, GR_ZERO)
        out[nm] = g + (val if part == "re" else val * GR_I)
    return out


def _conformal_kernel(ansatz: GenericAnsatz, theta: Form,
                      coords: list[tuple[str, str]]) -> list[list[Fraction]]:
    """Kernel of the real-linear map x -> d(Omega(x)) - theta ^ Omega(x)."""
    spec = ansatz.spec
    images: list[Form] = []
    names = [nm for nm, _ in coords]
    for nm, part in coords:
        unit = GR_ONE if part == "re" else GR_I
        values = {o: GR_ZERO for o in names}
        values[nm] = unit
        Om_unit = ansatz.Omega.evaluate_params(values, check_constraints=False)
        images.append(exterior_d(spec, Om_unit) - theta.wedge(Om_unit))
    monos = sorted({m for im in images for m in im.terms})
    rows: list[list[Fraction]] = []
    for m in monos:
        vals = [im.terms.get(m, Scalar.const(0)).const_value() for im in images]
        rows.append([v.re for v in vals])
        rows.append([v.im for v in vals])
    if not rows:
        return [[Fraction(1) if i == j else Fraction(0) for j in range(len(coords))]
                for i in range(len(coords))]
    return nullspace(rows, Fraction(0), Fraction(1))


def witness_search(spec: AlgebraSpec, ansatz: GenericAnsatz, budget: int = 10000,
                   seed: int = 0, suggested: Sequence[Mapping] = (),
                   suggested_thetas: Sequence[Form] = ()) -> Witness | None:
    """Deterministic witness search; None means UNKNOWN (never nonexistence).

    Strategy for the degree-2 conditions: enumerate closed twisting forms over
    a deterministic sample, solve the then-linear condition exactly, and walk
    the kernel through canonical and seeded-random rational points, checking
    positivity exactly.  Registered witness formulas are tried first.
    """
    for f in spec.d_table.values():
        if not f.is_constant():
            raise FeasibilityError("witness search needs instantiated parameters")
    rng = random.Random(seed)
    for cand in suggested:
        w = verify_witness(ansatz, cand)
        if w is not None:
            return w

    if ansatz.mode in ("lcK", "lcht", "kahler"):
        thetas = [Form.zero(spec.frame)] if ansatz.mode == "kahler" \
            else theta_samples(spec, extra=list(suggested_thetas))
        coords = _real_structure_coords(ansatz)
        per_theta = max(1, budget // max(len(thetas), 1))
        for theta in thetas:
            kern = _conformal_kernel(ansatz, theta, coords)
            if not kern:
                continue
            candidates: list[list[Fraction]] = [
                [sum(v[i] for v in kern) for i in range(len(coords))]]
            candidates.extend(kern)
            for _ in range(per_theta):
                combo = [Fraction(rng.randint(-16, 16), rng.randint(1, 16)) for _ in kern]
                candidates.append([sum(c * v[i] for c, v in zip(combo, kern))
                                   for i in range(len(coords))])
            for vec in candidates:
                assignment = _assignment_from_vector(coords, vec)
                Om = ansatz.Omega.evaluate_params(assignment, check_constraints=False)
                try:
                    profile, positive = positivity_check(Om)
                except FeasibilityError:
                    continue
                if not positive:
                    continue
                if not (exterior_d(spec, Om) - theta.wedge(Om)).is_zero():
                    continue
                minors = [mv.const_value() for mv in profile.minors]
                return Witness(ansatz.mode, assignment, Om, theta, minors)
        return None

    # remaining modes: direct sampling of the metric unknowns over the twist set
    if ansatz.mode in ("balanced", "pluriclosed", "kGauduchon"):
        twist_assignments = [{t: GR_ZERO for t in ansatz.theta_names}]
    else:
        twist_assignments = []
        for theta in theta_samples(spec, extra=list(suggested_thetas)):
            values = theta_assignment_for(ansatz, theta)
            if values is not None:
                twist_assignments.append(values)
    tries = 0
    sample = 0
    while tries < budget:
        structure: dict[str, GaussRat] = {}
        if sample == 0:
            structure = {nm: GR_ONE for nm in ansatz.diag_names}
            structure.update({nm: GR_ZERO for nm in ansatz.off_names
                              + ansatz.two_zero_names})
        else:
            for nm in ansatz.diag_names:
                structure[nm] = GaussRat(Fraction(rng.randint(1, 16), rng.randint(1, 4)))
            for nm in ansatz.off_names + ansatz.two_zero_names:
                structure[nm] = GaussRat(Fraction(rng.randint(-2, 2), rng.randint(4, 8)),
                                         Fraction(rng.randint(-2, 2), rng.randint(4, 8)))
        sample += 1
        for twist in twist_assignments:
            tries += 1
            w = verify_witness(ansatz, {**structure, **twist})
            if w is not None:
                return w
            if tries >= budget:
                break
    return None


# ---------------------------------------------------------------------------
# exactness, contact structures, scalar invariants
# ---------------------------------------------------------------------------

def d_theta_exact_solve(spec: AlgebraSpec, Omega: Form, theta: Form) -> Form | None:
    """Solve Omega = d(beta) - theta ^ beta for an invariant 1-form beta."""
    if not exterior_d(spec, theta).is_zero():
        raise FeasibilityError("theta must be d-closed")
    res = exterior_d(spec, Omega) - theta.wedge(Omega)
    if not res.is_zero():
        raise FeasibilityError("Omega is not d_theta-closed")
    frame = spec.frame
    src = basis_monomials(frame, 1)
    dst = basis_monomials(frame, 2)
    mat = matrix_of(lambda f: exterior_d(spec, f) - theta.wedge(f), frame, src, dst)
    sol = solve(mat.entries, form_to_vector(Omega, dst), GR_ZERO)
    if sol is None:
        return None
    return vector_to_form(frame, sol, src)


def contact_polynomial(spec: AlgebraSpec) -> tuple[Scalar, Form, ParamRegistry]:
    """Top coefficient of alpha ^ (d alpha)^(n-1) for a generic 1-form alpha."""
    frame = spec.frame
    dim = frame.dim
    if dim % 2 == 0:
        raise FeasibilityError("contact structures need odd dimension")
    half = (dim - 1) // 2
    reg = spec.params
    for j in range(1, dim + 1):
        reg = reg.with_real(f"x{j}")
    alpha = Form.zero(frame)
    for j in range(1, dim + 1):
        alpha = alpha + Form.monomial(frame, (j,), Scalar.var(f"x{j}", reg))
    da = exterior_d(spec, alpha)
    poly = alpha.wedge(da.wedge_power(half)).top_coefficient()
    return poly, alpha, reg


def contact_search(spec: AlgebraSpec, seed: int = 0, budget: int = 2000) -> Form | None:
    """A contact 1-form, or None when none exists (decided symbolically)."""
    poly, alpha, _reg = contact_polynomial(spec)
    if poly.is_zero():
        return None
    dim = spec.frame.dim
    rng = random.Random(seed)
    candidates: list[list[int]] = [[1 if i == j else 0 for i in range(dim)]
                                   for j in range(dim)]
    for combo in itertools.product((0, 1, -1), repeat=dim):
        if sum(1 for c in combo if c) >= 2:
            candidates.append(list(combo))
    while len(candidates) < budget:
        candidates.append([rng.randint(-6, 6) for _ in range(dim)])
    for vec in candidates[:budget]:
        assignment = {f"x{j + 1}": Fraction(v) for j, v in enumerate(vec)}
        if not poly.evaluate(assignment).is_zero():
            return alpha.evaluate_params(assignment)
    return None


def k_gauduchon_scalar(spec: AlgebraSpec, omega: Form, k: int) -> Scalar:
    """Scalar c with i ddbar(omega^k) ^ omega^(n-k-1) = c * omega^n / n!."""
    frame = spec.frame
    n = frame.n
    if not (1 <= k <= n - 1):
        raise FeasibilityError("k must lie in 1..n-1")
    reg = omega.registry()
    lhs = del_hol(spec, del_bar(spec, omega.wedge_power(k))).wedge(
        omega.wedge_power(n - k - 1)).top_coefficient() * Scalar.i(reg)
    if lhs.is_zero():
        return Scalar.const(0, reg)
    topvol = omega.wedge_power(n).top_coefficient() \
        * Scalar.const(Fraction(1, math.factorial(n)), reg)
    if topvol.is_const():
        return lhs * Scalar.const(topvol.const_value().inverse(), reg)
    return lhs.exact_div(topvol)


def positivity_coefficient(spec: AlgebraSpec, theta: Form, omega: Form) -> GaussRat:
    """Ratio of i theta10 ^ conj(theta10) ^ omega^(n-1)/(n-1)! to omega^n/n!.

    Nonnegative, and zero exactly when the (1,0)-part of theta vanishes.
    """
    frame = spec.frame
    n = frame.n
    if not omega.is_constant() or not theta.is_constant():
        raise FeasibilityError("positivity coefficient needs constant coefficients")
    _, positive = positivity_check(omega)
    if not positive:
        raise FeasibilityError("omega must be positive")
    t10 = theta.bidegree_project(Bidegree(1, 0))
    num = t10.wedge(t10.conjugate()).wedge(omega.wedge_power(n - 1)) \
        .scaled(Fraction(1, math.factorial(n - 1))).scaled(GR_I).top_coefficient()
    den = omega.wedge_power(n).scaled(Fraction(1, math.factorial(n))).top_coefficient()
    return num.const_value() / den.const_value()
