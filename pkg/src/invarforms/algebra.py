"""Lie-algebra-with-complex-structure specifications: parsing and validation.

An :class:`AlgebraSpec` stores the structure equations ``d g^j`` of an
invariant co-frame, over a real frame ``e1..em`` or a complex frame
``phi1..phin`` / ``cphi1..cphin``.  Parsers cover Salamon tuple notation,
a line-oriented DSL, and a JSON encoding; validation checks the Jacobi
identity (``d^2 = 0``) symbolically in any declared parameters, plus
integrability, unimodularity, nilpotency, and whether the complex structure
is abelian.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .expr import ExprError, _Parser, _tokenize, parse_scalar, scalar_to_expr
from .forms import (COMPLEX_FRAME, REAL_FRAME, Bidegree, Form, Frame, basis_monomials)
from .linalg import rank_bareiss
from .scalars import (EMPTY_REGISTRY, GaussRat, ParamRegistry, RegistryError, Scalar)


class ParseError(ValueError):
    """Malformed algebra specification text."""


@dataclass(frozen=True)
class ParamConstraint:
    """Instantiation-time predicate on parameter values (metadata, not ring law)."""

    description: str
    check: Callable[[Mapping[str, GaussRat]], bool]


@dataclass
class AlgebraSpec:
    frame: Frame
    d_table: dict[int, Form]          # d of generators 1..n (complex) or 1..dim (real)
    params: ParamRegistry = EMPTY_REGISTRY
    constraints: tuple[ParamConstraint, ...] = ()
    name: str = ""

    def d_of_generator(self, g: int) -> Form:
        if self.frame.kind == COMPLEX_FRAME and g > self.frame.n:
            return self.d_of_generator(g - self.frame.n).conjugate()
        return self.d_table.get(g, Form.zero(self.frame))

    def instantiate(self, assignment: Mapping[str, GaussRat | int | Fraction],
                    name_suffix: str = "") -> "AlgebraSpec":
        """Substitute parameter values, enforcing constraint predicates."""
        values = {k: GaussRat.of(v) for k, v in assignment.items()}
        for con in self.constraints:
            if not con.check(values):
                raise ValueError(f"constraint violated: {con.description}")
        table = {g: f.evaluate_params(values) for g, f in self.d_table.items()}
        tag = name_suffix or ("@" + ",".join(f"{k}={v}" for k, v in sorted(assignment.items())))
        return AlgebraSpec(self.frame, table, self.params, (), name=self.name + tag)


@dataclass
class ValidationReport:
    jacobi_valid: bool
    integrable: bool | None      # None for real frames without complex structure
    unimodular: bool
    nilpotent: bool
    abelian_J: bool | None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.jacobi_valid and (self.integrable is not False)


# ---------------------------------------------------------------------------
# exterior differential (graded Leibniz extension of the d-table)
# ---------------------------------------------------------------------------

def exterior_d(spec: AlgebraSpec, form: Form) -> Form:
    if form.frame != spec.frame:
        raise ValueError("form frame does not match algebra frame")
    out = Form.zero(spec.frame)
    for mono, coeff in form.terms.items():
        for pos, g in enumerate(mono):
            dg = spec.d_of_generator(g)
            if dg.is_zero():
                continue
            left = Form.monomial(spec.frame, mono[:pos], coeff if pos % 2 == 0 else -coeff)
            rest = Form.monomial(spec.frame, mono[pos + 1:])
            out = out + left.wedge(dg).wedge(rest)
    return out


def _d_bidegree_shift(spec: AlgebraSpec, form: Form, dp: int, dq: int) -> Form:
    out = Form.zero(spec.frame)
    by_bidegree: dict[tuple[int, int], Form] = {}
    for mono, coeff in form.terms.items():
        pq = form.mono_bidegree(mono)
        comp = by_bidegree.setdefault(pq, Form.zero(spec.frame))
        comp.terms[mono] = coeff
    for (p, q), comp in by_bidegree.items():
        out = out + exterior_d(spec, comp).bidegree_project(Bidegree(p + dp, q + dq))
    return out


def del_hol(spec: AlgebraSpec, form: Form) -> Form:
    """The (1,0) component of d (integrable complex frames)."""
    return _d_bidegree_shift(spec, form, 1, 0)


def del_bar(spec: AlgebraSpec, form: Form) -> Form:
    """The (0,1) component of d (integrable complex frames)."""
    return _d_bidegree_shift(spec, form, 0, 1)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _structure_brackets(spec: AlgebraSpec) -> list[list[Scalar]]:
    """Bracket vectors [X_a, X_b] in frame coordinates, rows per pair a<b."""
    dim = spec.frame.dim
    rows = []
    for a in range(1, dim + 1):
        for b in range(a + 1, dim + 1):
            row = [-spec.d_of_generator(k).coeff((a, b)) for k in range(1, dim + 1)]
            rows.append(row)
    return rows


def _span_subset(vectors: list[list[Scalar]], one: Scalar) -> list[list[Scalar]]:
    basis: list[list[Scalar]] = []
    r = 0
    for v in vectors:
        if not any(v):
            continue
        if rank_bareiss(basis + [v], one) > r:
            basis.append(v)
            r += 1
    return basis


def _is_nilpotent(spec: AlgebraSpec) -> bool:
    dim = spec.frame.dim
    one = Scalar.const(1, spec.params)
    brackets = {}
    for a in range(1, dim + 1):
        for b in range(1, dim + 1):
            if a < b:
                brackets[(a, b)] = [-spec.d_of_generator(k).coeff((a, b))
                                    for k in range(1, dim + 1)]
    layer = _span_subset(list(brackets.values()), one)
    prev_rank = rank_bareiss(layer, one) if layer else 0
    while prev_rank:
        nxt: list[list[Scalar]] = []
        for v in layer:
            for a in range(1, dim + 1):
                w = [Scalar.const(0, spec.params)] * dim
                for b in range(1, dim + 1):
                    cb = v[b - 1]
                    if not cb:
                        continue
                    pair = (a, b) if a < b else (b, a)
                    if pair not in brackets or a == b:
                        continue
                    vec = brackets[pair]
                    sgn = 1 if a < b else -1
                    w = [x + (cb * y if sgn > 0 else -(cb * y)) for x, y in zip(w, vec)]
                if any(w):
                    nxt.append(w)
        layer = _span_subset(nxt, one)
        r = rank_bareiss(layer, one) if layer else 0
        if r == 0:
            return True
        if r >= prev_rank:
            return False
        prev_rank = r
    return True


def validate_spec(spec: AlgebraSpec) -> ValidationReport:
    frame = spec.frame
    failures: list[str] = []

    jacobi = True
    gens = range(1, frame.n + 1) if frame.kind == COMPLEX_FRAME else range(1, frame.dim + 1)
    for g in gens:
        dd = exterior_d(spec, spec.d_of_generator(g))
        if not dd.is_zero():
            jacobi = False
            failures.append(f"d^2({frame.gen_name(g)}) = {dd}")

    integrable = None
    abelian = None
    if frame.kind == COMPLEX_FRAME:
        integrable = True
        abelian = True
        for g in range(1, frame.n + 1):
            dg = spec.d_of_generator(g)
            bad = dg.bidegree_project(Bidegree(0, 2))
            if not bad.is_zero():
                integrable = False
                failures.append(f"(0,2) part of d({frame.gen_name(g)}) = {bad}")
            if dg != dg.bidegree_project(Bidegree(1, 1)):
                abelian = False

    unimodular = True
    for mono in basis_monomials(frame, frame.dim - 1):
        top = exterior_d(spec, Form.monomial(frame, mono)).top_coefficient()
        if not top.is_zero():
            unimodular = False
            failures.append(f"d({mono}) has top coefficient {top}")
            break

    nilpotent = _is_nilpotent(spec) if jacobi else False

    return ValidationReport(jacobi, integrable, unimodular, nilpotent, abelian, failures)


# ---------------------------------------------------------------------------
# Salamon tuple notation, e.g. (0,0,0,0,0,12+34)
# ---------------------------------------------------------------------------

_SALAMON_TERM = re.compile(r"^([+-]?)((?:\d+(?:/\d+)?)??)(\d)(\d)$")


def parse_salamon(text: str) -> AlgebraSpec:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ParseError("expected a parenthesized tuple")
    entries = [e.strip() for e in body[1:-1].split(",")]
    dim = len(entries)
    if dim > 9:
        raise ParseError("Salamon notation supports dimension at most 9")
    frame = Frame(REAL_FRAME, dim)
    d_table: dict[int, Form] = {}
    for j, entry in enumerate(entries, start=1):
        if entry == "0":
            continue
        form = Form.zero(frame)
        pieces = re.split(r"(?=[+-])", entry)
        for piece in pieces:
            piece = piece.strip()
            if not piece:
                continue
            m = _SALAMON_TERM.match(piece)
            if not m:
                raise ParseError(f"malformed term {piece!r} in entry {j}")
            sign_s, rat_s, a_s, b_s = m.groups()
            a, b = int(a_s), int(b_s)
            if not (1 <= a <= dim and 1 <= b <= dim):
                raise ParseError(f"index out of range in {piece!r}")
            coeff = Fraction(rat_s) if rat_s else Fraction(1)
            if sign_s == "-":
                coeff = -coeff
            form = form + Form.monomial(frame, (a, b), coeff)
        if not form.is_zero():
            d_table[j] = form
    return AlgebraSpec(frame, d_table, name=text.strip())


def to_salamon(spec: AlgebraSpec) -> str:
    if spec.frame.kind != REAL_FRAME:
        raise ValueError("Salamon notation is for real frames")
    entries = []
    for j in range(1, spec.frame.dim + 1):
        dg = spec.d_of_generator(j)
        if dg.is_zero():
            entries.append("0")
            continue
        parts = []
        for mono in sorted(dg.terms):
            c = dg.terms[mono].const_value()
            if not c.is_real():
                raise ValueError("Salamon notation needs rational coefficients")
            r = c.re
            s = "" if r == 1 else ("-" if r == -1 else str(r))
            term = f"{s}{mono[0]}{mono[1]}"
            if parts and not term.startswith("-"):
                term = "+" + term
            parts.append(term)
        entries.append("".join(parts))
    return "(" + ",".join(entries) + ")"


# ---------------------------------------------------------------------------
# form expressions (shared by the DSL and the CLI --omega/--theta flags)
# ---------------------------------------------------------------------------

_GEN_NAME = re.compile(r"^(phi|cphi|e)(\d+)$")


class _FormParser(_Parser):
    """Extends the scalar parser with generator atoms; '^' doubles as wedge."""

    def __init__(self, tokens: list[str], reg: ParamRegistry, frame: Frame):
        super().__init__(tokens, reg)
        self.frame = frame

    def _gen_atom(self, tok: str):
        m = _GEN_NAME.match(tok)
        if not m:
            return None
        word, num = m.group(1), int(m.group(2))
        if self.frame.kind == COMPLEX_FRAME:
            if word == "phi" and 1 <= num <= self.frame.n:
                return Form.gen(self.frame, num)
            if word == "cphi" and 1 <= num <= self.frame.n:
                return Form.gen(self.frame, num + self.frame.n)
            if word == "e":
                raise ParseError("real generators in a complex-frame expression")
        else:
            if word == "e" and 1 <= num <= self.frame.dim:
                return Form.gen(self.frame, num)
        raise ParseError(f"generator {tok!r} out of range for frame {self.frame}")

    def parse_expr(self):
        value = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            value = self._combine(value, rhs, 1 if op == "+" else -1)
        return value

    def _combine(self, a, b, sign: int):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b if sign > 0 else a - b
        a = self._to_form(a)
        b = self._to_form(b)
        return a + b if sign > 0 else a - b

    def _to_form(self, v) -> Form:
        if isinstance(v, Form):
            return v
        return Form.unit(self.frame, v)

    def parse_term(self):
        value = self.parse_factor()
        while self.peek() in ("*", "/", "^"):
            op = self.take()
            rhs = self.parse_factor()
            if op == "/":
                if not (isinstance(rhs, Scalar) and rhs.is_const() and not rhs.is_zero()):
                    raise ExprError("division is only allowed by nonzero constants")
                inv = Scalar.const(rhs.const_value().inverse(), self.reg)
                value = value * inv if isinstance(value, Scalar) else value.scaled(inv)
            elif isinstance(value, Form) or isinstance(rhs, Form):
                if isinstance(value, Form) and isinstance(rhs, Form):
                    value = value.wedge(rhs)
                elif isinstance(value, Form):
                    value = value.scaled(rhs)
                else:
                    value = rhs.scaled(value)
            else:
                value = value * rhs
        return value

    def parse_factor(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.parse_atom()
        if self.peek() == "^" and isinstance(value, Scalar):
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if nxt is not None and nxt.isdigit():
                self.take()
                value = value ** int(self.take())
        if sign < 0:
            value = -value if isinstance(value, Scalar) else value.scaled(-1)
        return value

    def parse_atom(self):
        tok = self.peek()
        if tok is not None and _GEN_NAME.match(tok):
            self.take()
            return self._gen_atom(tok)
        return super().parse_atom()


def parse_form(text: str, frame: Frame, reg: ParamRegistry = EMPTY_REGISTRY) -> Form:
    parser = _FormParser(_tokenize(text), reg, frame)
    value = parser.parse_expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input at {parser.tokens[parser.pos:]!r}")
    return value if isinstance(value, Form) else Form.unit(frame, value)


def form_to_expr(form: Form) -> str:
    if form.is_zero():
        return "0"
    parts = []
    for mono in sorted(form.terms, key=lambda m: (len(m), m)):
        c = scalar_to_expr(form.terms[mono])
        head = "^".join(form.frame.gen_name(g) for g in mono) if mono else "1"
        parts.append(f"({c})*{head}" if c not in ("1",) else head)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# the line-oriented DSL
# ---------------------------------------------------------------------------

def parse_complex_dsl(text: str) -> AlgebraSpec:
    frame: Frame | None = None
    reg = EMPTY_REGISTRY
    d_table: dict[int, Form] = {}
    name = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("name "):
                name = line[5:].strip()
            elif line.startswith("frame "):
                _, kind, n_s = line.split()
                if kind not in (COMPLEX_FRAME, REAL_FRAME):
                    raise ParseError(f"unknown frame kind {kind!r}")
                frame = Frame(kind, int(n_s))
            elif line.startswith("param "):
                body = line[6:]
                if ":" not in body:
                    raise ParseError("param line needs `name : kind [tags]`")
                pname, rhs = (s.strip() for s in body.split(":", 1))
                words = rhs.split()
                kind, tags = words[0], set(words[1:])
                bad = tags - {"nonzero", "positive"}
                if bad:
                    raise ParseError(f"unknown tags {sorted(bad)}")
                if kind == "real":
                    reg = reg.with_real(pname, nonzero="nonzero" in tags,
                                        positive="positive" in tags)
                elif kind == "complex":
                    if "positive" in tags:
                        raise ParseError("complex parameters cannot be positive")
                    reg = reg.with_complex(pname, nonzero="nonzero" in tags)
                else:
                    raise ParseError(f"unknown parameter kind {kind!r}")
            elif line.startswith("d "):
                if frame is None:
                    raise ParseError("`frame` must come before structure equations")
                lhs, rhs = (s.strip() for s in line[2:].split("=", 1))
                m = _GEN_NAME.match(lhs)
                if not m:
                    raise ParseError(f"cannot parse generator {lhs!r}")
                word, num = m.group(1), int(m.group(2))
                if frame.kind == COMPLEX_FRAME:
                    if word != "phi" or not (1 <= num <= frame.n):
                        raise ParseError(f"structure equations are given on phi1..phi{frame.n}")
                    gen = num
                else:
                    if word != "e" or not (1 <= num <= frame.dim):
                        raise ParseError(f"structure equations are given on e1..e{frame.dim}")
                    gen = num
                form = parse_form(rhs, frame, reg)
                if form.terms and form.degree() != 2:
                    raise ParseError(f"d {lhs} must be a 2-form")
                if not form.is_zero():
                    d_table[gen] = form
            else:
                raise ParseError(f"unrecognized line {line!r}")
        except (ExprError, RegistryError, ParseError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if frame is None:
        raise ParseError("missing `frame` header")
    return AlgebraSpec(frame, d_table, reg, name=name)


def to_complex_dsl(spec: AlgebraSpec) -> str:
    lines = []
    if spec.name:
        lines.append(f"name {spec.name}")
    lines.append(f"frame {spec.frame.kind} {spec.frame.n}")
    for s in spec.params.specs():
        tags = []
        if s.positive:
            tags.append("positive")
        elif s.nonzero:
            tags.append("nonzero")
        lines.append(f"param {s.name} : {s.kind}{(' ' + ' '.join(tags)) if tags else ''}")
    gens = range(1, spec.frame.n + 1) if spec.frame.kind == COMPLEX_FRAME \
        else range(1, spec.frame.dim + 1)
    for g in gens:
        dg = spec.d_of_generator(g)
        lines.append(f"d {spec.frame.gen_name(g)} = {form_to_expr(dg)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def _mono_to_json(frame: Frame, mono: tuple[int, ...]) -> list[int]:
    if frame.kind == REAL_FRAME:
        return list(mono)
    return [g if g <= frame.n else -(g - frame.n) for g in mono]


def _mono_from_json(frame: Frame, mon: Sequence[int]) -> tuple[int, ...]:
    out = []
    for g in mon:
        if g == 0:
            raise ParseError("0 is not a generator index")
        if frame.kind == REAL_FRAME:
            if g < 0:
                raise ParseError("real frames have no conjugate indices")
            out.append(g)
        else:
            out.append(g if g > 0 else frame.n - g)
    if any(not (1 <= g <= frame.dim) for g in out):
        raise ParseError(f"generator index out of range in {list(mon)}")
    return tuple(out)


def spec_to_json(spec: AlgebraSpec) -> str:
    d_obj = {}
    gens = range(1, spec.frame.n + 1) if spec.frame.kind == COMPLEX_FRAME \
        else range(1, spec.frame.dim + 1)
    for g in gens:
        dg = spec.d_of_generator(g)
        if dg.is_zero():
            continue
        d_obj[spec.frame.gen_name(g)] = [
            {"coeff": scalar_to_expr(dg.terms[m]), "mon": _mono_to_json(spec.frame, m)}
            for m in sorted(dg.terms)
        ]
    obj = {
        "frame": spec.frame.kind,
        "n": spec.frame.n,
        "params": [{"name": s.name, "kind": s.kind, "nonzero": s.nonzero,
                    "positive": s.positive} for s in spec.params.specs()],
        "d": d_obj,
    }
    if spec.name:
        obj["name"] = spec.name
    return json.dumps(obj, sort_keys=True)


def spec_from_json(text: str) -> AlgebraSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    frame = Frame(obj["frame"], int(obj["n"]))
    reg = EMPTY_REGISTRY
    for p in obj.get("params", []):
        if p["kind"] == "real":
            reg = reg.with_real(p["name"], nonzero=p.get("nonzero", False),
                                positive=p.get("positive", False))
        else:
            reg = reg.with_complex(p["name"], nonzero=p.get("nonzero", False))
    d_table: dict[int, Form] = {}
    for gen_name, entries in obj.get("d", {}).items():
        m = _GEN_NAME.match(gen_name)
        if not m or (frame.kind == COMPLEX_FRAME and m.group(1) != "phi") \
                or (frame.kind == REAL_FRAME and m.group(1) != "e"):
            raise ParseError(f"bad generator name {gen_name!r}")
        g = int(m.group(2))
        form = Form.zero(frame)
        for entry in entries:
            mono = _mono_from_json(frame, entry["mon"])
            coeff = parse_scalar(entry["coeff"], reg)
            form = form + Form.monomial(frame, mono, coeff)
        if not form.is_zero():
            d_table[g] = form
    return AlgebraSpec(frame, d_table, reg, name=obj.get("name", ""))


def load_spec_text(text: str) -> AlgebraSpec:
    """Sniff JSON versus DSL and parse accordingly."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return spec_from_json(text)
    if stripped.startswith("("):
        return parse_salamon(stripped.splitlines()[0])
    return parse_complex_dsl(text)
