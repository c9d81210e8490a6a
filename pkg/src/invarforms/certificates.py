"""Machine-checkable nonexistence certificates over residual systems.

A certificate names a fixture, a structure mode, and a proof tree whose
every inference re-checks by exact polynomial arithmetic:

* ``combine`` appends a polynomial combination of prior equations;
* ``conjugate`` appends the conjugate of an equation;
* ``cancel`` divides an equation by declared-nonzero factors;
* ``split`` branches on an unknown being zero or nonzero;
* ``contradiction`` closes a branch with an identity ``eq = sum c_k * m_k``
  where every ``c_k`` is a positive rational, every ``m_k`` is a visibly
  nonnegative product (positivity atoms, squares of real quantities, moduli),
  and at least one summand is strictly positive under the branch assumptions.

A VALID verdict therefore proves that no assignment satisfies the residual
system together with the positivity atoms and the declared hypotheses.
Equations are referenced by residual monomial label (``mon:1-3-c1``) or by
derivation index (``#1``, ``#2``, ...) along the current branch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .algebra import AlgebraSpec
from .expr import parse_scalar, scalar_to_expr
from .feasibility import (GenericAnsatz, ResidualSystem, build_ansatz,
                          positivity_profile, provably_nonzero,
                          residual_conformal)
from .scalars import ParamRegistry, Scalar


@dataclass
class CertResult:
    valid: bool
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.valid


class _Invalid(Exception):
    pass


class _State:
    def __init__(self, eqs: dict[str, Scalar], counter: int,
                 nonzero: set[str], assumed: list[Scalar]):
        self.eqs = eqs
        self.counter = counter
        self.nonzero = nonzero
        self.assumed = assumed

    def child(self) -> "_State":
        return _State(dict(self.eqs), self.counter, set(self.nonzero), list(self.assumed))

    def append(self, poly: Scalar) -> str:
        self.counter += 1
        ref = f"#{self.counter}"
        self.eqs[ref] = poly
        return ref


class CertificateChecker:
    def __init__(self, ansatz: GenericAnsatz, system: ResidualSystem,
                 assume_nonzero: list[str]):
        self.ansatz = ansatz
        self.reg = ansatz.reg
        self.profile = positivity_profile(ansatz.Omega, ansatz.spec.frame.n)
        self.base_eqs = {f"mon:{e.label}": e.poly for e in system.entries}
        for i, eq in enumerate(ansatz.closedness_leftover, start=1):
            self.base_eqs[f"closed:{i}"] = eq
        self.assumed: list[Scalar] = []
        self.assumed_names: set[str] = set()
        for text in assume_nonzero:
            p = parse_scalar(text, self.reg)
            if len(p.terms) == 1 and list(p.terms) != [()]:
                (mono, _), = p.terms.items()
                if len(mono) == 1 and mono[0][1] == 1:
                    self.assumed_names.add(mono[0][0][0])
            self.assumed.append(p)

    # -- helpers ---------------------------------------------------------------

    def _parse(self, text: str) -> Scalar:
        return parse_scalar(text, self.reg)

    def _lookup(self, state: _State, ref: str) -> Scalar:
        if ref not in state.eqs:
            raise _Invalid(f"unknown equation reference {ref!r}")
        return state.eqs[ref]

    def _is_nonzero_name(self, state: _State, name: str) -> bool:
        if name in state.nonzero or name in self.assumed_names:
            return True
        if name in self.reg:
            spec = self.reg[name]
            return spec.nonzero or spec.positive
        return False

    def _factor_poly(self, state: _State, spec: Mapping) -> tuple[Scalar, bool, bool]:
        """Return (polynomial, is_nonnegative, is_strictly_positive)."""
        if "var" in spec:
            name = spec["var"]
            p = Scalar.var(name, self.reg)
            positive = name in self.reg and self.reg[name].positive
            return p, positive, positive
        if "sq" in spec:
            name = spec["sq"]
            if self.reg[name].kind != "real":
                raise _Invalid(f"sq factor {name!r} is not real")
            x = Scalar.var(name, self.reg)
            return x * x, True, self._is_nonzero_name(state, name)
        if "mod" in spec:
            name = spec["mod"]
            x = Scalar.var(name, self.reg)
            return x * x.conj(), True, self._is_nonzero_name(state, name)
        if "minor" in spec:
            k = int(spec["minor"])
            if not (1 <= k <= len(self.profile.minors)):
                raise _Invalid(f"no positivity minor #{k}")
            return self.profile.minors[k - 1], True, True
        if "sq_expr" in spec:
            p = self._parse(spec["sq_expr"])
            if p.conj() != p:
                raise _Invalid(f"sq_expr {spec['sq_expr']!r} is not real")
            nz = any(p == q for q in self.assumed) or provably_nonzero(p, state.nonzero)
            return p * p, True, nz
        if "mod_expr" in spec:
            p = self._parse(spec["mod_expr"])
            nz = any(p == q for q in self.assumed) or provably_nonzero(p, state.nonzero)
            return p * p.conj(), True, nz
        raise _Invalid(f"unknown factor spec {dict(spec)!r}")

    def _cancel_factor(self, state: _State, spec: Mapping) -> Scalar:
        p, _nonneg, strict = self._factor_poly(state, spec)
        if "var" in spec:
            if not self._is_nonzero_name(state, spec["var"]):
                raise _Invalid(f"factor {spec['var']!r} is not known nonzero")
            return p
        if "expr" in spec:
            raise _Invalid("unreachable")
        if strict:
            return p
        raise _Invalid(f"factor {dict(spec)!r} is not known nonzero")

    # -- the walk -----------------------------------------------------------------

    def run(self, tree: Mapping) -> CertResult:
        base = _State(dict(self.base_eqs), 0, set(), list(self.assumed))
        try:
            self._walk(tree, base, "root")
            return CertResult(True)
        except _Invalid as exc:
            return CertResult(False, str(exc))
        except Exception as exc:  # malformed payloads are invalid, not crashes
            return CertResult(False, f"malformed certificate: {exc}")

    def _walk(self, node: Mapping, state: _State, path: str) -> None:
        step = node.get("step")
        where = f"{path}/{step}"
        if step == "combine":
            total = Scalar.const(0, self.reg)
            for coeff_text, ref in node["terms"]:
                total = total + self._parse(coeff_text) * self._lookup(state, ref)
            claimed = self._parse(node["result"])
            if total != claimed:
                raise _Invalid(f"{where}: combination does not match claimed result")
            state.append(claimed)
            self._walk(node["then"], state, where)
        elif step == "conjugate":
            claimed = self._parse(node["result"])
            if self._lookup(state, node["eq"]).conj() != claimed:
                raise _Invalid(f"{where}: conjugate does not match claimed result")
            state.append(claimed)
            self._walk(node["then"], state, where)
        elif step == "cancel":
            eq = self._lookup(state, node["eq"])
            product = Scalar.const(1, self.reg)
            for fspec in node["factors"]:
                if "expr" in fspec:
                    p = self._parse(fspec["expr"])
                    if not (any(p == q for q in state.assumed)
                            or provably_nonzero(p, state.nonzero)):
                        raise _Invalid(f"{where}: expression factor not known nonzero")
                    product = product * p
                else:
                    product = product * self._cancel_factor(state, fspec)
            claimed = self._parse(node["result"])
            if product * claimed != eq:
                raise _Invalid(f"{where}: cancelled identity does not hold")
            state.append(claimed)
            self._walk(node["then"], state, where)
        elif step == "split":
            name = node["on"]
            if name not in self.reg:
                raise _Invalid(f"{where}: unknown unknown {name!r}")
            zero_state = state.child()
            zero_state.append(Scalar.var(name, self.reg))
            self._walk(node["zero"], zero_state, where + "/zero")
            nz_state = state.child()
            nz_state.nonzero.add(name)
            self._walk(node["nonzero"], nz_state, where + "/nonzero")
        elif step == "contradiction":
            eq = self._lookup(state, node["eq"])
            total = Scalar.const(0, self.reg)
            some_strict = False
            for coeff_text, factors in node["combo"]:
                c = Fraction(coeff_text)
                if c <= 0:
                    raise _Invalid(f"{where}: combination coefficient {c} is not positive")
                term = Scalar.const(c, self.reg)
                strict = True
                for fspec in factors:
                    p, nonneg, fstrict = self._factor_poly(state, fspec)
                    if not nonneg:
                        raise _Invalid(f"{where}: factor {dict(fspec)!r} is not nonnegative")
                    strict = strict and fstrict
                    term = term * p
                total = total + term
                some_strict = some_strict or strict
            if not some_strict:
                raise _Invalid(f"{where}: no strictly positive summand")
            if total != eq:
                raise _Invalid(f"{where}: positive combination does not equal the equation")
        else:
            raise _Invalid(f"{where}: unknown step kind {step!r}")


def certificate_mode(cert: Mapping) -> str:
    mode = cert.get("ansatz", cert.get("structure"))
    if mode is None:
        raise KeyError("certificate needs an 'ansatz' field")
    return mode


def build_system_for_certificate(cert: Mapping) -> tuple[AlgebraSpec, GenericAnsatz, ResidualSystem]:
    from .catalog import load_catalog
    params = {}
    for k, v in cert.get("params", {}).items():
        params[k] = parse_scalar(v, ParamRegistry()).const_value()
    spec = load_catalog(cert["fixture"], **params)
    ansatz = build_ansatz(spec, certificate_mode(cert),
                          reduce_offdiag=cert.get("reduce_offdiag", False))
    system = residual_conformal(spec, ansatz.Omega, ansatz.theta, ansatz.power)
    return spec, ansatz, system


def certificate_check(spec: AlgebraSpec, ansatz: GenericAnsatz, cert: Mapping) -> CertResult:
    """Validate a certificate against the given ansatz's residual system."""
    try:
        system = residual_conformal(spec, ansatz.Omega, ansatz.theta, ansatz.power)
        checker = CertificateChecker(ansatz, system, list(cert.get("assume_nonzero", [])))
        return checker.run(cert["tree"])
    except _Invalid as exc:
        return CertResult(False, str(exc))
    except Exception as exc:
        return CertResult(False, f"malformed certificate: {exc}")


def check_certificate(cert: Mapping) -> CertResult:
    """Build the fixture and ansatz named in the header, then validate."""
    try:
        spec, ansatz, _system = build_system_for_certificate(cert)
    except Exception as exc:
        return CertResult(False, f"cannot build certificate context: {exc}")
    return certificate_check(spec, ansatz, cert)


def load_certificate(path_or_name: str) -> dict:
    """Load a certificate from a file path or from the shipped data directory."""
    import os
    if os.path.exists(path_or_name):
        with open(path_or_name, "r", encoding="utf-8") as fh:
            return json.load(fh)
    name = path_or_name if path_or_name.endswith(".json") else path_or_name + ".json"
    data = resources.files("invarforms").joinpath("data/certificates").joinpath(name)
    return json.loads(data.read_text(encoding="utf-8"))


def shipped_certificate_names() -> list[str]:
    data = resources.files("invarforms").joinpath("data/certificates")
    return sorted(p.name[:-5] for p in data.iterdir() if p.name.endswith(".json"))


# ---------------------------------------------------------------------------
# builder: applies steps while recording results, for transcribing proofs
# ---------------------------------------------------------------------------

class CertBuilder:
    """Records a proof tree while computing every intermediate result.

    The builder evaluates each step on the live residual system, so the
    serialized certificate always carries the exact polynomials that the
    independent checker will re-derive.
    """

    def __init__(self, ansatz: GenericAnsatz, system: ResidualSystem,
                 assume_nonzero: list[str] | None = None):
        self.ansatz = ansatz
        self.reg = ansatz.reg
        self.assume = list(assume_nonzero or [])
        self.eqs: dict[str, Scalar] = {f"mon:{e.label}": e.poly for e in system.entries}
        self.counter = 0
        self.nonzero: set[str] = set()

    def _fork(self) -> "CertBuilder":
        nb = CertBuilder.__new__(CertBuilder)
        nb.ansatz = self.ansatz
        nb.reg = self.reg
        nb.assume = list(self.assume)
        nb.eqs = dict(self.eqs)
        nb.counter = self.counter
        nb.nonzero = set(self.nonzero)
        return nb

    def combine(self, terms: list[tuple[str, str]], then) -> dict:
        total = Scalar.const(0, self.reg)
        for coeff_text, ref in terms:
            total = total + parse_scalar(coeff_text, self.reg) * self.eqs[ref]
        self.counter += 1
        self.eqs[f"#{self.counter}"] = total
        return {"step": "combine", "terms": [[c, r] for c, r in terms],
                "result": scalar_to_expr(total), "then": then(self)}

    def conjugate(self, ref: str, then) -> dict:
        result = self.eqs[ref].conj()
        self.counter += 1
        self.eqs[f"#{self.counter}"] = result
        return {"step": "conjugate", "eq": ref,
                "result": scalar_to_expr(result), "then": then(self)}

    def cancel(self, ref: str, factors: list[dict], then) -> dict:
        eq = self.eqs[ref]
        product = Scalar.const(1, self.reg)
        for fspec in factors:
            if "var" in fspec:
                product = product * Scalar.var(fspec["var"], self.reg)
            elif "sq" in fspec:
                x = Scalar.var(fspec["sq"], self.reg)
                product = product * x * x
            elif "mod" in fspec:
                x = Scalar.var(fspec["mod"], self.reg)
                product = product * x * x.conj()
            elif "expr" in fspec:
                product = product * parse_scalar(fspec["expr"], self.reg)
            else:
                raise ValueError(f"bad factor {fspec}")
        result = eq.exact_div(product)
        self.counter += 1
        self.eqs[f"#{self.counter}"] = result
        return {"step": "cancel", "eq": ref, "factors": factors,
                "result": scalar_to_expr(result), "then": then(self)}

    def split(self, name: str, zero, nonzero) -> dict:
        zb = self._fork()
        zb.counter += 1
        zb.eqs[f"#{zb.counter}"] = Scalar.var(name, self.reg)
        nb = self._fork()
        nb.nonzero.add(name)
        return {"step": "split", "on": name, "zero": zero(zb), "nonzero": nonzero(nb)}

    def contradiction(self, ref: str, combo: list[tuple[str, list[dict]]]) -> dict:
        return {"step": "contradiction", "eq": ref,
                "combo": [[c, fs] for c, fs in combo]}
