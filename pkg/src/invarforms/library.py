"""Registered witness formulas and twist suggestions per fixture family.

These are the closed-form solutions that the existence halves of the
classification results exhibit; ``witness_search`` tries them first and
re-verifies them from scratch, so a stale formula can never leak through.
Assignments use the post-closedness unknown names of the ansatz (a twisting
coefficient that closedness forces purely imaginary appears as ``<name>_im``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import AlgebraSpec
from .feasibility import GenericAnsatz
from .scalars import GaussRat


def _gr(re=0, im=0) -> GaussRat:
    return GaussRat(Fraction(re), Fraction(im))


def base_fixture_name(spec: AlgebraSpec) -> str:
    name = spec.name
    for sep in ("@", "("):
        if sep in name:
            name = name.split(sep, 1)[0]
    return name


def witness_candidates(spec: AlgebraSpec, ansatz: GenericAnsatz,
                       params: Mapping[str, GaussRat] | None = None) -> list[dict]:
    """Candidate assignments for the given fixture and mode, most specific first.

    ``params`` carries the family parameter values the fixture was built with
    (needed where a twist coefficient depends on them).
    """
    params = dict(params or {})
    name = base_fixture_name(spec)
    mode = ansatz.mode
    out: list[dict] = []

    def diag_ones(extra: dict) -> dict:
        cand = {nm: _gr(1) for nm in ansatz.diag_names}
        for nm in ansatz.off_names + ansatz.two_zero_names + ansatz.theta_names:
            cand[nm] = _gr(0)
        cand.update(extra)
        return cand

    if name in ("torus", "torus4", "h1"):
        out.append(diag_ones({}))

    elif name == "hyperelliptic":
        if mode in ("lcK", "kahler", "lcb", "balanced"):
            out.append(diag_ones({}))
        elif mode == "lcht":
            out.append(diag_ones({"u": _gr(Fraction(1, 2)), "L": _gr(Fraction(-1, 2))}))
            out.append(diag_ones({}))

    elif name == "inoue_SM":
        alpha = params.get("alpha", _gr(1))
        twist = {"b_im": alpha}
        if mode == "lcK":
            out.append(diag_ones(twist))
        elif mode == "lcht":
            out.append(diag_ones({**twist, "u": _gr(Fraction(1, 2)),
                                  "L": _gr(Fraction(-1, 2))}))

    elif name == "kodaira_primary":
        if mode == "lcK":
            # A=1, B=2, D=1: a = -BD/(2(AB-|D|^2)), b = -i B^2/(2(AB-|D|^2))
            out.append(diag_ones({"s2": _gr(2), "u": _gr(1),
                                  "a": _gr(-1), "b_im": _gr(-2)}))
        elif mode == "lcht":
            # L = 1 shifts the denominator to AB-|D|^2+|L|^2 = 2
            out.append(diag_ones({"s2": _gr(2), "u": _gr(1), "L": _gr(1),
                                  "a": _gr(-1), "b_im": _gr(-1)}))

    elif name == "kodaira_secondary":
        if mode == "lcK":
            out.append(diag_ones({"s2": _gr(2), "b_im": _gr(-1)}))
        elif mode == "lcht":
            out.append(diag_ones({"s2": _gr(2), "u": _gr(Fraction(1, 2)),
                                  "L": _gr(Fraction(-1, 2)), "b_im": _gr(-1)}))

    elif name == "inoue_Spm":
        q = params.get("q", _gr(0))
        if mode == "lcK" and not q:
            out.append(diag_ones({"u": _gr(0, Fraction(1, 2)), "b_im": _gr(Fraction(1, 2))}))
        elif mode == "lcht":
            # L = -Re D + (i/2) A q with D = 0, A = 1
            out.append(diag_ones({"L": GaussRat(Fraction(0), q.re * Fraction(1, 2)),
                                  "b_im": _gr(Fraction(1, 2))}))

    elif name == "h3_Jplus":
        if mode in ("lcK", "lcht"):
            out.append(diag_ones({"c": _gr(1)}))
        elif mode == "lcb":
            # the (n-1)-th power rescales the twist of the conformally closed form
            out.append(diag_ones({"c": _gr(2)}))

    elif name in ("h8", "h9") and mode == "lcb":
        gen = {"h8": "c", "h9": "b"}[name]
        out.append(diag_ones({gen: _gr(1)}))

    elif name == "h3_Jminus" and mode in ("balanced", "lcb"):
        out.append(diag_ones({}))

    elif name == "class1":
        if params.get("A") == _gr(0, 1):
            out.append(diag_ones({}))

    elif name == "class3":
        out.append(diag_ones({"c": _gr(1)}))
        out.append(diag_ones({"c": _gr(-1)}))

    elif name == "nakamura":
        if mode in ("balanced", "lcb"):
            out.append(diag_ones({}))

    return out
