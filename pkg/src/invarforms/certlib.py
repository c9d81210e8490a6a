"""Shipped nonexistence proofs, transcribed as certificate trees.

Each builder replays a by-hand contradiction argument against the live
residual system (the :class:`~invarforms.certificates.CertBuilder` records
every intermediate polynomial), so the serialized JSON carries exactly the
payloads the independent checker re-derives.  Run this module to regenerate
the files under ``invarforms/data/certificates``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .catalog import load_catalog
from .certificates import CertBuilder
from .feasibility import build_ansatz, residual_conformal
from .scalars import GaussRat

# step shorthands: ("combine", terms), ("conjugate", ref), ("cancel", ref, factors),
# ("split", name, zero_steps, nonzero_steps); a chain ends with
# ("contradiction", ref, combo).


def _chain(builder: CertBuilder, steps: list) -> dict:
    head, *rest = steps
    kind = head[0]
    if kind == "combine":
        return builder.combine(head[1], lambda b: _chain(b, rest))
    if kind == "conjugate":
        return builder.conjugate(head[1], lambda b: _chain(b, rest))
    if kind == "cancel":
        return builder.cancel(head[1], head[2], lambda b: _chain(b, rest))
    if kind == "split":
        return builder.split(head[1],
                             zero=lambda b: _chain(b, head[2]),
                             nonzero=lambda b: _chain(b, head[3]))
    if kind == "contradiction":
        return builder.contradiction(head[1], head[2])
    raise ValueError(f"unknown step {kind!r}")


def _context(fixture: str, structure: str, reduce_offdiag: bool = False, **params):
    spec = load_catalog(fixture, **params)
    ansatz = build_ansatz(spec, structure, reduce_offdiag=reduce_offdiag)
    system = residual_conformal(spec, ansatz.Omega, ansatz.theta, ansatz.power)
    return spec, ansatz, system


def _make(name: str, fixture: str, structure: str, steps: list, *,
          reduce_offdiag: bool = False, params: dict | None = None,
          assume_nonzero: list[str] | None = None, comment: str = "") -> dict:
    _spec, ansatz, system = _context(
        fixture, structure, reduce_offdiag=reduce_offdiag,
        **{k: _parse_param(v) for k, v in (params or {}).items()})
    builder = CertBuilder(ansatz, system, assume_nonzero=assume_nonzero)
    tree = _chain(builder, steps)
    from .expr import scalar_to_expr
    from .feasibility import positivity_profile
    profile = positivity_profile(ansatz.Omega, _spec.frame.n)
    atoms = [scalar_to_expr(mv) for mv in profile.minors] + list(assume_nonzero or [])
    return {
        "name": name,
        "fixture": fixture,
        "ansatz": structure,
        "reduce_offdiag": reduce_offdiag,
        "params": params or {},
        "atoms": atoms,
        "assume_nonzero": assume_nonzero or [],
        "comment": comment,
        "tree": tree,
    }


def _parse_param(text: str) -> GaussRat:
    from .expr import parse_scalar
    from .scalars import EMPTY_REGISTRY
    return parse_scalar(text, EMPTY_REGISTRY).const_value()


def h3_jminus() -> dict:
    steps = [
        ("split", "c",
         # c = 0: the 2-3-c3 and 2-3-c2 entries force b = 0 and then t2 = 0
         [("combine", [("1", "mon:2-3-c3"), ("N", "#1")]),
          ("cancel", "#2", [{"var": "t2"}]),
          ("combine", [("i", "#3")]),
          ("conjugate", "#4"),
          ("combine", [("1", "mon:2-3-c2"), ("-i*s2", "#1"), ("N", "#5")]),
          ("combine", [("-i", "#6")]),
          ("contradiction", "#7", [("1", [{"var": "t2"}])])],
         # c != 0: the signature identity c^2(r2+s2) + |a|^2 t2 + |b|^2 t2 = 0
         [("combine", [("c", "mon:1-3-c1"), ("c", "mon:2-3-c2"),
                       ("-conj(a)", "mon:1-3-c3"), ("-conj(b)", "mon:2-3-c3")]),
          ("combine", [("-i", "#1")]),
          ("contradiction", "#2", [
              ("1", [{"sq": "c"}, {"var": "r2"}]),
              ("1", [{"sq": "c"}, {"var": "s2"}]),
              ("1", [{"mod": "a"}, {"var": "t2"}]),
              ("1", [{"mod": "b"}, {"var": "t2"}])])]),
    ]
    return _make("h3_Jminus_lcht", "h3_Jminus", "lcht", steps, reduce_offdiag=True,
                 comment="no invariant conformally closed taming form exists")


def h9() -> dict:
    steps = [
        ("split", "c",
         [("combine", [("1", "mon:1-3-c3"), ("M", "#1")]),
          ("cancel", "#2", [{"var": "t2"}]),
          ("combine", [("i", "#3")]),
          ("conjugate", "#4"),
          ("combine", [("1", "mon:2-3-c1"), ("conj(u)", "#1"), ("N", "#5")]),
          ("combine", [("i", "#6")]),
          ("contradiction", "#7", [("1", [{"var": "t2"}])])],
         [("combine", [("c", "mon:2-3-c2"), ("-b", "mon:2-3-c3")]),
          ("combine", [("-i", "#1")]),
          ("contradiction", "#2", [
              ("1", [{"sq": "c"}, {"var": "s2"}]),
              ("1", [{"sq": "b"}, {"var": "t2"}])])]),
    ]
    return _make("h9_lcht", "h9", "lcht", steps, reduce_offdiag=True,
                 comment="no invariant conformally closed taming form exists")


def h19minus(sign: str) -> dict:
    fixture = f"h19minus_{sign}"
    half = "1/2" if sign == "Jplus" else "-1/2"
    plus, minus = ("i", "-i") if sign == "Jplus" else ("-i", "i")
    steps = [
        ("cancel", "mon:2-3-c2", [{"var": "s2"}]),
        ("combine", [("-i", "#1")]),            # c = 0
        ("split", "a",
         [("combine", [("1", "mon:1-3-c2"), ("-conj(v)", "#3"), ("-u", "#2")]),
          ("conjugate", "#4"),
          ("combine", [(half, "#4"), (half, "#5")]),
          ("contradiction", "#6", [("1", [{"var": "t2"}])])],
         [("combine", [("1", "mon:1-2-3"), ("L", "#2")]),
          ("cancel", "#3", [{"var": "a"}]),
          ("combine", [("-1", "#4")]),          # N = 0
          ("combine", [("1", "mon:1-2-c3"), ("L", "#2")]),
          ("cancel", "#6", [{"var": "a"}]),
          ("combine", [("-1", "#7")]),          # v = 0
          ("combine", [("1", "mon:1-2-c2"), (minus, "#5"), (plus, "#8")]),
          ("cancel", "#9", [{"var": "a"}]),
          ("combine", [("i", "#10")]),
          ("contradiction", "#11", [("1", [{"var": "s2"}])])]),
    ]
    return _make(f"{fixture}_lcht", fixture, "lcht", steps,
                 comment="no invariant conformally closed taming form exists")


def inoue_spm_lck() -> dict:
    steps = [
        ("cancel", "mon:1-2-c1", [{"var": "r2"}]),
        ("combine", [("1", "mon:1-2-c2"), ("i*u", "#1")]),
        ("conjugate", "#2"),
        ("combine", [("1", "#2"), ("1", "#3")]),
        ("cancel", "#4", [{"var": "q"}, {"var": "r2"}]),
        ("contradiction", "#5", [("1", [])]),
    ]
    return _make("inoue_Spm_lcK_qnz", "inoue_Spm", "lcK", steps,
                 assume_nonzero=["q"],
                 comment="for q != 0 no invariant conformally closed positive "
                         "(1,1)-form exists (taming forms do exist)")


def class1_re_nonzero() -> dict:
    steps = [
        ("cancel", "mon:1-3-c1", [{"var": "r2"}]),
        ("combine", [("-i", "#1")]),
        ("cancel", "mon:2-3-c2", [{"var": "s2"}]),
        ("combine", [("-i", "#3")]),
        ("combine", [("1/2", "#2"), ("-1/2", "#4")]),
        ("combine", [("A + conj(A)", "#5")]),
        ("contradiction", "#6", [("1", [{"sq_expr": "A + conj(A)"}])]),
    ]
    return _make("class1_lcht_ReA_nonzero", "class1", "lcht", steps,
                 assume_nonzero=["A + conj(A)"],
                 comment="no conformally closed taming form when Re A != 0")


def class2_cert(g: Fraction) -> dict:
    steps = [
        ("split", "a",
         [("combine", [("1", "mon:1-3-c2"), ("-conj(v)", "#1")]),
          ("conjugate", "#2"),
          ("combine", [("i", "#2"), ("-i", "#3")]),
          ("contradiction", "#4", [("1", [{"var": "s2"}])])],
         [("cancel", "mon:1-2-3", [{"var": "a"}]),
          ("combine", [("-1", "#1")]),
          ("combine", [("1", "mon:2-3-c1"), ("conj(a)", "#2")]),
          ("conjugate", "#3"),
          ("combine", [("i", "#3"), ("-i", "#4")]),
          ("contradiction", "#5", [("1", [{"var": "t2"}]), ("1", [{"var": "s2"}])])]),
    ]
    return _make(f"class2_lcht_g{g.numerator}_{g.denominator}", "class2", "lcht",
                 steps, params={"g": str(g)},
                 comment=f"no conformally closed taming form at g = {g}")


def class3_A1(s12: str, tag: str) -> dict:
    steps = [
        ("cancel", "mon:1-3-c1", [{"var": "r2"}]),
        ("combine", [("-i", "#1")]),
        ("cancel", "mon:2-3-c2", [{"var": "s2"}]),
        ("combine", [("-i", "#3")]),
        ("combine", [("1/4", "#2"), ("-1/4", "#4")]),
        ("contradiction", "#5", [("1", [])]),
    ]
    return _make(f"class3_lcht_A1_s12_{tag}", "class3", "lcht", steps,
                 params={"A": "1", "s12": s12},
                 comment="no conformally closed taming form on the Re A != 0 branch")


def class4_cert() -> dict:
    steps = [
        ("cancel", "mon:1-3-c1", [{"var": "r2"}]),
        ("cancel", "mon:2-3-c2", [{"var": "s2"}]),
        ("combine", [("1/2", "#2"), ("-1/2", "#1")]),
        ("conjugate", "#3"),
        ("combine", [("1/4", "#3"), ("1/4", "#4")]),
        ("contradiction", "#5", [("1", [])]),
    ]
    return _make("class4_lcht", "class4", "lcht", steps,
                 comment="no conformally closed taming form for any parameter")


def class56_cert(which: str) -> dict:
    steps = [
        ("cancel", "mon:1-3-c1", [{"var": "r2"}]),
        ("cancel", "mon:2-3-c2", [{"var": "s2"}]),
        ("combine", [("1/4", "#2"), ("-1/4", "#1")]),
        ("contradiction", "#3", [("1", [])]),
    ]
    return _make(f"{which}_lcht", which, "lcht", steps,
                 comment="no conformally closed taming form exists")


def class7_cert() -> dict:
    steps = [
        ("cancel", "mon:1-2-c2", [{"var": "s2"}]),
        ("combine", [("i", "#1")]),
        ("combine", [("1", "mon:2-3-c1"), ("N", "#2")]),
        ("combine", [("-2*i", "#3")]),
        ("contradiction", "#4", [("1", [{"var": "s2"}])]),
    ]
    return _make("class7_lcht", "class7", "lcht", steps,
                 comment="no conformally closed taming form exists")


def all_certificates() -> dict[str, dict]:
    certs = {}
    for cert in [
        h3_jminus(),
        h9(),
        h19minus("Jplus"),
        h19minus("Jminus"),
        inoue_spm_lck(),
        class1_re_nonzero(),
        class2_cert(Fraction(1)),
        class2_cert(Fraction(2)),
        class2_cert(Fraction(1, 2)),
        class3_A1("1", "1"),
        class3_A1("i", "i"),
        class3_A1("2", "2"),
        class4_cert(),
        class56_cert("class5"),
        class56_cert("class6"),
        class7_cert(),
    ]:
        certs[cert["name"]] = cert
    return certs


def write_all(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, cert in sorted(all_certificates().items()):
        path = directory / f"{name}.json"
        path.write_text(json.dumps(cert, indent=1, sort_keys=True) + "\n",
                        encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    import sys
    target = sys.argv[1] if len(sys.argv) > 1 else \
        Path(__file__).parent / "data" / "certificates"
    for p in write_all(target):
        print(p)
