"""Fixture library: the nilmanifolds, surfaces, and solvable classes under study.

Every fixture is an :class:`~invarforms.algebra.AlgebraSpec` builder.  Families
take parameters; parameter-free names load directly.  ``load_catalog`` accepts
either a bare name or ``name`` plus keyword values for the family parameters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .algebra import AlgebraSpec, ParamConstraint, parse_complex_dsl, parse_salamon
from .forms import COMPLEX_FRAME, Frame, form_from_mono_coeffs
from .scalars import EMPTY_REGISTRY, GR_I, GR_ONE, GaussRat, ParamRegistry, Scalar


class UnknownFixture(KeyError):
    pass


def _dsl(text: str) -> AlgebraSpec:
    return parse_complex_dsl(text)


# -- six-dimensional nilpotent fixtures --------------------------------------------

def torus(n: int = 3) -> AlgebraSpec:
    lines = [f"name torus({n})", f"frame complex {n}"]
    lines += [f"d phi{j} = 0" for j in range(1, n + 1)]
    return _dsl("\n".join(lines))


def h3_Jplus() -> AlgebraSpec:
    return _dsl("""
name h3_Jplus
frame complex 3
d phi1 = 0
d phi2 = 0
d phi3 = phi1^cphi1 + phi2^cphi2
""")


def h3_Jminus() -> AlgebraSpec:
    return _dsl("""
name h3_Jminus
frame complex 3
d phi1 = 0
d phi2 = 0
d phi3 = phi1^cphi1 - phi2^cphi2
""")


def h8() -> AlgebraSpec:
    return _dsl("""
name h8
frame complex 3
d phi1 = 0
d phi2 = 0
d phi3 = phi1^cphi1
""")


def h9() -> AlgebraSpec:
    return _dsl("""
name h9
frame complex 3
d phi1 = 0
d phi2 = phi1^cphi1
d phi3 = phi1^cphi2 + phi2^cphi1
""")


def h19minus(sign: int = +1) -> AlgebraSpec:
    s = "" if sign > 0 else "-"
    tag = "Jplus" if sign > 0 else "Jminus"
    return _dsl(f"""
name h19minus_{tag}
frame complex 3
d phi1 = 0
d phi2 = phi1^phi3 + phi1^cphi3
d phi3 = {s}i*(phi1^cphi2 - phi2^cphi1)
""")


def nakamura() -> AlgebraSpec:
    return _dsl("""
name nakamura
frame complex 3
param t : complex
d phi1 = 0
d phi2 = -phi1^phi2 + t*phi2^cphi1
d phi3 = phi1^phi3 - t*phi3^cphi1
""")


# -- real-frame fixtures ------------------------------------------------------------

def _salamon(name: str, tuple_text: str) -> AlgebraSpec:
    spec = parse_salamon(tuple_text)
    spec.name = name
    return spec


def h1() -> AlgebraSpec:
    return _salamon("h1", "(0,0,0,0,0,0)")


def h3() -> AlgebraSpec:
    return _salamon("h3", "(0,0,0,0,0,12+34)")


def heis3() -> AlgebraSpec:
    return _salamon("heis3", "(0,0,12)")


def heis5xR() -> AlgebraSpec:
    # heis_5 x R with e5 spanning the central R factor: de6 = e12 + e34
    return _salamon("heis5xR", "(0,0,0,0,0,12+34)")


def abelianR5() -> AlgebraSpec:
    return _salamon("abelianR5", "(0,0,0,0,0)")


def contact5_a() -> AlgebraSpec:
    return _salamon("contact5_a", "(0,0,0,0,12+34)")


def contact5_b() -> AlgebraSpec:
    return _salamon("contact5_b", "(0,0,0,12,14+23)")


def contact5_c() -> AlgebraSpec:
    return _salamon("contact5_c", "(0,0,12,13,14-23)")


# -- compact complex surfaces (complex rank 2) ----------------------------------------

def torus4() -> AlgebraSpec:
    spec = torus(2)
    spec.name = "torus4"
    return spec


def hyperelliptic() -> AlgebraSpec:
    return _dsl("""
name hyperelliptic
frame complex 2
d phi1 = -1/2*phi1^phi2 + 1/2*phi1^cphi2
d phi2 = 0
""")


def inoue_SM() -> AlgebraSpec:
    return _dsl("""
name inoue_SM
frame complex 2
param alpha : real nonzero
param beta : real
d phi1 = (alpha - i*beta)/(2*i)*phi1^phi2 - (alpha - i*beta)/(2*i)*phi1^cphi2
d phi2 = -i*alpha*phi2^cphi2
""")


def kodaira_primary() -> AlgebraSpec:
    return _dsl("""
name kodaira_primary
frame complex 2
d phi1 = 0
d phi2 = i/2*phi1^cphi1
""")


def kodaira_secondary() -> AlgebraSpec:
    return _dsl("""
name kodaira_secondary
frame complex 2
d phi1 = -1/2*phi1^phi2 + 1/2*phi1^cphi2
d phi2 = i/2*phi1^cphi1
""")


def inoue_Spm() -> AlgebraSpec:
    return _dsl("""
name inoue_Spm
frame complex 2
param q : real
d phi1 = 1/(2*i)*phi1^phi2 + 1/(2*i)*phi2^cphi1 + q*i/2*phi2^cphi2
d phi2 = 1/(2*i)*phi2^cphi2
""")


# -- solvable classes with trivial canonical bundle (complex rank 3) ----------------------

def class1() -> AlgebraSpec:
    spec = _dsl("""
name class1
frame complex 3
param A : complex nonzero
d phi1 = A*phi1^phi3 + A*phi1^cphi3
d phi2 = -A*phi2^phi3 - A*phi2^cphi3
d phi3 = 0
""")
    spec.constraints = (ParamConstraint(
        "A lies on the unit circle (A*conj(A) = 1)",
        lambda v: "A" not in v or v["A"] * v["A"].conj() == GR_ONE),)
    return spec


def class2(g: Fraction | int | GaussRat = 1) -> AlgebraSpec:
    if isinstance(g, GaussRat):
        if not g.is_real():
            raise ValueError("class2 needs a real g")
        g = g.re
    g = Fraction(g)
    if g <= 0:
        raise ValueError("class2 needs g > 0")
    fr = Frame(COMPLEX_FRAME, 3)
    half = Fraction(1, 2)
    gi = GaussRat(Fraction(0), g)
    quarter_over_g = GaussRat(Fraction(0), Fraction(1, 4) / g)
    d2 = form_from_mono_coeffs(fr, [
        ((1, 3), GaussRat(-half)),
        ((1, 6), GaussRat(-half) - gi),
        ((3, 4), gi),
    ])
    d3 = form_from_mono_coeffs(fr, [
        ((1, 2), GaussRat(half)),
        ((1, 5), GaussRat(half) - quarter_over_g),
        ((2, 4), quarter_over_g),
    ])
    return AlgebraSpec(fr, {2: d2, 3: d3}, name=f"class2(g={g})")


def class3(A: GaussRat | None = None, s11: GaussRat | Fraction | int | None = None,
           s22: GaussRat | Fraction | int | None = None,
           s12: GaussRat | Fraction | int = 0) -> AlgebraSpec:
    """Class (3); default is the A = i branch with symbolic real s11, s22."""
    fr = Frame(COMPLEX_FRAME, 3)
    if A is None:
        A = GR_I
    A = GaussRat.of(A) if not isinstance(A, GaussRat) else A
    if A * A.conj() != GR_ONE:
        raise ValueError("class3 needs |A| = 1")
    sA = Scalar.const(A)
    d1 = form_from_mono_coeffs(fr, [((1, 3), sA), ((1, 6), sA)])
    d2 = form_from_mono_coeffs(fr, [((2, 3), -sA), ((2, 6), -sA)])
    if s11 is None and s22 is None and not GaussRat.of(s12):
        if A.re != 0:
            raise ValueError("symbolic s11, s22 need Re A = 0")
        reg = ParamRegistry().with_real("s11").with_real("s22")
        v11: Scalar = Scalar.var("s11", reg)
        v22: Scalar = Scalar.var("s22", reg)
        v12: Scalar = Scalar.const(0, reg)
    else:
        reg = EMPTY_REGISTRY
        c11 = GaussRat.of(s11 if s11 is not None else 0)
        c22 = GaussRat.of(s22 if s22 is not None else 0)
        c12 = GaussRat.of(s12)
        if not (c11 or c22 or c12):
            raise ValueError("class3 needs (s11, s22, s12) != (0, 0, 0)")
        for c, nm in ((c11, "s11"), (c22, "s22")):
            if not c.is_real():
                raise ValueError(f"class3 needs {nm} real")
            if A.re != 0 and c:
                raise ValueError(f"class3 needs Re(A)*{nm} = 0")
        if A.im != 0 and c12:
            raise ValueError("class3 needs Im(A)*s12 = 0")
        v11 = Scalar.const(c11)
        v22 = Scalar.const(c22)
        v12 = Scalar.const(c12)
    d3 = (form_from_mono_coeffs(fr, [((1, 4), v11), ((2, 5), v22)])
          + form_from_mono_coeffs(fr, [((1, 5), v12), ((2, 4), v12.conj())]))
    spec = AlgebraSpec(fr, {1: d1, 2: d2, 3: d3}, reg, name=f"class3(A={A})")
    if reg is not EMPTY_REGISTRY:
        spec.constraints = (ParamConstraint(
            "(s11, s22) != (0, 0)",
            lambda v: bool(v.get("s11")) or bool(v.get("s22"))),)
    return spec


def class4() -> AlgebraSpec:
    spec = _dsl("""
name class4
frame complex 3
param A : complex
d phi1 = -(A - i)*phi1^phi3 - (A + i)*phi1^cphi3
d phi2 = (A - i)*phi2^phi3 + (A + i)*phi2^cphi3
d phi3 = 0
""")
    spec.constraints = (ParamConstraint(
        "Im A != 0", lambda v: "A" not in v or v["A"].im != 0),)
    return spec


def _class56(eps: int, name: str) -> AlgebraSpec:
    return _dsl(f"""
name {name}
frame complex 3
d phi1 = 2*i*phi1^phi3 + phi3^cphi3
d phi2 = -2*i*phi2^phi3 + {eps}*phi3^cphi3
d phi3 = 0
""")


def class5() -> AlgebraSpec:
    return _class56(0, "class5")


def class6() -> AlgebraSpec:
    return _class56(1, "class6")


def class7() -> AlgebraSpec:
    return _dsl("""
name class7
frame complex 3
d phi1 = -phi3^cphi3
d phi2 = -i/2*phi2^cphi1 + 1/2*phi1^cphi3 + i/2*phi1^phi2
d phi3 = i/2*phi3^cphi1 - i/2*phi1^phi3
""")


# -- registry ---------------------------------------------------------------------------------

_BUILDERS: dict[str, Callable[..., AlgebraSpec]] = {
    "torus": torus,
    "torus(1)": lambda: torus(1),
    "torus(2)": lambda: torus(2),
    "torus(3)": lambda: torus(3),
    "h1": h1,
    "h3": h3,
    "h3_Jplus": h3_Jplus,
    "h3_Jminus": h3_Jminus,
    "h8": h8,
    "h9": h9,
    "h19minus_Jplus": lambda: h19minus(+1),
    "h19minus_Jminus": lambda: h19minus(-1),
    "heis3": heis3,
    "heis5xR": heis5xR,
    "heis5xR_Jplus": h3_Jplus,
    "abelianR5": abelianR5,
    "contact5_a": contact5_a,
    "contact5_b": contact5_b,
    "contact5_c": contact5_c,
    "nakamura": nakamura,
    "torus4": torus4,
    "hyperelliptic": hyperelliptic,
    "inoue_SM": inoue_SM,
    "kodaira_primary": kodaira_primary,
    "kodaira_secondary": kodaira_secondary,
    "inoue_Spm": inoue_Spm,
    "class1": class1,
    "class2": class2,
    "class3": class3,
    "class4": class4,
    "class5": class5,
    "class6": class6,
    "class7": class7,
}

# unit-circle sample points for the classes constrained to |A| = 1
CIRCLE_POINTS: list[GaussRat] = [
    GaussRat(Fraction(1)),                               # A = 1
    GaussRat(Fraction(0), Fraction(1)),                  # A = i
    GaussRat(Fraction(3, 5), Fraction(4, 5)),            # Pythagorean point
    GaussRat(Fraction(-3, 5), Fraction(4, 5)),
    GaussRat(Fraction(5, 13), Fraction(12, 13)),
]


def catalog_names() -> list[str]:
    return sorted(_BUILDERS)


def load_catalog(name: str, **params) -> AlgebraSpec:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(catalog_names())}") \
            from None
    import inspect
    sig = inspect.signature(builder)
    factory_kwargs = {k: v for k, v in params.items() if k in sig.parameters}
    spec = builder(**factory_kwargs)
    leftover = {k: v for k, v in params.items() if k not in factory_kwargs}
    if leftover:
        spec = spec.instantiate(leftover)
    return spec
