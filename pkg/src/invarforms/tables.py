"""Frozen component tables for the solvable classes and the Nakamura family.

``THETA_WEDGE_OMEGA`` lists the coefficients of theta ^ Omega for the generic
twisting form theta = a w1 + b w2 + c w3 + conjugates against the full
15-unknown 2-form ansatz; it is class independent.  ``DOMEGA`` lists the
coefficients of d(Omega) per solvable class.  Class (2) cells use ``ginv``
for the reciprocal of its positive parameter; classes (5) and (6) share one
column through ``eps``.  Monomial labels follow the residual-system scheme
(``13c2`` means w1 ^ w3 ^ conj(w2)).

A handful of cells differ from their original tabulation, which violates
the conjugation symmetry the tables themselves must satisfy (theta ^ Omega
and d(Omega) are real forms); the corrected values below were re-derived by
hand and are cross-checked against the engine plus an explicit symmetry
check in the suite:

* theta ^ Omega rows 1c2c3, 3c2c3, and c1c2c3 carry the opposite overall sign;
* classes (5)/(6): the ``-2iv`` term belongs in row 23c3, not 2c2c3;
* classes (5)/(6), row 3c2c3: the (2,0)-coefficient is conj(L), not conj(M);
* class (7), row 12c1: the off-diagonal term is -i/2 conj(u), not +i/2 conj(u);
* class (4): the ``(A - conj(A)) conj(u)`` cell sits in row 2c1c3, not 2c1c2;
* class (4), row 13c3: the (2,0)-coefficient is (A+i)M, not (A-i)M;
* class (2), row 1c1c2: the last term is i/(4g) conj(M), not i/(4g) conj(u).
"""

from __future__ import annotations

from .scalars import ParamRegistry

ROW_LABELS = [
    "1-2-3",
    "1-2-c1", "1-2-c2", "1-2-c3",
    "1-3-c1", "1-3-c2", "1-3-c3",
    "2-3-c1", "2-3-c2", "2-3-c3",
    "1-c1-c2", "1-c1-c3", "1-c2-c3",
    "2-c1-c2", "2-c1-c3", "2-c2-c3",
    "3-c1-c2", "3-c1-c3", "3-c2-c3",
    "c1-c2-c3",
]

THETA_WEDGE_OMEGA = {
    "1-2-3":   "c*L + a*N - b*M",
    "1-2-c1":  "-a*conj(u) + conj(a)*L - i*b*r2",
    "1-2-c2":  "i*a*s2 + conj(b)*L - b*u",
    "1-2-c3":  "conj(c)*L + a*v - b*z",
    "1-3-c1":  "conj(a)*M - a*conj(z) - i*c*r2",
    "1-3-c2":  "-a*conj(v) + conj(b)*M - c*u",
    "1-3-c3":  "conj(c)*M + i*a*t2 - c*z",
    "2-3-c1":  "conj(a)*N - b*conj(z) + c*conj(u)",
    "2-3-c2":  "conj(b)*N - b*conj(v) - i*c*s2",
    "2-3-c3":  "conj(c)*N + i*b*t2 - c*v",
    "1-c1-c2": "i*conj(b)*r2 + a*conj(L) - conj(a)*u",
    "1-c1-c3": "a*conj(M) - conj(a)*z + i*conj(c)*r2",
    "1-c2-c3": "conj(c)*u - conj(b)*z + a*conj(N)",
    "2-c1-c2": "-conj(b)*conj(u) + b*conj(L) - i*conj(a)*s2",
    "2-c1-c3": "-conj(c)*conj(u) + b*conj(M) - conj(a)*v",
    "2-c2-c3": "i*conj(c)*s2 - conj(b)*v + b*conj(N)",
    "3-c1-c2": "-conj(b)*conj(z) + conj(a)*conj(v) + c*conj(L)",
    "3-c1-c3": "c*conj(M) - conj(c)*conj(z) - i*conj(a)*t2",
    "3-c2-c3": "-i*conj(b)*t2 - conj(c)*conj(v) + c*conj(N)",
    "c1-c2-c3": "conj(c)*conj(L) + conj(a)*conj(N) - conj(b)*conj(M)",
}

DOMEGA = {
    "class1": {
        "1-3-c1": "(A + conj(A))*i*r2",
        "1-3-c2": "(A - conj(A))*u",
        "1-3-c3": "-M*A + z*A",
        "2-3-c1": "(A - conj(A))*conj(u)",
        "2-3-c2": "-(A + conj(A))*i*s2",
        "2-3-c3": "N*A - v*A",
        "1-c1-c3": "-(A + conj(A))*i*r2",
        "1-c2-c3": "-(A - conj(A))*u",
        "2-c1-c3": "-(A - conj(A))*conj(u)",
        "2-c2-c3": "(A + conj(A))*i*s2",
        "3-c1-c3": "conj(A)*conj(z) - conj(A)*conj(M)",
        "3-c2-c3": "-conj(A)*conj(v) + conj(A)*conj(N)",
    },
    "class2": {
        "1-2-c1": "-i/4*ginv*M + (2*g+i)/4*ginv*z - 1/2*conj(z)",
        "1-2-c2": "(2*g-i)/4*ginv*N + i/4*ginv*v - 1/2*conj(v)",
        "1-2-c3": "-g*s2 + i/2*t2",
        "1-3-c1": "-i*g*L - (1/2-i*g)*u + 1/2*conj(u)",
        "1-3-c2": "-i/2*s2 - 1/4*ginv*t2",
        "1-3-c3": "(1/2+i*g)*N - 1/2*v - i*g*conj(v)",
        "2-3-c1": "-(1/2-i*g)*i*s2 - (2*g+i)/4*ginv*i*t2",
        "1-c1-c2": "-1/2*z + (2*g-i)/4*ginv*conj(z) + i/4*ginv*conj(M)",
        "1-c1-c3": "1/2*u - (1/2+i*g)*conj(u) + i*g*conj(L)",
        "1-c2-c3": "(1/2+i*g)*i*s2 + (2*g-i)/4*ginv*i*t2",
        "2-c1-c2": "-1/2*v - i/4*ginv*conj(v) + (2*g+i)/4*ginv*conj(N)",
        "2-c1-c3": "i/2*s2 - 1/4*ginv*t2",
        "3-c1-c2": "-g*s2 - i/2*t2",
        "3-c1-c3": "i*g*v - 1/2*conj(v) + (1/2-i*g)*conj(N)",
    },
    "class3": {
        "1-2-c1": "-conj(s12)*M + s11*N + conj(s12)*z - s11*v",
        "1-2-c2": "-s22*M + s12*N + s22*z - s12*v",
        "1-3-c1": "(A + conj(A))*i*r2 - s11*i*t2",
        "1-3-c2": "(A - conj(A))*u - s12*i*t2",
        "1-3-c3": "-M*A + z*A",
        "2-3-c1": "(A - conj(A))*conj(u) - conj(s12)*i*t2",
        "2-3-c2": "-(A + conj(A))*i*s2 - s22*i*t2",
        "2-3-c3": "N*A - v*A",
        "1-c1-c2": "s12*conj(z) - s11*conj(v) - s12*conj(M) + s11*conj(N)",
        "1-c1-c3": "-(A + conj(A))*i*r2 + s11*i*t2",
        "1-c2-c3": "-(A - conj(A))*u + s12*i*t2",
        "2-c1-c2": "s22*conj(z) - conj(s12)*conj(v) - s22*conj(M) + conj(s12)*conj(N)",
        "2-c1-c3": "-(A - conj(A))*conj(u) + conj(s12)*i*t2",
        "2-c2-c3": "(A + conj(A))*i*s2 + s22*i*t2",
        "3-c1-c3": "conj(A)*conj(z) - conj(A)*conj(M)",
        "3-c2-c3": "-conj(A)*conj(v) + conj(A)*conj(N)",
    },
    "class4": {
        "1-3-c1": "-(A + conj(A) - 2*i)*i*r2",
        "1-3-c2": "-(A - conj(A))*u",
        "1-3-c3": "(A+i)*M - (A-i)*z",
        "2-3-c1": "-(A - conj(A))*conj(u)",
        "2-3-c2": "(A + conj(A) - 2*i)*i*s2",
        "2-3-c3": "-(A+i)*N + (A-i)*v",
        "1-c1-c3": "(A + conj(A) + 2*i)*i*r2",
        "1-c2-c3": "(A - conj(A))*u",
        "2-c1-c3": "(A - conj(A))*conj(u)",
        "2-c2-c3": "-(A + conj(A) + 2*i)*i*s2",
        "3-c1-c3": "-(conj(A)+i)*conj(z) + (conj(A)-i)*conj(M)",
        "3-c2-c3": "(conj(A)+i)*conj(v) - (conj(A)-i)*conj(N)",
    },
    "class56": {
        "1-3-c1": "-2*r2",
        "1-3-c2": "2*i*u",
        "1-3-c3": "-eps*L + i*r2 + eps*u + 2*i*z",
        "2-3-c1": "2*i*conj(u)",
        "2-3-c2": "2*s2",
        "2-3-c3": "L - conj(u) + eps*i*s2 - 2*i*v",
        "1-c1-c3": "-2*r2",
        "1-c2-c3": "-2*i*u",
        "2-c1-c3": "-2*i*conj(u)",
        "2-c2-c3": "2*s2",
        "3-c1-c3": "-i*r2 + eps*conj(u) - 2*i*conj(z) - eps*conj(L)",
        "3-c2-c3": "-u - eps*i*s2 + 2*i*conj(v) + conj(L)",
    },
    "class7": {
        "1-2-c1": "i/2*L - i/2*conj(u)",
        "1-2-c3": "i*v",
        "1-3-c1": "-i/2*M + 1/2*u + i/2*conj(z)",
        "1-3-c2": "i*conj(v)",
        "1-3-c3": "-1/2*N - i*r2",
        "2-3-c1": "i/2*s2",
        "2-3-c3": "-L + conj(u)",
        "1-c1-c2": "i/2*u - i/2*conj(L)",
        "1-c1-c3": "-i/2*z + 1/2*conj(u) + i/2*conj(M)",
        "1-c2-c3": "-i/2*s2",
        "2-c1-c3": "-i*v",
        "3-c1-c2": "-i*conj(v)",
        "3-c1-c3": "i*r2 - 1/2*conj(N)",
        "3-c2-c3": "u - conj(L)",
    },
}

# twelve-term expansion of d(Omega) for the one-parameter deformation family,
# over the full taming ansatz (the deformation parameter is t)
NAKAMURA_DOMEGA = {
    "1-2-c1": "conj(u) - t*L",
    "1-2-c2": "-i*s2*(1 + conj(t))",
    "1-2-c3": "-v*(1 - conj(t))",
    "1-3-c1": "-conj(z) + t*M",
    "1-3-c2": "-conj(v)*(1 - conj(t))",
    "1-3-c3": "i*t2*(1 + conj(t))",
    "1-c1-c2": "u - conj(t)*conj(L)",
    "2-c1-c2": "i*s2*(1 + t)",
    "3-c1-c2": "-conj(v)*(1 - t)",
    "1-c1-c3": "-z + conj(t)*conj(M)",
    "2-c1-c3": "-v*(1 - t)",
    "3-c1-c3": "-i*t2*(1 + t)",
}


def table_registry() -> ParamRegistry:
    """Registry for parsing frozen cells: the class parameters plus the
     15-unknown ansatz names and the twisting coefficients."""
    reg = (ParamRegistry()
           .with_complex("A")
           .with_real("g", positive=True)
           .with_real("ginv", positive=True)
           .with_real("eps")
           .with_real("s11").with_real("s22").with_complex("s12")
           .with_complex("t"))
    for nm in ("r2", "s2", "t2"):
        reg = reg.with_real(nm, positive=True)
    for nm in ("u", "v", "z", "L", "M", "N", "a", "b", "c"):
        reg = reg.with_complex(nm)
    return reg
