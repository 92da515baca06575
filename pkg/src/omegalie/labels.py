"""Classification verdicts and their parameter domains.

Lie kinds apply over both fields.  The complex non-Lie list is
{L1, L2, A, B, C}; the real non-Lie list is {L1, L2, ACal, CCal, B1,
Bm1, EPlus, EMinus}, where ACal/CCal are the real-parameter forms of
A/C and EPlus/EMinus come from the rotation canonical form that only
exists over the reals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ParameterOutOfDomain, ZeroParameter

LIE_KINDS = frozenset({"Abelian", "G1", "G2", "H", "G3", "G4"})
COMPLEX_NONLIE = frozenset({"L1", "L2", "A", "B", "C"})
REAL_NONLIE = frozenset({"L1", "L2", "ACal", "CCal", "B1", "Bm1",
                         "EPlus", "EMinus"})
ALL_KINDS = LIE_KINDS | COMPLEX_NONLIE | REAL_NONLIE

PARAMETRIC = frozenset({"H", "A", "C", "ACal", "CCal", "EPlus", "EMinus"})
NONZERO_PARAM = frozenset({"H", "C", "CCal", "EPlus", "EMinus"})
REAL_PARAM = frozenset({"ACal", "CCal", "EPlus", "EMinus"})
REAL_ONLY = frozenset({"ACal", "CCal", "B1", "Bm1", "EPlus", "EMinus"})
COMPLEX_ONLY = frozenset({"A", "B", "C"})

_DISPLAY = {
    "Abelian": "abelian",
    "G1": "g1",
    "G2": "g2",
    "G3": "g3",
    "G4": "g4",
    "H": "h",
    "Bm1": "B-1",
    "EPlus": "E+",
    "EMinus": "E-",
}


def _fmt(z: complex) -> str:
    if z.imag == 0:
        r = z.real
        return str(int(r)) if r == int(r) else repr(r)
    return repr(z).strip("()")


@dataclass(frozen=True)
class ClassLabel:
    """Tagged classification verdict with canonical parameters."""

    kind: str
    param: Optional[complex] = None

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if self.kind in PARAMETRIC:
            if self.param is None:
                raise ParameterOutOfDomain(f"{self.kind} requires a parameter")
            object.__setattr__(self, "param", complex(self.param))
            if self.kind in NONZERO_PARAM and self.param == 0:
                raise ZeroParameter(f"{self.kind} parameter must be nonzero")
            if self.kind in REAL_PARAM and self.param.imag != 0:
                raise ParameterOutOfDomain(
                    f"{self.kind} parameter must be real")
            if self.kind in ("EPlus", "EMinus") and not abs(self.param) < 2:
                # the rotation block behind this family has trace alpha and
                # determinant 1; a nonreal pair needs alpha^2 < 4, and at
                # the boundary the algebra degenerates into the B family
                raise ParameterOutOfDomain(
                    f"{self.kind} parameter must satisfy 0 < |alpha| < 2")
            if self.kind in ("C", "CCal") and self.param == -1:
                # the compatible form of this family is 1 + alpha on the
                # (y, z) pair, so alpha = -1 degenerates into the rank-3
                # Lie class and leaves the family
                raise ParameterOutOfDomain(
                    f"{self.kind} parameter -1 yields a vanishing form")
        elif self.param is not None:
            raise ParameterOutOfDomain(f"{self.kind} takes no parameter")

    @property
    def is_lie(self) -> bool:
        return self.kind in LIE_KINDS

    def display(self) -> str:
        base = _DISPLAY.get(self.kind, self.kind)
        if self.param is None:
            return base
        return f"{base}({_fmt(self.param)})"

    def params(self) -> tuple:
        return () if self.param is None else (self.param,)


def same_label(a: ClassLabel, b: ClassLabel, tol: float = 1e-6) -> bool:
    """Kinds equal and parameters within tol (absolute)."""
    if a.kind != b.kind:
        return False
    if a.param is None:
        return True
    return abs(a.param - b.param) <= tol
