"""Constructors for every named canonical model and the Bianchi-type rows.

Every catalog algebra stores the induced form; the published form is
kept alongside verbatim, because some Bianchi rows state it with the
opposite global sign.  Fidelity plus annotation beats silent fixing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .core import COMPLEX, REAL, Algebra, Bracket, OmegaForm, validate
from .errors import ParameterOutOfDomain
from .labels import COMPLEX_ONLY, REAL_ONLY, ClassLabel


def _brackets_for(label: ClassLabel) -> Bracket:
    a = label.param
    k = label.kind
    if k == "Abelian":
        return Bracket.zero()
    if k == "G1":
        return Bracket((0, 0, 0), (0, 0, 0), (0, 1, 0))
    if k == "G2":
        return Bracket((0, 0, 0), (0, 0, 0), (1, 0, 0))
    if k == "H":
        return Bracket((0, 1, 0), (0, 0, a), (0, 0, 0))
    if k == "G3":
        return Bracket((0, 1, 0), (0, 1, 1), (0, 0, 0))
    if k == "G4":
        return Bracket((0, 2, 0), (0, 0, -2), (1, 0, 0))
    if k == "L1":
        return Bracket((0, 1, 0), (0, 0, 0), (0, 0, 1))
    if k == "L2":
        return Bracket((0, 0, 0), (0, 1, 0), (0, 0, 1))
    if k in ("A", "ACal"):
        return Bracket((1, 0, 0), (1, 1, 0), (a, 0, 1))
    if k in ("B", "B1"):
        return Bracket((0, 1, 0), (0, 1, 1), (1, 0, 0))
    if k == "Bm1":
        return Bracket((0, 1, 0), (0, 1, 1), (-1, 0, 0))
    if k in ("C", "CCal"):
        return Bracket((0, 1, 0), (0, 0, a), (1, 0, 0))
    if k == "EPlus":
        return Bracket((0, 0, -1), (0, 1, a), (1, 0, 0))
    if k == "EMinus":
        return Bracket((0, 0, -1), (0, 1, a), (-1, 0, 0))
    raise ParameterOutOfDomain(f"no model for kind {label.kind!r}")


def model(label: ClassLabel, field: Optional[str] = None) -> Algebra:
    """Canonical algebra for a class label, with the induced form filled in.

    The field defaults to real for real-only kinds and complex
    otherwise; Lie kinds and L1/L2 accept either mode.
    """
    if field is None:
        field = REAL if label.kind in REAL_ONLY else COMPLEX
    if field == REAL and label.kind in COMPLEX_ONLY:
        raise ParameterOutOfDomain(
            f"{label.kind} is a complex-mode class; use its real counterpart")
    if field == COMPLEX and label.kind in REAL_ONLY:
        raise ParameterOutOfDomain(
            f"{label.kind} is a real-mode class")
    if field == REAL and label.param is not None and label.param.imag != 0:
        raise ParameterOutOfDomain("real mode requires a real parameter")
    return Algebra(field, _brackets_for(label))


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A named model with its published structure constants and form."""

    name: str
    params: tuple
    algebra: Algebra
    printed_omega: OmegaForm
    source: str
    convention: Optional[str]   # sign linking printed to induced form
    stated_class: Optional[str] = None


def entry(label: ClassLabel, field: Optional[str] = None) -> CatalogEntry:
    alg = model(label, field)
    return CatalogEntry(
        name=label.display(),
        params=label.params(),
        algebra=alg,
        printed_omega=alg.omega,
        source="canonical list",
        convention="+1",
    )


# Bianchi-type rows: bracket triples, published form values (wxy, wxz, wyz),
# whether the row takes the parameter a, and the class it should land on.
_BIANCHI = {
    "IV_T": {
        "brackets": lambda a: ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
        "omega": lambda a: (0, 0, -2),
        "parametric": False,
        "stated_class": "CCal",
    },
    "VI_T": {
        "brackets": lambda a: ((0, 1, 0), (0, 1, 1), (1, 0, 0)),
        "omega": lambda a: (0, 0, -2),
        "parametric": False,
        "stated_class": "B1",
    },
    "VI_S": {
        "brackets": lambda a: ((-1, 0, 0), (0, 1, 0), (1, 0, 1)),
        "omega": lambda a: (0, -2, 0),
        "parametric": False,
        "stated_class": "B1",
    },
    "VI_N": {
        "brackets": lambda a: ((-1, 1, 0), (0, 1, 1), (1, 0, 1)),
        "omega": lambda a: (0, -2, -2),
        "parametric": False,
        "stated_class": "L1",
    },
    "VII_T": {
        "brackets": lambda a: ((0, 1, 0), (0, -1, 1), (1, 0, 0)),
        "omega": lambda a: (0, 0, -2),
        "parametric": False,
        "stated_class": "Bm1",
    },
    "VIII_a": {
        "brackets": lambda a: ((0, 0, -1), (-a, -1, 0), (1, -a, 0)),
        "omega": lambda a: (2 * a, 0, 0),
        "parametric": True,
        "stated_class": "EPlus",
    },
    "VIII_T_a": {
        "brackets": lambda a: ((0, a, -1), (0, -1, a), (1, 0, 0)),
        "omega": lambda a: (0, 0, -2 * a),
        "parametric": True,
        "stated_class": "L2|CCal",   # L2 when a = 1, CCal otherwise
    },
    "VIII_N_a": {
        "brackets": lambda a: ((0, a, -1), (-a, -1, a), (1, -a, 0)),
        "omega": lambda a: (2 * a, 0, -2 * a),
        "parametric": True,
        "stated_class": "ACal",
    },
    "IX_a": {
        "brackets": lambda a: ((0, 0, 1), (-a, -1, 0), (1, -a, 0)),
        "omega": lambda a: (-2 * a, 0, 0),
        "parametric": True,
        "stated_class": "EMinus",
    },
}

BIANCHI_TYPES = tuple(_BIANCHI)


def bianchi(bianchi_type: str, a: Optional[float] = None) -> CatalogEntry:
    """A Bianchi-type row with its published structure constants and form.

    Parameterized rows require a > 0.  The entry records which global
    sign links the published form to the induced one.
    """
    if bianchi_type not in _BIANCHI:
        raise ParameterOutOfDomain(f"unknown Bianchi type {bianchi_type!r}")
    row = _BIANCHI[bianchi_type]
    if row["parametric"]:
        if a is None or not a > 0:
            raise ParameterOutOfDomain(
                f"{bianchi_type} requires a parameter a > 0")
        params = (complex(a),)
    else:
        if a is not None:
            raise ParameterOutOfDomain(f"{bianchi_type} takes no parameter")
        a = 0.0
        params = ()
    cxy, cxz, cyz = row["brackets"](a)
    bracket = Bracket(cxy, cxz, cyz)
    wxy, wxz, wyz = row["omega"](a)
    printed = OmegaForm(wxy, wxz, wyz)
    alg = Algebra(REAL, bracket)  # induced form stored
    report = validate(Algebra(REAL, bracket, printed), tol=1e-9)
    return CatalogEntry(
        name=bianchi_type,
        params=params,
        algebra=alg,
        printed_omega=printed,
        source="bianchi catalog",
        convention=report.convention,
        stated_class=row["stated_class"],
    )


def complex_nonlie_labels(alpha_a: complex = 1.0,
                          alpha_c: complex = 2.0) -> list[ClassLabel]:
    return [
        ClassLabel("L1"),
        ClassLabel("L2"),
        ClassLabel("A", alpha_a),
        ClassLabel("B"),
        ClassLabel("C", alpha_c),
    ]


def real_nonlie_labels(alpha: float = 2.0,
                       rotation_alpha: float = 1.25) -> list[ClassLabel]:
    return [
        ClassLabel("L1"),
        ClassLabel("L2"),
        ClassLabel("ACal", alpha),
        ClassLabel("CCal", alpha),
        ClassLabel("B1"),
        ClassLabel("Bm1"),
        ClassLabel("EPlus", rotation_alpha),
        ClassLabel("EMinus", rotation_alpha),
    ]


def lie_labels(alpha: complex = 3.0) -> list[ClassLabel]:
    return [
        ClassLabel("Abelian"),
        ClassLabel("G1"),
        ClassLabel("G2"),
        ClassLabel("H", alpha),
        ClassLabel("G3"),
        ClassLabel("G4"),
    ]


def iter_catalog(field: str) -> Iterator[tuple[ClassLabel, Algebra]]:
    """Representative (label, model) pairs for one field mode."""
    if field == COMPLEX:
        labels = complex_nonlie_labels() + lie_labels()
    else:
        labels = real_nonlie_labels() + lie_labels(alpha=3.0)
    for label in labels:
        yield label, model(label, field)
