"""Value types and elementary operations for 3-dimensional skew-bracket algebras.

Structure constants are stored for the three independent products
[e1,e2], [e1,e3], [e2,e3]; all other products follow by skew symmetry,
so skewness is structural rather than checked.  The bilinear form is
likewise stored by its values on the pairs (1,2), (1,3), (2,3).

All scalars are complex double precision.  In real field mode every
stored scalar must have imaginary part exactly zero; complex arithmetic
on such values keeps the imaginary part exactly zero, so the invariant
survives transforms without rounding caveats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SingularMatrix

REAL = "real"
COMPLEX = "complex"

_E = np.eye(3, dtype=np.complex128)


def _triple(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128).reshape(3)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Tolerances:
    """Thresholds used for validation, rank decisions, eigenvalue
    clustering and witness verification.  All are overridable from the
    CLI; the defaults suit unit-scale desk inputs."""

    validation: float = 1e-9
    rank: float = 1e-9
    spectral: float = 1e-7
    witness: float = 1e-6


@dataclass(frozen=True, eq=False)
class Bracket:
    """Skew bilinear product on a 3-dimensional space.

    cxy, cxz, cyz are the coordinates of [e1,e2], [e1,e3], [e2,e3]
    in the basis e1, e2, e3.
    """

    cxy: np.ndarray
    cxz: np.ndarray
    cyz: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "cxy", _triple(self.cxy))
        object.__setattr__(self, "cxz", _triple(self.cxz))
        object.__setattr__(self, "cyz", _triple(self.cyz))

    @staticmethod
    def zero() -> "Bracket":
        return Bracket(np.zeros(3), np.zeros(3), np.zeros(3))

    @staticmethod
    def from_tensor(c: np.ndarray) -> "Bracket":
        # only the upper slots are read; skewness of c is not trusted
        return Bracket(c[0, 1], c[0, 2], c[1, 2])

    def tensor(self) -> np.ndarray:
        """Full structure tensor c[i,j,:] = coordinates of [e_i,e_j]."""
        c = np.zeros((3, 3, 3), dtype=np.complex128)
        c[0, 1] = self.cxy
        c[1, 0] = -self.cxy
        c[0, 2] = self.cxz
        c[2, 0] = -self.cxz
        c[1, 2] = self.cyz
        c[2, 1] = -self.cyz
        return c

    def matrix(self) -> np.ndarray:
        """3x3 matrix whose columns are cxy, cxz, cyz; its column space
        is the derived subalgebra."""
        return np.column_stack([self.cxy, self.cxz, self.cyz])

    def scale(self) -> float:
        return float(max(np.abs(self.cxy).max(),
                         np.abs(self.cxz).max(),
                         np.abs(self.cyz).max()))

    def is_real(self) -> bool:
        return not (self.cxy.imag.any() or self.cxz.imag.any()
                    or self.cyz.imag.any())


@dataclass(frozen=True)
class OmegaForm:
    """Skew bilinear form by its values on (e1,e2), (e1,e3), (e2,e3)."""

    wxy: complex = 0.0
    wxz: complex = 0.0
    wyz: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "wxy", complex(self.wxy))
        object.__setattr__(self, "wxz", complex(self.wxz))
        object.__setattr__(self, "wyz", complex(self.wyz))

    @staticmethod
    def from_gram(w: np.ndarray) -> "OmegaForm":
        return OmegaForm(w[0, 1], w[0, 2], w[1, 2])

    def gram(self) -> np.ndarray:
        """Full skew matrix W with W[i,j] = form(e_i, e_j)."""
        return np.array([[0.0, self.wxy, self.wxz],
                         [-self.wxy, 0.0, self.wyz],
                         [-self.wxz, -self.wyz, 0.0]], dtype=np.complex128)

    def triple(self) -> np.ndarray:
        return np.array([self.wxy, self.wxz, self.wyz], dtype=np.complex128)

    def max_abs(self) -> float:
        return float(max(abs(self.wxy), abs(self.wxz), abs(self.wyz)))

    def negated(self) -> "OmegaForm":
        return OmegaForm(-self.wxy, -self.wxz, -self.wyz)

    def is_real(self) -> bool:
        return self.wxy.imag == 0 and self.wxz.imag == 0 and self.wyz.imag == 0


def apply_bracket(b: Bracket, u, v) -> np.ndarray:
    """[u, v] for coordinate vectors u, v.

    Evaluated through the stored i<j slots, so [v, v] is exactly zero:
    each coefficient is a difference of identical floating products.
    """
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    return ((u[0] * v[1] - u[1] * v[0]) * b.cxy
            + (u[0] * v[2] - u[2] * v[0]) * b.cxz
            + (u[1] * v[2] - u[2] * v[1]) * b.cyz)


def jacobiator(b: Bracket) -> np.ndarray:
    """[[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] in basis coordinates.

    Both sides of the compatibility identity are alternating trilinear,
    so on a 3-dimensional space this single vector determines the
    identity on every triple.
    """
    return (apply_bracket(b, b.cxy, _E[2])
            + apply_bracket(b, b.cyz, _E[0])
            + apply_bracket(b, -b.cxz, _E[1]))


def jacobiator_general(b: Bracket, u, v, w) -> np.ndarray:
    """[[u,v],w] + [[v,w],u] + [[w,u],v] for arbitrary vectors (slow path)."""
    return (apply_bracket(b, apply_bracket(b, u, v), w)
            + apply_bracket(b, apply_bracket(b, v, w), u)
            + apply_bracket(b, apply_bracket(b, w, u), v))


def induced_omega(b: Bracket) -> OmegaForm:
    """The unique skew form compatible with b.

    With J = jacobiator(b), matching coefficients of
    J = w(e1,e2) e3 + w(e2,e3) e1 + w(e3,e1) e2 gives
    w(e2,e3) = J[0], w(e1,e3) = -J[1], w(e1,e2) = J[2].
    """
    j = jacobiator(b)
    return OmegaForm(wxy=j[2], wxz=-j[1], wyz=j[0])


@dataclass(frozen=True, eq=False)
class Algebra:
    """A field marker, a skew bracket, and the compatible skew form.

    When omega is omitted the induced form is filled in; a 3-dimensional
    skew bracket admits exactly one compatible form.
    """

    field: str
    bracket: Bracket
    omega: Optional[OmegaForm] = None

    def __post_init__(self):
        if self.field not in (REAL, COMPLEX):
            raise ValueError(f"unknown field mode {self.field!r}")
        if self.omega is None:
            object.__setattr__(self, "omega", induced_omega(self.bracket))
        if self.field == REAL and not (self.bracket.is_real()
                                       and self.omega.is_real()):
            raise ValueError("real field mode requires exactly real scalars")

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.bracket.matrix()).all()
                    and np.isfinite(self.omega.triple()).all())


@dataclass(frozen=True, eq=False)
class Witness:
    """Invertible basis change carrying an input algebra onto a canonical
    model.  Columns express the new basis in old coordinates; residual is
    the max-norm discrepancy of the transformed algebra against the model."""

    matrix: np.ndarray
    residual: float

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128).reshape(3, 3)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "residual", float(self.residual))

    def verified(self, tol: float = 1e-6) -> bool:
        return self.residual < tol


@dataclass(frozen=True, eq=False)
class ValidationReport:
    """Outcome of checking a stored form against the induced one."""

    discrepancy: float          # max |stored - induced| over the three slots
    discrepancy_negated: float  # max |stored + induced|
    tol: float
    scale: float                # max(1, largest structure constant)
    passed: bool
    passed_negated: bool
    convention: Optional[str]   # "+1", "-1", or None
    is_lie: bool
    field_ok: bool
    finite_ok: bool
    induced: OmegaForm

    def ok(self) -> bool:
        return self.passed and self.field_ok and self.finite_ok


def validate(a: Algebra, tol: float = 1e-9) -> ValidationReport:
    """Check the stored form against the induced one at relative
    tolerance tol, report Lie-ness, field-mode and finiteness.

    Failures are carried in the report, never raised.  The negated
    comparison is reported as well: published tables sometimes state the
    form with the opposite global sign, and the detected convention is
    worth surfacing instead of silently correcting.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    ind = induced_omega(a.bracket)
    stored = a.omega.triple()
    disc = float(np.abs(stored - ind.triple()).max())
    disc_neg = float(np.abs(stored + ind.triple()).max())
    scale = max(1.0, a.bracket.scale())
    passed = disc < tol * scale
    passed_neg = disc_neg < tol * scale
    if passed:
        convention = "+1"
    elif passed_neg:
        convention = "-1"
    else:
        convention = None
    field_ok = a.field == COMPLEX or (a.bracket.is_real() and a.omega.is_real())
    return ValidationReport(
        discrepancy=disc,
        discrepancy_negated=disc_neg,
        tol=tol,
        scale=scale,
        passed=passed,
        passed_negated=passed_neg,
        convention=convention,
        is_lie=ind.max_abs() <= tol * scale,
        field_ok=field_ok,
        finite_ok=a.is_finite(),
        induced=ind,
    )


def transform(a: Algebra, p, tol: float = 1e-9) -> Algebra:
    """Rewrite the algebra in the basis f_j = sum_i p[i,j] e_i.

    The bracket transforms as a (2,1) tensor and the form pulls back as
    a bilinear form.  The result stays in real field mode only when both
    the algebra and p are real; a complex basis change promotes the
    result to complex mode.
    """
    p = np.asarray(p, dtype=np.complex128).reshape(3, 3)
    s = np.linalg.svd(p, compute_uv=False)
    if s[0] == 0 or s[-1] <= tol * s[0]:
        raise SingularMatrix("basis change is numerically singular")
    q = np.linalg.inv(p)
    c = a.bracket.tensor()
    cp = np.einsum("ai,bj,abc,dc->ijd", p, p, c, q)
    w = p.T @ a.omega.gram() @ p
    field = a.field
    if field == REAL and p.imag.any():
        field = COMPLEX
    return Algebra(field, Bracket.from_tensor(cp), OmegaForm.from_gram(w))


def derived_rank(b: Bracket, tol: float = 1e-9) -> int:
    """Dimension of the span of all products, the rank of the bracket.

    Numerical rank of the matrix [cxy | cxz | cyz] with threshold tol
    relative to the largest entry.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    m = b.matrix()
    scale = float(np.abs(m).max())
    if scale == 0.0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * scale))


def omega_radical(w: OmegaForm, tol: float = 1e-9) -> Optional[np.ndarray]:
    """Unit spanning vector of the radical of a nonzero skew form,
    or None when the form vanishes (whole space is radical).

    A nonzero skew form on a 3-dimensional space always has rank 2, and
    its 1-dimensional kernel is spanned by (w23, -w13, w12): each entry
    of W v then cancels as a difference of identical products, so the
    annihilation is exact.  Normalization makes the largest-magnitude
    coordinate real positive, which keeps downstream choices
    deterministic.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if w.max_abs() <= tol:
        return None
    v = np.array([w.wyz, -w.wxz, w.wxy], dtype=np.complex128)
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    v = v / (v[k] / abs(v[k]))
    return v


def adjoint(b: Bracket, v) -> np.ndarray:
    """Matrix of u -> [v, u] in the ambient basis."""
    v = np.asarray(v, dtype=np.complex128)
    return np.einsum("i,ijk->kj", v, b.tensor())


def max_difference(a: Algebra, b: Algebra) -> float:
    """Entrywise max-norm distance between two algebras (brackets and forms)."""
    return float(max(
        np.abs(a.bracket.cxy - b.bracket.cxy).max(),
        np.abs(a.bracket.cxz - b.bracket.cxz).max(),
        np.abs(a.bracket.cyz - b.bracket.cyz).max(),
        np.abs(a.omega.triple() - b.omega.triple()).max(),
    ))


def condition_number(p) -> float:
    p = np.asarray(p, dtype=np.complex128).reshape(3, 3)
    s = np.linalg.svd(p, compute_uv=False)
    if s[-1] == 0:
        return float("inf")
    return float(s[0] / s[-1])
