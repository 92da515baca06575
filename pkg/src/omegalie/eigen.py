"""Closed-form 3x3 spectral analysis and canonical-form typing.

Eigenvalues come from the depressed cubic solved by Cardano's formula
over the complex numbers; block structure is decided by numerical ranks
of shifted matrices rather than eigenvector chains, which is the robust
route at this size.  Borderline decisions raise AmbiguousSpectrum
instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import COMPLEX, REAL
from .errors import AmbiguousSpectrum

_OMEGA = complex(-0.5, 0.5 * np.sqrt(3.0))  # primitive cube root of unity


def _det3(m: np.ndarray) -> complex:
    return complex(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def _adjugate3(m: np.ndarray) -> np.ndarray:
    out = np.empty((3, 3), dtype=np.complex128)
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            c = [k for k in range(3) if k != i]
            minor = m[np.ix_(r, c)]
            out[i, j] = ((-1) ** (i + j)) * (minor[0, 0] * minor[1, 1]
                                             - minor[0, 1] * minor[1, 0])
    return out


def char_coefficients(m: np.ndarray) -> tuple[complex, complex, complex]:
    """Coefficients (b, c, d) of det(lambda*I - m) = l^3 + b l^2 + c l + d."""
    m = np.asarray(m, dtype=np.complex128)
    b = -complex(m[0, 0] + m[1, 1] + m[2, 2])
    c = complex(
        m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    )
    d = -_det3(m)
    return b, c, d


def cubic_roots(b: complex, c: complex, d: complex) -> np.ndarray:
    """The three roots of l^3 + b l^2 + c l + d over the complex numbers.

    Depressed-cubic Cardano evaluation; the larger of the two candidate
    cube arguments is taken to avoid cancellation, and each root gets a
    guarded Newton polish on the original polynomial (skipped near
    multiple roots, where the derivative underflows the correction).
    """
    b, c, d = complex(b), complex(c), complex(d)
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d

    if p == 0 and q == 0:
        ts = np.zeros(3, dtype=np.complex128)
    elif p == 0:
        r = (-q) ** (1.0 / 3.0)
        ts = np.array([r, r * _OMEGA, r * _OMEGA.conjugate()],
                      dtype=np.complex128)
    else:
        disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
        sq = np.sqrt(complex(disc))
        u3a, u3b = -q / 2.0 + sq, -q / 2.0 - sq
        u3 = u3a if abs(u3a) >= abs(u3b) else u3b
        u = u3 ** (1.0 / 3.0)
        v = -p / (3.0 * u)
        ts = np.array([
            u + v,
            u * _OMEGA + v * _OMEGA.conjugate(),
            u * _OMEGA.conjugate() + v * _OMEGA,
        ], dtype=np.complex128)

    roots = ts - shift
    scale = max(1.0, abs(b), abs(c) ** 0.5, abs(d) ** (1.0 / 3.0))
    for k in range(3):
        lam = roots[k]
        for _ in range(2):
            f = ((lam + b) * lam + c) * lam + d
            fp = (3.0 * lam + 2.0 * b) * lam + c
            if abs(fp) <= 1e-8 * scale * scale:
                break
            lam = lam - f / fp
        roots[k] = lam
    return roots


def eigenvalues3(m: np.ndarray) -> np.ndarray:
    """The three eigenvalues of a 3x3 matrix by the closed-form cubic."""
    return cubic_roots(*char_coefficients(np.asarray(m, dtype=np.complex128)))


def backward_errors(m: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Per-root backward error estimate |det(m - l I)| / ||adj(m - l I)||_F.

    For the exact smallest singular value the denominator would be the
    spectral norm of the adjugate; the Frobenius norm overestimates it
    by at most sqrt(2), making this a mildly conservative bound on the
    distance to the nearest matrix with the root as exact eigenvalue.
    """
    m = np.asarray(m, dtype=np.complex128)
    out = np.empty(3, dtype=np.float64)
    for k, lam in enumerate(roots):
        shifted = m - lam * np.eye(3)
        denom = float(np.linalg.norm(_adjugate3(shifted)))
        out[k] = abs(_det3(shifted)) / max(denom, np.finfo(float).tiny)
    return out


def eigenvalues3_with_errors(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    roots = eigenvalues3(m)
    return roots, backward_errors(m, roots)


class SpectralType:
    """Canonical-form tag of an adjoint operator with 0 in its spectrum."""

    name = "spectral"

    def parameters(self) -> tuple:
        return ()


@dataclass(frozen=True)
class NilFull(SpectralType):
    """Single nilpotent block of size 3."""

    name = "nil_full"


@dataclass(frozen=True)
class DoubleBlock(SpectralType):
    """Eigenvalues {0, delta, delta} with a size-2 block at delta != 0."""

    delta: complex
    name = "double_block"

    def __post_init__(self):
        object.__setattr__(self, "delta", complex(self.delta))
        if self.delta == 0:
            raise ValueError("double block eigenvalue must be nonzero")

    def parameters(self):
        return (self.delta,)


@dataclass(frozen=True)
class Diag(SpectralType):
    """Eigenvalues {0, mu, nu}, diagonalizable; mu = nu is allowed."""

    mu: complex
    nu: complex
    name = "diag"

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "nu", complex(self.nu))
        if self.mu == 0 or self.nu == 0:
            raise ValueError("diagonal eigenvalues must be nonzero")

    def parameters(self):
        return (self.mu, self.nu)


@dataclass(frozen=True)
class ZeroBlockPlus(SpectralType):
    """Size-2 nilpotent block plus one eigenvalue tau != 0."""

    tau: complex
    name = "zero_block_plus"

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        if self.tau == 0:
            raise ValueError("tau must be nonzero")

    def parameters(self):
        return (self.tau,)


@dataclass(frozen=True)
class Rotation(SpectralType):
    """Real-only: zero eigenvalue plus a nonreal conjugate pair with
    sum a and product b, so a^2 < 4b."""

    a: float
    b: float
    name = "rotation"

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not self.a * self.a < 4.0 * self.b:
            raise ValueError("rotation pair requires a^2 < 4b")

    def parameters(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class KernelTooBig(SpectralType):
    """Geometric multiplicity of the zero eigenvalue exceeds 1."""

    name = "kernel_too_big"


def _quadratic_roots(b: complex, c: complex) -> np.ndarray:
    """Stable roots of l^2 + b l + c over the complex numbers."""
    disc = np.sqrt(complex(b * b - 4.0 * c))
    q = (-b - disc) / 2.0 if abs(-b - disc) >= abs(-b + disc) else \
        (-b + disc) / 2.0
    if q == 0:
        return np.array([0j, -b], dtype=np.complex128)
    return np.array([q, c / q], dtype=np.complex128)


def _guarded_rank(m: np.ndarray, tol: float) -> int:
    """Numerical rank with an ambiguity band: singular values between
    tol and 10*tol of the largest are neither zero nor trustworthy."""
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    ratios = s / s[0]
    if np.any((ratios > tol) & (ratios < 10.0 * tol)):
        raise AmbiguousSpectrum(
            "rank pivot falls inside the tolerance guard band")
    return int(np.sum(ratios >= 10.0 * tol))


def _ratio_verdict(ratio: float, tol: float) -> bool:
    """True when the ratio is decisively below tol, False when
    decisively above 10*tol, AmbiguousSpectrum in between."""
    if ratio <= tol:
        return True
    if ratio >= 10.0 * tol:
        return False
    raise AmbiguousSpectrum(
        f"pivot ratio {ratio:.3e} inside the guard band "
        f"({tol:.3e}, {10 * tol:.3e})")


def spectral_type(m: np.ndarray, field: str = COMPLEX,
                  tol: float = 1e-7) -> SpectralType:
    """Classify the canonical form of a 3x3 operator whose spectrum
    contains 0 (callers pass the adjoint of a radical vector, which lies
    in its own kernel).

    The known zero root is deflated from the characteristic cubic, so
    the remaining pair comes from a quadratic and never suffers the
    cube-root accuracy loss of a triple root.  Clustering bands use the
    relative tolerance tol; a gap inside (tol, 10*tol) of the scale is
    resolved by a rank probe of the shifted matrix when possible (ranks
    and traces are linearly stable where close eigenvalues are not) and
    raises AmbiguousSpectrum otherwise.
    """
    m = np.asarray(m, dtype=np.complex128)
    if field == REAL and m.imag.any():
        raise ValueError("real mode requires a real matrix")
    scale = max(1.0, float(np.linalg.norm(m)))
    band = tol * scale

    cb, cc, cd = char_coefficients(m)
    if abs(cd) > 10.0 * tol * scale ** 3:
        raise AmbiguousSpectrum(
            f"zero is not in the spectrum (|det| = {abs(cd):.3e} against "
            f"scale^3 = {scale ** 3:.3e}); cannot type the operator")
    lam = _quadratic_roots(cb, cc)

    rank_m = _guarded_rank(m, tol)
    if rank_m <= 1:
        return KernelTooBig()

    def is_small(g: float, rescue=None) -> bool:
        if g <= band:
            return True
        if g >= 10.0 * band:
            return False
        if rescue is not None:
            return rescue()
        raise AmbiguousSpectrum(
            f"eigenvalue gap {g:.3e} inside the guard band "
            f"({band:.3e}, {10 * band:.3e})")

    def rank_m2_deficient() -> bool:
        # algebraic multiplicity of 0 exceeds 1 exactly when m@m drops
        # to rank 1; singular values see that without square-root loss
        s = np.linalg.svd(m @ m, compute_uv=False)
        return _ratio_verdict(float(s[1] / s[0]) if s[0] > 0 else 0.0, tol)

    zero0 = is_small(abs(lam[0]), rank_m2_deficient)
    zero1 = is_small(abs(lam[1]), rank_m2_deficient)

    if zero0 and zero1:
        # nilpotent; rank 2 forces a single size-3 block
        return NilFull()
    trace = -cb
    if zero0 or zero1:
        tau = trace     # the one nonzero eigenvalue, linearly stable
        if abs(tau) <= 10.0 * band:
            raise AmbiguousSpectrum(
                "cannot separate a small third eigenvalue from a "
                "defective zero pair")
        if field == REAL:
            tau = complex(tau.real, 0.0)
        return ZeroBlockPlus(tau) if rank_m == 2 else KernelTooBig()

    def repeated_by_rank() -> bool:
        s = np.linalg.svd(m - (trace / 2.0) * np.eye(3), compute_uv=False)
        return _ratio_verdict(float(s[2] / s[0]) if s[0] > 0 else 0.0, tol)

    if is_small(abs(lam[0] - lam[1]), repeated_by_rank):
        delta = trace / 2.0
        if field == REAL:
            delta = complex(delta.real, 0.0)
        r = _guarded_rank(m - delta * np.eye(3), tol)
        if r == 2:
            return DoubleBlock(delta)
        if r == 1:
            return Diag(delta, delta)
        raise AmbiguousSpectrum(
            f"shifted rank {r} inconsistent with a repeated eigenvalue")

    if field == REAL:
        if not is_small(abs(lam[0].imag)):
            # conjugate pair; sum and product come from the deflated
            # quadratic's coefficients, which are exactly real here
            return Rotation(trace.real, cc.real)
        return Diag(lam[0].real, lam[1].real)
    return Diag(lam[0], lam[1])
