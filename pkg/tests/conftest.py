import numpy as np
import pytest

from omegalie import Algebra, Bracket


def slow_bracket(b: Bracket, u, v) -> np.ndarray:
    """Reference bracket evaluation through the full structure tensor;
    independent of the pairwise path used by the library."""
    c = b.tensor()
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    out = np.zeros(3, dtype=complex)
    for i in range(3):
        for j in range(3):
            out += u[i] * v[j] * c[i, j]
    return out


def slow_jacobiator(b: Bracket, u, v, w) -> np.ndarray:
    """Direct evaluation of the cyclic triple-bracket sum."""
    return (slow_bracket(b, slow_bracket(b, u, v), w)
            + slow_bracket(b, slow_bracket(b, v, w), u)
            + slow_bracket(b, slow_bracket(b, w, u), v))


def random_algebra(rng, field: str) -> Algebra:
    coeffs = rng.standard_normal((3, 3))
    if field == "complex":
        coeffs = coeffs + 1j * rng.standard_normal((3, 3))
    return Algebra(field, Bracket(coeffs[0], coeffs[1], coeffs[2]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
