"""Correlation measures on bipartite states.

Each public function accepts a :class:`~qspeedlab.states.DensityOperator` or a
raw array. Raw arrays may be stacked as ``(n, d, d)``; the result is then an
array of ``n`` values. Raw arrays are assumed to be two-qubit unless ``dims``
is given. Natural logarithms throughout.
"""

from __future__ import annotations

import enum

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotPure, NotTwoQubit
from .states import SIGMA_Y, DensityOperator, Observable

__all__ = [
    "MeasureKind",
    "negativity",
    "concurrence_sq",
    "i_concurrence_sq",
    "von_neumann_entropy",
    "entanglement_entropy",
    "relative_entropy",
    "mutual_information",
    "chsh_expectation",
    "PURITY_TOL",
]

PURITY_TOL = 1e-8
_CLAMP = 1e-12
_YY = np.kron(SIGMA_Y, SIGMA_Y)


class MeasureKind(enum.Enum):
    NEGATIVITY = "negativity"
    CONCURRENCE_SQ = "concurrence_sq"
    I_CONCURRENCE_SQ = "i_concurrence_sq"
    ENTROPY = "entropy"
    ENTANGLEMENT_ENTROPY = "entanglement_entropy"
    MUTUAL_INFO = "mutual_info"
    CHSH_EXPECTATION = "chsh_expectation"
    RELATIVE_ENTROPY = "relative_entropy"


def _unpack(rho, dims=None) -> tuple[np.ndarray, int, int]:
    if isinstance(rho, DensityOperator):
        return rho.matrix, rho.d_a, rho.d_b
    m = np.asarray(rho, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {m.shape}")
    if dims is None:
        dims = (2, 2)
    d_a, d_b = dims
    if m.shape[-1] != d_a * d_b:
        raise DimensionMismatch(f"dimension {m.shape[-1]} != {d_a} * {d_b}")
    return m, d_a, d_b


def _out(x):
    x = np.where((x < 0) & (x > -_CLAMP), 0.0, x) + 0.0  # also turns -0.0 into 0.0
    return float(x) if np.ndim(x) == 0 else x


def _purity(m: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(m) ** 2, axis=(-2, -1))


def _require_pure(m: np.ndarray) -> None:
    dev = np.abs(_purity(m) - 1.0)
    if np.any(dev > PURITY_TOL):
        raise NotPure(f"tr(rho^2) deviates from 1 by {float(np.max(dev)):.3e}")


def _entropy_of_spectrum(w: np.ndarray) -> np.ndarray:
    on = w > linalg.TOL.support
    safe = np.where(on, w, 1.0)
    return -np.sum(np.where(on, safe * np.log(safe), 0.0), axis=-1)


def negativity(rho, dims=None):
    """``(||rho^{T_B}||_1 - 1) / 2``."""
    m, d_a, d_b = _unpack(rho, dims)
    pt = linalg.partial_transpose(m, d_a, d_b, "B")
    return _out((np.asarray(linalg.schatten_norm(pt, 1)) - 1.0) / 2.0)


def concurrence_sq(psi, *, check: bool = True):
    """Squared concurrence ``tr(psi (YY) psi* (YY))`` of a pure two-qubit state."""
    m, d_a, d_b = _unpack(psi)
    if (d_a, d_b) != (2, 2):
        raise NotTwoQubit(f"concurrence needs a two-qubit state, got {d_a}x{d_b}")
    if check:
        _require_pure(m)
    flipped = _YY @ np.conj(m) @ _YY
    return _out(np.real(np.einsum("...ij,...ji->...", m, flipped)))


def i_concurrence_sq(psi, nu_a: float = 1.0, nu_b: float = 1.0, dims=None, *, check: bool = True):
    """Squared I-concurrence ``2 nu_a nu_b (1 - tr rho_A^2)`` of a pure state."""
    m, d_a, d_b = _unpack(psi, dims)
    if check:
        _require_pure(m)
    rho_a = linalg.partial_trace(m, d_a, d_b, "B")
    return _out(2.0 * nu_a * nu_b * (1.0 - _purity(rho_a)))


def von_neumann_entropy(rho, dims=None):
    """``-tr(rho ln rho)`` with ``0 ln 0 = 0`` below the support threshold."""
    if isinstance(rho, DensityOperator):
        return _out(_entropy_of_spectrum(rho.eigenvalues))
    m = np.asarray(rho, dtype=complex)
    return _out(_entropy_of_spectrum(linalg.eigvals_hermitian(m)))


def entanglement_entropy(psi, dims=None, *, check: bool = True):
    """Entropy of the A marginal of a pure bipartite state."""
    m, d_a, d_b = _unpack(psi, dims)
    if check:
        _require_pure(m)
    return von_neumann_entropy(linalg.partial_trace(m, d_a, d_b, "B"))


def relative_entropy(rho, sigma) -> float:
    """``tr(rho (ln rho - ln sigma))``, or ``inf`` when supp(rho) is not inside supp(sigma)."""
    r = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    s = sigma.matrix if isinstance(sigma, DensityOperator) else np.asarray(sigma, dtype=complex)
    if r.shape != s.shape:
        raise DimensionMismatch(f"shapes differ: {r.shape} vs {s.shape}")
    log_r, proj_r = linalg.matrix_log_on_support(r)
    log_s, proj_s = linalg.matrix_log_on_support(s)
    # support containment: P_sigma P_rho = P_rho
    leak = np.linalg.norm(proj_r - proj_s @ proj_r)
    if leak > np.sqrt(linalg.TOL.support):
        return float("inf")
    return _out(np.real(np.trace(r @ (log_r - log_s))))


def mutual_information(rho, dims=None):
    """``S(A) + S(B) - S(AB)``."""
    m, d_a, d_b = _unpack(rho, dims)
    s_a = _entropy_of_spectrum(linalg.eigvals_hermitian(linalg.partial_trace(m, d_a, d_b, "B")))
    s_b = _entropy_of_spectrum(linalg.eigvals_hermitian(linalg.partial_trace(m, d_a, d_b, "A")))
    s_ab = _entropy_of_spectrum(linalg.eigvals_hermitian(m))
    return _out(s_a + s_b - s_ab)


def chsh_expectation(rho, bell: Observable | np.ndarray):
    """``tr(rho B)``; the imaginary residue must be below 1e-10."""
    m = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho, dtype=complex)
    b = bell.matrix if isinstance(bell, Observable) else np.asarray(bell, dtype=complex)
    if b.shape[-1] != m.shape[-1]:
        raise DimensionMismatch(f"state dim {m.shape[-1]} != observable dim {b.shape[-1]}")
    val = np.einsum("...ij,...ji->...", m, b)
    if np.any(np.abs(val.imag) > 1e-10):
        raise ValueError(f"expectation has imaginary part {float(np.max(np.abs(val.imag))):.3e}")
    v = val.real
    return float(v) if np.ndim(v) == 0 else v
