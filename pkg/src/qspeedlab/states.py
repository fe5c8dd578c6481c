"""Density operators, observables, and the two-qubit states and Bell settings used throughout."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    NotDensityOperator,
    NotHermitian,
    NotUnitVector,
    OutOfRange,
)

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY2",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "pauli_dot",
    "DensityOperator",
    "Observable",
    "make_psi_p",
    "make_chsh",
    "chsh_terms",
    "adapted_chsh_settings",
    "adapted_chsh",
    "product_state",
]

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# lowering |1><0| and raising |0><1|, with |0> the excited level
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)

for _m in (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z, SIGMA_MINUS, SIGMA_PLUS):
    _m.setflags(write=False)


def pauli_dot(n) -> np.ndarray:
    """``n . sigma`` for a real 3-vector ``n``."""
    nx, ny, nz = (float(x) for x in n)
    return nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z


def _frozen(m, name: str) -> np.ndarray:
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be a square matrix, got shape {a.shape}")
    a.setflags(write=False)
    return a


def _check_dims(a: np.ndarray, d_a: int, d_b: int) -> None:
    if d_a < 1 or d_b < 1 or a.shape[0] != d_a * d_b:
        raise DimensionMismatch(f"dimension {a.shape[0]} != d_A * d_B = {d_a} * {d_b}")


@dataclass(frozen=True)
class DensityOperator:
    """Unit-trace positive Hermitian matrix on ``H_A (x) H_B``.

    Validation rejects rather than repairs: eigenvalues below ``-TOL.psd`` or
    a trace off by more than 1e-10 raise :class:`NotDensityOperator`.
    """

    matrix: np.ndarray
    d_a: int = 2
    d_b: int = 2
    _eigvals: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a = _frozen(self.matrix, "density operator")
        _check_dims(a, self.d_a, self.d_b)
        if not linalg.is_hermitian(a):
            raise NotDensityOperator("density operator is not Hermitian")
        tr = np.trace(a)
        if abs(tr - 1.0) > 1e-10:
            raise NotDensityOperator(f"trace is {tr.real:.12g}, expected 1")
        w = linalg.eigvals_hermitian(a)
        if w[0] < -linalg.TOL.psd:
            raise NotDensityOperator(f"negative eigenvalue {w[0]:.3e}")
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "_eigvals", w)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eigvals

    def purity(self) -> float:
        """``tr(rho^2)``."""
        return float(np.sum(np.abs(self.matrix) ** 2))

    def is_pure(self, tol: float = 1e-8) -> bool:
        return abs(self.purity() - 1.0) <= tol

    def marginal(self, keep: str = "A") -> np.ndarray:
        traced = "B" if keep.upper() == "A" else "A"
        return linalg.partial_trace(self.matrix, self.d_a, self.d_b, traced)

    @classmethod
    def from_vector(cls, psi, d_a: int = 2, d_b: int = 2) -> "DensityOperator":
        v = np.asarray(psi, dtype=complex).ravel()
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()), d_a, d_b)


@dataclass(frozen=True)
class Observable:
    """Hermitian operator on ``H_A (x) H_B``."""

    matrix: np.ndarray
    d_a: int = 2
    d_b: int = 2

    def __post_init__(self):
        a = _frozen(self.matrix, "observable")
        _check_dims(a, self.d_a, self.d_b)
        if not linalg.is_hermitian(a):
            raise NotHermitian("observable is not Hermitian")
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expectation(self, rho) -> float:
        r = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho)
        if r.shape != self.matrix.shape:
            raise DimensionMismatch(f"state shape {r.shape} != observable shape {self.matrix.shape}")
        return float(np.real(np.trace(r @ self.matrix)))


def make_psi_p(p: float) -> DensityOperator:
    """Projector onto ``sqrt(p)|00> + sqrt(1-p)|11>``."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    v = np.zeros(4, dtype=complex)
    v[0] = np.sqrt(p)
    v[3] = np.sqrt(1.0 - p)
    return DensityOperator(np.outer(v, v.conj()))


def product_state(rho_a, rho_b) -> DensityOperator:
    a = np.asarray(rho_a, dtype=complex)
    b = np.asarray(rho_b, dtype=complex)
    return DensityOperator(np.kron(a, b), a.shape[0], b.shape[0])


def _unit(v, name: str) -> np.ndarray:
    u = np.asarray(v, dtype=float).ravel()
    if u.shape != (3,):
        raise NotUnitVector(f"{name} must be a 3-vector, got shape {u.shape}")
    if abs(np.linalg.norm(u) - 1.0) > 1e-10:
        raise NotUnitVector(f"{name} has norm {np.linalg.norm(u):.12g}")
    return u


def chsh_terms(a, a_prime, b, b_prime) -> list[tuple[np.ndarray, np.ndarray]]:
    """Local factors ``[(a.s, (b+b').s), (a'.s, (b-b').s)]`` of the CHSH operator."""
    a = _unit(a, "a")
    a_prime = _unit(a_prime, "a'")
    b = _unit(b, "b")
    b_prime = _unit(b_prime, "b'")
    return [
        (pauli_dot(a), pauli_dot(b + b_prime)),
        (pauli_dot(a_prime), pauli_dot(b - b_prime)),
    ]


def make_chsh(a, a_prime, b, b_prime) -> Observable:
    """CHSH operator ``a.s (x) (b+b').s + a'.s (x) (b-b').s``."""
    m = sum(np.kron(x, y) for x, y in chsh_terms(a, a_prime, b, b_prime))
    return Observable(m)


def adapted_chsh_settings(p: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Measurement directions adapted to ``make_psi_p(p)``.

    ``a = z``, ``a' = x``, ``b = cos(eta) z + sin(eta) x``,
    ``b' = cos(eta) z - sin(eta) x`` with ``tan(eta) = 2 sqrt(p(1-p))`` and
    ``eta`` on the principal branch ``[0, pi/2]``.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    eta = float(np.arctan(2.0 * np.sqrt(p * (1.0 - p))))
    z = np.array([0.0, 0.0, 1.0])
    x = np.array([1.0, 0.0, 0.0])
    b = np.cos(eta) * z + np.sin(eta) * x
    b_prime = np.cos(eta) * z - np.sin(eta) * x
    return z, x, b, b_prime


def chsh_eta(p: float) -> float:
    return float(np.arctan(2.0 * np.sqrt(p * (1.0 - p))))


def adapted_chsh(p: float) -> Observable:
    return make_chsh(*adapted_chsh_settings(p))
