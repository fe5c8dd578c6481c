"""Dense complex linear algebra for small bipartite operators.

Everything here works on plain ``numpy`` arrays. Functions that take a single
matrix also accept a stack of shape ``(..., d, d)`` and operate on each member,
which is how trajectories are processed without Python-level loops.

The eigensolver is a cyclic complex Jacobi method. Dimensions in this package
never exceed 16, where Jacobi is unconditionally stable and cheap when the
rotations are applied to the whole stack at once.

Basis convention: the composite index of ``|alpha>_A |beta>_B`` is
``alpha * d_B + beta`` (A is the slow index), so ``|00>, |01>, |10>, |11>``
for two qubits.
"""

from __future__ import annotations

import contextlib
import dataclasses
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

__all__ = [
    "Tolerances",
    "TOL",
    "override_tolerances",
    "dagger",
    "is_hermitian",
    "is_psd",
    "eig_hermitian",
    "eigvals_hermitian",
    "schatten_norm",
    "partial_transpose",
    "partial_trace",
    "matrix_log_on_support",
]


@dataclass
class Tolerances:
    """Numerical thresholds shared by the whole package."""

    herm: float = 1e-10
    unitary: float = 1e-9
    support: float = 1e-12
    psd: float = 1e-10
    jacobi_offdiag: float = 1e-13
    jacobi_max_sweeps: int = 100


TOL = Tolerances()


@contextlib.contextmanager
def override_tolerances(**changes):
    """Temporarily replace fields of the global :data:`TOL`.

    >>> with override_tolerances(support=1e-9):
    ...     pass
    """
    saved = dataclasses.asdict(TOL)
    unknown = set(changes) - set(saved)
    if unknown:
        raise AttributeError(f"unknown tolerance fields: {sorted(unknown)}")
    for key, value in changes.items():
        setattr(TOL, key, value)
    try:
        yield TOL
    finally:
        for key, value in saved.items():
            setattr(TOL, key, value)


def _square(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {a.shape}")
    return a


def dagger(m) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(m), -1, -2))


def _hermiticity_error(a: np.ndarray) -> np.ndarray:
    scale = np.maximum(1.0, np.abs(a).max(axis=(-2, -1)))
    return np.abs(a - dagger(a)).max(axis=(-2, -1)) / scale


def is_hermitian(m, tol: float | None = None) -> bool:
    """True when every matrix in ``m`` equals its adjoint within ``tol``.

    The deviation is measured entrywise relative to ``max(1, max|m_ij|)``.
    """
    a = _square(m)
    tol = TOL.herm if tol is None else tol
    return bool(np.all(_hermiticity_error(a) <= tol))


def is_psd(m, tol: float | None = None) -> bool:
    """True when ``m`` is Hermitian and no eigenvalue is below ``-tol``."""
    a = _square(m)
    tol = TOL.psd if tol is None else tol
    if not is_hermitian(a):
        return False
    return bool(np.all(eigvals_hermitian(a) >= -tol))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi on a stack ``(n, d, d)`` of Hermitian matrices (modified in place)."""
    n, d, _ = a.shape
    v = np.broadcast_to(np.eye(d, dtype=complex), a.shape).copy()
    if d == 1:
        return a[:, :, 0].real.copy(), v

    iu = np.triu_indices(d, 1)
    fro = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    threshold = TOL.jacobi_offdiag * fro
    # pivots this small are left alone; dividing by subnormal magnitudes overflows
    negligible = 1e-6 * threshold / d
    pairs = list(zip(*iu))

    for _ in range(TOL.jacobi_max_sweeps + 1):
        off = np.sqrt(2.0 * np.sum(np.abs(a[:, iu[0], iu[1]]) ** 2, axis=1))
        if np.all(off <= threshold):
            break
        for p, q in pairs:
            apq = a[:, p, q]
            r = np.abs(apq)
            active = r > negligible
            if not active.any():
                continue
            r_safe = np.where(active, r, 1.0)
            phase = np.where(active, apq / r_safe, 1.0)
            theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * r_safe)
            big = np.abs(theta) > 1e150
            theta_c = np.where(big, 1.0, theta)
            t = np.where(theta_c >= 0.0, 1.0, -1.0) / (np.abs(theta_c) + np.sqrt(theta_c**2 + 1.0))
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ph = phase[:, None]
            cph = np.conj(ph)
            cc = c[:, None]
            ss = s[:, None]

            # columns: A <- A J, V <- V J
            col_p = a[:, :, p].copy()
            col_q = a[:, :, q]
            a[:, :, p] = cc * col_p - ss * cph * col_q
            a[:, :, q] = ss * col_p + cc * cph * col_q
            col_p = v[:, :, p].copy()
            col_q = v[:, :, q]
            v[:, :, p] = cc * col_p - ss * cph * col_q
            v[:, :, q] = ss * col_p + cc * cph * col_q
            # rows: A <- J^H A
            row_p = a[:, p, :].copy()
            row_q = a[:, q, :]
            a[:, p, :] = cc * row_p - ss * ph * row_q
            a[:, q, :] = ss * row_p + cc * ph * row_q

            a[:, p, q] = np.where(active, 0.0, a[:, p, q])
            a[:, q, p] = np.where(active, 0.0, a[:, q, p])
            a[:, p, p] = a[:, p, p].real
            a[:, q, q] = a[:, q, q].real
    else:
        raise NoConvergence(
            f"Jacobi did not converge in {TOL.jacobi_max_sweeps} sweeps"
        )

    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def eig_hermitian(m, *, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix (or a stack of them).

    Returns ``(w, V)`` with eigenvalues ascending along the last axis and the
    matching eigenvectors as the columns of ``V``, so ``m = V diag(w) V^H``.

    Raises:
        NotHermitian: if ``check`` and ``m`` deviates from its adjoint by more
            than ``TOL.herm``.
        NoConvergence: if the Jacobi sweeps exceed ``TOL.jacobi_max_sweeps``.
    """
    a = _square(m)
    if check and not is_hermitian(a):
        raise NotHermitian(
            f"matrix is not Hermitian (deviation {float(np.max(_hermiticity_error(a))):.3e})"
        )
    batch = a.shape[:-2]
    d = a.shape[-1]
    work = np.array(a, dtype=complex).reshape(-1, d, d)
    work = 0.5 * (work + dagger(work))
    w, v = _jacobi(work)
    return w.reshape(*batch, d), v.reshape(*batch, d, d)


def eigvals_hermitian(m, *, check: bool = True) -> np.ndarray:
    return eig_hermitian(m, check=check)[0]


def schatten_norm(m, p=1) -> np.ndarray | float:
    """Schatten ``p``-norm for ``p`` in ``{1, 2, inf}``.

    Hermitian input uses its eigenvalues directly; anything else goes through
    the eigenvalues of ``m^H m`` (squared singular values). ``p = 2`` is the
    Frobenius norm of the entries in both cases.
    """
    a = _square(m)
    if p in (np.inf, "inf", float("inf")):
        p = np.inf
    elif p not in (1, 2):
        raise ValueError(f"p must be one of 1, 2, inf; got {p!r}")

    if p == 2:
        out = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))
    else:
        if is_hermitian(a):
            sv = np.abs(eigvals_hermitian(a, check=False))
        else:
            sq = eigvals_hermitian(dagger(a) @ a, check=False)
            sv = np.sqrt(np.clip(sq, 0.0, None))
        out = sv.sum(axis=-1) if p == 1 else sv.max(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def _split(a: np.ndarray, d_a: int, d_b: int) -> np.ndarray:
    if a.shape[-1] != d_a * d_b:
        raise DimensionMismatch(
            f"matrix dimension {a.shape[-1]} != d_A * d_B = {d_a} * {d_b}"
        )
    return a.reshape(*a.shape[:-2], d_a, d_b, d_a, d_b)


def partial_transpose(m, d_a: int = 2, d_b: int = 2, subsystem: str = "B") -> np.ndarray:
    """Transpose the ``subsystem`` tensor factor of a bipartite operator."""
    a = _square(m)
    t = _split(a, d_a, d_b)
    nb = t.ndim - 4
    lead = tuple(range(nb))
    if subsystem.upper() == "B":
        axes = lead + (nb, nb + 3, nb + 2, nb + 1)
    elif subsystem.upper() == "A":
        axes = lead + (nb + 2, nb + 1, nb, nb + 3)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.transpose(axes).reshape(a.shape)


def partial_trace(m, d_a: int = 2, d_b: int = 2, traced: str = "B") -> np.ndarray:
    """Trace out subsystem ``traced``; the result acts on the other factor."""
    a = _square(m)
    t = _split(a, d_a, d_b)
    if traced.upper() == "B":
        return np.einsum("...ijkj->...ik", t)
    if traced.upper() == "A":
        return np.einsum("...ijil->...jl", t)
    raise ValueError(f"traced must be 'A' or 'B', got {traced!r}")


def matrix_log_on_support(m, eps_support: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Natural log of a PSD matrix restricted to its support.

    Eigenvalues ``<= eps_support`` are treated as zero and contribute neither
    to the logarithm nor to the returned support projector.

    Returns:
        ``(log, projector)``, both shaped like ``m``.

    Raises:
        NotPSD: if an eigenvalue is below ``-eps_support``.
    """
    eps = TOL.support if eps_support is None else eps_support
    w, v = eig_hermitian(m)
    if np.any(w < -eps):
        raise NotPSD(f"negative eigenvalue {float(w.min()):.3e} below -{eps:g}")
    on = w > eps
    logw = np.where(on, np.log(np.where(on, w, 1.0)), 0.0)
    vh = dagger(v)
    log = (v * logw[..., None, :]) @ vh
    proj = (v * on[..., None, :]) @ vh
    return log, proj
