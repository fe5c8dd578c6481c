"""Speed-limit bounds on correlation measures along stored trajectories.

Every bound has the shape ``T >= numerator / Lambda`` where ``Lambda`` is the
time average of an instantaneous speed over the trajectory. Speeds are
evaluated at every stored point and integrated with composite Simpson on the
trajectory grid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import correlations as corr
from . import linalg
from .dynamics import Picture, Process, Trajectory, _apply, _rk4_map
from .errors import (
    DimensionMismatch,
    NotPure,
    NotProductInitial,
    NotSeparableProcess,
    NotUnitaryProcess,
    SupportEscape,
    ZeroSpeed,
)
from .states import DensityOperator, Observable, chsh_terms

__all__ = [
    "BoundKind",
    "SpeedIntegral",
    "BoundReport",
    "RateReport",
    "TOL_BOUND",
    "simpson",
    "cumulative_simpson",
    "speed_profile",
    "bound_negativity",
    "bound_concurrence",
    "bound_i_concurrence",
    "bound_observable",
    "bound_bell",
    "bound_bell_separable",
    "bound_mutual_info",
    "bound_entropy",
    "bound_curve",
    "verify_rate_inequality",
]

TOL_BOUND = 1e-6
_ZERO = 1e-12


class BoundKind(enum.Enum):
    NSL = "nsl"
    CSL = "csl"
    ICSL = "icsl"
    OQSL = "oqsl"
    BQSL = "bqsl"
    BQSL_SEP = "bqsl-sep"
    MISL = "misl"
    ESL = "esl"


# ---------------------------------------------------------------- quadrature

def simpson(y, h: float) -> float:
    """Composite Simpson on a uniform grid.

    An odd number of intervals is handled with Simpson's 3/8 rule on the
    last three. Two points fall back to the trapezoid rule.
    """
    y = np.asarray(y, dtype=float)
    n = len(y) - 1
    if n < 1:
        return 0.0
    if n == 1:
        return 0.5 * h * (y[0] + y[1])
    if n % 2 == 0:
        return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())
    head = simpson(y[: n - 2], h) if n > 3 else 0.0
    tail = 3.0 * h / 8.0 * (y[-4] + 3.0 * y[-3] + 3.0 * y[-2] + y[-1])
    return head + tail


def cumulative_simpson(y, h: float) -> np.ndarray:
    """Running Simpson integrals ``I[k] = int_0^{t_2k}`` at the even indices ``0, 2, 4, ...``."""
    y = np.asarray(y, dtype=float)
    pairs = h / 3.0 * (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    return np.concatenate([[0.0], np.cumsum(pairs)])


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class SpeedIntegral:
    kind: BoundKind
    times: np.ndarray
    values: np.ndarray
    T: float
    Lambda: float
    label: str = ""


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound. ``tightness = bound_value / T_actual``."""

    bound_kind: BoundKind
    T_actual: float
    bound_value: float
    numerator: float
    Lambda: float
    argmin_alpha: str | None = None
    lambdas: dict = field(default_factory=dict)
    indeterminate: bool = False
    speed: SpeedIntegral | None = field(default=None, repr=False)
    extras: dict = field(default_factory=dict)

    @property
    def tightness(self) -> float:
        return self.bound_value / self.T_actual if self.T_actual > 0 else float("nan")

    def holds(self, tol: float = TOL_BOUND) -> bool:
        return self.bound_value <= self.T_actual + tol


def _ratio(numerator: float, lam: float, kind: BoundKind) -> float:
    if lam <= _ZERO:
        if numerator <= _ZERO:
            return 0.0
        raise ZeroSpeed(f"{kind.value}: measure changed by {numerator:.3e} at zero speed")
    return numerator / lam


def _lambda(values: np.ndarray, traj: Trajectory) -> float:
    T = traj.t_final
    return simpson(values, traj.step) / T if T > 0 else float(values[0])


def _report(kind, traj, numerator, values, *, scale=1.0, **kw) -> BoundReport:
    lam = _lambda(values, traj)
    bound = scale * _ratio(numerator, lam, kind)
    speed = SpeedIntegral(kind, traj.times, values, traj.t_final, lam)
    return BoundReport(kind, traj.t_final, bound, numerator, lam, speed=speed, **kw)


def _require(traj: Trajectory, picture: Picture) -> None:
    if traj.picture is not picture:
        raise DimensionMismatch(f"expected a {picture.value} trajectory, got {traj.picture.value}")


# ---------------------------------------------------------------- speed profiles

def _nsl_speed(traj: Trajectory) -> np.ndarray:
    # derivative of the partially transposed state, not the generator applied to it
    return np.asarray(linalg.schatten_norm(linalg.partial_transpose(traj.generator_applied()), 1))


def _csl_speed(traj: Trajectory, proc: Process) -> np.ndarray:
    h2 = proc.hamiltonian() @ proc.hamiltonian()
    vals = np.real(np.einsum("nij,ji->n", traj.matrices, h2))
    return np.sqrt(np.clip(vals, 0.0, None))


def _icsl_speed(traj: Trajectory, nu_a: float, nu_b: float) -> np.ndarray:
    rho_a = linalg.partial_trace(traj.matrices)
    drho_a = linalg.partial_trace(traj.generator_applied())
    return 4 * nu_a * nu_b * np.asarray(linalg.schatten_norm(rho_a, 2)) * np.asarray(linalg.schatten_norm(drho_a, 2))


def _entropy_factors(traj: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(linalg.schatten_norm(traj.generator_applied(), 2))
    log, _ = linalg.matrix_log_on_support(traj.matrices)
    b = np.asarray(linalg.schatten_norm(log, 2))
    return a, b


def speed_profile(traj: Trajectory, kind, **kw) -> np.ndarray:
    """Instantaneous speed of bound ``kind`` at every stored time."""
    kind = BoundKind(kind) if not isinstance(kind, BoundKind) else kind
    proc = kw.get("proc") or traj.process
    if kind is BoundKind.NSL:
        return _nsl_speed(traj)
    if kind is BoundKind.CSL:
        return _csl_speed(traj, proc)
    if kind is BoundKind.ICSL:
        return _icsl_speed(traj, kw.get("nu_a", 1.0), kw.get("nu_b", 1.0))
    if kind is BoundKind.ESL:
        a, b = _entropy_factors(traj)
        return a * b
    if kind in (BoundKind.OQSL, BoundKind.BQSL):
        return np.asarray(linalg.schatten_norm(traj.generator_applied(), kw.get("alpha", np.inf)))
    raise ValueError(f"no standalone speed profile for {kind.value}")


# ---------------------------------------------------------------- bounds

def bound_negativity(traj: Trajectory, proc: Process | None = None) -> BoundReport:
    """Lower bound on ``T`` from the change in negativity."""
    _require(traj, Picture.SCHRODINGER)
    n0 = corr.negativity(traj.initial)
    n1 = corr.negativity(traj.final)
    numerator = 2.0 * abs(n1 - n0)
    return _report(BoundKind.NSL, traj, numerator, _nsl_speed(traj))


def _require_unitary_pure(traj: Trajectory, proc: Process) -> None:
    _require(traj, Picture.SCHRODINGER)
    if not proc.is_unitary:
        raise NotUnitaryProcess(f"{proc.name} is not a unitary process")
    pur = np.sum(np.abs(traj.matrices) ** 2, axis=(1, 2))
    if np.max(np.abs(pur - 1.0)) > corr.PURITY_TOL:
        raise NotPure("trajectory leaves the pure states")


def bound_concurrence(traj: Trajectory, proc: Process | None = None, hbar: float = 1.0) -> BoundReport:
    """Lower bound from the change in squared concurrence under unitary dynamics."""
    proc = proc or traj.process
    _require_unitary_pure(traj, proc)
    numerator = abs(corr.concurrence_sq(traj.final) - corr.concurrence_sq(traj.initial))
    return _report(BoundKind.CSL, traj, numerator, _csl_speed(traj, proc), scale=hbar / 4.0)


def bound_i_concurrence(traj: Trajectory, proc: Process | None = None, nu_a: float = 1.0,
                        nu_b: float = 1.0) -> BoundReport:
    """Lower bound from the change in squared I-concurrence under unitary dynamics."""
    proc = proc or traj.process
    _require_unitary_pure(traj, proc)
    c0 = corr.i_concurrence_sq(traj.initial, nu_a, nu_b)
    c1 = corr.i_concurrence_sq(traj.final, nu_a, nu_b)
    return _report(BoundKind.ICSL, traj, abs(c1 - c0), _icsl_speed(traj, nu_a, nu_b))


_ALPHAS = (("inf", np.inf), ("1", 1), ("2", 2))


def bound_observable(traj: Trajectory, rho0, proc: Process | None = None,
                     kind: BoundKind = BoundKind.OQSL) -> BoundReport:
    """Observable bound using the smallest of the three Schatten-norm speeds."""
    _require(traj, Picture.HEISENBERG)
    r = rho0.matrix if isinstance(rho0, DensityOperator) else np.asarray(rho0, dtype=complex)
    if r.shape != traj.initial.shape:
        raise DimensionMismatch(f"state shape {r.shape} != observable shape {traj.initial.shape}")
    numerator = abs(corr.chsh_expectation(r, traj.final) - corr.chsh_expectation(r, traj.initial))
    numerator /= linalg.schatten_norm(r, 1)
    applied = traj.generator_applied()
    lambdas = {}
    speeds = {}
    for label, alpha in _ALPHAS:
        speeds[label] = np.asarray(linalg.schatten_norm(applied, alpha))
        lambdas[label] = _lambda(speeds[label], traj)
    best = min(lambdas, key=lambda k: (lambdas[k], k != "inf"))
    rep = _report(kind, traj, numerator, speeds[best], argmin_alpha=best, lambdas=lambdas)
    return rep


def bound_bell(traj: Trajectory, rho0, proc: Process | None = None) -> BoundReport:
    """Observable bound for an evolved CHSH operator."""
    return bound_observable(traj, rho0, proc, kind=BoundKind.BQSL)


def _local_evolution(proc: Process, side: str, ops: list[np.ndarray], traj: Trajectory) -> np.ndarray:
    """Evolve 2x2 operators under one qubit's Heisenberg generator on the trajectory grid."""
    sup = proc.local_adjoint_generator(side)
    n = len(traj) - 1
    step = _rk4_map(sup, traj.step) if n else np.eye(4)
    out = np.empty((len(ops), n + 1, 2, 2), complex)
    for k, op in enumerate(ops):
        y = np.asarray(op, complex).reshape(4)
        out[k, 0] = op
        for i in range(1, n + 1):
            y = step @ y
            out[k, i] = y.reshape(2, 2)
    return out


def bound_bell_separable(traj: Trajectory, rho0, proc: Process | None = None, *, settings,
                         factorized: bool = False) -> BoundReport:
    """CHSH bound for generators of the form ``L_A (x) id + id (x) L_B``.

    The CHSH operator is split into ``a1 (x) b1 + a2 (x) b2`` and each factor is
    evolved locally. The speed is the sum over the two terms of
    ``||d/dt (a_k (x) b_k)||_2`` by the product rule; ``factorized=True`` uses
    ``||L_A(a_k) (x) L_B(b_k)||_2`` instead, which is not a valid rate bound in
    general and exists only for comparison.

    ``settings`` is the tuple ``(a, a', b, b')`` that built ``traj.initial``.
    """
    proc = proc or traj.process
    _require(traj, Picture.HEISENBERG)
    if not proc.is_separable:
        raise NotSeparableProcess(f"{proc.name} is not a separable process")
    r = rho0.matrix if isinstance(rho0, DensityOperator) else np.asarray(rho0, dtype=complex)
    terms = chsh_terms(*settings)
    a_t = _local_evolution(proc, "A", [a for a, _ in terms], traj)
    b_t = _local_evolution(proc, "B", [b for _, b in terms], traj)
    rebuilt = sum(np.einsum("nij,nkl->nikjl", a_t[k], b_t[k]).reshape(-1, 4, 4) for k in range(2))
    mismatch = float(np.max(np.abs(rebuilt - traj.matrices)))
    if mismatch > 1e-8:
        raise DimensionMismatch(f"settings do not reproduce the trajectory (deviation {mismatch:.3e})")

    values = np.zeros(len(traj))
    for k in range(2):
        la = _apply(proc.local_adjoint_generator("A"), a_t[k])
        lb = _apply(proc.local_adjoint_generator("B"), b_t[k])
        if factorized:
            norm = np.asarray(linalg.schatten_norm(la, 2)) * np.asarray(linalg.schatten_norm(lb, 2))
        else:
            d = np.einsum("nij,nkl->nikjl", la, b_t[k]) + np.einsum("nij,nkl->nikjl", a_t[k], lb)
            norm = np.asarray(linalg.schatten_norm(d.reshape(-1, 4, 4), 2))
        values = values + norm
    numerator = abs(corr.chsh_expectation(r, traj.final) - corr.chsh_expectation(r, traj.initial))
    numerator /= np.sqrt(np.sum(np.abs(r) ** 2))
    return _report(BoundKind.BQSL_SEP, traj, numerator, values, extras={"factorized": factorized})


def _is_product(m: np.ndarray, d_a: int = 2, d_b: int = 2) -> bool:
    prod = np.kron(linalg.partial_trace(m, d_a, d_b, "B"), linalg.partial_trace(m, d_a, d_b, "A"))
    return float(np.max(np.abs(prod - m))) <= 1e-10


def bound_mutual_info(traj: Trajectory, proc: Process | None = None) -> BoundReport:
    """Mutual-information generation bound from a product initial state.

    Raises:
        NotProductInitial: the first stored state is not ``rho_A (x) rho_B``.
        SupportEscape: some stored state has support outside the initial support.
    """
    _require(traj, Picture.SCHRODINGER)
    if not _is_product(traj.initial):
        raise NotProductInitial("initial state is not a product state")
    eps = linalg.TOL.support
    log, proj = linalg.matrix_log_on_support(traj.matrices, eps)
    outside = np.eye(traj.initial.shape[0]) - proj[0]
    leak = np.asarray(linalg.schatten_norm(outside @ proj, 2))
    # weight of each state outside the initial support
    escaped = np.real(np.einsum("ij,nji->n", outside, traj.matrices))
    if np.any(escaped > eps) or np.any(leak > np.sqrt(eps)):
        i = int(np.argmax(escaped > eps)) if np.any(escaped > eps) else int(np.argmax(leak))
        raise SupportEscape(
            f"state leaves the initial support at t={traj.times[i]:.6g} (weight {escaped[i]:.3e})"
        )
    a = np.asarray(linalg.schatten_norm(traj.generator_applied(), 2))
    b = np.asarray(linalg.schatten_norm(log - log[0], 2))
    numerator = corr.mutual_information(traj.final)
    return _report(BoundKind.MISL, traj, numerator, a * b)


def bound_entropy(traj: Trajectory, proc: Process | None = None, variant: str = "single") -> BoundReport:
    """Entropy-change bound.

    ``variant="double"`` replaces the averaged product of the two norms by
    the product of their root-mean-squares (a second Cauchy-Schwarz step),
    which can only lower the bound. When neither the entropy nor the speed
    moves, the bound is reported as 0 with ``indeterminate=True``.
    """
    _require(traj, Picture.SCHRODINGER)
    a, b = _entropy_factors(traj)
    numerator = abs(corr.von_neumann_entropy(traj.final) - corr.von_neumann_entropy(traj.initial))
    T = traj.t_final
    if variant == "single":
        values = a * b
        lam = _lambda(values, traj)
    elif variant == "double":
        values = a * b
        lam = np.sqrt(simpson(a * a, traj.step) * simpson(b * b, traj.step)) / T if T > 0 else 0.0
    else:
        raise ValueError(f"variant must be 'single' or 'double', got {variant!r}")
    indeterminate = numerator <= _ZERO and lam <= _ZERO
    bound = 0.0 if indeterminate else _ratio(numerator, lam, BoundKind.ESL)
    speed = SpeedIntegral(BoundKind.ESL, traj.times, values, T, lam, label=variant)
    return BoundReport(BoundKind.ESL, T, bound, numerator, lam, indeterminate=indeterminate,
                       speed=speed, extras={"variant": variant})


# ---------------------------------------------------------------- curves

def bound_curve(traj: Trajectory, kind, *, rho0=None, stride: int = 2, hbar: float = 1.0,
                nu_a: float = 1.0, nu_b: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Bound value for every prefix ``[0, t_k]`` of ``traj`` with ``k`` a multiple of ``stride``.

    ``stride`` must be even so each prefix has an even number of Simpson
    intervals. Returns ``(T, bound)`` with ``bound[0] = 0``.
    """
    kind = BoundKind(kind) if not isinstance(kind, BoundKind) else kind
    if stride % 2:
        raise ValueError("stride must be even")
    if (len(traj) - 1) % stride:
        raise ValueError("trajectory length is not a multiple of stride")
    m = traj.matrices
    if kind is BoundKind.NSL:
        measure = 2.0 * np.asarray(corr.negativity(m))
        speed = _nsl_speed(traj)
        scale = 1.0
    elif kind is BoundKind.CSL:
        measure = np.asarray(corr.concurrence_sq(m))
        speed = _csl_speed(traj, traj.process)
        scale = hbar / 4.0
    elif kind is BoundKind.ICSL:
        measure = np.asarray(corr.i_concurrence_sq(m, nu_a, nu_b))
        speed = _icsl_speed(traj, nu_a, nu_b)
        scale = 1.0
    elif kind in (BoundKind.BQSL, BoundKind.OQSL):
        r = rho0.matrix if isinstance(rho0, DensityOperator) else np.asarray(rho0, dtype=complex)
        measure = np.asarray(corr.chsh_expectation(r, m)) / linalg.schatten_norm(r, 1)
        applied = traj.generator_applied()
        speed = [np.asarray(linalg.schatten_norm(applied, a)) for _, a in _ALPHAS]
        scale = 1.0
    elif kind is BoundKind.ESL:
        measure = np.asarray(corr.von_neumann_entropy(m))
        a, b = _entropy_factors(traj)
        speed = a * b
        scale = 1.0
    else:
        raise ValueError(f"no curve for {kind.value}")

    h = traj.step
    idx = np.arange(0, len(traj), stride)
    T = traj.times[idx]
    if isinstance(speed, list):
        # the smallest Lambda is chosen per prefix, not pointwise
        integral = np.min([cumulative_simpson(s, h)[:: stride // 2] for s in speed], axis=0)
    else:
        integral = cumulative_simpson(speed, h)[:: stride // 2]
    delta = np.abs(measure[idx] - measure[0])
    out = np.zeros(len(idx))
    for j in range(1, len(idx)):
        out[j] = scale * _ratio(delta[j], integral[j] / T[j], kind)
    return T, out


# ---------------------------------------------------------------- rate check

@dataclass(frozen=True)
class RateReport:
    """Pointwise comparison of a measured rate with its speed bound.

    ``lhs`` is the finite-difference ``|d measure / dt|`` and ``rhs`` the bound
    on it, both at ``times``. ``violation = max(lhs - rhs)``; ``ok`` compares
    against ``tol`` point by point.
    """

    measure: str
    times: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    tol: np.ndarray
    crossings: np.ndarray

    @property
    def violation(self) -> float:
        return float(np.max(self.lhs - self.rhs)) if len(self.lhs) else 0.0

    @property
    def ok(self) -> bool:
        return bool(np.all(self.lhs <= self.rhs + self.tol))

    @property
    def worst_excess(self) -> float:
        return float(np.max(self.lhs - self.rhs - self.tol)) if len(self.lhs) else -np.inf


def _derivative(f: np.ndarray, h: float, kinks=()) -> np.ndarray:
    """Fourth-order finite differences at the interior points ``1 .. n-1``.

    ``kinks`` lists intervals ``(k, k+1)`` containing a non-differentiable
    point of ``f``. Points whose central stencil would reach across one are
    differentiated with a one-sided stencil from their own side when the grid
    allows it.
    """
    n = len(f) - 1
    d = np.empty(n - 1)
    if n < 4:
        d[:] = (f[2:] - f[:-2]) / (2 * h)
        return d
    d[1:-1] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    # off-centre five-point stencils next to the ends
    d[0] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    d[-1] = (3 * f[n] + 10 * f[n - 1] - 18 * f[n - 2] + 6 * f[n - 3] - f[n - 4]) / (12 * h)
    for k in kinks:
        for i in range(max(1, k - 1), min(n - 1, k + 2) + 1):
            left = i <= k
            if left and i >= 4 and not any(i - 4 <= j < i for j in kinks):
                d[i - 1] = (25 * f[i] - 48 * f[i - 1] + 36 * f[i - 2] - 16 * f[i - 3] + 3 * f[i - 4]) / (12 * h)
            elif not left and i + 4 <= n and not any(i <= j < i + 4 for j in kinks):
                d[i - 1] = (-25 * f[i] + 48 * f[i + 1] - 36 * f[i + 2] + 16 * f[i + 3] - 3 * f[i + 4]) / (12 * h)
    return d


def _kinks(spectra: np.ndarray) -> np.ndarray:
    """Grid intervals ``(k, k+1)`` over which some eigenvalue passes through ``+-eps``."""
    eps = linalg.TOL.support
    state = np.sign(np.where(np.abs(spectra) <= eps, 0.0, spectra))
    return np.nonzero(np.any(state[1:] != state[:-1], axis=1))[0]


def _crossing_mask(kinks: np.ndarray, times: np.ndarray, h: float) -> np.ndarray:
    """Interior points within ``3h`` of a kink interval."""
    mask = np.zeros(len(times), bool)
    for i in kinks:
        t_c = 0.5 * (times[i] + times[i + 1])
        mask |= np.abs(times - t_c) <= 3 * h + 1e-15
    return mask[1:-1]


def verify_rate_inequality(traj: Trajectory, measure: str, proc: Process | None = None, *,
                           hbar: float = 1.0, nu_a: float = 1.0, nu_b: float = 1.0) -> RateReport:
    """Check the differential inequality behind a bound at every interior point.

    ``measure`` is one of ``negativity``, ``concurrence_sq``, ``i_concurrence_sq``
    or ``entropy``. Where an eigenvalue of the relevant operator (the partial
    transpose for negativity, the state for entropy) passes through zero the
    measure has a kink; derivatives next to it are taken one-sided. Tolerance
    is ``max(1e-6, 10 h^2)``, widened to ``1e-3`` within ``3h`` of a kink.
    """
    proc = proc or traj.process
    _require(traj, Picture.SCHRODINGER)
    if len(traj) < 3:
        raise ValueError("need at least three stored points")
    h = traj.step
    m = traj.matrices
    if measure == "negativity":
        f = np.asarray(corr.negativity(m))
        rhs = 0.5 * _nsl_speed(traj)
        spectra = linalg.eigvals_hermitian(linalg.partial_transpose(m), check=False)
    elif measure == "concurrence_sq":
        if not proc.is_unitary:
            raise NotUnitaryProcess(f"{proc.name} is not a unitary process")
        f = np.asarray(corr.concurrence_sq(m))
        rhs = 4.0 / hbar * _csl_speed(traj, proc)
        spectra = None
    elif measure == "i_concurrence_sq":
        if not proc.is_unitary:
            raise NotUnitaryProcess(f"{proc.name} is not a unitary process")
        f = np.asarray(corr.i_concurrence_sq(m, nu_a, nu_b))
        rhs = _icsl_speed(traj, nu_a, nu_b)
        spectra = None
    elif measure == "entropy":
        f = np.asarray(corr.von_neumann_entropy(m))
        a, b = _entropy_factors(traj)
        rhs = a * b
        spectra = linalg.eigvals_hermitian(m, check=False)
    else:
        raise ValueError(f"unknown measure {measure!r}")

    kinks = np.zeros(0, int) if spectra is None else _kinks(spectra)
    lhs = np.abs(_derivative(f, h, kinks))
    tol = np.full(len(lhs), max(1e-6, 10 * h * h))
    crossings = _crossing_mask(kinks, traj.times, h)
    tol[crossings] = np.maximum(tol[crossings], 1e-3)
    return RateReport(measure, traj.times[1:-1], lhs, rhs[1:-1], tol, crossings)
