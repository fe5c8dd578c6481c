"""Two-qubit Markovian dynamics in the Schrodinger and Heisenberg pictures.

Generators are in LGKS form,

    d rho/dt = -i[H, rho] + sum_k (2 L_k rho L_k^+ - {L_k^+ L_k, rho}),
    d O/dt   =  i[H, O]   + sum_k (2 L_k^+ O L_k - {L_k^+ L_k, O}),

with hbar = 1. Internally each generator is a 16x16 matrix acting on the
row-major vectorisation of a 4x4 operator, so ``vec(A X B) = (A kron B^T) vec(X)``.

The closed-form trajectories in :func:`closed_form` assume equal rates on
both qubits and the initial state ``make_psi_p(p)`` (or the CHSH operator
adapted to it). Two widely circulated variants of these expressions do not
solve their master equations; ``uncorrected=True`` returns them so the
discrepancy can be measured.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    InvariantDrift,
    NotSeparableProcess,
    OutOfRange,
    UnsupportedCombination,
)
from .states import (
    IDENTITY2,
    SIGMA_MINUS,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityOperator,
    Observable,
    chsh_eta,
)

__all__ = [
    "ProcessKind",
    "Picture",
    "Process",
    "Trajectory",
    "liouvillian_apply",
    "adjoint_apply",
    "evolve",
    "default_steps",
    "closed_form",
    "STEPS_PER_UNIT_TIME",
    "CORRECTION_LIMIT",
    "DRIFT_LIMIT",
]

STEPS_PER_UNIT_TIME = 2000
CORRECTION_LIMIT = 1e-9
DRIFT_LIMIT = 1e-7

_PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class ProcessKind(enum.Enum):
    NONLOCAL = "nonlocal"
    DEPHASING = "dephasing"
    DEPOLARIZING = "depolarizing"
    AMPLITUDE = "amplitude"


class Picture(enum.Enum):
    SCHRODINGER = "schrodinger"
    HEISENBERG = "heisenberg"

    @classmethod
    def parse(cls, value) -> "Picture":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower().replace("ö", "o"))


def _lift(op2: np.ndarray, side: str) -> np.ndarray:
    return np.kron(op2, IDENTITY2) if side == "A" else np.kron(IDENTITY2, op2)


def _super(h: np.ndarray, jumps: list[np.ndarray]) -> np.ndarray:
    """Schrodinger-picture generator as a matrix on row-major vec."""
    d = h.shape[0]
    eye = np.eye(d)
    k = sum((j.conj().T @ j for j in jumps), np.zeros((d, d), complex))
    g = -1j * h - k
    s = np.kron(g, eye) + np.kron(eye, g.conj())
    for j in jumps:
        s = s + 2.0 * np.kron(j, j.conj())
    return s


@dataclass(frozen=True)
class Process:
    """A time-independent two-qubit generator.

    Use the factory classmethods rather than the constructor. For the
    nonlocal Hamiltonian ``mu_x XX + mu_y YY + mu_z ZZ`` only
    ``theta = mu_x - mu_y`` and ``mu_z`` matter for the states studied here;
    ``mu_y`` defaults to ``mu_z`` and ``mu_x = theta + mu_y``.
    """

    kind: ProcessKind
    gamma_a: float = 0.0
    gamma_b: float = 0.0
    theta: float = 0.0
    mu_z: float = 0.0
    mu_y: float | None = None
    _gen: np.ndarray = field(init=False, repr=False, compare=False)
    _adj: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind is not ProcessKind.NONLOCAL:
            if self.gamma_a < 0 or self.gamma_b < 0:
                raise OutOfRange("rates must be nonnegative")
        gen = _super(self.hamiltonian(), self.jump_operators())
        object.__setattr__(self, "_gen", gen)
        object.__setattr__(self, "_adj", gen.conj().T)
        gen.setflags(write=False)

    @classmethod
    def nonlocal_unitary(cls, theta: float, mu_z: float = 0.0, mu_y: float | None = None) -> "Process":
        return cls(ProcessKind.NONLOCAL, theta=float(theta), mu_z=float(mu_z), mu_y=mu_y)

    @classmethod
    def pure_dephasing(cls, gamma: float, gamma_b: float | None = None) -> "Process":
        return cls(ProcessKind.DEPHASING, float(gamma), float(gamma if gamma_b is None else gamma_b))

    @classmethod
    def depolarizing(cls, gamma: float, gamma_b: float | None = None) -> "Process":
        return cls(ProcessKind.DEPOLARIZING, float(gamma), float(gamma if gamma_b is None else gamma_b))

    @classmethod
    def amplitude_damping(cls, gamma: float, gamma_b: float | None = None) -> "Process":
        return cls(ProcessKind.AMPLITUDE, float(gamma), float(gamma if gamma_b is None else gamma_b))

    @classmethod
    def from_name(cls, name: str, *, gamma: float = 1.0, theta: float = 1.0, mu_z: float = 0.0) -> "Process":
        kind = ProcessKind(name)
        if kind is ProcessKind.NONLOCAL:
            return cls.nonlocal_unitary(theta, mu_z)
        return {
            ProcessKind.DEPHASING: cls.pure_dephasing,
            ProcessKind.DEPOLARIZING: cls.depolarizing,
            ProcessKind.AMPLITUDE: cls.amplitude_damping,
        }[kind](gamma)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def is_unitary(self) -> bool:
        return self.kind is ProcessKind.NONLOCAL

    @property
    def is_separable(self) -> bool:
        return self.kind is not ProcessKind.NONLOCAL

    @property
    def mu(self) -> tuple[float, float, float]:
        mu_y = self.mu_z if self.mu_y is None else float(self.mu_y)
        return self.theta + mu_y, mu_y, self.mu_z

    def hamiltonian(self) -> np.ndarray:
        if self.kind is not ProcessKind.NONLOCAL:
            return np.zeros((4, 4), complex)
        mx, my, mz = self.mu
        return (
            mx * np.kron(SIGMA_X, SIGMA_X)
            + my * np.kron(SIGMA_Y, SIGMA_Y)
            + mz * np.kron(SIGMA_Z, SIGMA_Z)
        )

    def local_jump_operators(self, side: str) -> list[np.ndarray]:
        """Single-qubit jump operators acting on ``side`` ('A' or 'B')."""
        if self.kind is ProcessKind.NONLOCAL:
            raise NotSeparableProcess("the nonlocal Hamiltonian has no local decomposition")
        g = self.gamma_a if side.upper() == "A" else self.gamma_b
        if self.kind is ProcessKind.DEPHASING:
            return [np.sqrt(g / 2) * SIGMA_Z]
        if self.kind is ProcessKind.DEPOLARIZING:
            return [np.sqrt(g / 8) * s for s in _PAULIS]
        return [np.sqrt(g / 2) * SIGMA_MINUS]

    def jump_operators(self) -> list[np.ndarray]:
        if self.kind is ProcessKind.NONLOCAL:
            return []
        return [_lift(j, s) for s in "AB" for j in self.local_jump_operators(s)]

    def generator(self, t: float = 0.0) -> np.ndarray:
        """Schrodinger-picture superoperator matrix (row-major vec)."""
        return self._gen

    def adjoint_generator(self, t: float = 0.0) -> np.ndarray:
        return self._adj

    def local_adjoint_apply(self, side: str, op2) -> np.ndarray:
        """Heisenberg generator of one qubit applied to a 2x2 operator."""
        o = np.asarray(op2, dtype=complex)
        out = np.zeros_like(o)
        for j in self.local_jump_operators(side):
            jd = j.conj().T
            out = out + 2 * jd @ o @ j - (jd @ j @ o + o @ jd @ j)
        return out

    def local_adjoint_generator(self, side: str) -> np.ndarray:
        return _super(np.zeros((2, 2), complex), self.local_jump_operators(side)).conj().T


def _apply(sup: np.ndarray, m: np.ndarray) -> np.ndarray:
    d = m.shape[-1]
    flat = m.reshape(*m.shape[:-2], d * d)
    return (flat @ sup.T).reshape(m.shape)


def _as_matrix(x, d: int = 4) -> np.ndarray:
    m = x.matrix if isinstance(x, (DensityOperator, Observable)) else np.asarray(x, dtype=complex)
    if m.shape[-2:] != (d, d):
        raise DimensionMismatch(f"expected {d}x{d} operators, got shape {m.shape}")
    return m


def liouvillian_apply(proc: Process, t: float, rho) -> np.ndarray:
    """``L_t(rho)``; accepts a single operator or a stack."""
    return _apply(proc.generator(t), _as_matrix(rho))


def adjoint_apply(proc: Process, t: float, obs) -> np.ndarray:
    """``L_t^+(O)``; accepts a single operator or a stack."""
    return _apply(proc.adjoint_generator(t), _as_matrix(obs))


@dataclass(frozen=True)
class Trajectory:
    """Stored RK4 solution on a uniform grid.

    ``matrices[i]`` is the operator at ``times[i]``. ``hermitize_max`` and
    ``retrace_max`` are the largest per-step corrections applied.
    """

    times: np.ndarray
    matrices: np.ndarray
    picture: Picture
    process: Process
    hermitize_max: float = 0.0
    retrace_max: float = 0.0

    def __post_init__(self):
        self.times.setflags(write=False)
        self.matrices.setflags(write=False)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def t_final(self) -> float:
        return float(self.times[-1])

    @property
    def step(self) -> float:
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    @property
    def initial(self) -> np.ndarray:
        return self.matrices[0]

    @property
    def final(self) -> np.ndarray:
        return self.matrices[-1]

    def state(self, i: int) -> DensityOperator | Observable:
        cls = DensityOperator if self.picture is Picture.SCHRODINGER else Observable
        return cls(self.matrices[i])

    @property
    def states(self) -> list:
        return [self.state(i) for i in range(len(self))]

    def generator_applied(self) -> np.ndarray:
        """Generator of the trajectory's picture applied to every stored operator."""
        sup = (
            self.process.generator()
            if self.picture is Picture.SCHRODINGER
            else self.process.adjoint_generator()
        )
        return _apply(sup, self.matrices)

    def truncated(self, n_points: int) -> "Trajectory":
        """The first ``n_points`` stored points as a new trajectory."""
        return Trajectory(
            self.times[:n_points].copy(),
            self.matrices[:n_points].copy(),
            self.picture,
            self.process,
            self.hermitize_max,
            self.retrace_max,
        )


def default_steps(t_final: float) -> int:
    """``STEPS_PER_UNIT_TIME`` per unit time, at least 2, rounded up to even."""
    n = max(2, int(np.ceil(STEPS_PER_UNIT_TIME * t_final - 1e-9)))
    return n + (n % 2)


def _rk4_map(sup: np.ndarray, h: float) -> np.ndarray:
    """One classical RK4 step for the autonomous linear system ``y' = S y``."""
    a = h * sup
    eye = np.eye(sup.shape[0], dtype=complex)
    a2 = a @ a
    a3 = a2 @ a
    return eye + a + a2 / 2 + a3 / 6 + a3 @ a / 24


def evolve(proc: Process, initial, t_final: float, steps: int | None = None, picture=None) -> Trajectory:
    """Integrate ``initial`` to ``t_final`` with fixed-step RK4, storing every step.

    The picture follows the type of ``initial`` (state or observable); a raw
    array uses ``picture`` (default Schrodinger). After each step the operator
    is re-hermitized and, for states, renormalized to unit trace.

    Raises:
        InvariantDrift: a per-step correction exceeds ``CORRECTION_LIMIT`` or a
            stored state leaves the density-operator set by more than
            ``DRIFT_LIMIT``.
    """
    if isinstance(initial, DensityOperator):
        pic = Picture.SCHRODINGER
    elif isinstance(initial, Observable):
        pic = Picture.HEISENBERG
    else:
        pic = Picture.SCHRODINGER if picture is None else Picture.parse(picture)
    if picture is not None and Picture.parse(picture) is not pic:
        raise UnsupportedCombination(f"{type(initial).__name__} cannot be evolved in the {Picture.parse(picture).value} picture")
    if t_final < 0:
        raise OutOfRange("t_final must be nonnegative")
    m0 = _as_matrix(initial).astype(complex)

    if t_final == 0:
        return Trajectory(np.zeros(1), m0[None].copy(), pic, proc)
    n = default_steps(t_final) if steps is None else int(steps)
    if n < 1:
        raise OutOfRange("steps must be at least 1")

    h = t_final / n
    sup = proc.generator() if pic is Picture.SCHRODINGER else proc.adjoint_generator()
    step = _rk4_map(sup, h)
    d = m0.shape[0]
    out = np.empty((n + 1, d, d), complex)
    out[0] = m0
    y = m0.reshape(-1)
    herm_max = 0.0
    trace_max = 0.0
    for i in range(1, n + 1):
        y = step @ y
        m = y.reshape(d, d)
        mh = 0.5 * (m + m.conj().T)
        herm_max = max(herm_max, float(np.max(np.abs(m - mh))))
        if pic is Picture.SCHRODINGER:
            tr = np.trace(mh).real
            trace_max = max(trace_max, abs(tr - 1.0))
            mh = mh / tr
        out[i] = mh
        y = mh.reshape(-1)

    if max(herm_max, trace_max) > CORRECTION_LIMIT:
        raise InvariantDrift(
            f"per-step correction reached {max(herm_max, trace_max):.3e} (limit {CORRECTION_LIMIT:g})"
        )
    if pic is Picture.SCHRODINGER:
        lo = float(linalg.eigvals_hermitian(out, check=False)[:, 0].min())
        if lo < -DRIFT_LIMIT:
            raise InvariantDrift(f"stored state has eigenvalue {lo:.3e}")
    times = np.linspace(0.0, t_final, n + 1)
    return Trajectory(times, out, pic, proc, herm_max, trace_max)


def _ket_bra(i: int, j: int) -> np.ndarray:
    m = np.zeros((4, 4), complex)
    m[i, j] = 1.0
    return m


def _require_equal_rates(proc: Process) -> float:
    if abs(proc.gamma_a - proc.gamma_b) > 0:
        raise UnsupportedCombination("closed forms assume equal rates on both qubits")
    return proc.gamma_a


def closed_form(proc: Process, p: float, t: float, picture="schrodinger", eta: float | None = None,
                uncorrected: bool = False) -> np.ndarray:
    """Analytic state (or CHSH operator) at time ``t`` for initial parameter ``p``.

    ``eta`` defaults to the angle adapted to ``p``. With ``uncorrected=True``
    the amplitude-damping coherence decays as ``exp(-2 gamma t)`` and the
    depolarizing CHSH off-diagonal block omits ``sin(eta)``; both variants
    disagree with the generator and are kept only for comparison.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    pic = Picture.parse(picture)
    eta = chsh_eta(p) if eta is None else float(eta)
    c, s = np.cos(eta), np.sin(eta)
    coh = np.sqrt(p * (1 - p))
    e00, e01, e10, e11 = _ket_bra(0, 0), _ket_bra(1, 1), _ket_bra(2, 2), _ket_bra(3, 3)
    flip = _ket_bra(0, 3) + _ket_bra(3, 0)
    flip_odd = _ket_bra(1, 2) + _ket_bra(2, 1)
    zz = e00 - e01 - e10 + e11

    if proc.kind is ProcessKind.NONLOCAL:
        if pic is Picture.HEISENBERG:
            raise UnsupportedCombination("no closed-form Heisenberg solution for the nonlocal Hamiltonian")
        ang = 2 * proc.theta * t
        m = 0.5 * (1 + (2 * p - 1) * np.cos(ang)) * e00
        m = m + 0.5 * (1 + (1 - 2 * p) * np.cos(ang)) * e11
        m = m + (coh + 0.5j * (2 * p - 1) * np.sin(ang)) * _ket_bra(0, 3)
        m = m + (coh + 0.5j * (1 - 2 * p) * np.sin(ang)) * _ket_bra(3, 0)
        return m

    g = _require_equal_rates(proc)
    gt = g * t
    if proc.kind is ProcessKind.DEPHASING:
        if pic is Picture.SCHRODINGER:
            return p * e00 + (1 - p) * e11 + coh * np.exp(-4 * gt) * flip
        return 2 * c * zz + 2 * s * np.exp(-4 * gt) * (flip + flip_odd)

    if proc.kind is ProcessKind.DEPOLARIZING:
        if pic is Picture.SCHRODINGER:
            ex = np.exp(-gt)
            return (
                0.5 * ex * (2 * p + np.cosh(gt) - 1) * e00
                + coh * np.exp(-2 * gt) * flip
                + 0.5 * ex * np.sinh(gt) * (e01 + e10)
                + 0.5 * ex * (1 - 2 * p + np.cosh(gt)) * e11
            )
        ex = np.exp(-gt)
        q = 0.5 * ex * (4 * c * np.cosh(gt) - 4 * c * np.sinh(gt))
        hh = 0.5 * ex * (4 * c * np.sinh(gt) - 2 * c * (np.cosh(gt) - 1) - 2 * c * (np.cosh(gt) + 1))
        off = 2 * np.exp(-2 * gt) * (1.0 if uncorrected else s)
        return q * (e00 + e11) + hh * (e01 + e10) + off * (flip + flip_odd)

    # amplitude damping
    e1 = np.exp(-gt)
    e2 = np.exp(-2 * gt)
    if pic is Picture.SCHRODINGER:
        decay = e2 if uncorrected else e1
        return (
            p * e2 * e00
            + coh * decay * flip
            + p * e2 * (np.exp(gt) - 1) * (e01 + e10)
            + (1 - p + p * e2 * (np.exp(gt) - 1) ** 2) * e11
        )
    return (
        e2 * (8 * c - 8 * c * np.exp(gt) + 2 * c * np.exp(2 * gt)) * e00
        + e1 * (2 * c * np.exp(gt) - 4 * c) * (e01 + e10)
        + 2 * c * e11
        + 2 * s * e1 * (flip + flip_odd)
    )
