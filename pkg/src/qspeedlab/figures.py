"""Curve generation for the reference figures.

Each :class:`Figure` names a process, its fixed parameters, a horizontal
range and a list of curves. :func:`figure_curves` integrates one trajectory
per curve up to the end of the range and evaluates the bound on every prefix,
so all 200 samples of a curve come from a single run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import correlations as corr
from .dynamics import Process, STEPS_PER_UNIT_TIME, evolve
from .errors import UnknownFigure
from .speedlimits import bound_curve
from .states import make_psi_p, adapted_chsh

__all__ = ["Curve", "Figure", "FIGURES", "SAMPLES", "get_figure", "figure_curves", "sample_grid"]

SAMPLES = 200


@dataclass(frozen=True)
class Curve:
    name: str
    quantity: str  # a bound kind ("nsl", "csl", "bqsl") or a measure ("negativity", "concurrence_sq")
    p: float
    theta: float | None = None


@dataclass(frozen=True)
class Figure:
    fig_id: str
    process: str
    t_max: float
    curves: tuple[Curve, ...]
    gamma: float = 1.0
    theta: float = 1.0
    mu_z: float = 0.1
    caption: str = ""

    def process_for(self, curve: Curve) -> Process:
        theta = self.theta if curve.theta is None else curve.theta
        return Process.from_name(self.process, gamma=self.gamma, theta=theta, mu_z=self.mu_z)


def _p_curves(kind: str, ps) -> tuple[Curve, ...]:
    return tuple(Curve(f"p{p:.2f}", kind, p) for p in ps)


def _theta_curves(kinds, thetas) -> tuple[Curve, ...]:
    return tuple(Curve(f"{k}_theta{th:g}", k, 0.0, th) for th in thetas for k in kinds)


FIGURES: dict[str, Figure] = {
    f.fig_id: f
    for f in (
        Figure("fig1", "nonlocal", 0.7, (Curve("csl", "csl", 0.0), Curve("nsl", "nsl", 0.0)),
                   theta=1.0, mu_z=0.1, caption="nonlocal Hamiltonian, theta=1, mu_z=0.1, p=0"),
        Figure("fig2", "dephasing", 0.15, _p_curves("bqsl", (0.25, 0.50, 0.66)),
                   caption="pure dephasing, gamma=1, CHSH bound"),
        Figure("fig3a", "depolarizing", 0.5, _p_curves("nsl", (0.50, 0.66)),
                   caption="depolarizing, gamma=1, negativity bound"),
        Figure("fig3b", "depolarizing", 0.5, _p_curves("bqsl", (0.25, 0.50, 0.66)),
                   caption="depolarizing, gamma=1, CHSH bound"),
        Figure("fig4a", "amplitude", 0.5, _p_curves("nsl", (0.25, 0.50, 0.66)),
                   caption="amplitude damping, gamma=1, negativity bound"),
        Figure("fig4b", "amplitude", 0.5, _p_curves("bqsl", (0.25, 0.50, 0.66)),
                   caption="amplitude damping, gamma=1, CHSH bound"),
        Figure("fig5-appendix", "nonlocal", 1.6,
                   _theta_curves(("negativity", "concurrence_sq"), (0.5, 2.0)),
                   caption="negativity and squared concurrence, p=0"),
        Figure("fig6a-appendix", "nonlocal", 1.6, _theta_curves(("nsl", "csl"), (0.5,)),
                   theta=0.5, caption="negativity and concurrence bounds, theta=0.5, p=0"),
        Figure("fig6b-appendix", "nonlocal", 1.6, _theta_curves(("nsl", "csl"), (2.0,)),
                   theta=2.0, caption="negativity and concurrence bounds, theta=2, p=0"),
    )
}


def get_figure(fig_id: str) -> Figure:
    try:
        return FIGURES[fig_id]
    except KeyError:
        raise UnknownFigure(f"unknown figure {fig_id!r}; known: {', '.join(FIGURES)}") from None


def sample_grid(t_max: float, samples: int = SAMPLES) -> tuple[int, int]:
    """``(steps, stride)`` so that every sample lands on an even grid index.

    The step is at most ``1 / STEPS_PER_UNIT_TIME``.
    """
    stride = int(np.ceil(STEPS_PER_UNIT_TIME * t_max / (samples - 1)))
    stride += stride % 2
    return stride * (samples - 1), stride


def figure_curves(fig, samples: int = SAMPLES) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """``{curve name: (T, value)}`` for every curve of ``fig``."""
    figure = fig if isinstance(fig, Figure) else get_figure(fig)
    steps, stride = sample_grid(figure.t_max, samples)
    out = {}
    for curve in figure.curves:
        proc = figure.process_for(curve)
        if curve.quantity in ("bqsl", "oqsl"):
            traj = evolve(proc, adapted_chsh(curve.p), figure.t_max, steps)
            out[curve.name] = bound_curve(traj, curve.quantity, rho0=make_psi_p(curve.p), stride=stride)
            continue
        traj = evolve(proc, make_psi_p(curve.p), figure.t_max, steps)
        if curve.quantity in ("negativity", "concurrence_sq"):
            idx = np.arange(0, len(traj), stride)
            fn = corr.negativity if curve.quantity == "negativity" else corr.concurrence_sq
            out[curve.name] = (traj.times[idx], np.asarray(fn(traj.matrices[idx])))
        else:
            out[curve.name] = bound_curve(traj, curve.quantity, stride=stride)
    return out
