"""Exit criteria, one test group per criterion.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion. Sub-checks are parametrized so a failing line
names exactly which part fails.
"""

import csv
import io
import time

import numpy as np
import pytest

from qspeedlab import correlations as corr
from qspeedlab import speedlimits as sl
from qspeedlab.cli import BOUNDS, main
from qspeedlab.dynamics import Process, closed_form, evolve
from qspeedlab.figures import figure_curves
from qspeedlab.states import make_psi_p, adapted_chsh

pytestmark = pytest.mark.acceptance

GAMMAS = (0.5, 1.0, 2.0)
PS = (0.1, 0.25, 0.5, 0.75, 0.9)
TS = (0.05, 0.1, 0.2)
THETAS = (0.5, 1.0, 2.0)
OPEN = ("dephasing", "depolarizing", "amplitude")


def criterion(n):
    return pytest.mark.criterion(n)


def prefixes(traj):
    """The trajectory cut at every sweep time (all multiples of the same step)."""
    out = {}
    for T in TS:
        n = int(round(T / traj.step))
        out[T] = traj.truncated(n + 1)
    return out


@pytest.fixture(scope="module")
def sweep_trajectories():
    """Schrodinger trajectories over the full validity grid, keyed by (process, param, p, T)."""
    out = {}
    for kind in OPEN:
        for g in GAMMAS:
            for p in PS:
                full = evolve(Process.from_name(kind, gamma=g), make_psi_p(p), max(TS))
                for T, traj in prefixes(full).items():
                    out[(kind, g, p, T)] = traj
    for th in THETAS:
        for p in PS:
            full = evolve(Process.nonlocal_unitary(th, 0.1), make_psi_p(p), max(TS))
            for T, traj in prefixes(full).items():
                out[("nonlocal", th, p, T)] = traj
    return out


# 1 ---------------------------------------------------------------------------

@criterion(1)
@pytest.mark.parametrize("gamma", GAMMAS)
def test_c01_dephasing_negativity_bound_is_tight(gamma):
    worst = 0.0
    for p in PS:
        for T in TS:
            rep = sl.bound_negativity(evolve(Process.pure_dephasing(gamma), make_psi_p(p), T))
            worst = max(worst, abs(rep.bound_value / T - 1))
    print(f"gamma={gamma}: max |T_NSL/T - 1| = {worst:.3e}")
    assert worst <= 1e-5


# 2 ---------------------------------------------------------------------------

@criterion(2)
@pytest.mark.parametrize("kind", OPEN)
def test_c02_bell_bound_tight_at_maximal_entanglement(kind):
    proc = Process.from_name(kind, gamma=1.0)
    ratios = []
    for T in np.linspace(0.015, 0.15, 10):
        rep = sl.bound_bell(evolve(proc, adapted_chsh(0.5), T), make_psi_p(0.5))
        ratios.append(rep.bound_value / T)
    dev = float(np.max(np.abs(np.array(ratios) - 1)))
    print(f"{kind}: T_BQSL/T in [{min(ratios):.6f}, {max(ratios):.6f}], max deviation {dev:.3e}")
    assert dev <= 2e-3, f"max |T_BQSL/T - 1| = {dev:.4f}"


# 3 ---------------------------------------------------------------------------

@criterion(3)
@pytest.mark.parametrize("curve", ["p0.50", "p0.66"])
def test_c03_depolarizing_negativity_bound_is_tight(curve):
    T, v = figure_curves("fig3a")[curve]
    dev = np.max(np.abs(v[1:] / T[1:] - 1))
    print(f"{curve}: max |T_NSL/T - 1| = {dev:.3e}")
    assert dev <= 2e-3


# 4 ---------------------------------------------------------------------------

@criterion(4)
@pytest.mark.parametrize("p", [0.25, 0.5, 0.66])
def test_c04_amplitude_damping_negativity_bound_is_loose(p):
    rep = sl.bound_negativity(evolve(Process.amplitude_damping(1.0), make_psi_p(p), 0.3))
    print(f"p={p}: T_NSL/T = {rep.tightness:.6f}")
    assert rep.holds()
    assert rep.tightness <= 0.95


# 5 ---------------------------------------------------------------------------

def _sweep_csv(argv):
    out = io.StringIO()
    import contextlib

    with contextlib.redirect_stdout(out):
        code = main(argv)
    return code, list(csv.DictReader(io.StringIO(out.getvalue())))


@criterion(5)
@pytest.mark.parametrize("family", ["open", "nonlocal"])
def test_c05_every_applicable_bound_is_valid(family):
    fmt = lambda xs: ",".join(str(x) for x in xs)
    argv = ["sweep", "--p", fmt(PS), "--t-final", fmt(TS), "--mu-z", "0.1", "--workers", "4"]
    if family == "open":
        argv += ["--process", fmt(OPEN), "--gamma", fmt(GAMMAS)]
        expected_rows = len(OPEN) * len(GAMMAS) * len(PS) * len(TS)
    else:
        argv += ["--process", "nonlocal", "--theta", fmt(THETAS)]
        expected_rows = len(THETAS) * len(PS) * len(TS)
    start = time.perf_counter()
    code, table = _sweep_csv(argv)
    elapsed = time.perf_counter() - start
    assert len(table) == expected_rows
    evaluated = violations = 0
    for row in table:
        T = float(row["t_final"])
        for kind in BOUNDS:
            if row[kind]:
                evaluated += 1
                violations += float(row[kind]) > T + 1e-6
    print(f"{family}: {len(table)} grid points, {evaluated} bounds, {violations} violations, {elapsed:.1f}s")
    assert violations == 0 and code == 0


# 6 ---------------------------------------------------------------------------

@criterion(6)
@pytest.mark.parametrize("picture", ["schrodinger", "heisenberg"])
@pytest.mark.parametrize("kind", OPEN)
def test_c06_integrator_matches_closed_forms(kind, picture):
    proc = Process.from_name(kind, gamma=1.0)
    p = 0.5
    initial = make_psi_p(p) if picture == "schrodinger" else adapted_chsh(p)
    traj = evolve(proc, initial, 0.5, 4000)
    err = max(
        np.linalg.norm(m - closed_form(proc, p, t, picture)) for t, m in zip(traj.times, traj.matrices)
    )
    print(f"{kind}/{picture}: max ||numeric - closed||_2 = {err:.3e}")
    assert err <= 1e-8


# 7 ---------------------------------------------------------------------------

@criterion(7)
def test_c07_negativity_of_initial_family():
    ps = np.linspace(0, 1, 50)
    err = max(abs(corr.negativity(make_psi_p(p)) - np.sqrt(p * (1 - p))) for p in ps)
    print(f"max |N(psi_p) - sqrt(p(1-p))| = {err:.3e}")
    assert err <= 1e-12


@criterion(7)
@pytest.mark.parametrize("theta, mu_z", [(1.0, 0.1), (0.5, 0.1), (2.0, 0.3)])
def test_c07_hamiltonian_second_moment(theta, mu_z):
    h = Process.nonlocal_unitary(theta, mu_z).hamiltonian()
    value = np.trace(make_psi_p(0.0).matrix @ h @ h).real
    print(f"theta={theta}, mu_z={mu_z}: tr(psi_0 H^2) = {value:.15f}")
    assert abs(value - (theta**2 + mu_z**2)) <= 1e-12


@criterion(7)
@pytest.mark.parametrize("p", [0.0, 0.2, 0.5, 0.8])
def test_c07_concurrence_along_unitary_trajectory(p):
    theta = 1.0
    traj = evolve(Process.nonlocal_unitary(theta, 0.1), make_psi_p(p), 1.6)
    numeric = corr.concurrence_sq(traj.matrices)
    formula = 0.5 * (4 * abs(p * (p - 1)) - (1 - 2 * p) ** 2 * np.cos(4 * theta * traj.times) + 1)
    err = np.max(np.abs(numeric - formula))
    print(f"p={p}: max |C^2 - formula| = {err:.3e}")
    assert err <= 1e-10


# 8 ---------------------------------------------------------------------------

@criterion(8)
@pytest.mark.parametrize("measure", ["negativity", "concurrence_sq", "entropy"])
def test_c08_rate_inequalities_hold_pointwise(sweep_trajectories, measure):
    checked = 0
    worst = -np.inf
    failures = []
    for key, traj in sweep_trajectories.items():
        if measure == "concurrence_sq" and key[0] != "nonlocal":
            continue
        rep = sl.verify_rate_inequality(traj, measure)
        checked += 1
        worst = max(worst, rep.worst_excess)
        if not rep.ok:
            failures.append(key)
    print(f"{measure}: {checked} trajectories, worst (lhs - rhs - tol) = {worst:.3e}")
    assert not failures, failures[:5]


# 9 ---------------------------------------------------------------------------

@criterion(9)
def test_c09_single_cauchy_schwarz_entropy_bound_is_stronger(sweep_trajectories):
    strict = 0
    points = 0
    for (kind, g, p, T), traj in sweep_trajectories.items():
        if kind != "depolarizing":
            continue
        single = sl.bound_entropy(traj, variant="single").bound_value
        double = sl.bound_entropy(traj, variant="double").bound_value
        points += 1
        assert single >= double - 1e-12, (g, p, T, single, double)
        strict += single > double + 1e-12
    print(f"{points} depolarizing grid points, single > double strictly on {strict}")
    assert strict >= 1


# 10 --------------------------------------------------------------------------

@criterion(10)
def test_c10_fig1_concurrence_bound_dominates():
    c = figure_curves("fig1")
    T, csl = c["csl"]
    _, nsl = c["nsl"]
    gap = csl - nsl
    below = int(np.sum(gap < 0))
    print(f"fig1: min(T_CSL - T_NSL) = {gap.min():.6f}, samples with CSL < NSL: {below}/{len(T)}")
    assert below == 0, f"CSL curve lies below NSL at {below} of {len(T)} samples"


@criterion(10)
@pytest.mark.parametrize("fig", ["fig2", "fig3b", "fig4b"])
@pytest.mark.parametrize("curve", ["p0.25", "p0.66"])
def test_c10_non_maximal_entanglement_degrades_faster(fig, curve):
    c = figure_curves(fig)
    T, ref = c["p0.50"]
    _, v = c[curve]
    excess = v[1:] - ref[1:]
    above = int(np.sum(excess >= 0))
    print(f"{fig} {curve}: max(curve - p0.50) over T > 0 = {excess.max():.3e}")
    assert above == 0, f"{curve} is not below p0.50 at {above} of {len(excess)} samples"


# 11 --------------------------------------------------------------------------

@criterion(11)
@pytest.mark.parametrize("coarse", [10, 20])
def test_c11_rk4_is_fourth_order(coarse):
    proc = Process.pure_dephasing(1.0)
    exact = closed_form(proc, 0.5, 0.5)
    err = [np.linalg.norm(evolve(proc, make_psi_p(0.5), 0.5, n).final - exact) for n in (coarse, 2 * coarse)]
    ratio = err[0] / err[1]
    print(f"steps {coarse} -> {2 * coarse}: errors {err[0]:.3e} -> {err[1]:.3e}, ratio {ratio:.2f}")
    assert 12 <= ratio <= 20
