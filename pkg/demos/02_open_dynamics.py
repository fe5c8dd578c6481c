"""Integrating the four processes and checking them against closed forms.

Each process is integrated with fixed-step RK4 in both pictures and compared
with the analytic solution. Two widely circulated closed forms do not solve
their own master equations; ``uncorrected=True`` returns them so the size of
the error is visible next to the corrected expression.
"""

import numpy as np

from qspeedlab.dynamics import Process, closed_form, evolve
from qspeedlab.states import make_psi_p, adapted_chsh

p, T = 0.5, 0.5
print("max ||numeric - closed form||_2 over the trajectory (4000 steps)")
for name in ("nonlocal", "dephasing", "depolarizing", "amplitude"):
    proc = Process.from_name(name, gamma=1.0, theta=1.0, mu_z=0.1)
    pictures = ("schrodinger",) if name == "nonlocal" else ("schrodinger", "heisenberg")
    for pic in pictures:
        start = make_psi_p(p) if pic == "schrodinger" else adapted_chsh(p)
        traj = evolve(proc, start, T, 4000)
        err = max(np.linalg.norm(m - closed_form(proc, p, t, pic)) for t, m in zip(traj.times, traj.matrices))
        print(f"  {name:13s} {pic:12s} {err:.2e}")

print("\nuncorrected variants against the integrator at t = 0.4")
amp = Process.amplitude_damping(1.0)
traj = evolve(amp, make_psi_p(0.5), 0.4)
print(f"  amplitude damping coherence: numeric {traj.final[0, 3].real:.6f}, "
      f"corrected {closed_form(amp, 0.5, 0.4)[0, 3].real:.6f}, "
      f"uncorrected {closed_form(amp, 0.5, 0.4, uncorrected=True)[0, 3].real:.6f}")
dep = Process.depolarizing(1.0)
traj = evolve(dep, adapted_chsh(0.25), 0.4)
print(f"  depolarizing CHSH corner:    numeric {traj.final[0, 3].real:.6f}, "
      f"corrected {closed_form(dep, 0.25, 0.4, 'heisenberg')[0, 3].real:.6f}, "
      f"uncorrected {closed_form(dep, 0.25, 0.4, 'heisenberg', uncorrected=True)[0, 3].real:.6f}")

# halving the step divides the RK4 error by about 16
proc = Process.pure_dephasing(1.0)
exact = closed_form(proc, 0.5, 0.5)
errs = [np.linalg.norm(evolve(proc, make_psi_p(0.5), 0.5, n).final - exact) for n in (10, 20, 40, 80)]
print("\nRK4 error ratios when halving the step:", [round(float(a / b), 2) for a, b in zip(errs, errs[1:])])
