"""Speed limits on the CHSH correlation.

The CHSH operator is evolved in the Heisenberg picture and the observable
bound is evaluated with the Schatten-inf, -1 and -2 norms of its rate; the
smallest average speed gives the strongest bound. For separable generators
the operator can also be evolved factor by factor, which gives a second,
weaker bound.
"""

from qspeedlab import speedlimits as sl
from qspeedlab.dynamics import Process, evolve
from qspeedlab.states import make_psi_p, adapted_chsh, adapted_chsh_settings

T = 0.15
for name in ("dephasing", "depolarizing", "amplitude"):
    proc = Process.from_name(name, gamma=1.0)
    print(name)
    for p in (0.25, 0.5, 0.66):
        traj = evolve(proc, adapted_chsh(p), T)
        rep = sl.bound_bell(traj, make_psi_p(p))
        sep = sl.bound_bell_separable(traj, make_psi_p(p), settings=adapted_chsh_settings(p))
        lams = ", ".join(f"{k}:{v:.4f}" for k, v in rep.lambdas.items())
        print(f"  p={p:.2f}  T_BQSL/T={rep.tightness:.6f} (alpha={rep.argmin_alpha}; Lambda {lams})  "
              f"separable T/T={sep.tightness:.4f}")
