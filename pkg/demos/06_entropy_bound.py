"""Two versions of the entropy-change bound.

The speed is the product of ||d rho/dt||_2 and ||ln rho||_2. Averaging the
product directly gives one bound; splitting the average with Cauchy-Schwarz
gives a second that can only be smaller. Depolarizing noise raises the
entropy of a pure state monotonically, so both are informative there.
"""

from qspeedlab import speedlimits as sl
from qspeedlab.dynamics import Process, evolve
from qspeedlab.states import make_psi_p

proc = Process.depolarizing(1.0)
print(f"{'p':>5} {'T':>5} {'dS':>8} {'single':>9} {'double':>9}")
for p in (0.25, 0.5, 0.9):
    for T in (0.05, 0.2, 0.5):
        traj = evolve(proc, make_psi_p(p), T)
        single = sl.bound_entropy(traj, variant="single")
        double = sl.bound_entropy(traj, variant="double")
        print(f"{p:5.2f} {T:5.2f} {single.numerator:8.5f} {single.bound_value:9.5f} {double.bound_value:9.5f}")
