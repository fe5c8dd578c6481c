"""Correlation measures on the family sqrt(p)|00> + sqrt(1-p)|11>.

Negativity, squared concurrence, entanglement entropy and the CHSH value all
peak at p = 1/2 and vanish at the product endpoints. Mixing in white noise
shows negativity dropping to zero before the state becomes classical: the
partially transposed state stops having negative eigenvalues at visibility
1/3.
"""

import numpy as np

from qspeedlab import correlations as corr
from qspeedlab import linalg
from qspeedlab.states import make_psi_p, adapted_chsh

print(f"{'p':>5} {'negativity':>11} {'C^2':>8} {'S(A)':>8} {'<CHSH>':>8}")
for p in (0.0, 0.1, 0.25, 0.5, 0.66, 0.9, 1.0):
    psi = make_psi_p(p)
    print(
        f"{p:5.2f} {corr.negativity(psi):11.6f} {corr.concurrence_sq(psi):8.5f} "
        f"{corr.entanglement_entropy(psi):8.5f} {corr.chsh_expectation(psi, adapted_chsh(p)):8.5f}"
    )

# Werner-like mixture: v |Phi+><Phi+| + (1 - v) I/4
bell = make_psi_p(0.5).matrix
print("\nvisibility  min eig of partial transpose  negativity")
for v in np.linspace(0, 1, 7):
    rho = v * bell + (1 - v) * np.eye(4) / 4
    w = linalg.eigvals_hermitian(linalg.partial_transpose(rho))
    print(f"{v:10.3f} {w[0]:29.6f} {corr.negativity(rho):11.6f}")

# mutual information equals the relative entropy to the product of marginals
rng = np.random.default_rng(7)
g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
rho = g @ g.conj().T
rho /= np.trace(rho)
prod = np.kron(linalg.partial_trace(rho, traced="B"), linalg.partial_trace(rho, traced="A"))
print(f"\nI(A;B) = {corr.mutual_information(rho):.12f}")
print(f"D(rho || rho_A x rho_B) = {corr.relative_entropy(rho, prod):.12f}")
