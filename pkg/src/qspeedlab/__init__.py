"""Speed limits on correlations in two-qubit dynamics."""

from . import correlations, dynamics, figures, linalg, speedlimits, states
from .correlations import (
    chsh_expectation,
    concurrence_sq,
    entanglement_entropy,
    i_concurrence_sq,
    mutual_information,
    negativity,
    relative_entropy,
    von_neumann_entropy,
)
from .dynamics import Picture, Process, ProcessKind, Trajectory, closed_form, evolve
from .errors import *  # noqa: F403
from .linalg import TOL, eig_hermitian, override_tolerances, partial_trace, partial_transpose, schatten_norm
from .speedlimits import (
    BoundKind,
    BoundReport,
    bound_bell,
    bound_bell_separable,
    bound_concurrence,
    bound_entropy,
    bound_i_concurrence,
    bound_mutual_info,
    bound_negativity,
    bound_observable,
    verify_rate_inequality,
)
from .states import DensityOperator, Observable, make_chsh, make_psi_p, adapted_chsh

__version__ = "0.1.0"
