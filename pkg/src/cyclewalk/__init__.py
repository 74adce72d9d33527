"""Hadamard quantum walk on a cycle and its limiting distribution."""

from .closed_form import (
    asymptotic_correction,
    correction_pi,
    eta,
    limiting_distribution_localized,
)
from .metrics import tv, tv_from_uniform
from .spectral import (
    degeneracy_classes,
    eigenvalue,
    eigenvector_state,
    limiting_distribution_spectral,
)
from .states import eigen_superposition, localized_state, load_state, SuperpositionTerm
from .walk_core import (
    Distribution,
    WalkState,
    coin_matrix,
    dump_state,
    evolve,
    node_distribution,
    step,
    time_averaged_distribution,
)

__version__ = "0.1.0"
