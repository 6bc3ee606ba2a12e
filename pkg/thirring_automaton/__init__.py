from __future__ import absolute_import
from ._version import __version__
from .lattice import LatticeSpec, block_partition, mover_class
from .automaton import (
    LayerConfig,
    Trajectory,
    half_step,
    double_step,
    evolve,
    evolve_backward,
    invert_half_step,
    rule_table,
    influence_window,
)
from .operators import SignedPermutation, DenseOperator, from_block_rule, w_matrix
from .grassmann import (
    GrassmannElement,
    berezin_integrate,
    basis_family,
    local_factor_free,
    local_factor_interacting,
    extract_step_operator,
    sign_gauge_search,
)
from .quantum_state import (
    WaveFunction,
    evolve_wf,
    expectation,
    SampleEvolver,
    sample_evolve,
)
from .ising import (
    IsingField,
    action_table,
    enumerate_boltzmann,
    MetropolisSampler,
    metropolis_sample,
)
from .observables import get_observable

__all__ = [
    "__version__",
    "LatticeSpec",
    "block_partition",
    "mover_class",
    "LayerConfig",
    "Trajectory",
    "half_step",
    "double_step",
    "evolve",
    "evolve_backward",
    "invert_half_step",
    "rule_table",
    "influence_window",
    "SignedPermutation",
    "DenseOperator",
    "from_block_rule",
    "w_matrix",
    "GrassmannElement",
    "berezin_integrate",
    "basis_family",
    "local_factor_free",
    "local_factor_interacting",
    "extract_step_operator",
    "sign_gauge_search",
    "WaveFunction",
    "evolve_wf",
    "expectation",
    "SampleEvolver",
    "sample_evolve",
    "IsingField",
    "action_table",
    "enumerate_boltzmann",
    "MetropolisSampler",
    "metropolis_sample",
    "get_observable",
]
