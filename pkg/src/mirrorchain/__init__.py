"""Engineered XY spin chains that mirror-invert register states."""

from .chains import (
    ChainSpec,
    Family,
    SymmetricTridiagonal,
    custom_chain,
    hahn_chain,
    krawtchouk_chain,
    single_particle_matrix,
)
from .equivalences import (
    ls_block_matrix,
    spin_x_matrix,
    verify_hahn_ls_equivalence,
    verify_krawtchouk_spin_equivalence,
)
from .many_body import (
    full_register_hamiltonian,
    full_register_propagator,
    mirror_check,
    sector_basis,
    sector_propagator,
    slater_eigenfunction,
)
from .permutations import (
    ReversalPlan,
    SitePermutation,
    plan_reversals,
    segment_mirror_unitary,
    simulate_plan,
)
from .polynomials import analytic_eigensystem, hahn_Q, krawtchouk_K, pochhammer
from .single_particle import (
    find_mirror_time,
    numeric_eigensystem,
    propagator,
    transfer_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "ChainSpec",
    "Family",
    "SymmetricTridiagonal",
    "custom_chain",
    "hahn_chain",
    "krawtchouk_chain",
    "single_particle_matrix",
    "ls_block_matrix",
    "spin_x_matrix",
    "verify_hahn_ls_equivalence",
    "verify_krawtchouk_spin_equivalence",
    "full_register_hamiltonian",
    "full_register_propagator",
    "mirror_check",
    "sector_basis",
    "sector_propagator",
    "slater_eigenfunction",
    "ReversalPlan",
    "SitePermutation",
    "plan_reversals",
    "segment_mirror_unitary",
    "simulate_plan",
    "analytic_eigensystem",
    "hahn_Q",
    "krawtchouk_K",
    "pochhammer",
    "find_mirror_time",
    "numeric_eigensystem",
    "propagator",
    "transfer_fidelity",
]
