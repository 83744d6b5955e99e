r"""Many excitations from one-particle data
=======================================

The XY chain maps onto free fermions, so the propagator restricted to
:math:`M` excitations is a matrix of :math:`M \times M` determinants of the
single-particle propagator. Here we compare that shortcut against brute
force on the :math:`2^{N+1}`-dimensional register.
"""

import numpy as np

from mirrorchain import custom_chain, numeric_eigensystem
from mirrorchain.many_body import (
    cross_sector_max,
    full_register_hamiltonian,
    full_register_propagator,
    restrict_to_sector,
    sector_basis,
    sector_propagator,
)

rng = np.random.default_rng(11)
N = 7
spec = custom_chain(rng.uniform(0.5, 1.5, N), rng.uniform(-1, 1, N + 1))
H = full_register_hamiltonian(spec)
print("register dimension:", H.shape[0])
print("largest element between sectors:", cross_sector_max(H))

######################################################################
# Sector by sector
# ----------------

es = numeric_eigensystem(spec)
t = 2.3
U = full_register_propagator(H, t)
for m in range(N + 2):
    basis = sector_basis(N, m)
    gap = np.abs(sector_propagator(es, m, t, basis) - restrict_to_sector(U, basis)).max()
    print(f"M = {m}: dim {basis.dim:3d}, max gap {gap:.2e}")
