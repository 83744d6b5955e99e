"""Excitation sectors, Slater determinants and full-register dynamics.

Register basis states are bit strings ``s_0 ... s_N`` stored as integers
with ``s_0`` the least significant bit; bit value 1 marks an excitation
(a fermion after Jordan-Wigner).  A sector basis lists the occupied
sites of each configuration in ascending order, lexicographically.

Two independent routes to the dynamics live here:

* free fermions: sector amplitudes are ``det U[l'_a, l_b]`` built from
  the single-particle propagator;
* brute force: the XY Hamiltonian assembled from Pauli strings on the
  full ``2**(N+1)`` register and exponentiated exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .chains import ChainSpec
from .single_particle import Eigensystem, numeric_eigensystem, propagator

MAX_BUILD_SITES = 14
MAX_MIRROR_SITES = 12

_I2 = sp.identity(2, format="csr", dtype=complex)
_X = sp.csr_matrix(np.array([[0, 1], [1, 0]], dtype=complex))
_Y = sp.csr_matrix(np.array([[0, -1j], [1j, 0]], dtype=complex))
_Z = sp.csr_matrix(np.array([[1, 0], [0, -1]], dtype=complex))


@dataclass(frozen=True)
class SectorBasis:
    """Ordered ``M``-excitation configurations of an ``n_sites`` register."""

    n_sites: int
    m: int
    configs: tuple

    @property
    def dim(self) -> int:
        return len(self.configs)

    @property
    def codes(self) -> np.ndarray:
        """Register index of every configuration."""
        return np.array([sum(1 << s for s in c) for c in self.configs], dtype=np.int64)

    @property
    def site_table(self) -> np.ndarray:
        return np.array(self.configs, dtype=np.int64).reshape(self.dim, self.m)

    def index(self, config: Sequence[int]) -> int:
        return self.configs.index(tuple(config))


def sector_basis(N: int, M: int) -> SectorBasis:
    """All ``binomial(N+1, M)`` ascending site tuples, in lexicographic order."""
    if not 0 <= M <= N + 1:
        raise ValueError(f"excitation number M={M} outside 0..{N + 1}")
    return SectorBasis(N + 1, M, tuple(itertools.combinations(range(N + 1), M)))


def _vectors(es) -> np.ndarray:
    return es.vectors if hasattr(es, "vectors") else np.asarray(es)


def slater_eigenfunction(es, orbitals: Sequence[int], sites: Sequence[int]) -> float:
    """``det[phi_{k_a}(l_b)] / sqrt(M!)``.

    ``es`` is anything with row eigenvectors (``Eigensystem``, an
    eigenfunction table's ``eigenvectors``) or a plain array of rows.
    """
    phi = _vectors(es)
    orbitals, sites = list(orbitals), list(sites)
    if len(orbitals) != len(sites):
        raise ValueError("orbitals and sites must have the same length")
    n = phi.shape[0]
    if any(not 0 <= i < n for i in orbitals + sites):
        raise ValueError("orbital or site index out of range")
    m = len(sites)
    if m == 0:
        return 1.0
    return float(np.linalg.det(phi[np.ix_(orbitals, sites)]) / math.sqrt(math.factorial(m)))


def register_amplitude(es, orbitals: Sequence[int], sites: Sequence[int]) -> float:
    """Bosonic register wavefunction: the Slater value at the sorted sites.

    Symmetric in ``sites``; differs from :func:`slater_eigenfunction` by
    the parity of the sorting permutation.
    """
    return slater_eigenfunction(es, orbitals, sorted(sites))


def slater_state(es, orbitals: Sequence[int], basis: SectorBasis) -> np.ndarray:
    """Register amplitudes of the Slater eigenstate over a sector basis (unit norm)."""
    phi = _vectors(es)
    table = basis.site_table
    if basis.m == 0:
        return np.ones(1)
    sub = phi[np.asarray(orbitals)][:, table]  # (M, D, M)
    return np.linalg.det(np.transpose(sub, (1, 0, 2)))


def sector_propagator(es: Eigensystem, M: int, t: float,
                      basis: Optional[SectorBasis] = None) -> np.ndarray:
    """Free-fermion propagator on the ``M``-excitation sector.

    Entry ``[a, b]`` is ``det U(t)[config_a, config_b]`` for the
    single-particle propagator ``U``.
    """
    N = es.size - 1
    basis = sector_basis(N, M) if basis is None else basis
    if basis.m == 0:
        return np.ones((1, 1), dtype=complex)
    u = propagator(es, t).entries
    table = basis.site_table
    sub = u[table[:, None, :, None], table[None, :, None, :]]
    return np.linalg.det(sub)


def _site_operator(op, site: int, n_sites: int):
    # kron order puts site 0 in the least significant bit
    out = None
    for s in reversed(range(n_sites)):
        factor = op if s == site else _I2
        out = factor if out is None else sp.kron(out, factor, format="csr")
    return out


def full_register_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Dense XY Hamiltonian on ``2**(N+1)`` states from Pauli strings.

    ``H = 1/2 sum_l J_l (X_l X_{l+1} + Y_l Y_{l+1}) - 1/2 sum_l h_l (Z_l - 1)``
    """
    n = spec.n_sites
    if n > MAX_BUILD_SITES:
        raise ValueError(f"{n} sites exceeds the dense limit of {MAX_BUILD_SITES}")
    dim = 1 << n
    X = [_site_operator(_X, s, n) for s in range(n)]
    Y = [_site_operator(_Y, s, n) for s in range(n)]
    Z = [_site_operator(_Z, s, n) for s in range(n)]
    ident = sp.identity(dim, format="csr", dtype=complex)
    H = sp.csr_matrix((dim, dim), dtype=complex)
    for ell, J in enumerate(spec.couplings):
        if J != 0:
            H = H + 0.5 * J * (X[ell] @ X[ell + 1] + Y[ell] @ Y[ell + 1])
    for ell, h in enumerate(spec.fields):
        if h != 0:
            H = H - 0.5 * h * (Z[ell] - ident)
    H = H.toarray()
    if np.any(H.imag != 0):
        raise AssertionError("XY Hamiltonian should be real in the computational basis")
    return np.ascontiguousarray(H.real)


def popcounts(n_sites: int) -> np.ndarray:
    """Excitation number of every register index."""
    idx = np.arange(1 << n_sites)
    return np.array([bin(i).count("1") for i in idx])


def bit_reverse(codes, n_sites: int) -> np.ndarray:
    """Reverse the ``n_sites`` bits of each register index (site l -> N - l)."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros_like(codes)
    for s in range(n_sites):
        out |= ((codes >> s) & 1) << (n_sites - 1 - s)
    return out


def cross_sector_max(H: np.ndarray) -> float:
    """Largest matrix element connecting different excitation numbers."""
    n = int(round(math.log2(H.shape[0])))
    pc = popcounts(n)
    mask = pc[:, None] != pc[None, :]
    return float(np.max(np.abs(H[mask]), initial=0.0))


@dataclass(frozen=True)
class SpectralDecomposition:
    energies: np.ndarray
    vectors: np.ndarray


def spectral_decomposition(H: np.ndarray) -> SpectralDecomposition:
    E, V = np.linalg.eigh(H)
    return SpectralDecomposition(E, V)


def full_register_propagator(H: np.ndarray, t: float,
                             decomposition: Optional[SpectralDecomposition] = None) -> np.ndarray:
    """``exp(-i H t)`` from a full diagonalisation of ``H``."""
    if H.shape[0] > 1 << MAX_BUILD_SITES:
        raise ValueError("register too large for dense propagation")
    d = spectral_decomposition(H) if decomposition is None else decomposition
    return (d.vectors * np.exp(-1j * d.energies * t)) @ d.vectors.conj().T


def restrict_to_sector(U: np.ndarray, basis: SectorBasis) -> np.ndarray:
    codes = basis.codes
    return U[np.ix_(codes, codes)]


@dataclass(frozen=True)
class MirrorCertificate:
    """Basis-level check that ``exp(-iHT)|b> = phase_M |rev(b)>``.

    ``per_sector_phase[M]`` is read from the first configuration of the
    sector; ``phase_spread`` is the largest departure of any other
    configuration's phase from it.  ``max_deviation`` is the largest
    entry of ``V - sum_b phase_M(b) |rev b><b|``, or the phase spread if
    that is larger.
    """

    time: float
    per_sector_phase: np.ndarray
    max_deviation: float
    phase_spread: float
    phase_uniform_in_sector: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "time": self.time,
            "phases": [{"m": m, "re": float(p.real), "im": float(p.imag)}
                       for m, p in enumerate(self.per_sector_phase)],
            "max_deviation": self.max_deviation,
            "pass": self.passed,
        }


def mirror_check(spec: ChainSpec, T: float, tol: float = 1e-8,
                 H: Optional[np.ndarray] = None,
                 decomposition: Optional[SpectralDecomposition] = None) -> MirrorCertificate:
    """Certify mirror inversion of every register basis state at time ``T``."""
    n = spec.n_sites
    if n > MAX_MIRROR_SITES:
        raise ValueError(f"{n} sites exceeds the mirror-check limit of {MAX_MIRROR_SITES}")
    H = full_register_hamiltonian(spec) if H is None else H
    V = full_register_propagator(H, T, decomposition)
    dim = 1 << n
    codes = np.arange(dim)
    rev = bit_reverse(codes, n)
    pc = popcounts(n)
    landed = V[rev, codes]
    mag = np.abs(landed)
    unit = np.where(mag > 0, landed / np.where(mag > 0, mag, 1.0), 1.0)

    phases = np.empty(n + 1, dtype=complex)
    spread = 0.0
    for m in range(n + 1):
        # lowest index in a sector is the lexicographically first config (0..m-1)
        members = np.flatnonzero(pc == m)
        phases[m] = unit[members[0]]
        spread = max(spread, float(np.max(np.abs(unit[members] - phases[m]))))

    expected = np.zeros_like(V)
    expected[rev, codes] = phases[pc]
    dev = float(np.max(np.abs(V - expected)))
    max_dev = max(dev, spread)
    return MirrorCertificate(
        time=float(T),
        per_sector_phase=phases,
        max_deviation=max_dev,
        phase_spread=spread,
        phase_uniform_in_sector=spread <= tol,
        passed=max_dev <= tol,
    )


def sector_consistency(spec: ChainSpec, times: Sequence[float],
                       es: Optional[Eigensystem] = None) -> float:
    """Largest gap between free-fermion sector propagators and the brute-force register.

    Checked over every sector and every time given.
    """
    es = numeric_eigensystem(spec) if es is None else es
    H = full_register_hamiltonian(spec)
    d = spectral_decomposition(H)
    N = spec.N
    bases = [sector_basis(N, m) for m in range(N + 2)]
    worst = 0.0
    for t in times:
        U = full_register_propagator(H, t, d)
        for b in bases:
            gap = np.max(np.abs(sector_propagator(es, b.m, t, b) - restrict_to_sector(U, b)))
            worst = max(worst, float(gap))
    return worst
