import itertools
import json
import math

import numpy as np
import pytest
from scipy.linalg import expm

from mirrorchain.chains import custom_chain, hahn_chain, krawtchouk_chain, single_particle_matrix
from mirrorchain.many_body import (
    bit_reverse,
    cross_sector_max,
    full_register_hamiltonian,
    full_register_propagator,
    mirror_check,
    popcounts,
    register_amplitude,
    restrict_to_sector,
    sector_basis,
    sector_consistency,
    sector_propagator,
    slater_eigenfunction,
    slater_state,
)
from mirrorchain.single_particle import find_mirror_time, numeric_eigensystem, propagator


def hopping_hamiltonian(spec):
    """Register Hamiltonian by bit manipulation: hop where neighbour bits differ."""
    n = spec.n_sites
    H = np.zeros((1 << n, 1 << n))
    for b in range(1 << n):
        H[b, b] = sum(h for s, h in enumerate(spec.fields) if b >> s & 1)
        for ell, J in enumerate(spec.couplings):
            if (b >> ell & 1) != (b >> (ell + 1) & 1):
                H[b ^ (0b11 << ell), b] += J
    return H


def test_sector_basis_examples():
    assert sector_basis(3, 2).configs == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert sector_basis(2, 0).configs == ((),)
    assert sector_basis(2, 3).configs == ((0, 1, 2),)
    for N in range(6):
        for M in range(N + 2):
            assert sector_basis(N, M).dim == math.comb(N + 1, M)
    with pytest.raises(ValueError):
        sector_basis(2, 4)
    with pytest.raises(ValueError):
        sector_basis(2, -1)


def test_slater_small_cases():
    es = numeric_eigensystem(krawtchouk_chain(2))
    phi = es.vectors
    for k in range(3):
        for ell in range(3):
            assert slater_eigenfunction(es, [k], [ell]) == pytest.approx(phi[k, ell], abs=1e-15)
    assert slater_eigenfunction(es, [1, 1], [0, 2]) == pytest.approx(0, abs=1e-15)
    explicit = (phi[0, 0] * phi[1, 1] - phi[0, 1] * phi[1, 0]) / math.sqrt(2)
    assert slater_eigenfunction(es, [0, 1], [0, 1]) == pytest.approx(explicit, abs=1e-15)
    with pytest.raises(ValueError):
        slater_eigenfunction(es, [0, 1], [0])
    with pytest.raises(ValueError):
        slater_eigenfunction(es, [0, 3], [0, 1])


def test_slater_antisymmetry():
    es = numeric_eigensystem(hahn_chain(5, 0, 1))
    orbitals, sites = [0, 2, 5], [1, 3, 4]
    base = slater_eigenfunction(es, orbitals, sites)
    for i, j in itertools.combinations(range(3), 2):
        s = list(sites)
        s[i], s[j] = s[j], s[i]
        assert slater_eigenfunction(es, orbitals, s) == pytest.approx(-base, abs=1e-14)
        o = list(orbitals)
        o[i], o[j] = o[j], o[i]
        assert slater_eigenfunction(es, o, sites) == pytest.approx(-base, abs=1e-14)


@pytest.mark.parametrize("M", [2, 3, 4])
def test_reversed_arguments_sign(M):
    """Phi at mirrored (descending) sites = (-1)^(M(M-1)/2) * Psi at the same sites."""
    N = 6
    es = numeric_eigensystem(krawtchouk_chain(N))
    sign = (-1) ** (M * (M - 1) // 2)
    for orbitals in itertools.combinations(range(N + 1), M):
        for sites in itertools.combinations(range(N + 1), M):
            mirrored = [N - s for s in sites]
            assert slater_eigenfunction(es, orbitals, mirrored) == pytest.approx(
                sign * register_amplitude(es, orbitals, mirrored), abs=1e-14)
    assert register_amplitude(es, [0, 1], [3, 1]) == register_amplitude(es, [0, 1], [1, 3])


def test_sector_propagator_trivial_sectors():
    es = numeric_eigensystem(hahn_chain(3, 0, 1))
    np.testing.assert_array_equal(sector_propagator(es, 0, 1.3), [[1]])
    np.testing.assert_allclose(sector_propagator(es, 1, 1.3), propagator(es, 1.3).entries, atol=1e-15)
    with pytest.raises(ValueError):
        sector_propagator(es, 5, 0.1)


def test_sector_propagator_matches_full_register_small():
    spec = krawtchouk_chain(2)
    es = numeric_eigensystem(spec)
    U = expm(-1j * 0.7 * hopping_hamiltonian(spec))
    basis = sector_basis(2, 2)
    np.testing.assert_allclose(sector_propagator(es, 2, 0.7, basis), restrict_to_sector(U, basis), atol=1e-8)


def test_full_register_two_sites():
    H = full_register_hamiltonian(krawtchouk_chain(1))
    expected = np.zeros((4, 4))
    expected[0b01, 0b10] = expected[0b10, 0b01] = 1
    np.testing.assert_array_equal(H, expected)


def test_full_register_single_excitation_block():
    H = full_register_hamiltonian(hahn_chain(1, 0, 1))
    block = restrict_to_sector(H, sector_basis(1, 1))
    np.testing.assert_allclose(block, [[1.5, 1.5], [1.5, 1.5]], atol=1e-15)


@pytest.mark.parametrize("spec", [
    krawtchouk_chain(4), hahn_chain(3, 1, 2), hahn_chain(5, 0, 1),
    custom_chain([0.3, 1.7, 0.0, 2.2], [0.5, -1.0, 2.0, 0.0, 3.0]),
])
def test_pauli_construction_matches_hopping_oracle(spec):
    H = full_register_hamiltonian(spec)
    np.testing.assert_allclose(H, hopping_hamiltonian(spec), atol=1e-13)
    assert cross_sector_max(H) == 0.0
    np.testing.assert_allclose(restrict_to_sector(H, sector_basis(spec.N, 1)),
                               single_particle_matrix(spec).to_dense(), atol=1e-13)
    sz = np.diag([sum(1 - 2 * (b >> s & 1) for s in range(spec.n_sites)) for b in range(1 << spec.n_sites)])
    assert np.max(np.abs(H @ sz - sz @ H)) == 0.0


def test_size_guards():
    big = krawtchouk_chain(14)
    with pytest.raises(ValueError):
        full_register_hamiltonian(big)
    with pytest.raises(ValueError):
        mirror_check(krawtchouk_chain(12), 1.0)


def test_full_register_propagator_properties():
    spec = hahn_chain(4, 0, 2)
    H = full_register_hamiltonian(spec)
    np.testing.assert_allclose(full_register_propagator(H, 0.0), np.eye(32), atol=1e-12)
    a, b = 0.37, 1.91
    np.testing.assert_allclose(full_register_propagator(H, a) @ full_register_propagator(H, b),
                               full_register_propagator(H, a + b), atol=1e-9)
    U = full_register_propagator(H, 2.5)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(32), atol=1e-9)
    np.testing.assert_allclose(U, expm(-2.5j * H), atol=1e-9)
    es = numeric_eigensystem(spec)
    np.testing.assert_allclose(restrict_to_sector(U, sector_basis(4, 1)), propagator(es, 2.5).entries, atol=1e-9)


def test_bit_reverse():
    assert list(bit_reverse([0b001, 0b011, 0b110], 3)) == [0b100, 0b110, 0b011]
    codes = np.arange(64)
    np.testing.assert_array_equal(bit_reverse(bit_reverse(codes, 6), 6), codes)
    np.testing.assert_array_equal(popcounts(3), [0, 1, 1, 2, 1, 2, 2, 3])


def test_mirror_check_hahn():
    cert = mirror_check(hahn_chain(2, 0, 1), math.pi)
    assert cert.passed and cert.max_deviation <= 1e-8
    assert cert.phase_uniform_in_sector
    assert np.allclose(np.abs(cert.per_sector_phase), 1, atol=1e-10)


def test_mirror_check_krawtchouk_at_found_time():
    spec = krawtchouk_chain(2)
    rep = find_mirror_time(spec, t_max=4)
    assert mirror_check(spec, rep.mirror_time).passed


def test_mirror_check_fails_for_plain_chain():
    cert = mirror_check(custom_chain([1, 2], [0, 0, 0]), math.pi)
    assert not cert.passed
    assert cert.max_deviation > 0.1


@pytest.mark.parametrize("spec", [krawtchouk_chain(5), hahn_chain(5, 0, 1), hahn_chain(4, 1, 2)])
def test_sector_phase_follows_single_particle_phase(spec):
    """Measured sector phase = (-1)^(M(M-1)/2) * lambda^M, lambda the one-excitation phase."""
    T = spec.predicted_period or find_mirror_time(spec, t_max=2).mirror_time
    cert = mirror_check(spec, T)
    lam = cert.per_sector_phase[1]
    for m, ph in enumerate(cert.per_sector_phase):
        assert ph == pytest.approx((-1) ** (m * (m - 1) // 2) * lam**m, abs=1e-8)


@pytest.mark.parametrize("spec", [krawtchouk_chain(5), hahn_chain(5, 1, 3)])
def test_slater_states_are_sector_eigenvectors(spec):
    es = numeric_eigensystem(spec)
    t = 0.83
    for m in (2, 3):
        basis = sector_basis(spec.N, m)
        S = sector_propagator(es, m, t, basis)
        for orbitals in itertools.combinations(range(spec.n_sites), m):
            v = slater_state(es, orbitals, basis)
            assert np.linalg.norm(v) == pytest.approx(1, abs=1e-12)
            phase = np.exp(-1j * t * es.energies[list(orbitals)].sum())
            np.testing.assert_allclose(S @ v, phase * v, atol=1e-8)


def test_sector_consistency_random_chain():
    rng = np.random.default_rng(3)
    spec = custom_chain(rng.uniform(0.2, 2, 6), rng.uniform(-1, 1, 7))
    assert sector_consistency(spec, rng.uniform(0, 2 * math.pi, 3)) <= 1e-8


def test_certificate_json():
    doc = json.loads(json.dumps(mirror_check(hahn_chain(2, 0, 1), math.pi).to_dict()))
    assert set(doc) == {"time", "phases", "max_deviation", "pass"}
    assert [p["m"] for p in doc["phases"]] == [0, 1, 2, 3]
    assert doc["pass"] is True
