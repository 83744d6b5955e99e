import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorchain.chains import (
    ChainSpec,
    SymmetricTridiagonal,
    custom_chain,
    hahn_chain,
    krawtchouk_chain,
    single_particle_matrix,
)

HAHN_PARAMS = [(0, 1), (1, 1), (0, 2), (1, 3)]


@pytest.mark.parametrize("N, J", [
    (1, [1.0]),
    (2, [math.sqrt(2), math.sqrt(2)]),
    (3, [math.sqrt(3), 2.0, math.sqrt(3)]),
])
def test_krawtchouk_couplings(N, J):
    spec = krawtchouk_chain(N)
    np.testing.assert_allclose(spec.couplings, J, rtol=0, atol=1e-15)
    assert np.all(spec.fields == 0)
    assert spec.n_sites == N + 1
    assert spec.family.kind == "krawtchouk"
    assert spec.predicted_period is None


def test_krawtchouk_rejects_empty_chain():
    with pytest.raises(ValueError):
        krawtchouk_chain(0)


def test_hahn_small_chains():
    one = hahn_chain(1, 0, 1)
    np.testing.assert_allclose(one.couplings, [1.5], atol=1e-15)
    np.testing.assert_allclose(one.fields, [1.5, 1.5], atol=1e-15)
    two = hahn_chain(2, 0, 1)
    np.testing.assert_allclose(two.couplings, [math.sqrt(7.5)] * 2, atol=1e-15)
    np.testing.assert_allclose(two.fields, [3, 5, 3], atol=1e-15)
    assert two.fields.sum() == pytest.approx(0 + 3 + 8, abs=1e-12)
    assert two.predicted_period == pytest.approx(math.pi)
    assert hahn_chain(3, 1, 3).predicted_period == pytest.approx(3 * math.pi)


@pytest.mark.parametrize("p, q", [(0, 0), (-1, 1), (-2, 3)])
def test_hahn_rejects_bad_parameters(p, q):
    with pytest.raises(ValueError):
        hahn_chain(4, p, q)


def test_custom_chain_examples():
    sym = custom_chain([1], [0, 0])
    assert sym.is_mirror_symmetric
    lop = custom_chain([1, 2], [0, 0, 0])
    assert not lop.is_mirror_symmetric
    assert lop.predicted_period is None
    with pytest.raises(ValueError):
        custom_chain([], [0])
    with pytest.raises(ValueError):
        custom_chain([1, 2], [0, 0])


def test_family_chains_must_be_mirror_symmetric():
    from mirrorchain.chains import Family
    with pytest.raises(ValueError):
        ChainSpec([1.0, 2.0], [0, 0, 0], Family("krawtchouk"))
    with pytest.raises(ValueError):
        ChainSpec([1.0, 0.0, 1.0], [0, 0, 0, 0], Family("krawtchouk"))


def test_single_particle_matrix_copies_bands():
    m = single_particle_matrix(krawtchouk_chain(1))
    assert list(m.diagonal) == [0, 0] and list(m.off_diagonal) == [1]
    m = single_particle_matrix(hahn_chain(2, 0, 1))
    np.testing.assert_allclose(m.diagonal, [3, 5, 3], atol=1e-15)
    np.testing.assert_allclose(m.off_diagonal, [math.sqrt(7.5)] * 2, atol=1e-15)
    m = single_particle_matrix(custom_chain([1, 2], [5, 6, 7]))
    assert list(m.diagonal) == [5, 6, 7] and list(m.off_diagonal) == [1, 2]
    dense = m.to_dense()
    np.testing.assert_array_equal(dense, [[5, 1, 0], [1, 6, 2], [0, 2, 7]])


def test_tridiagonal_shape_check():
    with pytest.raises(ValueError):
        SymmetricTridiagonal([1, 2], [1, 2])


@pytest.mark.parametrize("N", range(1, 41))
def test_families_exactly_mirror_symmetric(N):
    chains = [krawtchouk_chain(N)] + [hahn_chain(N, p, q) for p, q in HAHN_PARAMS]
    for spec in chains:
        assert np.array_equal(spec.couplings, spec.couplings[::-1])
        assert np.array_equal(spec.fields, spec.fields[::-1])
        assert np.all(spec.couplings > 0)


@pytest.mark.parametrize("p, q", HAHN_PARAMS)
@pytest.mark.parametrize("N", range(1, 21))
def test_hahn_trace_identity(N, p, q):
    alpha = (2 * p + 1) / (2 * q)
    spec = hahn_chain(N, p, q)
    k = np.arange(N + 1)
    expected = float(np.sum(k * (k + 2 * alpha + 1)))
    assert abs(spec.fields.sum() - expected) <= 1e-9 * max(1.0, expected)


@pytest.mark.parametrize("N", range(1, 21))
def test_krawtchouk_trace_zero(N):
    assert single_particle_matrix(krawtchouk_chain(N)).diagonal.sum() == 0.0


def test_json_layout_and_round_trip():
    spec = hahn_chain(3, 1, 2)
    doc = json.loads(spec.to_json())
    assert list(doc) == ["n_sites", "couplings", "fields", "family", "predicted_period"]
    assert doc["family"] == {"kind": "hahn", "p": 1, "q": 2}
    back = ChainSpec.from_json(spec.to_json())
    assert np.array_equal(back.couplings, spec.couplings)
    assert np.array_equal(back.fields, spec.fields)
    assert back.family == spec.family
    assert back.predicted_period == spec.predicted_period
    assert json.loads(krawtchouk_chain(2).to_json())["predicted_period"] is None


def test_json_rejects_inconsistent_site_count():
    doc = krawtchouk_chain(2).to_dict()
    doc["n_sites"] = 5
    with pytest.raises(ValueError):
        ChainSpec.from_dict(doc)


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(st.lists(finite, min_size=n, max_size=n),
                        st.lists(finite, min_size=n + 1, max_size=n + 1))))
def test_custom_json_round_trip_is_exact(arrays):
    J, h = arrays
    spec = custom_chain(J, h)
    back = ChainSpec.from_json(spec.to_json())
    assert np.array_equal(back.couplings, spec.couplings)
    assert np.array_equal(back.fields, spec.fields)
