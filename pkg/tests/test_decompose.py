import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ctns.decompose import (CoefficientClass, assemble, build_ctns, group_amplitudes,
                            group_coefficients, h_network, map_g, map_h)
from ctns.dense import approx_equal, kets
from ctns.generators import named_state
from ctns.network import contract_network
from ctns.sampler import amplitudes_all


def random_state(rng, n, levels=None):
    """Complex random state; with ``levels`` the amplitudes are drawn from a
    small palette so that classes have more than one member."""
    if levels is None:
        v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    else:
        palette = rng.normal(size=levels) + 1j * rng.normal(size=levels)
        v = palette[rng.integers(0, levels, size=1 << n)]
        v[rng.random(1 << n) < 0.3] = 0
        if not np.any(v):
            v[0] = 1
    return v.reshape((2,) * n)


def rebuild(classes, n):
    v = np.zeros(1 << n, dtype=complex)
    for c in classes:
        v[list(c.support)] = c.alpha
    return v.reshape((2,) * n)


def test_worked_example_alpha_at_11():
    rng = np.random.default_rng(5)
    for _ in range(10):
        alpha = complex(rng.normal(), rng.normal())
        psi = kets("01", "10") + alpha * kets("11")
        dec = build_ctns(psi)
        t = contract_network(dec.network)
        assert t[1, 1] == pytest.approx(alpha, abs=1e-12)
        assert t[0, 0] == 0
        assert np.allclose(t, psi, atol=1e-12)


def test_w_state_is_one_class():
    dec = build_ctns(named_state("w", n=3))
    assert dec.k == 1 and dec.alphas == [1]
    assert dec.classes[0].strings() == ["001", "010", "100"]
    assert np.array_equal(contract_network(dec.network), named_state("w", n=3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_round_trip_hundred_random_states(n):
    rng = np.random.default_rng(100 + n)
    for trial in range(100):
        psi = random_state(rng, n, levels=None if trial % 2 else 3)
        dec = build_ctns(psi)
        ok, lam = approx_equal(contract_network(dec.network), psi, tol=1e-9, up_to_global_scalar=True)
        assert ok
        assert lam == pytest.approx(1, abs=1e-9)  # the construction carries no stray scalar


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_classes_partition_the_support(n, seed, levels):
    psi = random_state(np.random.default_rng(seed), n, levels)
    classes = group_coefficients(psi)
    supports = [set(c.support) for c in classes]
    assert sum(map(len, supports)) == len(set().union(*supports))
    assert set().union(*supports) == set(np.flatnonzero(psi.ravel()))
    assert len({c.alpha for c in classes}) == len(classes) <= levels
    assert np.allclose(rebuild(classes, n), psi)
    # ordered by smallest support index
    firsts = [c.support[0] for c in classes]
    assert firsts == sorted(firsts)


def test_grouping_tolerance():
    vals = [1.0, 1.0 + 1e-12, 1.0 + 1e-6, 1e-13]
    classes = group_amplitudes(2, [0, 1, 2, 3], vals, tol=1e-9)
    assert [c.support for c in classes] == [(0, 1), (2,)]
    loose = group_amplitudes(2, [0, 1, 2, 3], vals, tol=1e-3)
    assert [c.support for c in loose] == [(0, 1, 2)]
    assert loose[0].alpha == pytest.approx(np.mean(vals[:3]))


def test_grouping_with_equal_real_parts():
    vals = [1 + 1j, 1 - 1j, 1 + 1j, 1 - 1j]
    classes = group_amplitudes(2, range(4), vals)
    assert [(c.alpha, c.support) for c in classes] == [(1 + 1j, (0, 2)), (1 - 1j, (1, 3))]


def test_zero_state_and_shape_errors():
    with pytest.raises(ValueError, match="zero state"):
        build_ctns(np.zeros((2, 2)))
    with pytest.raises(ValueError, match="dimension 2"):
        build_ctns(np.ones((3, 3)))
    with pytest.raises(ValueError, match="overlap"):
        assemble(2, [CoefficientClass(1, (0, 1), 2), CoefficientClass(2, (1,), 2)])
    with pytest.raises(ValueError, match="n <= 12"):
        assemble(13, [CoefficientClass(1, (0,), 13)], materialize=True)


def test_sparse_twenty_qubits_without_network():
    n = 20
    rng = np.random.default_rng(8)
    idx = rng.choice(1 << n, size=30, replace=False)
    vals = rng.choice([1.0, -1.0, 0.5j], size=30)
    dec = assemble(n, group_amplitudes(n, idx, vals))
    assert dec.network is None and dec.k == 3
    amps = amplitudes_all(dec)
    want = np.zeros(1 << n, dtype=complex)
    want[idx] = vals
    assert np.array_equal(amps, want)


def test_forms_agree():
    psi = random_state(np.random.default_rng(2), 3, levels=2)
    for form in ("anf", "minterm", "auto"):
        dec = build_ctns(psi, form=form)
        assert np.allclose(contract_network(dec.network), psi, atol=1e-12)


def test_map_g_and_map_h_are_inverse():
    rng = np.random.default_rng(9)
    for n in (1, 2, 3):
        psi = random_state(rng, n)
        D = map_h(psi)
        assert np.allclose(D, np.diag(psi.ravel()))
        assert np.allclose(map_g(D), psi)
        assert np.allclose(map_g(np.diag(D)), psi)
    with pytest.raises(ValueError, match="power of two"):
        map_g(np.ones(3))


def test_h_network_legs():
    psi = random_state(np.random.default_rng(1), 2)
    net = h_network(psi)
    assert net.shape == (2, 2, 2, 2)
    t = contract_network(net)
    assert t[1, 0, 1, 0] == psi[1, 0] and t[1, 0, 0, 0] == 0
