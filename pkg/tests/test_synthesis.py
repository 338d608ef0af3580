import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ctns.boolfun import AnfPoly, TruthTable, anf_transform, index_to_bits, parse_anf
from ctns.dense import as_matrix, kets
from ctns.generators import BooleanGate, named_state
from ctns.network import contract_network
from ctns.states import ghz_truth_table, w_truth_table
from ctns.synthesis import Circuit, boolean_state_network, synthesize_circuit, synthesize_indicator


def function_matrix(f: TruthTable) -> np.ndarray:
    m = np.zeros((2, 1 << f.n))
    m[f.bits, np.arange(1 << f.n)] = 1
    return m


def map_of(net, n):
    return as_matrix(contract_network(net), n)


def test_single_variable_is_a_wire():
    net = synthesize_circuit(parse_anf("x1"))
    assert np.array_equal(map_of(net, 1), np.eye(2))


def test_negation_via_xor_with_one():
    net = synthesize_circuit(parse_anf("1+x1"))
    kinds = sorted(k.tag for k in net.nodes.values())
    assert "parity" in kinds and "basis" in kinds and "gate" not in kinds
    assert np.array_equal(map_of(net, 1), [[0, 1], [1, 0]])


def test_f_w_circuit():
    f = w_truth_table(3)
    assert np.array_equal(map_of(synthesize_circuit(anf_transform(f)), 3), function_matrix(f))


def test_all_two_variable_functions_exhaustively():
    for code in range(16):
        f = TruthTable(2, [(code >> k) & 1 for k in range(4)])
        for form in ("anf", "minterm", "auto"):
            assert np.array_equal(map_of(synthesize_indicator(f, form), 2), function_matrix(f))


def test_all_four_variable_functions_sampled_by_stride():
    # all 65536 tables would be slow; every 97th table covers the space evenly
    for code in range(0, 1 << 16, 97):
        f = TruthTable(4, [(code >> k) & 1 for k in range(16)])
        assert np.array_equal(map_of(synthesize_circuit(anf_transform(f)), 4), function_matrix(f))


@settings(max_examples=100)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))))
def test_random_functions_up_to_eight_variables(case):
    n, bits = case
    f = TruthTable(n, bits)
    circ = Circuit.compile(synthesize_circuit(anf_transform(f)))
    assert np.array_equal(circ.evaluate_all(), f.bits)
    assert np.array_equal(map_of(synthesize_circuit(anf_transform(f)), n), function_matrix(f))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(
    st.frozensets(st.integers(0, n - 1), max_size=1), max_size=n + 1))))
def test_affine_polynomials_need_no_and(case):
    n, mons = case
    net = synthesize_circuit(AnfPoly(n, mons))
    assert not any(isinstance(k, BooleanGate) for k in net.nodes.values())


def test_boolean_states():
    assert np.array_equal(contract_network(boolean_state_network(w_truth_table(3))),
                          named_state("w", n=3))
    assert np.array_equal(contract_network(boolean_state_network(ghz_truth_table(3))),
                          kets("000", "111"))
    OR = TruthTable(2, [0, 1, 1, 1])
    assert np.array_equal(contract_network(boolean_state_network(OR)), kets("01", "10", "11"))


def test_appended_and_custom_effect():
    f = w_truth_table(3)
    net = boolean_state_network(f, "appended")
    t = contract_network(net)
    assert t.shape == (2, 2, 2, 2)
    for x in range(8):
        assert t[index_to_bits(x, 3) + (f.bits[x],)] == 1
    alpha = 0.5 - 2j
    post = contract_network(boolean_state_network(f, effect=np.array([1, alpha])))
    assert np.allclose(post.ravel(), np.where(f.bits, alpha, 1))
    with pytest.raises(ValueError, match="output mode"):
        boolean_state_network(f, "sideways")


def test_constant_functions():
    zero = synthesize_circuit(AnfPoly(2, set()))
    assert np.array_equal(map_of(zero, 2), [[1, 1, 1, 1], [0, 0, 0, 0]])
    one = synthesize_circuit(AnfPoly(2, {frozenset()}))
    assert np.array_equal(map_of(one, 2), [[0, 0, 0, 0], [1, 1, 1, 1]])


def test_circuit_metrics_and_counter():
    circ = Circuit.compile(synthesize_circuit(parse_anf("x1+x2+x3+x1*x2*x3")))
    assert circ.depth >= 2
    counter = [0]
    assert circ.evaluate([0, 0, 1], counter) == 1
    assert counter[0] == circ.size
    with pytest.raises(ValueError):
        circ.evaluate([0, 1])


def test_unknown_form():
    with pytest.raises(ValueError, match="unknown synthesis form"):
        synthesize_indicator(w_truth_table(3), "bdd")
