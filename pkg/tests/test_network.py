import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ctns.dense import approx_equal, kets
from ctns.generators import (AlphaState, BasisState, BooleanGate, Cap, CopySpider, Cup, DenseNode,
                             named_state)
from ctns.netio import DecodeError, decode, encode, to_dot
from ctns.network import Network, NetworkError, contract_network
from ctns.states import ghz_network, w_boolean_network, w_mps_network

from netgen import random_network


def and_post_selected(value):
    net = Network()
    g = net.add_node(BooleanGate("AND"))
    e = net.add_node(BasisState(2, value))
    net.connect((g, 2), (e, 0))
    net.expose((g, 0), (g, 1))
    return net


def test_add_node_ports():
    net = Network()
    assert net.nodes[net.add_node(BooleanGate("AND"))].dims == (2, 2, 2)
    assert net.nodes[net.add_node(CopySpider(2, 1, 3))].rank == 4
    assert net.nodes[net.add_node(AlphaState(2 + 1j))].rank == 1
    with pytest.raises(TypeError):
        net.add_node("AND")


def test_connect_errors():
    net = Network()
    a = net.add_node(BooleanGate("AND"))
    b = net.add_node(AlphaState(0.5))
    net.connect((a, 2), (b, 0))
    with pytest.raises(NetworkError, match="already used"):
        net.connect((a, 2), (a, 0))
    c = net.add_node(CopySpider(3, 1, 1))
    with pytest.raises(NetworkError, match="dimension mismatch"):
        net.connect((a, 0), (c, 0))
    with pytest.raises(NetworkError, match="no port"):
        net.connect((a, 7), (c, 0))


def test_validate():
    assert Network().validate()
    bad = Network()
    a, b = bad.add_node(CopySpider(2, 1, 1)), bad.add_node(CopySpider(3, 1, 1))
    bad.edges.append(((a, 0), (b, 0)))
    report = bad.validate()
    assert not report and any("dimensions" in p for p in report.problems)
    assert w_boolean_network().validate()
    dangling = Network()
    dangling.add_node(BooleanGate("AND"))
    assert not dangling.validate()
    with pytest.raises(NetworkError, match="invalid network"):
        contract_network(dangling)


def test_contract_examples():
    assert np.array_equal(contract_network(ghz_network(3)), kets("000", "111"))
    assert np.array_equal(contract_network(and_post_selected(1)), kets("11"))
    assert np.array_equal(contract_network(and_post_selected(0)), kets("00", "01", "10"))


def test_disconnected_scalars_multiply_in():
    net = ghz_network(2)
    a, b = net.add_node(AlphaState(3)), net.add_node(BasisState(2, 1))
    net.connect((a, 0), (b, 0))
    assert np.array_equal(contract_network(net), 3 * kets("00", "11"))


def test_open_legs_on_one_spider_in_any_order():
    net = Network()
    s = net.add_node(CopySpider(3, 0, 3))
    net.expose((s, 2), (s, 0), (s, 1))
    assert np.array_equal(contract_network(net), kets("000", "111", "222", d=3))


@pytest.mark.parametrize("n", range(3, 9))
def test_w_mps(n):
    got = contract_network(w_mps_network(n))
    assert np.array_equal(got, named_state("w", n=n))


def test_interchange_round_trip():
    net = w_boolean_network()
    again = decode(encode(net))
    assert encode(again) == encode(net)
    assert np.array_equal(contract_network(again), contract_network(net))
    mps = w_mps_network(4)
    assert np.allclose(contract_network(decode(encode(mps))), contract_network(mps))


def test_decode_errors():
    with pytest.raises(DecodeError, match="unknown kind"):
        decode('{"version": 1, "nodes": [{"id": 0, "kind": "banana", "params": {}}], "edges": [], "open": []}')
    with pytest.raises(DecodeError, match="line 1"):
        decode("{not json")
    with pytest.raises(DecodeError) as err:
        decode('{"version": 1, "nodes": [], "edges": [[[0, 0], [1, 0]]], "open": []}')
    assert err.value.location == "edges[0][0]"
    with pytest.raises(DecodeError, match="version"):
        decode('{"version": 9, "nodes": [], "edges": [], "open": []}')


def test_to_dot_one_node_per_tensor():
    net = w_boolean_network()
    dot = to_dot(net)
    lines = [ln for ln in dot.splitlines() if ln.lstrip()[:1] == "n" and ln.lstrip()[1:2].isdigit() and "--" not in ln]
    assert len(lines) == len(net.nodes)
    assert dot.startswith("graph")


def insert_snake(net: Network, edge_index: int) -> Network:
    out = net.copy()
    a, b = out.edges.pop(edge_index)
    d = out.dim(a)
    cap, cup = out.add_node(Cap(d)), out.add_node(Cup(d))
    # a - cap - cup - b, with the cup and cap sharing one wire
    out.connect(a, (cap, 0))
    out.connect((cap, 1), (cup, 0))
    out.connect((cup, 1), b)
    return out


@given(st.integers(0, 100_000))
def test_snake_insertion_is_invisible(seed):
    rng = np.random.default_rng(seed)
    net = random_network(rng, d=int(rng.integers(2, 4)), max_nodes=8)
    if not net.edges:
        return
    k = int(rng.integers(len(net.edges)))
    assert approx_equal(contract_network(insert_snake(net, k)), contract_network(net))[0]


def test_snake_with_dense_nodes(rng):
    net = Network()
    a = net.add_node(DenseNode(rng.normal(size=(3, 3)), name="A"))
    b = net.add_node(DenseNode(rng.normal(size=(3, 3)), name="B"))
    net.connect((a, 1), (b, 0))
    net.expose((a, 0), (b, 1))
    assert np.allclose(contract_network(insert_snake(net, 0)), contract_network(net))


def test_contraction_order_independence():
    rng = np.random.default_rng(7)
    for trial in range(100):
        net = random_network(rng, d=2 + trial % 2, max_nodes=10)
        ref = contract_network(net, method="greedy")
        other = contract_network(net, method="random", seed=trial)
        assert approx_equal(other, ref)[0]
        if len(net.nodes) <= 8:
            assert approx_equal(contract_network(net, method="optimal"), ref)[0]


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_contraction_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    net = random_network(rng, d=2, max_nodes=5, max_open=3)
    # brute force: einsum over every port label with dense tensors for every node
    labels = {}
    for k, (a, b) in enumerate(net.edges):
        labels[a] = labels[b] = k
    for k, p in enumerate(net.open_legs):
        labels[p] = len(net.edges) + k
    ops, specs = [], []
    for nid, kind in net.nodes.items():
        ops.append(kind.tensor())
        specs.append([labels[(nid, p)] for p in range(kind.rank)])
    args = [x for pair in zip(ops, specs) for x in pair]
    ref = np.einsum(*args, [labels[p] for p in net.open_legs])
    assert np.allclose(contract_network(net), ref)


def test_unknown_method():
    with pytest.raises(ValueError, match="unknown contraction method"):
        contract_network(ghz_network(2), method="psychic")


def test_planner_handles_wide_fanout(monkeypatch):
    # an eight-variable ANF circuit: every input is a copy hyperedge touching
    # dozens of gates, which sends pairwise size-greedy to 2^40-entry
    # intermediates; the chosen plan must stay small
    from ctns import contraction
    from ctns.boolfun import TruthTable, anf_transform
    from ctns.synthesis import synthesize_circuit

    f = TruthTable(8, np.random.default_rng(0).integers(0, 2, 256))
    net = synthesize_circuit(anf_transform(f))
    peaks = []
    real = contraction._State.merge

    def spy(self, i, j):
        out = real(self, i, j)
        if self.ops[out][0] is not None:
            peaks.append(self.peak)
        return out

    monkeypatch.setattr(contraction._State, "merge", spy)
    t = contract_network(net)
    assert max(peaks) <= 1 << 20
    assert np.array_equal(t.reshape(256, 2).argmax(axis=1), f.bits)  # inputs first, output last
