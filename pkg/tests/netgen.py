"""Random well-formed networks for property tests."""
from ctns.generators import (AlphaState, BasisState, BooleanGate, CopySpider, DenseNode,
                             Fourier, ParitySpider, PlusState)
from ctns.network import Network


def random_kind(rng, d):
    roll = rng.random()
    if roll < 0.3:
        legs = int(rng.integers(1, 5))
        m_in = int(rng.integers(0, legs + 1))
        cls = CopySpider if rng.random() < 0.5 else ParitySpider
        return cls(d, m_in, legs - m_in)
    if roll < 0.5:
        return PlusState(d) if rng.random() < 0.5 else BasisState(d, int(rng.integers(d)))
    if d == 2 and roll < 0.75:
        pick = rng.integers(4)
        if pick == 0:
            return BooleanGate(["AND", "OR", "XOR2", "NAND"][rng.integers(4)])
        if pick == 1:
            return AlphaState(complex(rng.normal(), rng.normal()))
        if pick == 2:
            return Fourier(2)
        return BooleanGate("AND")
    rank = int(rng.integers(1, 4))
    data = rng.normal(size=(d,) * rank) + 1j * rng.normal(size=(d,) * rank)
    return DenseNode(data, name="R")


def random_network(rng, d=2, max_nodes=10, max_open=6) -> Network:
    """Random kinds wired by a random perfect matching on all but a few ports."""
    net = Network()
    for _ in range(int(rng.integers(1, max_nodes + 1))):
        net.add_node(random_kind(rng, d))
    ports = [(n, p) for n, k in net.nodes.items() for p in range(k.rank)]
    order = rng.permutation(len(ports))
    ports = [ports[i] for i in order]
    n_open = min(int(rng.integers(0, max_open + 1)), len(ports))
    if (len(ports) - n_open) % 2:
        n_open += 1 if n_open < len(ports) and n_open < max_open else -1
    n_open = max(n_open, len(ports) % 2)
    opened, rest = ports[:n_open], ports[n_open:]
    for a, b in zip(rest[::2], rest[1::2]):
        net.connect(a, b)
    net.expose(*opened)
    return net
