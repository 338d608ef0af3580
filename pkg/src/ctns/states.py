"""Ready-made networks for the GHZ and W families."""
from __future__ import annotations

import numpy as np

from .boolfun import TruthTable
from .generators import BasisState, CopySpider, DenseNode
from .network import Network
from .synthesis import boolean_state_network


def ghz_network(n: int, d: int = 2) -> Network:
    net = Network()
    s = net.add_node(CopySpider(d, 0, n))
    net.expose(*[(s, k) for k in range(n)])
    return net


def w_site() -> np.ndarray:
    """Site tensor ``T[left, phys, right]`` of the bond-2 W chain.

    The bond records whether the single excitation has been emitted yet:
    0 -> 0 emits |0>, 0 -> 1 emits |1>, 1 -> 1 emits |0>.
    """
    t = np.zeros((2, 2, 2), dtype=np.complex128)
    t[0, 0, 0] = 1
    t[0, 1, 1] = 1
    t[1, 0, 1] = 1
    return t


def w_mps_network(n: int) -> Network:
    """W(n) as a bond-dimension-2 chain closed by ``<0|`` on the left bond
    and ``<1|`` on the right bond."""
    if n < 1:
        raise ValueError("W state needs n >= 1")
    net = Network()
    left = net.add_node(BasisState(2, 0))
    right = net.add_node(BasisState(2, 1))
    site = w_site()
    prev = (left, 0)
    phys = []
    for k in range(n):
        s = net.add_node(DenseNode(site, name=f"W{k + 1}"))
        net.connect(prev, (s, 0))
        phys.append((s, 1))
        prev = (s, 2)
    net.connect(prev, (right, 0))
    net.expose(*phys)
    return net


def w_truth_table(n: int) -> TruthTable:
    return TruthTable.from_support(n, [1 << k for k in range(n)])


def ghz_truth_table(n: int) -> TruthTable:
    return TruthTable.from_support(n, [0, (1 << n) - 1])


def w_boolean_network(n: int = 3) -> Network:
    """W(n) as the indicator circuit of its support post-selected to ``<1|``."""
    return boolean_state_network(w_truth_table(n), "post-selected", 1, form="anf")
