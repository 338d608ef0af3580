"""Semantics-preserving graph rewrites.

Every rule keeps ``contract_network`` unchanged *including* scalars: any
factor split off is multiplied into ``net.scalar`` and recorded in
``net.log``.
"""
from __future__ import annotations

import numpy as np

from .generators import BasisState, BooleanGate, CopySpider, ParitySpider, PlusState
from .network import Network, RewriteStep


def _family(kind):
    t = type(kind)
    if t is CopySpider:
        return ("copy", kind.d)
    # with every leg counted positively, parity spiders only compose to a
    # parity spider at d = 2 (for d > 2 fusing gives sum_a = sum_b, not 0)
    if t is ParitySpider and kind.d == 2:
        return ("parity", 2)
    return None


def _empty_value(family):
    name, d = family
    return d if name == "copy" else 1


def _rebuild(net: Network, old: list[int], keep: list[tuple[int, int]], cls, d):
    """Replace spiders ``old`` by one spider of type ``cls`` whose ports are
    ``keep`` (inputs first)."""
    ins = [p for p in keep if p[1] < net.nodes[p[0]].n_in]
    outs = [p for p in keep if p[1] >= net.nodes[p[0]].n_in]
    new = net.add_node(cls(d, len(ins), len(outs)))
    net.remap_ports({p: (new, k) for k, p in enumerate(ins + outs)})
    net.remove_nodes(old)
    return new


def _log(net, rule, nodes, scalar=1.0):
    scalar = complex(scalar)
    net.scalar *= scalar
    net.log.append(RewriteStep(rule, tuple(nodes), scalar))


def _fuse_once(net: Network) -> bool:
    for (a, pa), (b, pb) in net.edges:
        fa = _family(net.nodes[a])
        if fa is None:
            continue
        if a == b:
            kind = net.nodes[a]
            net.edges.remove(((a, pa), (b, pb)))
            factor = 1 if fa[0] == "copy" else fa[1]
            keep = [(a, p) for p in range(kind.rank) if p not in (pa, pb)]
            if keep:
                _rebuild(net, [a], keep, type(kind), fa[1])
            else:
                net.remove_nodes([a])
                factor *= _empty_value(fa)
            _log(net, "self-loop", (a,), factor)
            return True
        if _family(net.nodes[b]) != fa:
            continue
        shared = [e for e in net.edges if {e[0][0], e[1][0]} == {a, b}]
        gone = {p for e in shared for p in e}
        net.edges = [e for e in net.edges if e not in shared]
        k = len(shared)
        factor = 1 if fa[0] == "copy" else fa[1] ** (k - 1)
        keep = [(n, p) for n in (a, b) for p in range(net.nodes[n].rank) if (n, p) not in gone]
        if keep:
            _rebuild(net, [a, b], keep, type(net.nodes[a]), fa[1])
        else:
            net.remove_nodes([a, b])
            factor *= _empty_value(fa)
        _log(net, f"fuse-{fa[0]}", (a, b), factor)
        return True
    return False


def fuse_spiders(net: Network) -> Network:
    """Merge adjacent same-family spiders (copy, or parity at d = 2) to fixpoint.

    Copy spiders joined by k parallel edges fuse with no scalar; parity
    spiders pick up ``d**(k-1)``.
    """
    out = net.copy()
    while _fuse_once(out):
        pass
    return out


def _drop_port(net: Network, node: int, port: int, unit: int):
    kind = net.nodes[node]
    net.edges = [e for e in net.edges if (node, port) not in e]
    net.remove_nodes([unit])
    keep = [(node, p) for p in range(kind.rank) if p != port]
    _rebuild(net, [node], keep, type(kind), kind.d)


def _plug_once(net: Network) -> bool:
    for (a, pa), (b, pb) in net.edges:
        for (s, ps), (u, pu) in (((a, pa), (b, pb)), ((b, pb), (a, pa))):
            if s == u:
                continue
            sk, uk = net.nodes[s], net.nodes[u]
            # two rank-1 nodes: a closed scalar
            if sk.rank == 1 and uk.rank == 1:
                val = complex(np.dot(sk.tensor(), uk.tensor()))
                net.remove_nodes([s, u])
                _log(net, "scalar", (s, u), val)
                return True
            if uk.rank != 1 or sk.rank < 2:
                continue
            if type(sk) is CopySpider and uk == PlusState(sk.d):
                _drop_port(net, s, ps, u)
                _log(net, "copy-unit", (s, u))
                return True
            if type(sk) is ParitySpider and uk == BasisState(sk.d, 0):
                _drop_port(net, s, ps, u)
                _log(net, "parity-unit", (s, u))
                return True
            if sk == BooleanGate("AND") and ps in (0, 1) and type(uk) is BasisState:
                other, outp = (s, 1 - ps), (s, 2)
                net.edges.remove(((a, pa), (b, pb)))
                net.remove_nodes([u])
                if uk.value == 1:
                    net.splice(other, outp)
                    rule = "and-unit"
                else:
                    plus = net.add_node(PlusState(2))
                    zero = net.add_node(BasisState(2, 0))
                    net.remap_ports({other: (plus, 0), outp: (zero, 0)})
                    rule = "and-zero"
                net.remove_nodes([s])
                _log(net, rule, (s, u))
                return True
    return False


def plug_unit_simplify(net: Network) -> Network:
    """Absorb units and zeros plugged into generators, to fixpoint.

    ``|+>`` on a copy-spider leg and ``|0>`` on a parity-spider leg delete the
    leg; ``|1>`` on an AND input leaves a wire; ``|0>`` on an AND input gives
    ``|0>`` out and deletes the other input with ``<+|``; two connected rank-1
    nodes collapse to their inner product.
    """
    out = net.copy()
    while _plug_once(out):
        pass
    return out


def simplify(net: Network) -> Network:
    cur = net
    while True:
        nxt = fuse_spiders(plug_unit_simplify(cur))
        if len(nxt.log) == len(cur.log):
            return nxt
        cur = nxt


def spider_comb(n: int, d: int = 2) -> Network:
    """GHZ_n as an MPS-like comb of copy spiders, one per open leg."""
    net = Network()
    if n == 1:
        net.expose((net.add_node(CopySpider(d, 0, 1)), 0))
        return net
    ids = [net.add_node(CopySpider(d, 0, 2 if k in (0, n - 1) else 3)) for k in range(n)]
    for k in range(n - 1):
        right = 1 if k == 0 else 2
        net.connect((ids[k], right), (ids[k + 1], 1))
    net.expose(*[(i, 0) for i in ids])
    return net
