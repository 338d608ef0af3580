"""Compile switching functions into generator networks and evaluate them.

Synthesized networks use only copy spiders (fan-out), ``(2,1)`` parity dots
(XOR), AND gates, ``|1>`` / ``|0>`` constants and ``|+>`` (to delete unused
inputs). Open legs are ``x1..xn`` followed by the output, so the contracted
tensor is ``T[x, y] = [y == f(x)]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boolfun import AnfPoly, Esop, TruthTable, anf_coefficients, anf_to_esop, anf_transform, minterm_esop
from .generators import BasisState, BooleanGate, CopySpider, DenseNode, Generator, ParitySpider, PlusState
from .network import Network, NetworkError

_IN = "in"


class _Builder:
    def __init__(self, n):
        self.net = Network()
        self.inputs: list = [None] * n

    def attach(self, signal, port):
        if signal[0] == _IN:
            self.inputs[signal[1]] = port
        else:
            self.net.connect(signal, port)

    def gate(self, kind: Generator, ins):
        nid = self.net.add_node(kind)
        for k, s in enumerate(ins):
            self.attach(s, (nid, k))
        return (nid, len(ins))

    def const(self, value):
        return (self.net.add_node(BasisState(2, value)), 0)

    def fanout(self, signal, m):
        if m == 1:
            return [signal]
        nid = self.net.add_node(CopySpider(2, 1, m))
        self.attach(signal, (nid, 0))
        return [(nid, k) for k in range(1, m + 1)]

    def tree(self, signals, kind):
        # balanced binary reduction
        while len(signals) > 1:
            nxt = [self.gate(kind, signals[k:k + 2]) for k in range(0, len(signals) - 1, 2)]
            if len(signals) % 2:
                nxt.append(signals[-1])
            signals = nxt
        return signals[0]


def synthesize_circuit(p: AnfPoly | Esop) -> Network:
    """Network over {COPY, XOR, AND, |1>} realizing the function ``p``.

    Fan-out uses copy spiders, each cube is a balanced AND tree, the sum a
    balanced XOR tree, and the constant term a ``|1>``. Negated literals (for
    non-positive ESOP input) are XOR with ``|1>``.
    """
    esop = anf_to_esop(p) if isinstance(p, AnfPoly) else p
    n = esop.n
    if n < 1:
        raise ValueError("synthesis needs at least one input variable")
    b = _Builder(n)
    pos = [0] * n
    neg = [0] * n
    for cube in esop.cubes:
        for v, negated in cube:
            (neg if negated else pos)[v] += 1

    pos_sig: list[list] = [[] for _ in range(n)]
    neg_sig: list[list] = [[] for _ in range(n)]
    for v in range(n):
        total = pos[v] + (1 if neg[v] else 0)
        if total == 0:
            b.inputs[v] = (b.net.add_node(PlusState(2)), 0)
            continue
        sources = b.fanout((_IN, v), total)
        pos_sig[v] = sources[:pos[v]]
        if neg[v]:
            inverted = b.gate(ParitySpider(2, 2, 1), [sources[-1], b.const(1)])
            neg_sig[v] = b.fanout(inverted, neg[v])

    terms = []
    for cube in esop.cubes:
        lits = [(neg_sig if negated else pos_sig)[v].pop() for v, negated in cube]
        terms.append(b.tree(lits, BooleanGate("AND")) if lits else b.const(1))
    out = b.tree(terms, ParitySpider(2, 2, 1)) if terms else b.const(0)
    if out[0] == _IN:
        wire = b.net.add_node(CopySpider(2, 1, 1))
        b.attach(out, (wire, 0))
        out = (wire, 1)
    b.net.expose(*b.inputs, out)
    return b.net


def synthesize_indicator(f: TruthTable, form: str = "auto") -> Network:
    """Circuit for ``f`` from its ANF, its minterm expansion, or whichever
    has fewer cubes (``form="auto"``)."""
    if form == "anf":
        return synthesize_circuit(anf_transform(f))
    if form == "minterm":
        return synthesize_circuit(minterm_esop(f))
    if form != "auto":
        raise ValueError(f"unknown synthesis form {form!r}")
    # count monomials on the coefficient vector; building the polynomial is
    # only worth it when it wins
    if int(anf_coefficients(f).sum()) <= int(f.bits.sum()):
        return synthesize_circuit(anf_transform(f))
    return synthesize_circuit(minterm_esop(f))


def boolean_state_network(f: TruthTable, output_mode: str = "post-selected",
                          effect=1, form: str = "anf") -> Network:
    """``"appended"``: n+1 legs realizing ``sum_x |x>|f(x)>``.
    ``"post-selected"``: the output contracted with ``effect`` (a basis label
    or a vector), leaving the n input legs."""
    net = synthesize_indicator(f, form)
    if output_mode == "appended":
        return net
    if output_mode != "post-selected":
        raise ValueError(f"unknown output mode {output_mode!r}")
    out = net.open_legs.pop()
    if isinstance(effect, (int, np.integer)):
        e = net.add_node(BasisState(2, int(effect)))
    else:
        e = net.add_node(DenseNode(np.asarray(effect), name="effect"))
    net.connect(out, (e, 0))
    return net


# -- classical evaluation ------------------------------------------------------

def _op_for(kind):
    t = type(kind)
    if t is CopySpider and kind.d == 2 and kind.m_in == 1:
        return "copy"
    if t is ParitySpider and kind.d == 2 and kind.n_out == 1:
        return "xor"
    if t is BooleanGate:
        return kind.gate
    if t is BasisState and kind.d == 2:
        return "const"
    if t is PlusState:
        return "sink"
    raise NetworkError(f"{kind.label()} is not a classical circuit element")


def _apply(op, kind, ins):
    if op == "copy":
        return [ins[0]] * kind.n_out
    if op == "xor":
        acc = ins[0]
        for x in ins[1:]:
            acc = acc ^ x
        return [acc]
    if op == "const":
        return [kind.value]
    if op == "sink":
        return []
    a = ins[0]
    if op == "NOT":
        return [1 ^ a]
    b2 = ins[1]
    return [{"AND": lambda: a & b2, "OR": lambda: a | b2, "NAND": lambda: 1 ^ (a & b2),
             "NOR": lambda: 1 ^ (a | b2), "XOR2": lambda: a ^ b2, "XNOR": lambda: 1 ^ a ^ b2}[op]()]


@dataclass
class Circuit:
    """A synthesized network compiled into a gate list for direct evaluation."""
    network: Network
    n: int
    steps: list = field(default_factory=list)
    input_wires: list = field(default_factory=list)
    output_wire: int = -1

    @classmethod
    def compile(cls, net: Network) -> "Circuit":
        n = len(net.open_legs) - 1
        wire_of: dict = {}
        for w, (a, b) in enumerate(net.edges):
            wire_of[a] = wire_of[b] = w
        nw = len(net.edges)
        for k, p in enumerate(net.open_legs):
            wire_of[p] = nw + k
        ready = set(nw + k for k in range(n))
        pending = {}
        for nid, kind in net.nodes.items():
            op = _op_for(kind)
            n_in = 0 if op == "const" else (1 if op == "sink" else kind.n_in)
            ins = [wire_of[(nid, p)] for p in range(n_in)]
            outs = [wire_of[(nid, p)] for p in range(n_in, kind.rank)]
            pending[nid] = (op, kind, ins, outs)
        steps = []
        while pending:
            progressed = False
            for nid in sorted(pending):
                op, kind, ins, outs = pending[nid]
                if all(w in ready for w in ins):
                    steps.append((op, kind, ins, outs))
                    ready.update(outs)
                    del pending[nid]
                    progressed = True
            if not progressed:
                raise NetworkError("network is not an acyclic circuit")
        return cls(net, n, steps, [nw + k for k in range(n)], nw + n)

    @property
    def size(self) -> int:
        return len(self.steps)

    @property
    def depth(self) -> int:
        """Longest input-to-output chain of logic gates (fan-out and constants
        count zero)."""
        level = {w: 0 for w in self.input_wires}
        for op, _, ins, outs in self.steps:
            base = max((level.get(w, 0) for w in ins), default=0)
            lv = base if op in ("copy", "const", "sink") else base + 1
            for w in outs:
                level[w] = lv
        return level.get(self.output_wire, 0)

    def evaluate(self, x, counter: list | None = None):
        """Evaluate on bits ``x`` (ints, or equal-length uint8 arrays for a
        batch). ``counter[0]`` is incremented once per gate executed."""
        if len(x) != self.n:
            raise ValueError(f"expected {self.n} input bits, got {len(x)}")
        val = dict(zip(self.input_wires, x))
        for op, kind, ins, outs in self.steps:
            res = _apply(op, kind, [val[w] for w in ins])
            for w, r in zip(outs, res):
                val[w] = r
        if counter is not None:
            counter[0] += len(self.steps)
        return val[self.output_wire]

    def evaluate_all(self) -> np.ndarray:
        """Outputs on all ``2**n`` inputs, vectorized."""
        idx = np.arange(1 << self.n, dtype=np.int64)
        cols = [((idx >> (self.n - 1 - i)) & 1).astype(np.uint8) for i in range(self.n)]
        out = self.evaluate(cols)
        return np.broadcast_to(np.asarray(out, dtype=np.uint8), idx.shape).copy()
