"""Exact factorization of an arbitrary qubit state into Boolean circuits.

A state ``psi = sum_x a_x |x>`` is split into classes of equal amplitude
``alpha_j`` with supports ``S_j``. Each class indicator ``f_j`` becomes a
circuit whose output is post-selected to ``<0| + alpha_j <1|``; the support
indicator ``f0`` is inverted and post-selected to ``<0|``. n copy spiders
fan every input bit out to all circuits, so the network amplitude at ``x``
is ``[f0(x)] * prod_j alpha_j^{f_j(x)}``, which equals ``a_x`` exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boolfun import TruthTable, index_to_bits
from .dense import Tensor, as_matrix, freeze
from .generators import AlphaState, BasisState, CopySpider, DenseNode, ParitySpider
from .network import Network, contract_network
from .synthesis import Circuit, synthesize_indicator

MAX_MATERIALIZED = 12
DEFAULT_GROUP_TOL = 1e-9


@dataclass(frozen=True)
class CoefficientClass:
    alpha: complex
    support: tuple  # sorted basis indices
    n: int

    def strings(self) -> list[str]:
        return ["".join(map(str, index_to_bits(x, self.n))) for x in self.support]

    def indicator(self) -> TruthTable:
        return TruthTable.from_support(self.n, self.support)


@dataclass
class CtnsDecomposition:
    n: int
    f0: TruthTable
    classes: list[CoefficientClass]
    indicators: list[TruthTable]
    circuits: list[Circuit]
    f0_circuit: Circuit
    network: Network | None = None
    form: str = "auto"
    tol: float = DEFAULT_GROUP_TOL
    meta: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def alphas(self) -> list[complex]:
        return [c.alpha for c in self.classes]


def _qubit_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.ndim == 0 or any(s != 2 for s in psi.shape):
        raise ValueError(f"expected an n-qubit tensor with every leg of dimension 2, got shape {psi.shape}")
    return psi


def group_amplitudes(n: int, indices, values, tol: float = DEFAULT_GROUP_TOL) -> list[CoefficientClass]:
    """Group sparse amplitudes ``values[k]`` at basis ``indices[k]``.

    Two amplitudes share a class when they differ by at most ``tol * max|a|``;
    amplitudes of modulus at most ``tol * max|a|`` are dropped. Ties are broken
    by sorting on (re, im), and classes are returned ordered by their smallest
    basis index.
    """
    idx = np.asarray(indices, dtype=np.int64)
    val = np.asarray(values, dtype=np.complex128)
    scale = float(np.max(np.abs(val))) if val.size else 0.0
    if scale == 0.0:
        raise ValueError("cannot decompose the zero state")
    eps = tol * scale
    keep = np.abs(val) > eps
    idx, val = idx[keep], val[keep]
    order = np.lexsort((val.imag, val.real))
    reps: list[complex] = []
    members: list[list[int]] = []
    for o in order:
        a = val[o]
        hit = None
        # representatives are sorted by real part; only a short tail can match
        for c in range(len(reps) - 1, -1, -1):
            if reps[c].real < a.real - eps:
                break
            if abs(reps[c] - a) <= eps:
                hit = c
                break
        if hit is None:
            reps.append(a)
            members.append([o])
        else:
            members[hit].append(o)
    classes = []
    for group in members:
        support = tuple(sorted(int(idx[o]) for o in group))
        alpha = complex(np.mean(val[group]))
        classes.append(CoefficientClass(alpha, support, n))
    classes.sort(key=lambda c: c.support[0])
    return classes


def group_coefficients(psi: Tensor, tol: float = DEFAULT_GROUP_TOL) -> list[CoefficientClass]:
    psi = _qubit_state(psi)
    flat = psi.ravel()
    nz = np.flatnonzero(flat)
    return group_amplitudes(psi.ndim, nz, flat[nz], tol)


def map_g(D) -> Tensor:
    """Apply a diagonal map (given as its diagonal or as a matrix) to the
    uniform product state; the result carries D's diagonal as amplitudes."""
    D = np.asarray(D, dtype=np.complex128)
    vec = D if D.ndim == 1 else D @ np.ones(D.shape[1])
    n = int(np.log2(vec.size))
    if 1 << n != vec.size:
        raise ValueError(f"diagonal length {vec.size} is not a power of two")
    return freeze(vec.reshape((2,) * n) if n else vec.reshape(()))


def h_network(psi: Tensor) -> Network:
    """``psi`` with each leg fanned into a copy spider: legs are the bent
    (input) copies first, then the outputs."""
    psi = _qubit_state(psi)
    n = psi.ndim
    net = Network()
    s = net.add_node(DenseNode(psi, name="psi"))
    spiders = []
    for k in range(n):
        c = net.add_node(CopySpider(2, 1, 2))
        net.connect((s, k), (c, 0))
        spiders.append(c)
    net.expose(*[(c, 1) for c in spiders], *[(c, 2) for c in spiders])
    return net


def map_h(psi: Tensor) -> np.ndarray:
    """The diagonal map ``sum_x a_x |x><x|`` as a ``2^n x 2^n`` matrix."""
    psi = _qubit_state(psi)
    return as_matrix(contract_network(h_network(psi)), psi.ndim)


def _attach(net: Network, circuit_net: Network):
    """Embed a synthesized circuit; returns (input ports, output port)."""
    ids = net.embed(circuit_net)
    ports = [(ids[a], p) for a, p in circuit_net.open_legs]
    return ports[:-1], ports[-1]


def build_network(n: int, f0_net: Network, class_nets: list[Network], alphas: list[complex]) -> Network:
    net = Network()
    k = len(class_nets)
    joins = [net.add_node(CopySpider(2, 0, k + 2)) for _ in range(n)]

    ins, out = _attach(net, f0_net)
    for i, p in enumerate(ins):
        net.connect((joins[i], 1), p)
    inv = net.add_node(ParitySpider(2, 2, 1))
    net.connect(out, (inv, 0))
    net.connect((net.add_node(BasisState(2, 1)), 0), (inv, 1))
    net.connect((inv, 2), (net.add_node(AlphaState(0)), 0))

    for j, (cnet, alpha) in enumerate(zip(class_nets, alphas)):
        ins, out = _attach(net, cnet)
        for i, p in enumerate(ins):
            net.connect((joins[i], j + 2), p)
        net.connect(out, (net.add_node(AlphaState(complex(alpha))), 0))
    net.expose(*[(c, 0) for c in joins])
    return net


def assemble(n: int, classes: list[CoefficientClass], materialize: bool | None = None,
             form: str = "auto", tol: float = DEFAULT_GROUP_TOL) -> CtnsDecomposition:
    """Synthesize circuits for given classes and (optionally) the network."""
    if n < 1:
        raise ValueError("need at least one qubit")
    if not classes:
        raise ValueError("cannot decompose the zero state")
    if materialize is None:
        materialize = n <= MAX_MATERIALIZED
    if materialize and n > MAX_MATERIALIZED:
        raise ValueError(f"materialized networks are limited to n <= {MAX_MATERIALIZED}, got n={n}")
    indicators = [c.indicator() for c in classes]
    union = np.zeros(1 << n, dtype=np.uint8)
    for f in indicators:
        if np.any(union & f.bits):
            raise ValueError("class supports overlap")
        union |= f.bits
    f0 = TruthTable(n, union)
    f0_net = synthesize_indicator(f0, form)
    class_nets = [synthesize_indicator(f, form) for f in indicators]
    network = build_network(n, f0_net, class_nets, [c.alpha for c in classes]) if materialize else None
    return CtnsDecomposition(
        n=n, f0=f0, classes=list(classes), indicators=indicators,
        circuits=[Circuit.compile(c) for c in class_nets],
        f0_circuit=Circuit.compile(f0_net), network=network, form=form, tol=tol,
    )


def build_ctns(psi: Tensor, tol: float = DEFAULT_GROUP_TOL, materialize: bool | None = None,
               form: str = "auto") -> CtnsDecomposition:
    """Decompose an n-qubit state. The network is built when ``n <= 12``
    (or when ``materialize`` is forced); circuits are always compiled."""
    psi = _qubit_state(psi)
    return assemble(psi.ndim, group_coefficients(psi, tol), materialize, form, tol)
