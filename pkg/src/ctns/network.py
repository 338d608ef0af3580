"""Tensor network graphs over generator nodes."""
from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field

from .contraction import contract_labeled
from .dense import Tensor, freeze
from .generators import Generator, is_delta

Port = tuple[int, int]


class NetworkError(ValueError):
    pass


@dataclass
class ValidationReport:
    valid: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.valid


@dataclass
class RewriteStep:
    rule: str
    nodes: tuple[int, ...]
    scalar: complex = 1.0 + 0j


class Network:
    """A graph of generator nodes.

    Every port is either in exactly one edge or exactly one open-leg slot;
    ``open_legs`` fixes the leg order of the contracted tensor. ``scalar``
    accumulates factors split off by rewrites.
    """

    def __init__(self):
        self.nodes: dict[int, Generator] = {}
        self.edges: list[tuple[Port, Port]] = []
        self.open_legs: list[Port] = []
        self.scalar: complex = 1.0 + 0j
        self.log: list[RewriteStep] = []
        self._next_id = 0

    # -- construction ----------------------------------------------------
    def add_node(self, kind: Generator) -> int:
        if not isinstance(kind, Generator):
            raise TypeError(f"expected a Generator kind, got {type(kind).__name__}")
        kind.dims  # validates parameters without building large spider tensors
        nid = self._next_id
        self._next_id += 1
        self.nodes[nid] = kind
        return nid

    def dim(self, port: Port) -> int:
        node, p = port
        if node not in self.nodes:
            raise NetworkError(f"no node {node}")
        dims = self.nodes[node].dims
        if not 0 <= p < len(dims):
            raise NetworkError(f"node {node} has no port {p}")
        return dims[p]

    def _used(self) -> dict[Port, str]:
        used = {}
        for a, b in self.edges:
            used[a] = "edge"
            used[b] = "edge"
        for p in self.open_legs:
            used[p] = "open"
        return used

    def connect(self, a: Port, b: Port) -> None:
        a, b = tuple(a), tuple(b)
        da, db = self.dim(a), self.dim(b)
        if a == b:
            raise NetworkError(f"cannot connect port {a} to itself")
        used = self._used()
        for p in (a, b):
            if p in used:
                raise NetworkError(f"port {p} is already used ({used[p]})")
        if da != db:
            raise NetworkError(f"dimension mismatch connecting {a} (d={da}) to {b} (d={db})")
        self.edges.append((a, b))

    def expose(self, *ports: Port) -> None:
        """Append ports to the open-leg list."""
        used = self._used()
        for p in ports:
            p = tuple(p)
            self.dim(p)
            if p in used:
                raise NetworkError(f"port {p} is already used ({used[p]})")
            used[p] = "open"
            self.open_legs.append(p)

    def free_ports(self) -> list[Port]:
        used = self._used()
        return [(n, p) for n, k in self.nodes.items() for p in range(k.rank) if (n, p) not in used]

    def expose_free(self) -> None:
        self.expose(*self.free_ports())

    def neighbor(self, port: Port) -> Port | None:
        for a, b in self.edges:
            if a == port:
                return b
            if b == port:
                return a
        return None

    def copy(self) -> "Network":
        return copy.deepcopy(self)

    def embed(self, other: "Network") -> dict[int, int]:
        """Copy ``other``'s nodes and edges in; returns the node-id map.

        Open legs of ``other`` are not exposed; callers wire them up using
        the returned map.
        """
        mapping = {}
        for nid, kind in other.nodes.items():
            mapping[nid] = self.add_node(kind)
        for (a, pa), (b, pb) in other.edges:
            self.edges.append(((mapping[a], pa), (mapping[b], pb)))
        self.scalar *= other.scalar
        return mapping

    # -- editing helpers used by rewrites ---------------------------------
    def remove_nodes(self, ids) -> None:
        ids = set(ids)
        for i in ids:
            del self.nodes[i]
        self.edges = [(a, b) for a, b in self.edges if a[0] not in ids and b[0] not in ids]
        self.open_legs = [p for p in self.open_legs if p[0] not in ids]

    def remap_ports(self, port_map: dict[Port, Port]) -> None:
        """Move edge endpoints and open legs according to ``port_map``."""
        self.edges = [(port_map.get(a, a), port_map.get(b, b)) for a, b in self.edges]
        self.open_legs = [port_map.get(p, p) for p in self.open_legs]

    def splice(self, x: Port, y: Port) -> None:
        """Replace ports ``x`` and ``y`` (about to be deleted) by a plain wire.

        Whatever was attached to ``x`` becomes attached to whatever was
        attached to ``y``. A wire closed onto itself becomes the scalar d.
        """
        d = self.dim(x)
        nx, ny = self.neighbor(x), self.neighbor(y)
        if nx == y:
            self.edges = [e for e in self.edges if set(e) != {x, y}]
            self.scalar *= d
            return
        self.edges = [e for e in self.edges if x not in e and y not in e]
        open_x = x in self.open_legs
        open_y = y in self.open_legs
        if nx is not None and ny is not None:
            self.edges.append((nx, ny))
        elif nx is not None and open_y:
            self.open_legs[self.open_legs.index(y)] = nx
        elif ny is not None and open_x:
            self.open_legs[self.open_legs.index(x)] = ny
        elif open_x and open_y:
            from .generators import CopySpider
            wire = self.add_node(CopySpider(d, 1, 1))
            self.open_legs[self.open_legs.index(x)] = (wire, 0)
            self.open_legs[self.open_legs.index(y)] = (wire, 1)
        else:
            raise NetworkError(f"cannot splice dangling ports {x}, {y}")

    # -- checks ---------------------------------------------------------
    def validate(self) -> ValidationReport:
        problems = []
        count: dict[Port, int] = {}
        for a, b in self.edges + [(p, None) for p in self.open_legs]:
            for p in (a, b):
                if p is None:
                    continue
                if p[0] not in self.nodes or not 0 <= p[1] < self.nodes[p[0]].rank:
                    problems.append(f"reference to missing port {p}")
                    continue
                count[p] = count.get(p, 0) + 1
        for a, b in self.edges:
            if a == b:
                problems.append(f"edge connects port {a} to itself")
            try:
                if self.dim(a) != self.dim(b):
                    problems.append(f"edge {a}-{b} joins dimensions {self.dim(a)} and {self.dim(b)}")
            except NetworkError:
                pass
        for nid, kind in self.nodes.items():
            for p in range(kind.rank):
                c = count.get((nid, p), 0)
                if c == 0:
                    problems.append(f"port {(nid, p)} of {kind.label()} is dangling")
                elif c > 1:
                    problems.append(f"port {(nid, p)} of {kind.label()} is used {c} times")
        return ValidationReport(not problems, problems)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.dim(p) for p in self.open_legs)

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"Network({len(self.nodes)} nodes, {len(self.edges)} edges, {len(self.open_legs)} open legs)"


def contract_network(net: Network, method: str = "auto", seed: int | None = None) -> Tensor:
    """Contract to a dense tensor over ``net.open_legs`` in order.

    Delta-like nodes (copy spiders, cups, caps, ``|+>``) are absorbed as
    shared indices rather than materialized. ``method`` selects the pairwise
    order: "auto" (optimal for <= 8 tensors, else greedy), "greedy" (the
    better of bucket-elimination and pairwise size-greedy plans), "optimal",
    or "random" (seeded).
    """
    report = net.validate()
    if not report:
        raise NetworkError("invalid network: " + "; ".join(report.problems))

    # one label per edge / open leg, merged through delta nodes
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    port_label: dict[Port, int] = {}
    dims: dict[int, int] = {}
    counter = itertools.count()
    for a, b in net.edges:
        lab = next(counter)
        parent[lab] = lab
        dims[lab] = net.dim(a)
        port_label[a] = port_label[b] = lab
    for p in net.open_legs:
        lab = next(counter)
        parent[lab] = lab
        dims[lab] = net.dim(p)
        port_label[p] = lab

    operands = []
    for nid, kind in net.nodes.items():
        labels = [port_label[(nid, p)] for p in range(kind.rank)]
        if is_delta(kind):
            root = find(labels[0])
            for lab in labels[1:]:
                r = find(lab)
                if r != root:
                    parent[r] = root
        else:
            operands.append((kind.tensor(), labels))

    operands = [(t, [find(x) for x in labs]) for t, labs in operands]
    out_labels = [find(port_label[p]) for p in net.open_legs]
    all_roots = {find(x) for x in parent}
    label_dims = {r: dims[r] for r in all_roots}

    result = contract_labeled(operands, out_labels, label_dims, method=method, seed=seed)
    return freeze(result * net.scalar)
