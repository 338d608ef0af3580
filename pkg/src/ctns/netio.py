"""Structured-text interchange for networks (JSON) and DOT export."""
from __future__ import annotations

import json

from .generators import kind_from_params
from .network import Network

FORMAT_VERSION = 1


class DecodeError(ValueError):
    """Malformed network document; ``location`` names the offending field."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def to_document(net: Network) -> dict:
    report = net.validate()
    if not report:
        raise ValueError("cannot encode invalid network: " + "; ".join(report.problems))
    ids = sorted(net.nodes)
    return {
        "version": FORMAT_VERSION,
        "nodes": [{"id": i, "kind": net.nodes[i].tag, "params": net.nodes[i].params()} for i in ids],
        "edges": [[list(a), list(b)] for a, b in net.edges],
        "open": [list(p) for p in net.open_legs],
        "dims": {str(i): list(net.nodes[i].dims) for i in ids},
        "scalar": [net.scalar.real, net.scalar.imag],
    }


def encode(net: Network) -> str:
    return json.dumps(to_document(net), indent=1)


def _port(obj, where):
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(v, int) for v in obj)):
        raise DecodeError(where, f"expected [node, port], got {obj!r}")
    return (obj[0], obj[1])


def from_document(doc: dict) -> Network:
    if not isinstance(doc, dict):
        raise DecodeError("$", "document must be an object")
    for key in ("version", "nodes", "edges", "open"):
        if key not in doc:
            raise DecodeError("$", f"missing field {key!r}")
    if doc["version"] != FORMAT_VERSION:
        raise DecodeError("version", f"unsupported version {doc['version']!r}")
    net = Network()
    idmap = {}
    for k, node in enumerate(doc["nodes"]):
        where = f"nodes[{k}]"
        try:
            kind = kind_from_params(node["kind"], node.get("params", {}))
        except KeyError as exc:
            raise DecodeError(where, f"missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            raise DecodeError(where, str(exc)) from None
        if node["id"] in idmap:
            raise DecodeError(where, f"duplicate node id {node['id']}")
        idmap[node["id"]] = net.add_node(kind)
        dims = doc.get("dims", {}).get(str(node["id"]))
        if dims is not None and tuple(dims) != kind.dims:
            raise DecodeError(f"dims[{node['id']}]", f"declared {dims} but kind has {list(kind.dims)}")

    def remap(p, where):
        n, port = _port(p, where)
        if n not in idmap:
            raise DecodeError(where, f"unknown node id {n}")
        return (idmap[n], port)

    for k, e in enumerate(doc["edges"]):
        if not (isinstance(e, list) and len(e) == 2):
            raise DecodeError(f"edges[{k}]", "edge must be a pair of ports")
        net.edges.append((remap(e[0], f"edges[{k}][0]"), remap(e[1], f"edges[{k}][1]")))
    net.open_legs = [remap(p, f"open[{k}]") for k, p in enumerate(doc["open"])]
    if "scalar" in doc:
        re, im = doc["scalar"]
        net.scalar = complex(re, im)
    report = net.validate()
    if not report:
        raise DecodeError("edges", "; ".join(report.problems))
    return net


def decode(text: str) -> Network:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_document(doc)


def to_dot(net: Network, name: str = "ctns") -> str:
    """Graphviz description: one node per tensor, one per open leg."""
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=10];"]
    for nid, kind in sorted(net.nodes.items()):
        shape = "point" if kind.tag == "copy" and kind.rank > 2 else "circle"
        label = kind.label().replace('"', "'")
        lines.append(f'  n{nid} [label="{label}", shape={shape}];')
    for k, (node, port) in enumerate(net.open_legs):
        lines.append(f'  o{k} [label="{k}", shape=plaintext];')
        lines.append(f'  n{node} -- o{k} [taillabel="{port}"];')
    for (a, pa), (b, pb) in net.edges:
        lines.append(f'  n{a} -- n{b} [taillabel="{pa}", headlabel="{pb}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
