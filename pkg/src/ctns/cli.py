"""Command-line front end: ``ctns <subcommand> ...``.

Exit codes: 0 success, 1 a verified law failed, 2 usage error (unknown
subcommand or flag), 3 an input file could not be parsed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import laws
from .boolfun import TruthTable, anf_to_truth_table, parse_anf, parse_truth_table
from .decompose import MAX_MATERIALIZED, CoefficientClass, CtnsDecomposition, assemble, group_amplitudes
from .dense import approx_equal
from .generators import CopySpider, ParitySpider, basis_state, boolean_gate, copy_spider, parity_spider
from .netio import DecodeError, encode, from_document, to_document, to_dot
from .network import Network, contract_network
from .rewrite import fuse_spiders, spider_comb
from .sampler import amplitude, sample
from .synthesis import boolean_state_network, synthesize_indicator

BUNDLE_VERSION = 1


class InputError(Exception):
    """Raised for malformed input files; mapped to exit code 3."""


def _fmt(z: complex) -> str:
    return f"{z.real:.15g} {z.imag:.15g}"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _write(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# -- state files -------------------------------------------------------------

def parse_state(text: str) -> tuple[int, np.ndarray, np.ndarray]:
    """Lines ``<bits> <re> <im>``; '#' starts a comment. Returns (n, indices, values)."""
    n = None
    idx, val = [], []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected '<bits> <re> <im>', got {raw.strip()!r}")
        bits, re, im = parts
        if set(bits) - {"0", "1"}:
            raise InputError(f"line {lineno}: {bits!r} is not a bit string")
        if n is None:
            n = len(bits)
        elif len(bits) != n:
            raise InputError(f"line {lineno}: expected {n} bits, got {len(bits)}")
        try:
            z = complex(float(re), float(im))
        except ValueError:
            raise InputError(f"line {lineno}: bad number in {raw.strip()!r}") from None
        x = int(bits, 2)
        if x in seen:
            raise InputError(f"line {lineno}: basis string {bits} listed twice")
        seen.add(x)
        idx.append(x)
        val.append(z)
    if n is None:
        raise InputError("state file lists no amplitudes")
    return n, np.array(idx, dtype=np.int64), np.array(val, dtype=np.complex128)


def format_amplitudes(t: np.ndarray, header: list[str] | None = None, zero_tol: float = 0.0) -> str:
    lines = [f"# {h}" for h in header or []]
    flat = np.asarray(t).ravel()
    for x in range(flat.size):
        z = flat[x]
        if abs(z) > zero_tol:
            digits = "".join(map(str, np.unravel_index(x, t.shape))) if t.ndim else ""
            lines.append(f"{digits} {_fmt(complex(z))}")
    return "\n".join(lines) + "\n"


# -- decomposition bundles -------------------------------------------------------

def _digest(f: TruthTable) -> str:
    return hashlib.sha256(f.bits.tobytes()).hexdigest()


def bundle_document(dec: CtnsDecomposition) -> dict:
    return {
        "version": BUNDLE_VERSION,
        "n": dec.n,
        "form": dec.form,
        "tol": dec.tol,
        "f0": {"size": len(dec.f0.support()), "digest": _digest(dec.f0)},
        "classes": [
            {"alpha": [c.alpha.real, c.alpha.imag], "support": list(c.support), "digest": _digest(f)}
            for c, f in zip(dec.classes, dec.indicators)
        ],
        "network": to_document(dec.network) if dec.network is not None else None,
    }


def load_bundle(text: str) -> CtnsDecomposition:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        if doc.get("version") != BUNDLE_VERSION:
            raise InputError(f"version: unsupported bundle version {doc.get('version')!r}")
        n = int(doc["n"])
        classes = []
        for k, c in enumerate(doc["classes"]):
            re, im = c["alpha"]
            classes.append(CoefficientClass(complex(re, im), tuple(sorted(int(x) for x in c["support"])), n))
        dec = assemble(n, classes, materialize=False, form=doc.get("form", "auto"),
                       tol=doc.get("tol", 1e-9))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bundle: {exc}") from None
    for k, (c, f) in enumerate(zip(doc["classes"], dec.indicators)):
        if c.get("digest") not in (None, _digest(f)):
            raise InputError(f"classes[{k}]: truth-table digest does not match support")
    if doc.get("network") is not None:
        try:
            dec.network = from_document(doc["network"])
        except DecodeError as exc:
            raise InputError(f"network.{exc}") from None
    return dec


def _load_network(text: str) -> Network:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if isinstance(doc, dict) and "classes" in doc and "network" in doc:
        if doc["network"] is None:
            raise InputError("bundle has no materialized network")
        doc = doc["network"]
    try:
        return from_document(doc)
    except DecodeError as exc:
        raise InputError(str(exc)) from None


# -- law suites ----------------------------------------------------------------

def _expect_unit(name, gate, want_kind, want_u, involutive=None):
    res = laws.find_unit(boolean_gate(gate))
    ok = type(res).__name__ == want_kind and res is not None and np.allclose(res.u, want_u)
    if involutive is not None:
        ok = ok and res.involutive == involutive
    got = "None" if res is None else f"{type(res).__name__}({np.real_if_close(res.u).tolist()})"
    return laws.LawReport(name, bool(ok), 0.0 if ok else 1.0, witness=f"got {got}")


def _fusion_report(name, net: Network):
    before = contract_network(net)
    fused = fuse_spiders(net)
    ok, _ = approx_equal(contract_network(fused), before)
    single = len(fused.nodes) == 1
    return laws.LawReport(name, bool(ok and single), 0.0 if ok else 1.0,
                          witness=f"{len(fused.nodes)} nodes after fusion")


def _chain3():
    net = Network()
    ids = [net.add_node(CopySpider(2, 1, 2)) for _ in range(3)]
    net.connect((ids[0], 2), (ids[1], 0))
    net.connect((ids[1], 2), (ids[2], 0))
    net.expose_free()
    return net


def _parity_pair():
    net = Network()
    a, b = net.add_node(ParitySpider(2, 1, 3)), net.add_node(ParitySpider(2, 2, 1))
    net.connect((a, 2), (b, 0))
    net.connect((a, 3), (b, 1))
    net.expose_free()
    return net


def suite_reports(name: str) -> list[laws.LawReport]:
    zero, one, plus = basis_state(2, 0), basis_state(2, 1), np.ones(2)
    X, A, O = boolean_gate("XOR2"), boolean_gate("AND"), boolean_gate("OR")
    cc = copy_spider(2, 1, 2)
    if name == "frobenius":
        return [
            _rename(laws.verify_frobenius(copy_spider(2, 2, 1), cc), "frobenius copy d=2"),
            _rename(laws.verify_frobenius(copy_spider(3, 2, 1), copy_spider(3, 1, 2)), "frobenius copy d=3"),
            _rename(laws.verify_frobenius(parity_spider(2, 2, 1), parity_spider(2, 1, 2)), "frobenius parity d=2"),
        ]
    if name == "bialgebra":
        out = [_rename(laws.verify_bialgebra(X, zero, cc, plus), "bialgebra XOR/|0>/copy/<+|")]
        for g in ("AND", "OR", "XOR2", "XNOR", "NAND", "NOR"):
            out.append(_rename(laws.bialgebra_law(boolean_gate(g), cc), f"bialgebra law {g}/copy"))
        return out
    if name == "hopf":
        inst = laws._check("XOR after copy is |0><+|", laws.product_matrix(X) @ laws.coproduct_matrix(cc),
                           np.outer(zero, plus), laws.DEFAULT_TOL, False)
        return [_rename(laws.verify_hopf(X, zero, cc, plus, np.eye(2)), "hopf XOR/copy, identity antipode"), inst]
    if name == "fixed-point":
        return [_rename(laws.verify_fixed_point_pair(A, one, O, zero), "fixed-point pair AND/|1>, OR/|0>")]
    if name == "units":
        return [
            _expect_unit("AND has unit |1>", "AND", "Unit", one),
            _expect_unit("OR has unit |0>", "OR", "Unit", zero),
            _expect_unit("XOR has unit |0>", "XOR2", "Unit", zero),
            _expect_unit("NAND weak unit |1>, involutive", "NAND", "WeakUnit", one, True),
            _expect_unit("NOR weak unit |0>, involutive", "NOR", "WeakUnit", zero, True),
        ]
    if name == "spider-fusion":
        return [
            _fusion_report("copy chain of three fuses to one spider", _chain3()),
            _fusion_report("GHZ_8 comb fuses to one spider", spider_comb(8)),
            _fusion_report("parity pair over two edges (scalar 2)", _parity_pair()),
        ]
    raise KeyError(name)


SUITES = ("frobenius", "bialgebra", "hopf", "fixed-point", "units", "spider-fusion")


def _rename(r: laws.LawReport, name: str) -> laws.LawReport:
    r.law = name
    return r


# -- subcommands -----------------------------------------------------------------

def cmd_compile(args):
    if args.anf is not None:
        try:
            f = anf_to_truth_table(parse_anf(args.anf, args.n))
        except ValueError as exc:
            raise InputError(f"anf: {exc}") from None
    else:
        text = _read(args.tt)
        try:
            f = parse_truth_table(text)
        except ValueError as exc:
            raise InputError(f"{args.tt}: {exc}") from None
    if args.post_select is None:
        net = synthesize_indicator(f, args.form)
    else:
        net = boolean_state_network(f, "post-selected", args.post_select, form=args.form)
    _write(encode(net) + "\n", args.output)


def cmd_state(args):
    n, idx, val = parse_state(_read(args.file))
    if args.network:
        if n > MAX_MATERIALIZED:
            raise InputError(f"{args.file}: networks are only built for n <= {MAX_MATERIALIZED}, got n={n}")
        try:
            dec = assemble(n, group_amplitudes(n, idx, val, args.tol), materialize=True, form=args.form)
        except ValueError as exc:
            raise InputError(f"{args.file}: {exc}") from None
        _write(encode(dec.network) + "\n", args.output)
        return
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[idx] = val
    if args.normalize:
        psi = psi / np.linalg.norm(psi)
    _write(format_amplitudes(psi.reshape((2,) * n), [f"n={n}"]), args.output)


def cmd_decompose(args):
    n, idx, val = parse_state(_read(args.file))
    try:
        classes = group_amplitudes(n, idx, val, args.tol)
        dec = assemble(n, classes, materialize=None if not args.no_network else False, form=args.form, tol=args.tol)
    except ValueError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    _write(json.dumps(bundle_document(dec), indent=1) + "\n", args.output)
    print(f"n={n} classes={dec.k} network={'yes' if dec.network else 'no'}", file=sys.stderr)


def cmd_contract(args):
    net = _load_network(_read(args.file))
    t = contract_network(net, method=args.method)
    header = ["legs " + " ".join(map(str, t.shape))]
    if args.compare:
        n, idx, val = parse_state(_read(args.compare))
        ref = np.zeros(1 << n, dtype=np.complex128)
        ref[idx] = val
        if ref.size != t.size:
            raise InputError(f"{args.compare}: state has {n} qubits, network has {t.ndim} legs")
        ok, lam = approx_equal(t.ravel(), ref, up_to_global_scalar=True)
        header.append(f"scalar {_fmt(lam) if ok else 'none'}")
        header.append(f"match {'yes' if ok else 'no'}")
    _write(format_amplitudes(t, header, args.zero_tol), args.output)


def cmd_amplitude(args):
    dec = load_bundle(_read(args.bundle))
    try:
        z = amplitude(dec, args.bits)
    except ValueError as exc:
        raise InputError(f"bits: {exc}") from None
    print(_fmt(z))


def cmd_sample(args):
    dec = load_bundle(_read(args.bundle))
    try:
        draws = sample(dec, args.seed, args.count)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write("\n".join(draws) + "\n", args.output)


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    failed = False
    for name in names:
        for rep in suite_reports(name):
            print("\n".join(rep.lines()))
            failed |= not rep.holds
    return 1 if failed else 0


def cmd_export(args):
    _write(to_dot(_load_network(_read(args.file))), args.output)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ctns", description="Categorical tensor network states.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="truth table or ANF to a network file")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--tt", help="truth-table file ('n=<k>' header then bits)")
    src.add_argument("--anf", help="ANF text, e.g. 'x1+x2+x1*x2'")
    c.add_argument("--n", type=int, help="variable count for --anf (default: highest variable)")
    c.add_argument("--post-select", type=int, choices=(0, 1),
                   help="contract the output with <0| or <1| (default: keep the output leg)")
    c.add_argument("--form", choices=("anf", "minterm", "auto"), default="anf")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compile)

    s = sub.add_parser("state", help="print a state file densely, or as a decomposition network")
    s.add_argument("file")
    s.add_argument("--network", action="store_true")
    s.add_argument("--normalize", action="store_true")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--form", choices=("anf", "minterm", "auto"), default="auto")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_state)

    d = sub.add_parser("decompose", help="state file to a decomposition bundle")
    d.add_argument("file")
    d.add_argument("--tol", type=float, default=1e-9)
    d.add_argument("--form", choices=("anf", "minterm", "auto"), default="auto")
    d.add_argument("--no-network", action="store_true")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decompose)

    k = sub.add_parser("contract", help="network file (or bundle) to an amplitude list")
    k.add_argument("file")
    k.add_argument("--method", choices=("auto", "greedy", "optimal"), default="auto")
    k.add_argument("--compare", help="state file to fit a global scalar against")
    k.add_argument("--zero-tol", type=float, default=0.0)
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_contract)

    a = sub.add_parser("amplitude", help="one amplitude of a decomposition bundle")
    a.add_argument("bundle")
    a.add_argument("bits")
    a.set_defaults(func=cmd_amplitude)

    m = sub.add_parser("sample", help="seeded basis samples of a decomposition bundle")
    m.add_argument("bundle")
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--count", type=int, default=1)
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="run a law suite")
    v.add_argument("--suite", choices=SUITES + ("all",), required=True)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="network file to Graphviz text")
    e.add_argument("file")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args) or 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
