"""Generator tensors of the Boolean/qudit toolbox.

Every map-like generator stores its legs as (inputs..., outputs...), so a
two-input gate tensor ``T[x1, x2, y]`` is also the state
``sum |x1 x2 f(x1, x2)>``. Spiders carry no normalization; the Fourier gate
carries ``1/sqrt(d)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from .dense import Tensor, freeze

GATES = ("AND", "OR", "NAND", "NOR", "XOR2", "XNOR", "NOT")

_TRUTH = {
    "AND": lambda a, b: a & b,
    "OR": lambda a, b: a | b,
    "NAND": lambda a, b: 1 - (a & b),
    "NOR": lambda a, b: 1 - (a | b),
    "XOR2": lambda a, b: a ^ b,
    "XNOR": lambda a, b: 1 - (a ^ b),
}


def _check_d(d):
    if int(d) != d or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d}")


def copy_spider(d: int, m_in: int, n_out: int) -> Tensor:
    """Delta tensor: 1 when all ``m_in + n_out`` indices agree."""
    _check_d(d)
    rank = m_in + n_out
    if m_in < 0 or n_out < 0 or rank < 1:
        raise ValueError("a spider needs at least one leg")
    out = np.zeros((d,) * rank, dtype=np.complex128)
    for i in range(d):
        out[(i,) * rank] = 1
    return freeze(out)


def parity_spider(d: int, m_in: int, n_out: int) -> Tensor:
    """1 when the sum of all indices is 0 mod d (all legs counted positively)."""
    _check_d(d)
    rank = m_in + n_out
    if m_in < 0 or n_out < 0 or rank < 1:
        raise ValueError("a spider needs at least one leg")
    total = np.zeros((), dtype=np.int64)
    for _ in range(rank):
        total = np.add.outer(total, np.arange(d))
    return freeze((total % d == 0).astype(np.complex128))


def boolean_gate(gate: str) -> Tensor:
    gate = gate.upper()
    if gate == "XOR":
        gate = "XOR2"
    if gate == "NOT":
        return freeze(np.array([[0, 1], [1, 0]], dtype=np.complex128))
    if gate not in _TRUTH:
        raise ValueError(f"unknown gate {gate!r}; expected one of {GATES}")
    f = _TRUTH[gate]
    out = np.zeros((2, 2, 2), dtype=np.complex128)
    for a, b in itertools.product((0, 1), repeat=2):
        out[a, b, f(a, b)] = 1
    return freeze(out)


def fourier(d: int) -> Tensor:
    _check_d(d)
    a = np.arange(d)
    return freeze(np.exp(2j * np.pi * np.outer(a, a) / d) / np.sqrt(d))


def cup_cap(d: int, which: str = "cup") -> Tensor:
    """``cup = sum |ii>``; the cap is the same array used as an effect."""
    _check_d(d)
    if which not in ("cup", "cap"):
        raise ValueError(f"which must be 'cup' or 'cap', got {which!r}")
    return freeze(np.eye(d, dtype=np.complex128))


def toffoli() -> Tensor:
    out = np.zeros((2,) * 6, dtype=np.complex128)
    for a, b, c in itertools.product((0, 1), repeat=3):
        out[a, b, c, a, b, c ^ (a & b)] = 1
    return freeze(out)


def cnot() -> Tensor:
    out = np.zeros((2,) * 4, dtype=np.complex128)
    for a, b in itertools.product((0, 1), repeat=2):
        out[a, b, a, a ^ b] = 1
    return freeze(out)


def basis_state(d: int, label: int) -> Tensor:
    _check_d(d)
    if not 0 <= label < d:
        raise ValueError(f"label {label} out of range for d={d}")
    out = np.zeros(d, dtype=np.complex128)
    out[label] = 1
    return freeze(out)


def _ghz(d: int, n: int) -> Tensor:
    return copy_spider(d, 0, n)


def _w3(d: int) -> Tensor:
    # every string with exactly one non-zero digit, any value 1..d-1
    _check_d(d)
    out = np.zeros((d,) * 3, dtype=np.complex128)
    for pos in range(3):
        for v in range(1, d):
            idx = [0, 0, 0]
            idx[pos] = v
            out[tuple(idx)] = 1
    return freeze(out)


def _w(n: int) -> Tensor:
    if n < 1:
        raise ValueError("W state needs n >= 1")
    out = np.zeros((2,) * n, dtype=np.complex128)
    for pos in range(n):
        idx = [0] * n
        idx[pos] = 1
        out[tuple(idx)] = 1
    return freeze(out)


def named_state(kind: str, **params) -> Tensor:
    """Look up a named state: ghz(d, n), w3(d), w(n), alpha(alpha), plus(d),
    minus, basis(d, label), toffoli, cnot."""
    try:
        if kind == "ghz":
            return _ghz(params.get("d", 2), params["n"])
        if kind == "w3":
            return _w3(params.get("d", 2))
        if kind == "w":
            return _w(params["n"])
        if kind == "alpha":
            return freeze(np.array([1, params["alpha"]], dtype=np.complex128))
        if kind == "plus":
            d = params.get("d", 2)
            _check_d(d)
            return freeze(np.ones(d, dtype=np.complex128))
        if kind == "minus":
            return freeze(np.array([1, -1], dtype=np.complex128) / np.sqrt(2))
        if kind == "basis":
            return basis_state(params.get("d", 2), params["label"])
        if kind == "toffoli":
            return toffoli()
        if kind == "cnot":
            return cnot()
    except KeyError as exc:
        raise ValueError(f"named state {kind!r} is missing parameter {exc}") from None
    raise ValueError(f"unknown named state {kind!r}")


# -- generator kinds used as network nodes -----------------------------------

@dataclass(frozen=True)
class Generator:
    """Base class for network node kinds.

    ``n_in`` leading ports are inputs, the rest outputs; the split is
    presentation only since wires can be bent freely.
    """
    tag: ClassVar[str] = ""

    def tensor(self) -> Tensor:
        raise NotImplementedError

    @property
    def n_in(self) -> int:
        return 0

    @property
    def rank(self) -> int:
        return self.tensor().ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return self.tensor().shape

    def params(self) -> dict:
        return {}

    def label(self) -> str:
        return self.tag


@dataclass(frozen=True)
class CopySpider(Generator):
    tag: ClassVar[str] = "copy"
    d: int
    m_in: int
    n_out: int

    def __post_init__(self):
        _check_d(self.d)
        if self.m_in < 0 or self.n_out < 0 or self.m_in + self.n_out < 1:
            raise ValueError("a spider needs at least one leg")

    def tensor(self):
        return copy_spider(self.d, self.m_in, self.n_out)

    @property
    def n_in(self):
        return self.m_in

    @property
    def rank(self):
        return self.m_in + self.n_out

    @property
    def dims(self):
        return (self.d,) * self.rank

    def params(self):
        return {"d": self.d, "m_in": self.m_in, "n_out": self.n_out}

    def label(self):
        return f"copy{self.m_in}->{self.n_out}" + ("" if self.d == 2 else f" d={self.d}")


@dataclass(frozen=True)
class ParitySpider(CopySpider):
    tag: ClassVar[str] = "parity"

    def tensor(self):
        return parity_spider(self.d, self.m_in, self.n_out)

    def label(self):
        return f"xor{self.m_in}->{self.n_out}" + ("" if self.d == 2 else f" d={self.d}")


@dataclass(frozen=True)
class BooleanGate(Generator):
    tag: ClassVar[str] = "gate"
    gate: str

    def __post_init__(self):
        g = self.gate.upper()
        if g == "XOR":
            g = "XOR2"
        if g not in GATES:
            raise ValueError(f"unknown gate {self.gate!r}")
        object.__setattr__(self, "gate", g)

    def tensor(self):
        return boolean_gate(self.gate)

    @property
    def n_in(self):
        return 1 if self.gate == "NOT" else 2

    @property
    def rank(self):
        return 2 if self.gate == "NOT" else 3

    @property
    def dims(self):
        return (2,) * self.rank

    def params(self):
        return {"gate": self.gate}

    def label(self):
        return self.gate


@dataclass(frozen=True)
class Fourier(Generator):
    tag: ClassVar[str] = "fourier"
    d: int = 2

    def tensor(self):
        return fourier(self.d)

    @property
    def n_in(self):
        return 1

    def params(self):
        return {"d": self.d}

    def label(self):
        return "H" if self.d == 2 else f"F{self.d}"


@dataclass(frozen=True)
class Cup(Generator):
    tag: ClassVar[str] = "cup"
    d: int = 2

    def tensor(self):
        return cup_cap(self.d, "cup")

    def params(self):
        return {"d": self.d}


@dataclass(frozen=True)
class Cap(Cup):
    tag: ClassVar[str] = "cap"

    @property
    def n_in(self):
        return 2


@dataclass(frozen=True)
class AlphaState(Generator):
    """``|0> + alpha |1>``."""
    tag: ClassVar[str] = "alpha"
    alpha: complex = 0j

    def tensor(self):
        return named_state("alpha", alpha=self.alpha)

    def params(self):
        a = complex(self.alpha)
        return {"alpha": [a.real, a.imag]}

    def label(self):
        a = complex(self.alpha)
        return f"|0>+({a.real:.4g}{a.imag:+.4g}j)|1>"


@dataclass(frozen=True)
class BasisState(Generator):
    tag: ClassVar[str] = "basis"
    d: int = 2
    value: int = 0

    def tensor(self):
        return basis_state(self.d, self.value)

    def params(self):
        return {"d": self.d, "label": self.value}

    def label(self):
        return f"|{self.value}>"


@dataclass(frozen=True)
class PlusState(Generator):
    """Unnormalized ``sum_i |i>``: the unit of the copy spider."""
    tag: ClassVar[str] = "plus"
    d: int = 2

    def tensor(self):
        return named_state("plus", d=self.d)

    def params(self):
        return {"d": self.d}

    def label(self):
        return "|+>"


@dataclass(frozen=True)
class MinusState(Generator):
    tag: ClassVar[str] = "minus"

    def tensor(self):
        return named_state("minus")

    def label(self):
        return "|->"


@dataclass(frozen=True)
class Toffoli(Generator):
    tag: ClassVar[str] = "toffoli"

    def tensor(self):
        return toffoli()

    @property
    def n_in(self):
        return 3


@dataclass(frozen=True)
class Cnot(Generator):
    tag: ClassVar[str] = "cnot"

    def tensor(self):
        return cnot()

    @property
    def n_in(self):
        return 2


@dataclass(frozen=True, eq=False)
class DenseNode(Generator):
    """Arbitrary user tensor wrapped as a node."""
    tag: ClassVar[str] = "dense"
    data: Tensor = field(default_factory=lambda: freeze(np.ones(())))
    name: str = "T"
    inputs: int = 0

    def __post_init__(self):
        object.__setattr__(self, "data", freeze(self.data))

    def tensor(self):
        return self.data

    @property
    def n_in(self):
        return self.inputs

    def params(self):
        return {
            "shape": list(self.data.shape),
            "data": [[float(z.real), float(z.imag)] for z in self.data.ravel()],
            "name": self.name,
            "inputs": self.inputs,
        }

    def label(self):
        return self.name


KINDS: dict[str, type[Generator]] = {
    cls.tag: cls
    for cls in (CopySpider, ParitySpider, BooleanGate, Fourier, Cup, Cap, AlphaState,
                BasisState, PlusState, MinusState, Toffoli, Cnot, DenseNode)
}


def kind_from_params(tag: str, params: dict) -> Generator:
    """Rebuild a kind from its serialized ``(tag, params)`` form."""
    if tag not in KINDS:
        raise ValueError(f"unknown kind tag {tag!r}")
    p = dict(params)
    if tag == "alpha":
        re, im = p["alpha"]
        return AlphaState(complex(re, im))
    if tag == "basis":
        return BasisState(p.get("d", 2), p["label"])
    if tag == "dense":
        flat = np.array([complex(re, im) for re, im in p["data"]], dtype=np.complex128)
        return DenseNode(flat.reshape(p["shape"]), p.get("name", "T"), p.get("inputs", 0))
    return KINDS[tag](**p)


def is_delta(kind: Generator) -> bool:
    """Kinds whose tensor is a generalized Kronecker delta over all legs."""
    return type(kind) in (CopySpider, Cup, Cap, PlusState)
