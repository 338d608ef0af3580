"""Switching functions: truth tables, ANF / Reed-Muller forms and
multilinear polynomials.

Bit order: variable ``x1`` is the most significant bit of a truth-table
index, matching the left-to-right ket convention. Monomials are frozensets
of 0-based variable indices, so ``{0, 2}`` is ``x1 x3``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_VARS = 24

Monomial = frozenset


@dataclass(frozen=True, eq=False)
class TruthTable:
    n: int
    bits: np.ndarray

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise ValueError(f"n must be in [0, {MAX_VARS}], got {self.n}")
        bits = np.asarray(self.bits, dtype=np.uint8).ravel()
        if bits.size != 1 << self.n:
            raise ValueError(f"truth table for n={self.n} needs {1 << self.n} bits, got {bits.size}")
        if np.any(bits > 1):
            raise ValueError("truth table entries must be 0 or 1")
        bits = bits.copy()
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_function(cls, n, f) -> "TruthTable":
        return cls(n, [int(bool(f(*index_to_bits(x, n)))) for x in range(1 << n)])

    @classmethod
    def from_support(cls, n, support: Iterable[int | str]) -> "TruthTable":
        bits = np.zeros(1 << n, dtype=np.uint8)
        for s in support:
            bits[int(s, 2) if isinstance(s, str) else s] = 1
        return cls(n, bits)

    def support(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()

    def __eq__(self, other):
        return isinstance(other, TruthTable) and self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self):
        body = "".join(map(str, self.bits[:64]))
        return f"TruthTable(n={self.n}, bits={body}{'...' if self.bits.size > 64 else ''})"


@dataclass(frozen=True)
class AnfPoly:
    """XOR of AND-monomials; the empty monomial is the constant 1."""
    n: int
    monomials: frozenset

    def __post_init__(self):
        mons = frozenset(frozenset(m) for m in self.monomials)
        for m in mons:
            if any(not 0 <= v < self.n for v in m):
                raise ValueError(f"monomial {sorted(m)} uses a variable outside x1..x{self.n}")
        object.__setattr__(self, "monomials", mons)

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def evaluate(self, x: Sequence[int]) -> int:
        return sum(all(x[v] for v in m) for m in self.monomials) & 1

    def __str__(self):
        return format_anf(self)


@dataclass(frozen=True)
class MultilinearPoly:
    n: int
    coeffs: dict

    def evaluate(self, x: Sequence[int]) -> int:
        return sum(c for m, c in self.coeffs.items() if all(x[v] for v in m))


@dataclass(frozen=True)
class PolarityVector:
    """Per-variable literal polarity: 0 keeps ``x_i``, 1 uses ``not x_i``."""
    sigma: tuple

    def __post_init__(self):
        sig = tuple(int(s) for s in self.sigma)
        if any(s not in (0, 1) for s in sig):
            raise ValueError("polarity bits must be 0 or 1")
        object.__setattr__(self, "sigma", sig)

    @property
    def n(self):
        return len(self.sigma)

    def mask(self) -> int:
        return bits_to_index(self.sigma)


@dataclass(frozen=True)
class Esop:
    """Exclusive sum of cubes. A cube is a tuple of ``(var, negated)`` literals;
    the empty cube is the constant 1. Covers ANF, fixed-polarity forms and
    minterm expansions."""
    n: int
    cubes: tuple

    def evaluate(self, x: Sequence[int]) -> int:
        return sum(all(x[v] ^ neg for v, neg in c) for c in self.cubes) & 1


def index_to_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (n - 1 - i)) & 1 for i in range(n))


def bits_to_index(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def _mask_to_monomial(mask: int, n: int) -> frozenset:
    return frozenset(i for i in range(n) if mask >> (n - 1 - i) & 1)


def _monomial_to_mask(m: Iterable[int], n: int) -> int:
    return sum(1 << (n - 1 - v) for v in m)


def tt_eval(f: TruthTable, x: Sequence[int] | str) -> int:
    bits = [int(c) for c in x]
    if len(bits) != f.n:
        raise ValueError(f"expected {f.n} input bits, got {len(bits)}")
    return int(f.bits[bits_to_index(bits)])


def mobius_gf2(values: np.ndarray, n: int) -> np.ndarray:
    """In-place-style butterfly: a[m] = XOR of values[s] over s subset of m.
    Self-inverse."""
    a = np.array(values, dtype=np.uint8).reshape((2,) * n) if n else np.array(values, dtype=np.uint8)
    for axis in range(n):
        idx_hi = [slice(None)] * n
        idx_lo = [slice(None)] * n
        idx_hi[axis], idx_lo[axis] = 1, 0
        a[tuple(idx_hi)] ^= a[tuple(idx_lo)]
    return a.ravel()


def mobius_int(values: np.ndarray, n: int) -> np.ndarray:
    """Integer Mobius inversion over the subset lattice."""
    a = np.array(values, dtype=np.int64).reshape((2,) * n) if n else np.array(values, dtype=np.int64)
    for axis in range(n):
        idx_hi = [slice(None)] * n
        idx_lo = [slice(None)] * n
        idx_hi[axis], idx_lo[axis] = 1, 0
        a[tuple(idx_hi)] -= a[tuple(idx_lo)]
    return a.ravel()


def anf_coefficients(f: TruthTable) -> np.ndarray:
    """Positive-polarity Reed-Muller coefficient vector, indexed by monomial mask."""
    return mobius_gf2(f.bits, f.n)


def anf_transform(f: TruthTable) -> AnfPoly:
    coeffs = anf_coefficients(f)
    return AnfPoly(f.n, frozenset(_mask_to_monomial(int(m), f.n) for m in np.flatnonzero(coeffs)))


def anf_to_truth_table(p: AnfPoly) -> TruthTable:
    coeffs = np.zeros(1 << p.n, dtype=np.uint8)
    for m in p.monomials:
        coeffs[_monomial_to_mask(m, p.n)] ^= 1
    return TruthTable(p.n, mobius_gf2(coeffs, p.n))


def fixed_polarity_rm(f: TruthTable, sigma: PolarityVector | Sequence[int]) -> np.ndarray:
    """Coefficients ``c[m]`` of the fixed-polarity Reed-Muller form: the XOR
    over masks ``m`` of ``c[m] * prod_{i in m} x_i^sigma_i``."""
    if not isinstance(sigma, PolarityVector):
        sigma = PolarityVector(tuple(sigma))
    if sigma.n != f.n:
        raise ValueError(f"polarity vector has {sigma.n} entries, function has {f.n} variables")
    shifted = f.bits[np.arange(1 << f.n) ^ sigma.mask()]
    return mobius_gf2(shifted, f.n)


def fprm_to_esop(coeffs: np.ndarray, sigma: PolarityVector | Sequence[int]) -> Esop:
    if not isinstance(sigma, PolarityVector):
        sigma = PolarityVector(tuple(sigma))
    n = sigma.n
    cubes = tuple(
        tuple((v, sigma.sigma[v]) for v in sorted(_mask_to_monomial(int(m), n)))
        for m in np.flatnonzero(coeffs)
    )
    return Esop(n, cubes)


def evaluate_fprm(coeffs: np.ndarray, sigma: PolarityVector | Sequence[int], x: Sequence[int]) -> int:
    return fprm_to_esop(coeffs, sigma).evaluate(x)


def anf_to_esop(p: AnfPoly) -> Esop:
    cubes = sorted((tuple(sorted(m)) for m in p.monomials), key=lambda c: (len(c), c))
    return Esop(p.n, tuple(tuple((v, 0) for v in c) for c in cubes))


def minterm_esop(f: TruthTable) -> Esop:
    """One cube per support point; the cubes are disjoint so XOR equals OR."""
    cubes = tuple(
        tuple((v, 1 - b) for v, b in enumerate(index_to_bits(x, f.n)))
        for x in f.support()
    )
    return Esop(f.n, cubes)


def multilinear_transform(f: TruthTable) -> MultilinearPoly:
    coeffs = mobius_int(f.bits, f.n)
    return MultilinearPoly(f.n, {_mask_to_monomial(int(m), f.n): int(coeffs[m])
                                 for m in np.flatnonzero(coeffs)})


# -- text formats -----------------------------------------------------------

_VAR = re.compile(r"^x(\d+)$")


def parse_anf(text: str, n: int | None = None) -> AnfPoly:
    """Parse e.g. ``"x1+x2+x3+x1*x2*x3"`` ('+' is XOR, '1' the constant)."""
    text = text.strip().replace(" ", "").replace("^", "+")
    mons: dict[frozenset, int] = {}
    top = 0
    if text not in ("", "0"):
        for k, term in enumerate(text.split("+")):
            if term == "1":
                mon = frozenset()
            else:
                vs = []
                for factor in term.split("*"):
                    m = _VAR.match(factor)
                    if not m or int(m.group(1)) < 1:
                        raise ValueError(f"term {k + 1}: cannot parse factor {factor!r}")
                    vs.append(int(m.group(1)) - 1)
                mon = frozenset(vs)
                top = max(top, max(vs) + 1)
            mons[mon] = mons.get(mon, 0) ^ 1
    if n is None:
        n = top
    if top > n:
        raise ValueError(f"polynomial uses x{top} but n={n}")
    return AnfPoly(n, frozenset(m for m, c in mons.items() if c))


def format_anf(p: AnfPoly) -> str:
    if not p.monomials:
        return "0"
    terms = sorted(p.monomials, key=lambda m: (len(m), sorted(m)))
    return "+".join("1" if not m else "*".join(f"x{v + 1}" for v in sorted(m)) for m in terms)


def format_truth_table(f: TruthTable) -> str:
    return f"n={f.n}\n" + "".join(map(str, f.bits)) + "\n"


def parse_truth_table(text: str) -> TruthTable:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("line 1: expected header 'n=<k>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ValueError(f"line 1: bad variable count {lines[0][2:]!r}") from None
    body = "".join(lines[1:])
    if set(body) - {"0", "1"}:
        raise ValueError("line 2: truth table must contain only 0 and 1")
    if len(body) != 1 << n:
        raise ValueError(f"line 2: expected {1 << n} bits, got {len(body)}")
    return TruthTable(n, np.frombuffer(body.encode(), dtype=np.uint8) - ord("0"))
