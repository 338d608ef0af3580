"""Amplitudes, probabilities and samples of a decomposition.

Amplitudes come straight from the circuits: on a basis input the copy
spiders hand the same bits to every circuit, so the network splits into
independent evaluations and the amplitude is the product of the
post-selection factors. No 2^n work is done per amplitude.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .decompose import CtnsDecomposition

MAX_ENUMERATE = 20


def _bits(x, n):
    if isinstance(x, str):
        if set(x) - {"0", "1"}:
            raise ValueError(f"bit string {x!r} contains characters other than 0 and 1")
        x = [int(c) for c in x]
    x = [int(b) for b in x]
    if len(x) != n:
        raise ValueError(f"expected {n} bits, got {len(x)}")
    return x


def amplitude(dec: CtnsDecomposition, x: str | Sequence[int], counter: list | None = None) -> complex:
    """``[f0(x)] * prod_j alpha_j^{f_j(x)}``; ``counter[0]`` accumulates the
    number of gates evaluated."""
    bits = _bits(x, dec.n)
    if not dec.f0_circuit.evaluate(bits, counter):
        return 0j
    amp = 1 + 0j
    for cls, circ in zip(dec.classes, dec.circuits):
        if circ.evaluate(bits, counter):
            amp *= cls.alpha
    return amp


def _check_size(n):
    if n > MAX_ENUMERATE:
        raise ValueError(f"enumeration is limited to n <= {MAX_ENUMERATE}, got n={n}")


def amplitudes_all(dec: CtnsDecomposition) -> np.ndarray:
    """All ``2^n`` amplitudes by vectorized circuit evaluation (n <= 20)."""
    _check_size(dec.n)
    amps = dec.f0_circuit.evaluate_all().astype(np.complex128)
    for cls, circ in zip(dec.classes, dec.circuits):
        amps *= np.where(circ.evaluate_all() == 1, cls.alpha, 1)
    return amps


def probability(dec: CtnsDecomposition, x, normalizer: float | None = None) -> float:
    if normalizer is None:
        _check_size(dec.n)
        normalizer = float(np.sum(np.abs(amplitudes_all(dec)) ** 2))
    return abs(amplitude(dec, x)) ** 2 / normalizer


def distribution(dec: CtnsDecomposition) -> np.ndarray:
    p = np.abs(amplitudes_all(dec)) ** 2
    return p / p.sum()


def sample(dec: CtnsDecomposition, seed: int, count: int) -> list[str]:
    """``count`` basis strings drawn from the exact distribution."""
    p = distribution(dec)
    rng = np.random.default_rng(seed)
    draws = rng.choice(p.size, size=count, p=p)
    return [format(int(v), f"0{dec.n}b") for v in draws]


@dataclass
class GpbsReport:
    k: int
    max_depth: int
    total_size: int
    bounds_ok: bool | None = None


def gpbs_report(dec: CtnsDecomposition, size_bound: Callable[[int], float] | None = None,
                depth_bound: Callable[[int], float] | None = None) -> GpbsReport:
    """Circuit count ``k`` (excluding ``f0``), deepest circuit and total gate
    count (including ``f0``). ``bounds_ok`` compares ``k`` with
    ``size_bound(n)`` and the depth with ``depth_bound(n)``."""
    circuits = [dec.f0_circuit, *dec.circuits]
    depth = max(c.depth for c in circuits)
    size = sum(c.size for c in circuits)
    ok = None
    if size_bound is not None or depth_bound is not None:
        ok = True
        if size_bound is not None:
            ok &= dec.k <= size_bound(dec.n)
        if depth_bound is not None:
            ok &= depth <= depth_bound(dec.n)
    return GpbsReport(dec.k, depth, size, ok)
