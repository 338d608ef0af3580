"""Exact dense complex tensors.

Tensors are plain read-only ``complex128`` numpy arrays. Leg 0 is the
slowest-varying axis, so for qubit legs the first leg is the most
significant bit of the flat index (``|x1 x2 ... xn>`` reads left to right).
"""
from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Sequence

import numpy as np

Tensor = np.ndarray


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self):
        for v in (self.abs_eps, self.rel_eps):
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"tolerances must be finite and non-negative, got {v}")


DEFAULT_TOL = Tolerance()


def freeze(arr) -> Tensor:
    """Return a read-only complex128 copy of ``arr``."""
    out = np.array(arr, dtype=np.complex128, copy=True)
    out.flags.writeable = False
    return out


def make_tensor(shape: Sequence[int], data: Sequence[complex]) -> Tensor:
    shape = tuple(int(s) for s in shape)
    if any(s < 1 for s in shape):
        raise ValueError(f"leg dimensions must be >= 1, got {shape}")
    flat = np.asarray(data, dtype=np.complex128).ravel()
    expected = int(np.prod(shape, dtype=np.int64))
    if flat.size != expected:
        raise ValueError(f"shape {shape} needs {expected} entries, got {flat.size}")
    return freeze(flat.reshape(shape))


def ket(bits: str | Sequence[int], d: int = 2) -> Tensor:
    """Computational basis state, e.g. ``ket("011")``."""
    digits = [int(c) for c in bits]
    out = np.zeros((d,) * len(digits), dtype=np.complex128)
    out[tuple(digits)] = 1
    return freeze(out)


def kets(*labels: str, d: int = 2) -> Tensor:
    """Unnormalized sum of basis states, e.g. ``kets("000", "111")``."""
    n = len(labels[0])
    out = np.zeros((d,) * n, dtype=np.complex128)
    for lab in labels:
        if len(lab) != n:
            raise ValueError("all labels must have the same length")
        out[tuple(int(c) for c in lab)] += 1
    return freeze(out)


def _check_pairs(pairs, rank_a, rank_b=None):
    seen_a, seen_b = set(), set()
    for i, j in pairs:
        if rank_b is None:
            used, other = (seen_a, seen_a)
            limit_i = limit_j = rank_a
        else:
            used, other = (seen_a, seen_b)
            limit_i, limit_j = rank_a, rank_b
        if not (0 <= i < limit_i and 0 <= j < limit_j):
            raise ValueError(f"leg pair ({i}, {j}) out of range")
        if i in used or j in other or (rank_b is None and i == j):
            raise ValueError(f"leg repeated in pairs {list(pairs)}")
        used.add(i)
        other.add(j)


def contract(a: Tensor, b: Tensor, pairs: Sequence[tuple[int, int]]) -> Tensor:
    """Sum over paired legs. Remaining legs: a's unpaired, then b's unpaired."""
    a, b = np.asarray(a), np.asarray(b)
    pairs = [tuple(p) for p in pairs]
    _check_pairs(pairs, a.ndim, b.ndim)
    for i, j in pairs:
        if a.shape[i] != b.shape[j]:
            raise ValueError(f"dimension mismatch on legs ({i}, {j}): {a.shape[i]} != {b.shape[j]}")
    axes = ([i for i, _ in pairs], [j for _, j in pairs])
    return freeze(np.tensordot(a, b, axes=axes))


def self_contract(a: Tensor, pairs: Sequence[tuple[int, int]]) -> Tensor:
    """Partial trace over each pair of legs of one tensor."""
    a = np.asarray(a)
    pairs = [tuple(p) for p in pairs]
    _check_pairs(pairs, a.ndim)
    letters = list(string.ascii_letters[: a.ndim])
    for i, j in pairs:
        if a.shape[i] != a.shape[j]:
            raise ValueError(f"dimension mismatch on legs ({i}, {j})")
        letters[j] = letters[i]
    traced = {k for p in pairs for k in p}
    out = "".join(letters[k] for k in range(a.ndim) if k not in traced)
    return freeze(np.einsum("".join(letters) + "->" + out, a))


def reorder(a: Tensor, perm: Sequence[int]) -> Tensor:
    """Permute legs: leg ``k`` of the result is leg ``perm[k]`` of ``a``."""
    a = np.asarray(a)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(a.ndim)):
        raise ValueError(f"{perm} is not a permutation of {a.ndim} legs")
    return freeze(np.transpose(a, perm))


def outer(*tensors: Tensor) -> Tensor:
    out = np.ones((), dtype=np.complex128)
    for t in tensors:
        out = np.multiply.outer(out, np.asarray(t))
    return freeze(out)


def approx_equal(a: Tensor, b: Tensor, tol: Tolerance | float = DEFAULT_TOL,
                 up_to_global_scalar: bool = False) -> tuple[bool, complex | None]:
    """Compare two tensors of equal shape.

    With ``up_to_global_scalar`` the least-squares scalar ``lam`` minimizing
    ``||a - lam b||`` is fitted and returned. A zero scalar only passes when
    both tensors vanish. A plain float ``tol`` sets both epsilons.
    """
    if not isinstance(tol, Tolerance):
        tol = Tolerance(float(tol), float(tol))
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if not up_to_global_scalar:
        ok = np.linalg.norm(a - b) <= tol.abs_eps + tol.rel_eps * max(na, nb)
        return bool(ok), (1.0 + 0j if ok else None)
    if nb == 0:
        ok = na <= tol.abs_eps
        return bool(ok), (1.0 + 0j if ok else None)
    lam = complex(np.vdot(b, a) / np.vdot(b, b))
    resid = np.linalg.norm(a - lam * b)
    ok = resid <= tol.abs_eps + tol.rel_eps * na and abs(lam) * nb > tol.abs_eps
    return bool(ok), (lam if ok else None)


def residual(a: Tensor, b: Tensor, up_to_global_scalar: bool = False) -> tuple[float, complex]:
    """Residual norm ``||a - lam b||`` with ``lam`` fitted or fixed to 1."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    lam = 1.0 + 0j
    if up_to_global_scalar:
        bb = np.vdot(b, b)
        lam = complex(np.vdot(b, a) / bb) if bb != 0 else 0j
    return float(np.linalg.norm(a - lam * b)), lam


def as_matrix(t: Tensor, n_in: int) -> np.ndarray:
    """View a tensor with legs (inputs..., outputs...) as an (out, in) matrix."""
    t = np.asarray(t)
    din = int(np.prod(t.shape[:n_in], dtype=np.int64))
    dout = int(np.prod(t.shape[n_in:], dtype=np.int64))
    return t.reshape(din, dout).T


def from_matrix(m: np.ndarray, in_dims: Sequence[int], out_dims: Sequence[int]) -> Tensor:
    """Inverse of :func:`as_matrix`."""
    m = np.asarray(m)
    return freeze(m.T.reshape(tuple(in_dims) + tuple(out_dims)))
