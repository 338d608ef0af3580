"""Dense verifiers for the algebraic laws of the generator toolbox.

Every law is checked on matrices built from tensors with the map
convention (inputs, outputs): a product ``m`` is ``d x d^2``, a coproduct
``d^2 x d``, a unit a column, a counit a row. Nothing is conjugated; bending
a wire in the fixed basis is a plain transpose.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dense import DEFAULT_TOL, Tensor, Tolerance, approx_equal, as_matrix, residual
from .network import Network, contract_network


@dataclass
class LawReport:
    law: str
    holds: bool
    residual: float
    scalar: complex | None = None
    witness: str | None = None
    parts: list["LawReport"] = field(default_factory=list)

    def __bool__(self):
        return self.holds

    def lines(self, indent=0):
        pad = "  " * indent
        tag = "PASS" if self.holds else "FAIL"
        head = f"{pad}{tag} {self.law} residual={self.residual:.3g}"
        if self.scalar is not None and abs(self.scalar - 1) > 1e-12:
            head += f" scalar={self.scalar:.6g}"
        if self.witness and not self.holds:
            head += f" ({self.witness})"
        out = [head]
        for p in self.parts:
            out += p.lines(indent + 1)
        return out


@dataclass
class Unit:
    u: np.ndarray


@dataclass
class WeakUnit:
    u: np.ndarray
    involutive: bool
    B: np.ndarray | None = None


# -- matrix views ------------------------------------------------------------

def _d(t):
    return np.asarray(t).shape[0]


def product_matrix(m: Tensor) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 3 or len(set(m.shape)) != 1:
        raise ValueError(f"a product must be a rank-3 tensor with equal legs, got shape {m.shape}")
    return as_matrix(m, 2)


def coproduct_matrix(c: Tensor) -> np.ndarray:
    c = np.asarray(c)
    if c.ndim != 3 or len(set(c.shape)) != 1:
        raise ValueError(f"a coproduct must be a rank-3 tensor with equal legs, got shape {c.shape}")
    return as_matrix(c, 1)


def _vec(v, what):
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError(f"{what} must be a vector, got shape {v.shape}")
    return v


def swap_matrix(d: int) -> np.ndarray:
    return np.eye(d * d).reshape(d, d, d, d).transpose(1, 0, 2, 3).reshape(d * d, d * d)


def _check(name, lhs, rhs, tol: Tolerance, up_to_scalar: bool) -> LawReport:
    lhs, rhs = np.asarray(lhs, dtype=np.complex128), np.asarray(rhs, dtype=np.complex128)
    if lhs.shape != rhs.shape:
        raise ValueError(f"{name}: sides have shapes {lhs.shape} and {rhs.shape}")
    ok, lam = approx_equal(lhs, rhs, tol, up_to_global_scalar=up_to_scalar)
    res, fit = residual(lhs, rhs, up_to_global_scalar=up_to_scalar)
    witness = None
    if not ok:
        diff = np.abs(lhs - (fit if up_to_scalar else 1) * rhs)
        idx = np.unravel_index(int(np.argmax(diff)), diff.shape)
        witness = f"largest mismatch at matrix entry {tuple(int(i) for i in idx)}"
    return LawReport(name, bool(ok), float(res), lam if up_to_scalar else None, witness)


def _group(name, parts):
    return LawReport(name, all(p.holds for p in parts), max((p.residual for p in parts), default=0.0),
                     parts=parts)


# -- single laws ---------------------------------------------------------------

def verify_associative(m: Tensor, tol: Tolerance = DEFAULT_TOL, up_to_scalar=False) -> LawReport:
    M = product_matrix(m)
    eye = np.eye(_d(m))
    return _check("associativity", M @ np.kron(M, eye), M @ np.kron(eye, M), tol, up_to_scalar)


def verify_coassociative(c: Tensor, tol: Tolerance = DEFAULT_TOL, up_to_scalar=False) -> LawReport:
    C = coproduct_matrix(c)
    eye = np.eye(_d(c))
    return _check("coassociativity", np.kron(C, eye) @ C, np.kron(eye, C) @ C, tol, up_to_scalar)


def verify_commutative(m: Tensor, tol: Tolerance = DEFAULT_TOL) -> LawReport:
    M = product_matrix(m)
    return _check("commutativity", M @ swap_matrix(_d(m)), M, tol, False)


def verify_distributive(mul: Tensor, add: Tensor, copy: Tensor,
                        tol: Tolerance = DEFAULT_TOL) -> LawReport:
    """``mul(add(x1, x2), x3) = add(mul(x1, x3), mul(x2, x3))``, with ``x3``
    fanned out by the coproduct ``copy``."""
    A, X, C = product_matrix(mul), product_matrix(add), coproduct_matrix(copy)
    d = _d(mul)
    eye = np.eye(d)
    lhs = A @ np.kron(X, eye)
    rhs = X @ np.kron(A, A) @ np.kron(np.kron(eye, swap_matrix(d)), eye) @ np.kron(np.eye(d * d), C)
    return _check("distributivity", lhs, rhs, tol, False)


def _unit_laws(M, u, tol, up):
    eye = np.eye(len(u))
    col = u.reshape(-1, 1)
    return [
        _check("left unit", M @ np.kron(col, eye), eye, tol, up),
        _check("right unit", M @ np.kron(eye, col), eye, tol, up),
    ]


def _counit_laws(C, e, tol, up):
    eye = np.eye(len(e))
    row = e.reshape(1, -1)
    return [
        _check("left counit", np.kron(row, eye) @ C, eye, tol, up),
        _check("right counit", np.kron(eye, row) @ C, eye, tol, up),
    ]


def verify_frobenius(product: Tensor, coproduct: Tensor, tol: Tolerance = DEFAULT_TOL,
                     up_to_scalar=False) -> LawReport:
    """(m x 1)(1 x D) = D m = (1 x m)(D x 1)."""
    M, C = product_matrix(product), coproduct_matrix(coproduct)
    if _d(product) != _d(coproduct):
        raise ValueError("product and coproduct have different dimensions")
    eye = np.eye(_d(product))
    mid = C @ M
    return _group("frobenius", [
        _check("left frobenius", np.kron(M, eye) @ np.kron(eye, C), mid, tol, up_to_scalar),
        _check("right frobenius", np.kron(eye, M) @ np.kron(C, eye), mid, tol, up_to_scalar),
    ])


def bialgebra_law(product: Tensor, coproduct: Tensor, tol: Tolerance = DEFAULT_TOL,
                  up_to_scalar=False) -> LawReport:
    """D m = (m x m)(1 x swap x 1)(D x D)."""
    M, C = product_matrix(product), coproduct_matrix(coproduct)
    d = _d(product)
    eye = np.eye(d)
    rhs = np.kron(M, M) @ np.kron(np.kron(eye, swap_matrix(d)), eye) @ np.kron(C, C)
    return _check("bialgebra law", C @ M, rhs, tol, up_to_scalar)


def verify_bialgebra(product: Tensor, unit: Tensor, coproduct: Tensor, counit: Tensor,
                     tol: Tolerance = DEFAULT_TOL, up_to_scalar=False) -> LawReport:
    """All bialgebra axioms, grouped as (a) unit/counit laws, (b)
    (co)associativity, (c) the bialgebra law, (d, e) copy points and (f)
    nonzero unit-counit pairing."""
    M, C = product_matrix(product), coproduct_matrix(coproduct)
    u, e = _vec(unit, "unit"), _vec(counit, "counit")
    d = _d(product)
    if {_d(coproduct), len(u), len(e)} != {d}:
        raise ValueError("product, unit, coproduct and counit must share one dimension")
    up = up_to_scalar
    a = _group("(a) unit laws", _unit_laws(M, u, tol, up) + _counit_laws(C, e, tol, up))
    b = _group("(b) associativity", [verify_associative(product, tol, up),
                                      verify_coassociative(coproduct, tol, up)])
    c = bialgebra_law(product, coproduct, tol, up)
    c.law = "(c) bialgebra law"
    de = _group("(d,e) copy points", [
        _check("counit through product", e.reshape(1, -1) @ M, np.kron(e, e).reshape(1, -1), tol, up),
        _check("coproduct on unit", C @ u, np.kron(u, u), tol, up),
    ])
    pairing = complex(e @ u)
    nonzero = abs(pairing) > tol.abs_eps
    f = LawReport("(f) unit-counit pairing", nonzero, 0.0 if nonzero else 1.0, pairing,
                  None if nonzero else "counit annihilates unit")
    return _group("bialgebra", [a, b, c, de, f])


def verify_hopf(product: Tensor, unit: Tensor, coproduct: Tensor, counit: Tensor,
                antipode: Tensor, tol: Tolerance = DEFAULT_TOL, up_to_scalar=False) -> LawReport:
    """m (A x 1) D = u e = m (1 x A) D."""
    M, C = product_matrix(product), coproduct_matrix(coproduct)
    u, e = _vec(unit, "unit"), _vec(counit, "counit")
    A = np.asarray(antipode, dtype=np.complex128)
    d = _d(product)
    if A.shape != (d, d):
        raise ValueError(f"antipode must be a {d}x{d} map, got shape {A.shape}")
    eye = np.eye(d)
    target = np.outer(u, e)
    return _group("hopf", [
        _check("left hopf", M @ np.kron(A, eye) @ C, target, tol, up_to_scalar),
        _check("right hopf", M @ np.kron(eye, A) @ C, target, tol, up_to_scalar),
    ])


def _zero_laws(name, m, z, tol):
    M = product_matrix(m)
    z = _vec(z, "zero")
    d = len(z)
    eye = np.eye(d)
    col = z.reshape(-1, 1)
    target = np.outer(z, np.ones(d))
    return _group(name, [
        _check("left zero", M @ np.kron(col, eye), target, tol, False),
        _check("right zero", M @ np.kron(eye, col), target, tol, False),
    ])


def verify_fixed_point_pair(p1: Tensor, u1: Tensor, p2: Tensor, u2: Tensor,
                            tol: Tolerance = DEFAULT_TOL) -> LawReport:
    """Each unit is a unit of its own product and a zero of the other's:
    ``p1(u2 x 1) = u2 <+|`` and ``p2(u1 x 1) = u1 <+|`` on both sides."""
    parts = [
        _group("p1 unit", _unit_laws(product_matrix(p1), _vec(u1, "u1"), tol, False)),
        _group("p2 unit", _unit_laws(product_matrix(p2), _vec(u2, "u2"), tol, False)),
        _zero_laws("u2 is a zero of p1", p1, u2, tol),
        _zero_laws("u1 is a zero of p2", p2, u1, tol),
    ]
    return _group("fixed-point pair", parts)


# -- algebras on states ----------------------------------------------------------

def algebra_from_state(state: Tensor) -> Tensor:
    """Product map from a tripartite state: legs 1 and 2 are bent into inputs
    with caps, so ``m(|a>|b>) = sum psi[x, y, z] a_x b_y |z>``."""
    psi = np.asarray(state, dtype=np.complex128)
    if psi.ndim != 3 or len(set(psi.shape)) != 1:
        raise ValueError(f"expected a rank-3 state with equal legs, got shape {psi.shape}")
    d = psi.shape[0]
    # cap on each bent leg: sum_i <i| x <i|, i.e. the identity in the fixed basis
    cap = np.eye(d)
    out = np.einsum("xyz,xa,yb->abz", psi, cap, cap)
    out.flags.writeable = False
    return out


def _left_multipliers(M, d):
    # B_i = m (e_i x 1)
    return [M[:, i * d:(i + 1) * d] for i in range(d)]


def find_unit(product: Tensor, tol: Tolerance = DEFAULT_TOL, samples: int = 16, seed: int = 0):
    """A unit ``u`` with ``m(u x 1) = 1`` if one exists; otherwise a weak unit
    making ``B = m(u x 1)`` invertible (flagged involutive when ``B^2 = 1``);
    otherwise None."""
    M = product_matrix(product)
    d = _d(product)
    Bs = _left_multipliers(M, d)
    A = np.stack([B.ravel() for B in Bs], axis=1)
    target = np.eye(d).ravel()
    u, *_ = np.linalg.lstsq(A, target, rcond=None)
    if np.linalg.norm(A @ u - target) <= tol.abs_eps + tol.rel_eps * np.sqrt(d):
        u = np.where(np.abs(u) < tol.abs_eps, 0, u)
        return Unit(np.asarray(u, dtype=np.complex128))

    rng = np.random.default_rng(seed)
    candidates = [np.eye(d)[i] for i in range(d)]
    candidates += [rng.normal(size=d) + 1j * rng.normal(size=d) for _ in range(samples)]
    first = None
    for c in candidates:
        B = sum(ci * Bi for ci, Bi in zip(c, Bs))
        if abs(np.linalg.det(B)) <= 1e-9:
            continue
        invol = bool(np.allclose(B @ B, np.eye(d), atol=tol.abs_eps))
        found = WeakUnit(np.asarray(c, dtype=np.complex128), invol, B)
        if invol:
            return found
        if first is None:
            first = found
    return first


def _leg_transform(t: np.ndarray, U: np.ndarray) -> np.ndarray:
    for leg in range(t.ndim):
        t = np.moveaxis(np.tensordot(U, t, axes=(1, leg)), 0, leg)
    return t


def basis_duality_check(a: Network | Tensor, b: Network | Tensor, basis_change: Tensor,
                        tol: Tolerance = DEFAULT_TOL) -> LawReport:
    """``a`` equals ``basis_change`` applied to every leg of ``b``, up to a
    global scalar."""
    ta = contract_network(a) if isinstance(a, Network) else np.asarray(a)
    tb = contract_network(b) if isinstance(b, Network) else np.asarray(b)
    if ta.shape != tb.shape:
        raise ValueError(f"leg signatures differ: {ta.shape} vs {tb.shape}")
    U = np.asarray(basis_change, dtype=np.complex128)
    return _check("basis duality", ta, _leg_transform(tb, U), tol, True)
