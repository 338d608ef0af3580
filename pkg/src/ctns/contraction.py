"""Pairwise contraction of labeled dense tensors.

A label may appear in more than two operands (hyperedges produced by
absorbing copy spiders); it is summed only once no operand other than the
pair, and no output slot, still refers to it.
"""
from __future__ import annotations

import heapq
import math
import string

import numpy as np

_LETTERS = string.ascii_letters


def _einsum(specs, out, arrays):
    letters = {}
    for lab in [x for s in specs for x in s] + list(out):
        if lab not in letters:
            if len(letters) >= len(_LETTERS):
                raise ValueError("too many distinct indices in one pairwise contraction")
            letters[lab] = _LETTERS[len(letters)]
    expr = ",".join("".join(letters[x] for x in s) for s in specs)
    expr += "->" + "".join(letters[x] for x in out)
    return np.einsum(expr, *arrays)


class _State:
    def __init__(self, operands, out_set, dims):
        self.ops: dict[int, tuple[np.ndarray | None, list[int]]] = {}
        self.where: dict[int, set[int]] = {}
        self.out_set = out_set
        self.dims = dims
        self.next_id = 0
        self.peak = 0  # largest intermediate produced so far
        for arr, labs in operands:
            self._add(np.asarray(arr, dtype=np.complex128), list(labs))
        # simplify each operand: diagonals and labels private to it
        for oid in list(self.ops):
            arr, labs = self.ops[oid]
            keep = []
            for lab in labs:
                if lab in keep:
                    continue
                if lab in out_set or len(self.where[lab]) > 1:
                    keep.append(lab)
            if keep != labs:
                self.ops[oid] = (_einsum([labs], keep, [arr]), keep)
                for lab in set(labs) - set(keep):
                    self.where[lab].discard(oid)

    def skeleton(self) -> "_State":
        """A label-only copy for planning; merges there build no arrays."""
        sk = object.__new__(_State)
        sk.ops = {oid: (None, labs) for oid, (_, labs) in self.ops.items()}
        sk.where = {lab: set(ids) for lab, ids in self.where.items()}
        sk.out_set, sk.dims, sk.next_id, sk.peak = self.out_set, self.dims, self.next_id, 0
        return sk

    def _add(self, arr, labs):
        oid = self.next_id
        self.next_id += 1
        self.ops[oid] = (arr, labs)
        for lab in labs:
            self.where.setdefault(lab, set()).add(oid)
        return oid

    def kept(self, i, j):
        li, lj = self.ops[i][1], self.ops[j][1]
        keep = []
        for lab in li + [x for x in lj if x not in li]:
            if lab in self.out_set or len(self.where[lab] - {i, j}) > 0:
                keep.append(lab)
        return keep

    def size(self, labs):
        return math.prod(self.dims[x] for x in labs)

    def merge(self, i, j):
        (ai, li), (aj, lj) = self.ops.pop(i), self.ops.pop(j)
        for lab in li:
            self.where[lab].discard(i)
        for lab in lj:
            self.where[lab].discard(j)
        keep = [lab for lab in li + [x for x in lj if x not in li]
                if lab in self.out_set or self.where[lab]]
        self.peak = max(self.peak, self.size(keep))
        arr = None if ai is None else _einsum([li, lj], keep, [ai, aj])
        return self._add(arr, keep)

    def neighbours(self, i):
        out = set()
        for lab in self.ops[i][1]:
            out |= self.where[lab]
        out.discard(i)
        return out


def _greedy_plan(state: _State) -> list[tuple[int, int]]:
    """Pair merges chosen by the size change they cause; performs them on
    ``state`` (use a skeleton to plan without arithmetic)."""
    heap = []
    plan = []

    def score(i, j):
        # prefer merges that shrink the total stored size
        return (state.size(state.kept(i, j)) - state.size(state.ops[i][1])
                - state.size(state.ops[j][1]))

    def push(i, j):
        if i > j:
            i, j = j, i
        heapq.heappush(heap, (score(i, j), i, j))

    for i in list(state.ops):
        for j in state.neighbours(i):
            if i < j:
                push(i, j)
    while len(state.ops) > 1:
        while heap:
            cost, i, j = heapq.heappop(heap)
            if i not in state.ops or j not in state.ops:
                continue
            if score(i, j) != cost:
                push(i, j)  # stale entry: a neighbour changed
                continue
            break
        else:
            break  # only disconnected components remain
        plan.append((i, j))
        new = state.merge(i, j)
        for k in state.neighbours(new):
            push(new, k)
    return plan


def _elimination_plan(state: _State, growth: bool = False) -> list[tuple[int, int]]:
    """Bucket elimination: repeatedly pick the summed label whose bucket (all
    operands carrying it) multiplies out to the smallest tensor, and merge
    that bucket (``growth``: the smallest increase in stored size instead).
    Copy-spider hyperedges are single labels here, so this
    copes far better than pairwise greedy with high fan-out."""
    plan = []

    def bucket_cost(lab):
        bucket = state.where[lab]
        labs = set()
        for oid in bucket:
            labs.update(state.ops[oid][1])
        kept = state.size([x for x in labs if x in state.out_set or state.where[x] - bucket])
        if growth:
            kept -= sum(state.size(state.ops[o][1]) for o in bucket)
        return kept, len(bucket)

    heap = [(*bucket_cost(lab), lab) for lab, ids in state.where.items()
            if ids and lab not in state.out_set]
    heapq.heapify(heap)
    while heap:
        size, deg, lab = heapq.heappop(heap)
        if not state.where[lab]:
            continue
        now = bucket_cost(lab)
        if now != (size, deg):
            heapq.heappush(heap, (*now, lab))
            continue
        ids = sorted(state.where[lab], key=lambda o: (state.size(state.ops[o][1]), o))
        acc = ids[0]
        for other in ids[1:]:
            plan.append((acc, other))
            acc = state.merge(acc, other)
        touched = {x for x in state.ops[acc][1] if x not in state.out_set}
        for x in touched:
            heapq.heappush(heap, (*bucket_cost(x), x))
    plan += _greedy_plan(state)  # leftovers share only output labels
    return plan


def _greedy(state: _State):
    """Plan with bucket elimination (two scores) and with pairwise greedy;
    run the plan whose largest intermediate is smallest."""
    best = None
    for planner in (_elimination_plan, lambda st: _elimination_plan(st, growth=True), _greedy_plan):
        sk = state.skeleton()
        plan = planner(sk)
        if best is None or sk.peak < best[0]:
            best = (sk.peak, plan)
    for i, j in best[1]:
        state.merge(i, j)


def _random(state: _State, seed):
    rng = np.random.default_rng(seed)
    while len(state.ops) > 1:
        pairs = sorted({(min(i, j), max(i, j)) for i in state.ops for j in state.neighbours(i)})
        if not pairs:
            return
        i, j = pairs[rng.integers(len(pairs))]
        state.merge(i, j)


def _optimal(state: _State):
    ids = sorted(state.ops)
    m = len(ids)
    if m <= 1:
        return
    labsets = [set(state.ops[i][1]) for i in ids]
    full = (1 << m) - 1

    def kept_size(mask):
        inside = set()
        outside = set()
        for k in range(m):
            (inside if mask >> k & 1 else outside).update(labsets[k])
        return math.prod(state.dims[x] for x in inside
                         if x in state.out_set or x in outside)

    best = {1 << k: (0, None) for k in range(m)}
    for mask in range(1, full + 1):
        if mask in best:
            continue
        low = mask & -mask
        size = kept_size(mask)
        choice = None
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                rest = mask ^ sub
                c = best[sub][0] + best[rest][0] + size
                if choice is None or c < choice[0]:
                    choice = (c, (sub, rest))
            sub = (sub - 1) & mask
        best[mask] = choice

    def run(mask):
        if mask & (mask - 1) == 0:
            return ids[mask.bit_length() - 1]
        a, b = best[mask][1]
        return state.merge(run(a), run(b))

    run(full)


def contract_labeled(operands, out_labels, label_dims, method="auto", seed=None):
    """Contract ``[(array, labels), ...]`` down to a tensor over ``out_labels``.

    ``out_labels`` may repeat a label (several open legs on one delta); the
    result is embedded on the corresponding diagonal. Labels present in
    ``label_dims`` but in no operand and no output contribute their dimension
    as a scalar factor.
    """
    out_set = set(out_labels)
    carried = {lab for _, labs in operands for lab in labs}
    state = _State(operands, out_set, label_dims)
    if method == "auto":
        method = "optimal" if len(state.ops) <= 8 else "greedy"
    if method == "greedy":
        _greedy(state)
    elif method == "optimal":
        _optimal(state)
    elif method == "random":
        _random(state, seed)
    else:
        raise ValueError(f"unknown contraction method {method!r}")

    # remaining pieces are disconnected: outer product in id order
    result = np.ones((), dtype=np.complex128)
    labs: list[int] = []
    for oid in sorted(state.ops):
        arr, l2 = state.ops[oid]
        result = np.multiply.outer(result, arr)
        labs += l2

    used = set(labs)
    for lab, d in label_dims.items():
        if lab not in carried and lab not in out_set:
            result = result * d
    uniq = list(dict.fromkeys(out_labels))
    for lab in uniq:
        if lab not in used:
            result = np.multiply.outer(result, np.ones(label_dims[lab]))
            labs.append(lab)
    result = _einsum([labs], uniq, [result]) if labs else result

    if len(uniq) == len(out_labels):
        return result
    shape = tuple(label_dims[x] for x in out_labels)
    out = np.zeros(shape, dtype=np.complex128)
    grid = np.indices(result.shape)
    pos = {lab: k for k, lab in enumerate(uniq)}
    out[tuple(grid[pos[x]] for x in out_labels)] = result
    return out

