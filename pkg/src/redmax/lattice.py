"""Precomputed tables over the k-subsets of [n] used by the path search kernels.

Subsets are bitmasks (bit ``i-1`` for element ``i``) indexed in colex order.
Rows of pairwise relations are stored twice: as Python ints for the pure
Python kernel and as packed ``uint64`` word arrays for the compiled one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np


def mask_of(s) -> int:
    m = 0
    for x in s:
        m |= 1 << (x - 1)
    return m


def elems_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def ws_masks(a: int, b: int) -> bool:
    x, y = a & ~b, b & ~a
    if not x:
        return True
    # max(x) < min(y) or max(y) < min(x)
    return x.bit_length() < (y & -y).bit_length() or y.bit_length() < (x & -x).bit_length()


def series_sum(k: int) -> Fraction:
    """1 + 1/2 + 1/2 + 1/3 + 1/3 + 1/3 + ... (k terms)."""
    total = Fraction(0)
    t, used = 1, 0
    for _ in range(k):
        total += Fraction(1, t)
        used += 1
        if used == t:
            t, used = t + 1, 0
    return total


@dataclass
class SubsetLattice:
    k: int
    n: int
    masks: list[int]
    index: dict[int, int]
    succ: list[list[int]]          # one-step monotone successors, ordered by y - x
    compat: list[int]              # compat[i] bit j: sets i, j weakly separated and i != j
    above: list[int]               # above[i] bit j: j strictly dominates i elementwise
    rem_bound: list[int]           # admissible bound on steps left from i to the top set
    start: int
    target: int
    _packed: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.masks)

    def packed(self):
        """(compat, above) as (C, W) uint64 arrays plus CSR successor arrays."""
        if not self._packed:
            C = self.size
            W = (C + 63) // 64
            compat = np.zeros((C, W), dtype=np.uint64)
            above = np.zeros((C, W), dtype=np.uint64)
            for i in range(C):
                compat[i] = _pack(self.compat[i], W)
                above[i] = _pack(self.above[i], W)
            ptr = np.zeros(C + 1, dtype=np.int32)
            for i, s in enumerate(self.succ):
                ptr[i + 1] = ptr[i] + len(s)
            idx = np.fromiter((j for s in self.succ for j in s), dtype=np.int32, count=int(ptr[-1]))
            self._packed = dict(
                compat=compat, above=above, succ_ptr=ptr, succ_idx=idx,
                rem_bound=np.asarray(self.rem_bound, dtype=np.int32),
            )
        return self._packed

    def pack_row(self, row: int) -> np.ndarray:
        return _pack(row, (self.size + 63) // 64)


def _pack(row: int, W: int) -> np.ndarray:
    out = np.zeros(W, dtype=np.uint64)
    mask = (1 << 64) - 1
    for w in range(W):
        out[w] = (row >> (64 * w)) & mask
    return out


def _dominates(b: tuple[int, ...], a: tuple[int, ...]) -> bool:
    return all(y >= x for x, y in zip(a, b))


@lru_cache(maxsize=64)
def build_lattice(k: int, n: int, series_pruning: bool = True) -> SubsetLattice:
    subsets = list(combinations(range(1, n + 1), k))
    masks = [mask_of(s) for s in subsets]
    index = {m: i for i, m in enumerate(masks)}
    C = len(masks)
    succ = []
    for s, m in zip(subsets, masks):
        out = []
        for x in s:
            for y in range(x + 1, n + 1):
                if not m >> (y - 1) & 1:
                    out.append((y - x, index[m & ~(1 << (x - 1)) | (1 << (y - 1))]))
        out.sort()
        succ.append([j for _, j in out])
    compat = [0] * C
    for i in range(C):
        row = 0
        mi = masks[i]
        for j in range(C):
            if j != i and ws_masks(mi, masks[j]):
                row |= 1 << j
        compat[i] = row
    above = [0] * C
    for i, a in enumerate(subsets):
        row = 0
        for j, b in enumerate(subsets):
            if j != i and _dominates(b, a):
                row |= 1 << j
        above[i] = row
    top = tuple(range(n - k + 1, n + 1))
    sum_top = sum(top)
    hk = series_sum(k)
    rem = []
    for s in subsets:
        b = sum_top - sum(s)       # every step raises the element sum by at least one
        if series_pruning:
            # arcs still to come live over [min(s), n]; each unit carries weight <= H_k
            b = min(b, int(hk * (n - s[0])))
        rem.append(b)
    return SubsetLattice(
        k=k, n=n, masks=masks, index=index, succ=succ, compat=compat, above=above,
        rem_bound=rem, start=index[mask_of(range(1, k + 1))], target=index[mask_of(top)],
    )
