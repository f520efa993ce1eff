"""Exact M(k,n) by two independent methods, plus the numeric upper bounds.

``max_multiplicity_path_dfs`` searches the longest monotone weakly separated
path from {1..k} to {n-k+1..n}. ``max_multiplicity_weak_order_dp`` runs a
longest/shortest weighted chain search over the right weak order of S_n and
never touches paths, so it serves as an oracle for the first.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _kernels
from .config import Caps, load_caps, require
from .core import MonotonePath, Word, complement_reflect, is_reduced
from .errors import InternalContradiction, InvalidInput
from .lattice import build_lattice, elems_of, series_sum

METHODS = ("path-dfs", "weak-order-dp")
MODES = ("max", "min", "max-pair")


@dataclass
class SearchResult:
    k: int
    n: int
    value: int
    witness: MonotonePath | Word | None
    method: str
    mode: str = "max"
    nodes: int = 0

    def __post_init__(self):
        w = self.witness
        if w is None:
            return
        if isinstance(w, MonotonePath):
            got = w.steps
        elif self.mode == "max-pair":
            got = sum(1 for i in w.letters if i in (self.k, self.n - self.k))
        else:
            got = w.count(self.k)
        if got != self.value:
            raise InternalContradiction(f"witness certifies {got}, not {self.value}")

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "value": self.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "method": self.method, "mode": self.mode,
        }


@dataclass
class BoundReport:
    k: int
    n: int
    value: int
    series_bound: Fraction
    sqrt_bound: float
    ok: bool = field(init=False)

    def __post_init__(self):
        self.ok = self.value <= self.series_bound <= self.sqrt_bound * (1 + 1e-12)


def _check_kn(k: int, n: int) -> None:
    if not (isinstance(k, int) and isinstance(n, int)) or not 1 <= k <= n - 1:
        raise InvalidInput(f"need 1 <= k <= n-1, got k={k}, n={n}")


# --------------------------------------------------------------------------
# path DFS


def _branch(args):
    k, n, first, exhaustive, backend = args
    lat = build_lattice(k, n)
    allowed0 = lat.compat[lat.start] & lat.compat[first]
    if first == lat.target:
        return 1, [lat.start, first], 1
    best, path, nodes = _kernels.run_dfs(
        lat, exhaustive=exhaustive, backend=backend, start=first, allowed0=allowed0
    )
    if not path:
        return -1, [], nodes
    return best + 1, [lat.start] + path, nodes


def max_multiplicity_path_dfs(
    k: int,
    n: int,
    *,
    exhaustive: bool = False,
    backend: str | None = None,
    jobs: int = 1,
    caps: Caps | None = None,
) -> SearchResult:
    """M(k,n) with a longest path as witness.

    Runs on min(k, n-k) and maps the witness back through the complement
    reflection when that differs from k. ``exhaustive`` disables pruning.
    ``jobs > 1`` farms the top-level branches out to worker processes.
    """
    _check_kn(k, n)
    caps = caps or load_caps()
    kk = min(k, n - k)
    require(kk <= caps.dfs_max_k and n <= caps.dfs_max_n,
            f"path-dfs caps: k <= {caps.dfs_max_k}, n <= {caps.dfs_max_n} (got k={kk}, n={n})")
    lat = build_lattice(kk, n)
    if jobs > 1:
        tasks = [(kk, n, s, exhaustive, backend) for s in lat.succ[lat.start]]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_branch, tasks))
        # ties broken by branch order so the witness matches a serial run
        best, path, nodes = -1, [], 1
        for b, p, c in results:
            nodes += c
            if b > best:
                best, path = b, p
    else:
        best, path, nodes = _kernels.run_dfs(lat, exhaustive=exhaustive, backend=backend)
    if best < 0 or not path:
        raise InternalContradiction(f"no path from bottom to top for k={kk}, n={n}")
    witness = MonotonePath(kk, n, tuple(elems_of(lat.masks[i]) for i in path))
    if kk != k:
        witness = complement_reflect(witness)
    return SearchResult(k, n, best, witness, "path-dfs", nodes=nodes)


def iter_paths(k: int, n: int, *, complete: bool = True, max_paths: int | None = None) -> Iterator[MonotonePath]:
    """Every monotone weakly separated path starting at {1..k}.

    With ``complete`` only those ending at {n-k+1..n}. Paths are produced
    in DFS order, so prefixes come before extensions.
    """
    _check_kn(k, n)
    lat = build_lattice(k, n)
    sets = [elems_of(m) for m in lat.masks]
    produced = 0
    path = [lat.start]
    allowed = [lat.compat[lat.start]]
    iters = [iter(lat.succ[lat.start])]
    if not complete or lat.start == lat.target:
        produced += 1
        yield MonotonePath(k, n, (sets[lat.start],))
    while iters:
        if max_paths is not None and produced >= max_paths:
            return
        a = allowed[-1]
        for nxt in iters[-1]:
            if (a >> nxt) & 1:
                path.append(nxt)
                allowed.append(a & lat.compat[nxt])
                iters.append(iter(lat.succ[nxt]))
                if not complete or nxt == lat.target:
                    produced += 1
                    yield MonotonePath(k, n, tuple(sets[i] for i in path))
                break
        else:
            path.pop()
            allowed.pop()
            iters.pop()


def random_path(k: int, n: int, rng: random.Random) -> MonotonePath:
    """A random complete path: uniform choice among compatible successors.

    Every prefix extends to the top set, so the walk never dead-ends.
    """
    _check_kn(k, n)
    lat = build_lattice(k, n)
    cur, a = lat.start, lat.compat[lat.start]
    out = [cur]
    while cur != lat.target:
        opts = [j for j in lat.succ[cur] if (a >> j) & 1]
        if not opts:
            raise InternalContradiction(f"random walk stuck at {elems_of(lat.masks[cur])}")
        cur = rng.choice(opts)
        a &= lat.compat[cur]
        out.append(cur)
    return MonotonePath(k, n, tuple(elems_of(lat.masks[i]) for i in out))


# --------------------------------------------------------------------------
# right weak order DP


@lru_cache(maxsize=4)
def _weak_order_tables(n: int):
    """Lexicographic ranks of S_n worked through Lehmer codes.

    The code of rank r is its mixed-radix digits, so no permutation is ever
    built. Swapping positions a, a+1 only touches digits a and a+1, and the
    swap is an ascent exactly when code[a] <= code[a+1].
    """
    size = math.factorial(n)
    fact = np.array([math.factorial(n - 1 - j) for j in range(n)], dtype=np.int64)
    ranks = np.arange(size, dtype=np.int64)
    codes = (ranks[None, :] // fact[:, None]) % np.arange(n, 0, -1, dtype=np.int64)[:, None]
    length = codes.sum(axis=0).astype(np.int32)
    nbr = []
    ascent = []
    for a in range(n - 1):
        ca, cb = codes[a], codes[a + 1]
        up = ca <= cb
        # ascent: new digits (c_b + 1, c_a); descent: (c_b, c_a - 1)
        na = np.where(up, cb + 1, cb)
        nb = np.where(up, ca, ca - 1)
        nbr.append(ranks + (na - ca) * fact[a] + (nb - cb) * fact[a + 1])
        ascent.append(up)
    order = np.argsort(length, kind="stable")
    bounds = np.searchsorted(length[order], np.arange(length.max() + 2))
    return size, nbr, ascent, order, bounds


def max_multiplicity_weak_order_dp(k: int, n: int, mode: str = "max", *, caps: Caps | None = None) -> SearchResult:
    """Optimal weighted maximal chain from id to w_0 in the right weak order.

    ``max`` weighs s_k edges by one and maximizes, ``min`` minimizes, and
    ``max-pair`` weighs every letter in {k, n-k} by one and maximizes.
    The chain read off from w_0 backwards is the witness word.
    """
    _check_kn(k, n)
    if mode not in MODES:
        raise InvalidInput(f"mode must be one of {MODES}")
    caps = caps or load_caps()
    require(n <= caps.dp_max_n, f"weak-order-dp cap: n <= {caps.dp_max_n} (got {n})")
    size, nbr, ascent, order, bounds = _weak_order_tables(n)
    weights = [1 if (i == k or (mode == "max-pair" and i == n - k)) else 0 for i in range(1, n)]
    if mode == "min":
        val = np.full(size, np.iinfo(np.int32).max // 2, dtype=np.int32)
        acc = np.minimum.at
    else:
        val = np.full(size, -1, dtype=np.int32)
        acc = np.maximum.at
    val[0] = 0  # rank 0 is the identity
    top = n * (n - 1) // 2
    for lev in range(top):
        idx = order[bounds[lev]:bounds[lev + 1]]
        for i in range(n - 1):
            src = idx[ascent[i][idx]]
            acc(val, nbr[i][src], val[src] + weights[i])
    w0 = size - 1
    # backtrack: a predecessor u = w s_i has an ascent at i and attains the optimum
    letters = []
    cur = w0
    while cur != 0:
        for i in range(n - 1):
            u = nbr[i][cur]
            if ascent[i][u] and val[u] + weights[i] == val[cur]:
                letters.append(i + 1)
                cur = u
                break
        else:
            raise InternalContradiction("weak-order backtrack found no predecessor")
    word = Word(n, tuple(reversed(letters)))
    if not is_reduced(word) or len(word) != top:
        raise InternalContradiction("weak-order witness is not a reduced word of w_0")
    return SearchResult(k, n, int(val[w0]), word, "weak-order-dp", mode=mode)


def max_multiplicity(k: int, n: int, method: str = "path-dfs", mode: str = "max", **kw) -> SearchResult:
    if method == "path-dfs":
        if mode != "max":
            raise InvalidInput("path-dfs only computes mode=max")
        return max_multiplicity_path_dfs(k, n, **kw)
    if method == "weak-order-dp":
        return max_multiplicity_weak_order_dp(k, n, mode, caps=kw.get("caps"))
    raise InvalidInput(f"method must be one of {METHODS}")


# --------------------------------------------------------------------------
# bounds


def series_upper_bound(k: int, n: int) -> Fraction:
    """n times the sum of the first k terms of 1, 1/2, 1/2, 1/3, 1/3, 1/3, ..."""
    _check_kn(k, n)
    return n * series_sum(k)


def sqrt_bound(k: int, n: int) -> float:
    return math.sqrt(2 * k) * n


def bound_report(k: int, n: int, value: int) -> BoundReport:
    return BoundReport(k, n, value, series_upper_bound(k, n), sqrt_bound(k, n))


def check_superadditivity(k: int, n: int, m: int, *, caps: Caps | None = None) -> bool:
    """Monotonicity M(k,n) <= M(k,m) <= M(k,n+m) and M(k,n) + M(k,m) <= M(k,n+m)."""
    if not 1 <= k < n <= m:
        raise InvalidInput(f"need k < n <= m, got ({k}, {n}, {m})")
    a = max_multiplicity_path_dfs(k, n, caps=caps).value
    b = max_multiplicity_path_dfs(k, m, caps=caps).value
    c = max_multiplicity_path_dfs(k, n + m, caps=caps).value
    return a <= b <= c and a + b <= c
