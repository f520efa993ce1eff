"""Min-weight maximal chains in the right weak order of A, B and D groups.

Elements are (signed) permutations in one-line form; right multiplication
by a generator acts on positions. This never uses root data, so it is an
independent check on the quotient iteration.
"""
from __future__ import annotations

import math
from typing import Callable

from ..config import Caps, load_caps, require
from ..errors import InternalContradiction, InvalidInput
from .groups import CoxeterSystem

Perm = tuple[int, ...]


def _swap(p: int) -> Callable[[Perm], Perm]:
    def g(w: Perm) -> Perm:
        w = list(w)
        w[p], w[p + 1] = w[p + 1], w[p]
        return tuple(w)
    return g


def _negate_first(w: Perm) -> Perm:
    return (-w[0],) + w[1:]


def _negswap(w: Perm) -> Perm:
    return (-w[1], -w[0]) + w[2:]


def native_generators(sys: CoxeterSystem) -> tuple[int, list[Callable[[Perm], Perm]]]:
    """(degree, generators in the system's labelling) for A, B and D."""
    r = sys.rank
    if sys.type == "A":
        return r + 1, [_swap(i) for i in range(r)]
    if sys.type == "B":
        return r, [_negate_first] + [_swap(i) for i in range(r - 1)]
    if sys.type == "D":
        # chain s_1 .. s_{n-2} is swap(n-1,n) .. swap(2,3); forks are swap(1,2), negswap(1,2)
        return r, [_swap(r - 1 - j) for j in range(1, r - 1)] + [_swap(0), _negswap]
    raise InvalidInput(f"no signed-permutation model for {sys.name}")


def group_order(sys: CoxeterSystem) -> int:
    r = sys.rank
    if sys.type == "A":
        return math.factorial(r + 1)
    if sys.type == "B":
        return 2 ** r * math.factorial(r)
    if sys.type == "D":
        return 2 ** (r - 1) * math.factorial(r)
    raise InvalidInput(f"no signed-permutation model for {sys.name}")


def min_multiplicity_dp_oracle(sys: CoxeterSystem, i: int, *, caps: Caps | None = None) -> int:
    caps = caps or load_caps()
    order = group_order(sys)
    require(order <= caps.oracle_max_order, f"oracle cap: group order {order} > {caps.oracle_max_order}")
    if not 1 <= i <= sys.rank:
        raise InvalidInput(f"generator index {i} out of range")
    deg, gens = native_generators(sys)
    ident = tuple(range(1, deg + 1))
    best = {ident: 0}
    layer = [ident]
    seen = {ident}
    while True:
        nxt: dict[Perm, int] = {}
        for w in layer:
            for j, g in enumerate(gens, start=1):
                u = g(w)
                if u in seen:
                    continue
                val = best[w] + (j == i)
                if u not in nxt or val < nxt[u]:
                    nxt[u] = val
        if not nxt:
            break
        best.update(nxt)
        seen.update(nxt)
        layer = list(nxt)
    if len(seen) != order:
        raise InternalContradiction(f"generated {len(seen)} elements, expected {order}")
    if len(layer) != 1:
        raise InternalContradiction("top layer of the weak order is not a single element")
    return best[layer[0]]
