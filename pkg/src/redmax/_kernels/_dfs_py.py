"""Pure-Python longest-path DFS over a precomputed subset lattice.

Same contract as the compiled ``_dfs`` module; rows are Python ints.
"""
from __future__ import annotations


def dfs_longest(succ, compat, above, rem_bound, start, target, exhaustive=False, initial_best=-1,
                allowed0=None):
    """Longest chain start -> target of pairwise compatible sets.

    Returns ``(best, path, nodes)`` where ``path`` is a list of indices (empty
    if no chain beats ``initial_best``) and ``nodes`` counts pushed states.
    """
    best = initial_best
    best_path: list[int] = []
    if start == target:
        return max(best, 0), [start], 1
    path = [start]
    allowed = [compat[start] if allowed0 is None else allowed0]
    iters = [iter(succ[start])]
    nodes = 1
    while iters:
        d = len(path) - 1
        a = allowed[d]
        for nxt in iters[d]:
            if not (a >> nxt) & 1:
                continue
            if nxt == target:
                if d + 1 > best:
                    best = d + 1
                    best_path = path + [nxt]
                continue
            na = a & compat[nxt]
            if not exhaustive:
                ub = rem_bound[nxt]
                c = (na & above[nxt]).bit_count()
                if c < ub:
                    ub = c
                if d + 1 + ub <= best:
                    continue
            nodes += 1
            path.append(nxt)
            allowed.append(na)
            iters.append(iter(succ[nxt]))
            break
        else:
            path.pop()
            allowed.pop()
            iters.pop()
    return best, best_path, nodes
