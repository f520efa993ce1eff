# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled longest-path DFS; bitset rows are packed uint64 words."""
from libc.stdint cimport uint64_t, int32_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def dfs_longest(const int32_t[::1] succ_ptr, const int32_t[::1] succ_idx,
                const uint64_t[:, ::1] compat, const uint64_t[:, ::1] above,
                const int32_t[::1] rem_bound, int start, int target,
                bint exhaustive=False, long initial_best=-1,
                const uint64_t[::1] allowed0=None):
    cdef Py_ssize_t C = compat.shape[0]
    cdef Py_ssize_t W = compat.shape[1]
    cdef Py_ssize_t maxd = C + 1
    cdef long best = initial_best
    cdef long nodes = 1
    cdef Py_ssize_t d, w, nxt, cur, best_len = 0
    cdef long ub, c
    cdef uint64_t *allowed
    cdef uint64_t *na
    cdef uint64_t *row
    cdef int32_t *path
    cdef int32_t *cursor
    cdef int32_t *best_path

    if allowed0 is None:
        allowed0 = compat[start]
    if start == target:
        return max(best, 0), [start], 1

    allowed = <uint64_t *> malloc(maxd * W * sizeof(uint64_t))
    path = <int32_t *> malloc(maxd * sizeof(int32_t))
    cursor = <int32_t *> malloc(maxd * sizeof(int32_t))
    best_path = <int32_t *> malloc(maxd * sizeof(int32_t))
    if not allowed or not path or not cursor or not best_path:
        free(allowed); free(path); free(cursor); free(best_path)
        raise MemoryError()
    try:
        with nogil:
            for w in range(W):
                allowed[w] = allowed0[w]
            path[0] = start
            cursor[0] = succ_ptr[start]
            d = 0
            while d >= 0:
                cur = path[d]
                if cursor[d] == succ_ptr[cur + 1]:
                    d -= 1
                    continue
                nxt = succ_idx[cursor[d]]
                cursor[d] += 1
                row = allowed + d * W
                if not (row[nxt >> 6] >> (nxt & 63)) & 1:
                    continue
                if nxt == target:
                    if d + 1 > best:
                        best = d + 1
                        for w in range(d + 1):
                            best_path[w] = path[w]
                        best_path[d + 1] = <int32_t> nxt
                        best_len = d + 2
                    continue
                na = row + W
                c = 0
                for w in range(W):
                    na[w] = row[w] & compat[nxt, w]
                    c += __builtin_popcountll(na[w] & above[nxt, w])
                if not exhaustive:
                    ub = rem_bound[nxt]
                    if c < ub:
                        ub = c
                    if d + 1 + ub <= best:
                        continue
                nodes += 1
                d += 1
                path[d] = <int32_t> nxt
                cursor[d] = succ_ptr[nxt]
        return best, [best_path[w] for w in range(best_len)], nodes
    finally:
        free(allowed); free(path); free(cursor); free(best_path)
