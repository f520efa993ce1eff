"""Finite Coxeter systems and their elements.

Crystallographic types act on the simple-root basis by integer matrices:
column j of an element's matrix is the image of alpha_j, and
s_i(alpha_j) = alpha_j - A[i, j] alpha_i. G2 is handled as the dihedral
group of order 12 through alternating-word normal forms.

Labels follow the usual Dynkin conventions: B_n has s_1 at the double bond, D_n is the
chain s_1 .. s_{n-2} with s_{n-1}, s_n forking off s_{n-2}, and E_n, F_4 use
Bourbaki numbering (E: chain 1-3-4-5-..., node 2 on node 4; F4: 1-2=>3-4).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import InternalContradiction, InvalidInput

TYPES = ("A", "B", "D", "E6", "E7", "E8", "F4", "G2")


def _edges(typ: str, rank: int) -> dict[tuple[int, int], int]:
    """Dynkin bonds {(i, j): m_ij} with 1-based i < j, m_ij >= 3."""
    chain = lambda nodes: {(a, b): 3 for a, b in zip(nodes, nodes[1:])}  # noqa: E731
    if typ == "A":
        return chain(range(1, rank + 1))
    if typ == "B":
        e = chain(range(1, rank + 1))
        e[(1, 2)] = 4
        return e
    if typ == "D":
        e = chain(range(1, rank - 1))
        e[(rank - 2, rank - 1)] = 3
        e[(rank - 2, rank)] = 3
        return e
    if typ in ("E6", "E7", "E8"):
        e = chain([1] + list(range(3, rank + 1)))
        e[(2, 4)] = 3
        return e
    if typ == "F4":
        return {(1, 2): 3, (2, 3): 4, (3, 4): 3}
    if typ == "G2":
        return {(1, 2): 6}
    if typ == "H3":
        return {(1, 2): 3, (2, 3): 5}
    if typ == "H4":
        return {(1, 2): 3, (2, 3): 3, (3, 4): 5}
    raise InvalidInput(f"unknown Coxeter type {typ!r}")


def normalize_type(typ: str, rank: int | None = None) -> tuple[str, int]:
    """Accept "B" with a rank, or "B5", "E8", "F4", ... ."""
    typ = typ.strip().upper()
    if typ in ("E6", "E7", "E8", "F4", "G2", "H3", "H4"):
        r = int(typ[1])
        if rank is not None and rank != r:
            raise InvalidInput(f"type {typ} has rank {r}, not {rank}")
        return typ, r
    if typ[:1] in ("A", "B", "D") and typ[1:].isdigit():
        typ, rank = typ[0], int(typ[1:])
    if typ == "E" and rank in (6, 7, 8):
        return f"E{rank}", rank
    if typ not in ("A", "B", "D"):
        raise InvalidInput(f"unknown Coxeter type {typ!r}")
    if rank is None:
        raise InvalidInput(f"type {typ} needs a rank")
    low = {"A": 1, "B": 2, "D": 4}[typ]
    if rank < low:
        raise InvalidInput(f"type {typ} needs rank >= {low}")
    return typ, rank


def coxeter_matrix(typ: str, rank: int | None = None) -> np.ndarray:
    typ, rank = normalize_type(typ, rank)
    M = np.full((rank, rank), 2, dtype=np.int64)
    np.fill_diagonal(M, 1)
    for (i, j), m in _edges(typ, rank).items():
        M[i - 1, j - 1] = M[j - 1, i - 1] = m
    return M


def cartan_matrix(typ: str, rank: int | None = None) -> np.ndarray:
    """Integer Cartan matrix in the labelling above (B: A_12 = -2; F4: A_23 = -2)."""
    typ, rank = normalize_type(typ, rank)
    A = 2 * np.eye(rank, dtype=np.int64)
    for (i, j), m in _edges(typ, rank).items():
        if m == 3:
            A[i - 1, j - 1] = A[j - 1, i - 1] = -1
        elif m == 4:
            A[i - 1, j - 1], A[j - 1, i - 1] = -2, -1
        elif m == 6:
            A[i - 1, j - 1], A[j - 1, i - 1] = -1, -3
        else:
            raise InvalidInput(f"type {typ} is not crystallographic")
    return A


@dataclass(frozen=True)
class CoxeterSystem:
    type: str
    rank: int
    coxeter_matrix: np.ndarray = field(compare=False, repr=False)
    cartan: np.ndarray | None = field(compare=False, repr=False)
    positive_roots: np.ndarray | None = field(compare=False, repr=False)   # rank x N, columns
    simple: tuple = field(compare=False, repr=False, default=())

    @property
    def dihedral(self) -> bool:
        return self.type == "G2"

    @property
    def n_positive_roots(self) -> int:
        if self.dihedral:
            return int(self.coxeter_matrix[0, 1])
        return self.positive_roots.shape[1]

    @property
    def name(self) -> str:
        return self.type if self.type[0] in "EFGH" else f"{self.type}{self.rank}"

    def identity(self) -> "CoxeterElement":
        if self.dihedral:
            return CoxeterElement(self, None, (0, 0))
        return CoxeterElement(self, np.eye(self.rank, dtype=np.int64), None)

    def s(self, i: int) -> "CoxeterElement":
        return self.identity() * i


def _positive_roots(A: np.ndarray) -> np.ndarray:
    r = len(A)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                # s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
                c = sum(int(A[i, j]) * beta[j] for j in range(r))
                if c == 0 or beta == simple[i]:
                    continue
                gamma = list(beta)
                gamma[i] -= c
                gamma = tuple(gamma)
                if min(gamma) >= 0 and gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    roots = sorted(seen, key=lambda b: (sum(b), b))
    return np.array(roots, dtype=np.int64).T


@lru_cache(maxsize=None)
def coxeter_system(typ: str, rank: int | None = None) -> CoxeterSystem:
    typ, rank = normalize_type(typ, rank)
    if typ in ("H3", "H4"):
        raise InvalidInput(f"no element engine for {typ}; use cartan_feasibility with an explicit vector")
    M = coxeter_matrix(typ, rank)
    if typ == "G2":
        return CoxeterSystem(typ, rank, M, None, None)
    A = cartan_matrix(typ, rank)
    R = _positive_roots(A)
    simple = []
    for i in range(rank):
        S = np.eye(rank, dtype=np.int64)
        S[i, :] -= A[i, :]
        simple.append(S)
    return CoxeterSystem(typ, rank, M, A, R, tuple(simple))


class CoxeterElement:
    """An element acting on simple roots, or (G2) an alternating word (first letter, length)."""

    __slots__ = ("sys", "matrix", "nf", "_key")

    def __init__(self, sys: CoxeterSystem, matrix, nf):
        self.sys = sys
        self.matrix = matrix
        self.nf = nf
        self._key = nf if matrix is None else matrix.tobytes()

    def __eq__(self, other):
        return isinstance(other, CoxeterElement) and self.sys == other.sys and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __mul__(self, i: int) -> "CoxeterElement":
        """Right multiplication by the generator s_i."""
        if not 1 <= i <= self.sys.rank:
            raise InvalidInput(f"generator index {i} out of range")
        if self.matrix is not None:
            return CoxeterElement(self.sys, self.matrix @ self.sys.simple[i - 1], None)
        m = int(self.sys.coxeter_matrix[0, 1])
        first, length = self.nf
        if length == 0:
            return CoxeterElement(self.sys, None, (i, 1))
        if length == m:
            # w_0 ends in either letter; drop i
            first = i if m % 2 == 1 else 3 - i
            return CoxeterElement(self.sys, None, (first, m - 1))
        last = first if length % 2 == 1 else 3 - first
        if last == i:
            return CoxeterElement(self.sys, None, (first if length > 1 else 0, length - 1))
        length += 1
        return CoxeterElement(self.sys, None, (1 if length == m else first, length))

    def length(self) -> int:
        if self.matrix is None:
            return self.nf[1]
        img = self.matrix @ self.sys.positive_roots
        return int(np.sum(np.all(img <= 0, axis=0)))

    def is_descent(self, i: int) -> bool:
        """Right descent at s_i: w(alpha_i) is negative."""
        if self.matrix is None:
            m = int(self.sys.coxeter_matrix[0, 1])
            first, length = self.nf
            if length == m:
                return True
            return length > 0 and (first if length % 2 == 1 else 3 - first) == i
        col = self.matrix[:, i - 1]
        return bool(np.all(col <= 0))

    def descents(self) -> list[int]:
        return [i for i in range(1, self.sys.rank + 1) if self.is_descent(i)]

    def is_identity(self) -> bool:
        return self == self.sys.identity()

    def word(self) -> tuple[int, ...]:
        """A reduced word, read off by stripping right descents."""
        out = []
        w = self
        while not w.is_identity():
            i = w.descents()[0]
            out.append(i)
            w = w * i
        return tuple(reversed(out))

    def __repr__(self):
        return f"CoxeterElement({self.sys.name}, {self.word()})"


def longest_element(sys: CoxeterSystem) -> CoxeterElement:
    """Greedy ascent: multiply by any non-descent until every generator is a descent."""
    w = sys.identity()
    while True:
        ups = [i for i in range(1, sys.rank + 1) if not w.is_descent(i)]
        if not ups:
            break
        w = w * ups[0]
    if w.length() != sys.n_positive_roots:
        raise InternalContradiction(f"longest element of {sys.name} has length {w.length()}")
    return w


def parabolic_quotient(w: CoxeterElement, J) -> CoxeterElement:
    """Minimal-length representative of w W_J: strip right descents in J."""
    J = set(J)
    while True:
        d = [i for i in sorted(J) if w.is_descent(i)]
        if not d:
            return w
        w = w * d[0]


def min_multiplicity(sys: CoxeterSystem, i: int, trace: list | None = None) -> int:
    """Least number of s_i over the reduced words of w_0.

    Iterates w <- (w s_i)^J starting from w_0^J, J = all generators but s_i,
    and counts the steps to the identity. Lengths must strictly drop.
    """
    if not 1 <= i <= sys.rank:
        raise InvalidInput(f"generator index {i} out of range for {sys.name}")
    J = [j for j in range(1, sys.rank + 1) if j != i]
    w = parabolic_quotient(longest_element(sys), J)
    count = 0
    prev = w.length()
    if trace is not None:
        trace.append(prev)
    while not w.is_identity():
        if not w.is_descent(i):
            raise InternalContradiction(f"minimal coset representative without descent s_{i}")
        w = parabolic_quotient(w * i, J)
        count += 1
        cur = w.length()
        if cur >= prev:
            raise InternalContradiction("iterate lengths did not decrease")
        prev = cur
        if trace is not None:
            trace.append(cur)
    return count


def min_multiplicity_vector(sys: CoxeterSystem) -> tuple[int, ...]:
    return tuple(min_multiplicity(sys, i) for i in range(1, sys.rank + 1))


def reference_vector(typ: str, rank: int | None = None) -> tuple[int, ...]:
    """Closed forms and table values for the minimal multiplicities."""
    typ, r = normalize_type(typ, rank)
    if typ == "A":
        n = r + 1
        return tuple(min(i, n - i) for i in range(1, n))
    if typ == "B":
        return (r, r) + tuple(range(r - 1, 1, -1))
    if typ == "D":
        return tuple(range(2, r)) + (r // 2, r // 2)
    fixed = {
        # Bourbaki order: node 1, branch node 2, then the chain 3, 4, ...
        "E6": (2, 3, 4, 6, 4, 2),
        "E7": (3, 5, 6, 9, 7, 5, 3),
        "E8": (5, 8, 10, 15, 12, 9, 6, 3),
        "F4": (3, 6, 6, 3),
        "G2": (3, 3),
        "H4": (5, 10, 15, 15),
    }
    return fixed[typ]
