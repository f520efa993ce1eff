"""Restricted generalized Cartan matrices: exact verification and a feasibility search.

A candidate A has 2 on the diagonal, non-positive off-diagonal entries with
a symmetric zero pattern, A_ij * A_ji = 4 cos^2(pi/m_ij), and both entries of
a single bond equal to -1. The question is whether some candidate has
A v >= 0 entrywise for a given positive vector v.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from ..errors import InvalidInput, Unsupported
from .groups import CoxeterSystem, coxeter_matrix, normalize_type
from .quadratic import QuadraticNumber, bond_product, bond_root

Q = QuadraticNumber


def _as_matrix(M) -> np.ndarray:
    if isinstance(M, CoxeterSystem):
        return np.asarray(M.coxeter_matrix)
    if isinstance(M, str):
        return coxeter_matrix(*normalize_type(M))
    return np.asarray(M, dtype=np.int64)


def candidate_violation(M, A) -> str | None:
    M = _as_matrix(M)
    r = len(M)
    if len(A) != r or any(len(row) != r for row in A):
        return f"matrix must be {r}x{r}"
    for i in range(r):
        if Q.coerce(A[i][i]) != 2:
            return f"A[{i + 1},{i + 1}] != 2"
        for j in range(r):
            if i == j:
                continue
            a, b = Q.coerce(A[i][j]), Q.coerce(A[j][i])
            if a > 0:
                return f"A[{i + 1},{j + 1}] is positive"
            if (a == 0) != (b == 0):
                return f"zero pattern not symmetric at ({i + 1},{j + 1})"
            m = int(M[i, j])
            if a * b != bond_product(m):
                return f"A[{i + 1},{j + 1}] * A[{j + 1},{i + 1}] != 4cos^2(pi/{m})"
            if m == 3 and (a != -1 or b != -1):
                return f"single bond ({i + 1},{j + 1}) must carry -1 both ways"
    return None


def verify_cartan(sys, A, v) -> tuple[bool, list[QuadraticNumber]]:
    """(all entries of A v are >= 0, A v), computed exactly."""
    why = candidate_violation(sys, A)
    if why:
        raise InvalidInput(f"not a restricted generalized Cartan matrix: {why}")
    r = len(A)
    if len(v) != r or any(int(x) != x or x <= 0 for x in v):
        raise InvalidInput("v must be a positive integer vector of matching length")
    Av = [sum((Q.coerce(A[i][j]) * int(v[j]) for j in range(r)), Q(0)) for i in range(r)]
    return all(x.sign() >= 0 for x in Av), Av


def explicit_cartan(typ: str, rank: int | None = None) -> list[list[QuadraticNumber]]:
    """The explicit matrices for B_n (A_12 = -2, A_21 = -1) and F4 (A_23 = A_32 = -sqrt 2)."""
    typ, r = normalize_type(typ, rank)
    M = coxeter_matrix(typ, r)
    A = [[Q(2) if i == j else Q(0) for j in range(r)] for i in range(r)]
    for i in range(r):
        for j in range(r):
            if M[i, j] == 3:
                A[i][j] = Q(-1)
    if typ == "B":
        A[0][1], A[1][0] = Q(-2), Q(-1)
    elif typ == "F4":
        A[1][2] = A[2][1] = -bond_root(4)
    elif any(M[i, j] > 3 for i in range(r) for j in range(r)):
        raise InvalidInput(f"no explicit matrix recorded for {typ}")
    return A


@dataclass
class FeasibilityReport:
    feasible: bool
    witness: list[list[QuadraticNumber]] | None
    Av: list[QuadraticNumber] | None
    max_violation: float            # min over t of max_i ((sum_j x_ij v_j) - 2 v_i) / v_i
    integer_feasible: bool          # same question with integer entries only
    integer_witness: list[list[int]] | None
    free_edges: list[tuple[int, int, int]] = field(default_factory=list)
    sweeps: int = 0

    def to_json(self) -> dict:
        fmt = lambda A: None if A is None else [[str(x) for x in row] for row in A]  # noqa: E731
        return {
            "feasible": self.feasible,
            "witness": fmt(self.witness),
            "Av": None if self.Av is None else [str(x) for x in self.Av],
            "max_violation": self.max_violation,
            "integer_feasible": self.integer_feasible,
            "integer_witness": self.integer_witness,
            "free_edges": [list(e) for e in self.free_edges],
            "sweeps": self.sweeps,
        }


def _check_tree(M: np.ndarray) -> None:
    r = len(M)
    edges = [(i, j) for i in range(r) for j in range(i + 1, r) if M[i, j] >= 3]
    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(j)
        if a == b:
            raise Unsupported("Coxeter diagram has a cycle")
        parent[a] = b
    if len(edges) != r - 1:
        raise Unsupported("Coxeter diagram is not connected")


def _build(M, free, ts) -> list[list[QuadraticNumber]]:
    r = len(M)
    A = [[Q(2) if i == j else Q(0) for j in range(r)] for i in range(r)]
    for i in range(r):
        for j in range(r):
            if M[i, j] == 3:
                A[i][j] = Q(-1)
    for (i, j, m), t in zip(free, ts):
        A[i][j] = -t
        A[j][i] = -(bond_product(m) / t)
    return A


def cartan_feasibility(diagram, v, max_sweeps: int = 10_000) -> FeasibilityReport:
    """Search for a restricted matrix with A v >= 0; verify any hit exactly.

    Each bond with m >= 4 has one free parameter t = -A_ij > 0 (then
    -A_ji = c / t). With s = log t the node constraints are convex, and for
    one bond the two affected constraints balance at a root of a quadratic,
    so coordinate descent sweeps over bonds until nothing moves. Exact
    candidates tried afterwards: t in {1, c, sqrt c} and rational
    approximations of the numeric optimum.
    """
    M = _as_matrix(diagram)
    r = len(M)
    v = [int(x) for x in v]
    if len(v) != r or min(v) <= 0:
        raise InvalidInput("v must be a positive integer vector of matching length")
    _check_tree(M)
    free = [(i, j, int(M[i, j])) for i in range(r) for j in range(i + 1, r) if M[i, j] >= 4]
    cs = [float(bond_product(m)) for _, _, m in free]

    def loads(ts):
        g = [-2.0 * v[i] for i in range(r)]
        for i in range(r):
            for j in range(r):
                if M[i, j] == 3:
                    g[i] += v[j]
        for (i, j, _), c, t in zip(free, cs, ts):
            g[i] += t * v[j]
            g[j] += c / t * v[i]
        return g

    def worst(ts):
        g = loads(ts)
        return max(g[i] / v[i] for i in range(r))

    ts = [math.sqrt(c) for c in cs]
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        moved = 0.0
        for e, ((i, j, _), c) in enumerate(zip(free, cs)):
            g = loads(ts)
            a_i = g[i] - ts[e] * v[j]
            a_j = g[j] - c / ts[e] * v[i]
            # balance (a_i + v_j t)/v_i = (a_j + v_i c / t)/v_j
            qa, qb, qc = v[j] ** 2, v[j] * a_i - v[i] * a_j, -(v[i] ** 2) * c
            t = (-qb + math.sqrt(qb * qb - 4 * qa * qc)) / (2 * qa)
            moved = max(moved, abs(math.log(t / ts[e])))
            ts[e] = t
        if moved < 1e-15:
            break
    viol = worst(ts) if free else worst([])

    def exact_candidates(e):
        (_, _, m), t = free[e], ts[e]
        c = bond_product(m)
        out = [Q(1), c, bond_root(m)]
        for den in (1, 2, 3, 4, 6, 8, 12, 16, 100, 1000, 10 ** 6):
            out.append(Q(Fraction(t).limit_denominator(den)))
        return [x for x in out if x.sign() > 0]

    witness = Av = None
    for combo in product(*[exact_candidates(e) for e in range(len(free))]):
        A = _build(M, free, combo)
        ok, av = verify_cartan(M, A, v)
        if ok:
            witness, Av = A, av
            break

    int_witness = None
    options = []
    for _, _, m in free:
        c = bond_product(m)
        if c.b != 0 or c.a.denominator != 1:
            options.append([])
        else:
            ci = int(c.a)
            options.append([d for d in range(1, ci + 1) if ci % d == 0])
    for combo in product(*options):
        A = _build(M, free, [Q(x) for x in combo])
        if verify_cartan(M, A, v)[0]:
            int_witness = [[int(x.a) for x in row] for row in A]
            break
    return FeasibilityReport(
        feasible=witness is not None,
        witness=witness,
        Av=Av,
        max_violation=viol,
        integer_feasible=int_witness is not None,
        integer_witness=int_witness,
        free_edges=[(i + 1, j + 1, m) for i, j, m in free],
        sweeps=sweeps,
    )
