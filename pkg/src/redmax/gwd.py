"""Generalized wiring diagrams, their (f, kappa, pi) encoding, and exact c_k.

Wires are labelled 1, 2, ... and start at the level equal to their label.
A move either crosses the wires at levels h and h+1 or lets the wire at
level h fall, which moves every wire below it up one level. ``pi`` maps a
level to the rank of its wire among the wires that have not fallen; the
identity tail is trimmed, so states are finite tuples.

A diagram is simple (for a fixed k) when
  S1: two wires whose labels are adjacent among the alive wires only meet
      at level k, including the meetings a falling wire creates;
  S2: no wire crosses under k wires with larger labels.
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .config import Caps, load_caps, require
from .core import MonotonePath, path_violation
from .errors import InternalContradiction, InvalidInput
from .lattice import series_sum
from .patterns import RepeatablePattern, builtin_family, density, is_repeatable

CROSS, FALL = "cross", "fall"


@dataclass(frozen=True)
class Move:
    kind: str
    h: int

    def __post_init__(self):
        if self.kind not in (CROSS, FALL) or self.h < 1:
            raise InvalidInput(f"bad move {self.kind}({self.h})")

    def __str__(self):
        return f"{self.kind}({self.h})"


@dataclass(frozen=True)
class GwdState:
    pi: tuple[int, ...] = ()
    f: int = 0
    kappa: int = 0


# --------------------------------------------------------------------------
# permutation helpers


def trim(p: Iterable[int]) -> tuple[int, ...]:
    p = list(p)
    while p and p[-1] == len(p):
        p.pop()
    return tuple(p)


def get(p: Sequence[int], h: int) -> int:
    return p[h - 1] if h <= len(p) else h


def larger_above(p: Sequence[int], i: int) -> int:
    v = get(p, i)
    return sum(1 for j in range(1, i) if get(p, j) > v)


def inversion_positions(p: Sequence[int]) -> int:
    """Number of positions taking part in at least one inversion."""
    n = len(p)
    prefix_max = 0
    hit = [False] * n
    for i, v in enumerate(p):
        if prefix_max > v:
            hit[i] = True
        prefix_max = max(prefix_max, v)
    suffix_min = n + 1
    for i in range(n - 1, -1, -1):
        if suffix_min < p[i]:
            hit[i] = True
        suffix_min = min(suffix_min, p[i])
    return sum(hit)


def inversions_of(p: Sequence[int]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def _padded(p: Sequence[int], length: int) -> list[int]:
    return list(p) + list(range(len(p) + 1, length + 1))


def _after(p: Sequence[int], m: Move) -> tuple[int, ...]:
    h = m.h
    if m.kind == CROSS:
        q = _padded(p, h + 1)
        q[h - 1], q[h] = q[h], q[h - 1]
        return trim(q)
    q = _padded(p, h)
    r = q.pop(h - 1)
    return trim(x - 1 if x > r else x for x in q)


def _fall_ok(p: Sequence[int], h: int, k: int) -> bool:
    r = get(p, h)
    if any(get(p, j) < r for j in range(h + 1, len(p) + 1)):
        return False   # would meet a smaller wire a second time
    # position holding rank r+1 (the adjacent alive label)
    pos = next((j for j in range(1, len(p) + 1) if p[j - 1] == r + 1), r + 1)
    return pos < h or pos - 1 == k


def _cross_ok(p: Sequence[int], h: int, k: int) -> bool:
    a, b = get(p, h), get(p, h + 1)
    if a > b:
        return False
    if h != k and b == a + 1:
        return False
    q = _padded(p, h + 1)
    q[h - 1], q[h] = q[h], q[h - 1]
    return larger_above(q, h + 1) <= k - 1


def check_state(pi: Sequence[int], k: int) -> None:
    """Raise InvalidInput unless pi is a trimmed permutation obeying the S2 and support bounds."""
    if sorted(pi) != list(range(1, len(pi) + 1)) or tuple(pi) != trim(pi):
        raise InvalidInput(f"{tuple(pi)} is not a trimmed permutation")
    for i in range(1, len(pi) + 1):
        if larger_above(pi, i) > k - 1:
            raise InvalidInput(f"position {i} of {tuple(pi)} has {larger_above(pi, i)} larger entries above")
    if inversion_positions(pi) > k * k + 2 * k:
        raise InvalidInput(f"{tuple(pi)} has more than k^2+2k positions in inversions")


def legal_moves(pi: Sequence[int], k: int) -> list[Move]:
    """Simple reduced moves from ``pi`` (crossings first, by level)."""
    top = max(len(pi), k) + 1
    out = [Move(CROSS, h) for h in range(1, top + 1) if _cross_ok(pi, h, k)]
    out += [Move(FALL, h) for h in range(1, top + 1) if _fall_ok(pi, h, k)]
    return out


def kappa_gain(m: Move, k: int) -> int:
    return int(m.h == k) if m.kind == CROSS else int(m.h <= k)


def apply_move(state: GwdState, m: Move, k: int, check: bool = True) -> GwdState:
    if check and m not in legal_moves(state.pi, k):
        raise InvalidInput(f"{m} is not a legal simple move from {state.pi}")
    return GwdState(_after(state.pi, m), state.f + (m.kind == FALL), state.kappa + kappa_gain(m, k))


# --------------------------------------------------------------------------
# explicit diagrams


@dataclass(frozen=True)
class ExplicitDiagram:
    events: tuple[Move, ...]
    n_hint: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    @classmethod
    def of(cls, moves: Iterable[tuple[str, int] | Move], n_hint=None) -> "ExplicitDiagram":
        return cls(tuple(m if isinstance(m, Move) else Move(*m) for m in moves), n_hint)

    def to_json(self, k: int | None = None) -> dict:
        out = {"events": [{"t": t, "kind": m.kind, "level": m.h} for t, m in enumerate(self.events)]}
        if k is not None:
            out["k"] = k
        if self.n_hint is not None:
            out["n"] = self.n_hint
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "ExplicitDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        evs = sorted(data["events"], key=lambda e: e.get("t", 0))
        return cls(tuple(Move(e["kind"], int(e["level"])) for e in evs), data.get("n"))

    def __len__(self):
        return len(self.events)


class Wires:
    """Label-level simulation; levels beyond the explicit list hold fresh labels."""

    def __init__(self):
        self.levels: list[int] = []
        self.nxt = 1
        self.fallen: set[int] = set()
        self.larger: dict[int, int] = {}

    def _grow(self, h: int) -> None:
        while len(self.levels) < h:
            self.levels.append(self.nxt)
            self.nxt += 1

    def at(self, h: int) -> int:
        self._grow(h)
        return self.levels[h - 1]

    def level_of(self, label: int) -> int:
        if label >= self.nxt:
            return len(self.levels) + label - self.nxt + 1
        return self.levels.index(label) + 1

    def top(self, k: int) -> tuple[int, ...]:
        self._grow(k)
        return tuple(sorted(self.levels[:k]))

    def next_alive(self, a: int) -> int:
        b = a + 1
        while b in self.fallen:
            b += 1
        return b

    def alive_between(self, a: int, b: int) -> bool:
        return any(c not in self.fallen for c in range(a + 1, b))

    def below_all_larger(self, h: int) -> bool:
        a = self.at(h)
        return all(x > a for x in self.levels[h:])

    def pi(self) -> tuple[int, ...]:
        fl = sorted(self.fallen)

        def rank(x):
            return x - sum(1 for y in fl if y < x)

        return trim(rank(x) for x in self.levels)

    def cross(self, h: int) -> tuple[int, int]:
        self._grow(h + 1)
        u, l = self.levels[h - 1], self.levels[h]
        self.levels[h - 1], self.levels[h] = l, u
        if u < l:
            self.larger[u] = self.larger.get(u, 0) + 1
        return u, l

    def fall(self, h: int) -> int:
        self._grow(h)
        a = self.levels.pop(h - 1)
        self.fallen.add(a)
        return a


LabelEvent = tuple  # ("cross", u, l) or ("fall", a)


def to_label_events(D: ExplicitDiagram) -> list[LabelEvent]:
    """Attach wire labels to every event; raises InvalidInput if D is not reduced."""
    w = Wires()
    out = []
    for t, m in enumerate(D.events):
        if m.kind == CROSS:
            u, l = w.at(m.h), w.at(m.h + 1)
            if u > l:
                raise InvalidInput(f"event {t}: wires {l} and {u} cross twice")
            w.cross(m.h)
            out.append((CROSS, u, l))
        else:
            if not w.below_all_larger(m.h):
                raise InvalidInput(f"event {t}: falling wire {w.at(m.h)} meets a smaller wire again")
            out.append((FALL, w.fall(m.h)))
    return out


def from_label_events(events: Sequence[LabelEvent]) -> ExplicitDiagram:
    w = Wires()
    out = []
    for ev in events:
        if ev[0] == CROSS:
            _, u, l = ev
            h = w.level_of(u)
            if w.at(h + 1) != l:
                raise InternalContradiction(f"wires {u} and {l} are not adjacent at {ev}")
            w.cross(h)
            out.append(Move(CROSS, h))
        else:
            h = w.level_of(ev[1])
            w.fall(h)
            out.append(Move(FALL, h))
    return ExplicitDiagram(tuple(out))


def is_reduced_diagram(D: ExplicitDiagram) -> bool:
    try:
        to_label_events(D)
    except InvalidInput:
        return False
    return True


def kappa(D: ExplicitDiagram, k: int) -> int:
    return sum(kappa_gain(m, k) for m in D.events)


@dataclass(frozen=True)
class Violation:
    index: int
    rule: str           # "S1-cross", "S1-fall" or "S2"
    info: tuple


def first_violation(D: ExplicitDiagram, k: int, n: int | None = None) -> Violation | None:
    """Earliest S1/S2 violation; with ``n`` only wires 1..n exist, else all of them."""
    n = n if n is not None else D.n_hint
    w = Wires()
    for t, m in enumerate(D.events):
        if m.kind == CROSS:
            u, l = w.at(m.h), w.at(m.h + 1)
            if m.h != k and not w.alive_between(u, l):
                return Violation(t, "S1-cross", (u, l))
            if w.larger.get(u, 0) + 1 >= k:
                return Violation(t, "S2", (u, l))
            w.cross(m.h)
        else:
            a = w.at(m.h)
            b = w.next_alive(a)
            jb = w.level_of(b)
            if jb > m.h and jb - 1 != k and (n is None or b <= n):
                between = tuple(w.at(j) for j in range(m.h + 1, jb))
                return Violation(t, "S1-fall", (a, b, between))
            w.fall(m.h)
    return None


def is_simple(D: ExplicitDiagram, k: int, n: int | None = None) -> bool:
    return is_reduced_diagram(D) and first_violation(D, k, n) is None


def _swap_labels(events: Iterable[LabelEvent], a: int, b: int) -> list[LabelEvent]:
    sw = {a: b, b: a}
    return [(ev[0],) + tuple(sw.get(x, x) for x in ev[1:]) for ev in events]


def simplify(D: ExplicitDiagram, k: int, n: int | None = None, max_rounds: int = 100_000) -> ExplicitDiagram:
    """Rewrite a reduced diagram into a simple one with the same level-k count.

    Repeatedly fixes the earliest violation: an S1 crossing is removed (the
    two wires swap roles afterwards); an S1 fall is rerouted so the falling
    wire first crosses down to its label neighbour, which falls instead; an
    S2 crossing becomes a fall of the upper wire, whose later events vanish.

    The diagram has wires 1..n (default: ``D.n_hint``, else the largest label
    it touches). A finite n matters: without a last wire, rerouting a fall
    below level k could be pushed down the tail forever.
    """
    ev = to_label_events(D)
    if n is None:
        n = D.n_hint or max((x for e in ev for x in e[1:]), default=k)
    target = kappa(D, k)
    cur = D
    for _ in range(max_rounds):
        v = first_violation(cur, k, n)
        if v is None:
            break
        i = v.index
        if v.rule == "S1-cross":
            u, l = v.info
            ev = ev[:i] + _swap_labels(ev[i + 1:], u, l)
        elif v.rule == "S1-fall":
            a, b, between = v.info
            ev = ev[:i] + [(CROSS, a, c) for c in between] + [(FALL, b)] + _swap_labels(ev[i + 1:], a, b)
        else:
            u, _ = v.info
            ev = ev[:i] + [(FALL, u)] + [e for e in ev[i + 1:] if u not in e[1:]]
        cur = from_label_events(ev)
    else:
        raise InternalContradiction("simplification did not terminate")
    if kappa(cur, k) != target:
        raise InternalContradiction(f"simplification changed the level-{k} count {target} -> {kappa(cur, k)}")
    if not is_reduced_diagram(cur):
        raise InternalContradiction("simplification produced a non-reduced diagram")
    return ExplicitDiagram(cur.events, n)


def states_of(D: ExplicitDiagram, k: int) -> list[GwdState]:
    """(f, kappa, pi) before the first event and after each one."""
    w = Wires()
    st = GwdState()
    out = [st]
    for m in D.events:
        w.cross(m.h) if m.kind == CROSS else w.fall(m.h)
        st = GwdState(w.pi(), st.f + (m.kind == FALL), st.kappa + kappa_gain(m, k))
        out.append(st)
    return out


def decode(states: Sequence[GwdState], k: int) -> list[Move]:
    """Recover the move sequence of a simple diagram from its encoding.

    Raises InternalContradiction when a step admits zero or several simple moves.
    """
    out = []
    for t, (s, s2) in enumerate(zip(states, states[1:])):
        fits = [m for m in legal_moves(s.pi, k) if apply_move(s, m, k, check=False) == s2]
        if len(fits) != 1:
            raise InternalContradiction(f"step {t}: {len(fits)} simple moves fit {s} -> {s2}")
        out.append(fits[0])
    return out


def gwd_to_path(D: ExplicitDiagram, k: int) -> MonotonePath:
    """Top-k label sets, starting with {1..k} and refreshed at each level-k meeting."""
    w = Wires()
    sets = [w.top(k)]
    for m in D.events:
        w.cross(m.h) if m.kind == CROSS else w.fall(m.h)
        if kappa_gain(m, k):
            sets.append(w.top(k))
    n = max(max(s) for s in sets)
    if D.n_hint is not None:
        n = max(n, D.n_hint)
    path = MonotonePath(k, n, tuple(sets))
    why = path_violation(path)
    if why:
        raise InternalContradiction(f"diagram does not give a monotone weakly separated path: {why}")
    return path


def random_reduced_diagram(
    k: int, steps: int, rng: random.Random, fall_prob: float = 0.2, depth: int | None = None
) -> ExplicitDiagram:
    """Uniform random reduced (not necessarily simple) moves within ``depth`` levels."""
    depth = depth or k + 3
    w = Wires()
    out = []
    for _ in range(steps):
        crosses = [h for h in range(1, depth + 1) if w.at(h) < w.at(h + 1)]
        falls = [h for h in range(1, depth + 1) if w.below_all_larger(h)]
        if falls and (not crosses or rng.random() < fall_prob):
            h = rng.choice(falls)
            w.fall(h)
            out.append(Move(FALL, h))
        elif crosses:
            h = rng.choice(crosses)
            w.cross(h)
            out.append(Move(CROSS, h))
        else:
            break
    return ExplicitDiagram(tuple(out))


def random_simple_diagram(k: int, steps: int, rng: random.Random) -> ExplicitDiagram:
    """A random walk of simple moves from the identity."""
    st = GwdState()
    out = []
    for _ in range(steps):
        m = rng.choice(legal_moves(st.pi, k))
        st = apply_move(st, m, k, check=False)
        out.append(m)
    return ExplicitDiagram(tuple(out))


# --------------------------------------------------------------------------
# the piece graph and c_k


@dataclass(frozen=True)
class Edge:
    src: int
    move: Move
    dst: int
    dk: int
    df: int


@dataclass
class PieceGraph:
    k: int
    nodes: list[tuple[int, ...]]
    edges: list[Edge]
    complete: bool = True
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {p: i for i, p in enumerate(self.nodes)}

    def out_edges(self) -> list[list[Edge]]:
        adj: list[list[Edge]] = [[] for _ in self.nodes]
        for e in self.edges:
            adj[e.src].append(e)
        return adj


def enumerate_Tk(k: int, caps: Caps | None = None, allow_partial: bool = False) -> PieceGraph:
    """BFS from the identity over simple moves.

    Checks the support bound k^2 + 2k on every state and that every crossing
    adds exactly one inversion. With ``allow_partial`` a node cap returns the
    explored subgraph (``complete=False``) instead of raising.
    """
    if k < 1:
        raise InvalidInput("k must be positive")
    caps = caps or load_caps()
    require(k <= caps.tk_max_k, f"T_k enumeration cap: k <= {caps.tk_max_k} (got {k})")
    nodes = [()]
    index = {(): 0}
    edges: list[Edge] = []
    queue = deque([()])
    complete = True
    nf = k * k + 2 * k
    while queue:
        p = queue.popleft()
        if inversion_positions(p) > nf:
            raise InternalContradiction(f"state {p} has more than {nf} positions in inversions")
        for m in legal_moves(p, k):
            q = _after(p, m)
            if m.kind == CROSS and inversions_of(q) != inversions_of(p) + 1:
                raise InternalContradiction(f"crossing {m} from {p} does not add one inversion")
            if q not in index:
                if len(nodes) >= caps.tk_max_nodes:
                    if not allow_partial:
                        raise_cap(k, caps)
                    complete = False
                    continue
                index[q] = len(nodes)
                nodes.append(q)
                queue.append(q)
            edges.append(Edge(index[p], m, index[q], kappa_gain(m, k), int(m.kind == FALL)))
    if complete and k >= 2 and len(nodes) > k ** nf:
        raise InternalContradiction(f"|T_{k}| = {len(nodes)} exceeds k^(k^2+2k)")
    G = PieceGraph(k, nodes, edges, complete, index)
    _check_fall_free_acyclic(G)
    return G


def raise_cap(k, caps):
    require(False, f"T_{k} has more than {caps.tk_max_nodes} states")


def _check_fall_free_acyclic(G: PieceGraph) -> None:
    indeg = [0] * len(G.nodes)
    adj: list[list[int]] = [[] for _ in G.nodes]
    for e in G.edges:
        if e.df == 0:
            adj[e.src].append(e.dst)
            indeg[e.dst] += 1
    queue = deque(i for i, d in enumerate(indeg) if d == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for u in adj[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                queue.append(u)
    if seen != len(G.nodes):
        raise InternalContradiction("the piece graph has a cycle without falls")


def _positive_cycle(N: int, edges: Sequence[Edge], p: int, q: int) -> list[Edge] | None:
    """A cycle with sum(q*dk - p*df) > 0, by Bellman-Ford from a virtual source."""
    dist = [0] * N
    pred: list[Edge | None] = [None] * N
    ws = [q * e.dk - p * e.df for e in edges]
    last = None
    for _ in range(N):
        last = None
        for e, w in zip(edges, ws):
            nd = dist[e.src] + w
            if nd > dist[e.dst]:
                dist[e.dst] = nd
                pred[e.dst] = e
                last = e.dst
        if last is None:
            return None
    v = last
    for _ in range(N):
        v = pred[v].src
    cyc = []
    u = v
    while True:
        e = pred[u]
        cyc.append(e)
        u = e.src
        if u == v:
            break
    cyc.reverse()
    if sum(q * e.dk - p * e.df for e in cyc) <= 0:
        raise InternalContradiction("Bellman-Ford returned a non-positive cycle")
    return cyc


def cycle_ratio(cycle: Sequence[Edge]) -> Fraction:
    falls = sum(e.df for e in cycle)
    if falls == 0:
        raise InternalContradiction("cycle without falls")
    return Fraction(sum(e.dk for e in cycle), falls)


def max_ratio_cycle(G: PieceGraph) -> tuple[Fraction, list[Edge]]:
    """Exact max of sum(dk)/sum(df) over cycles, by Stern-Brocot search.

    A simple cycle has at most |V| falls, so the optimum is p/q with
    q <= |V| =: D. For a probe m, ``pos(m)`` says the optimum exceeds m; the
    optimum equals m iff it exceeds m - 1/(den(m)*D + 1), since any other
    fraction with denominator <= D differs from m by at least 1/(den(m)*D).
    """
    _check_fall_free_acyclic(G)
    N = len(G.nodes)
    D = max(N, 1)
    edges = G.edges
    if not edges:
        raise InvalidInput("graph has no edges")

    def pos(p: int, q: int) -> list[Edge] | None:
        return _positive_cycle(N, edges, p, q)

    def cmp(p: int, q: int) -> int:
        if pos(p, q):
            return 1
        eps_q = q * D + 1
        return 0 if pos(p * eps_q - 1, q * eps_q) else -1

    if cmp(0, 1) == -1:
        raise InvalidInput("graph has no cycle")
    if cmp(0, 1) == 0:
        lam = (0, 1)
    else:
        lam = _stern_brocot(cmp)
    p, q = lam
    eps_q = q * D + 1
    cyc = pos(p * eps_q - 1, q * eps_q)
    ratio = cycle_ratio(cyc)
    if ratio != Fraction(p, q):
        raise InternalContradiction(f"extracted cycle has ratio {ratio}, expected {p}/{q}")
    return ratio, cyc


def _stern_brocot(cmp) -> tuple[int, int]:
    """Locate the positive rational x given cmp(p, q) = sign(x - p/q)."""
    lo, hi = (0, 1), (1, 0)
    while True:
        m = (lo[0] + hi[0], lo[1] + hi[1])
        c = cmp(*m)
        if c == 0:
            return m
        base, step = (lo, hi) if c > 0 else (hi, lo)
        # gallop: largest j with the probe base + j*step still on the same side
        j_good, j = 1, 2
        while True:
            probe = (base[0] + j * step[0], base[1] + j * step[1])
            cj = cmp(*probe)
            if cj == 0:
                return probe
            if cj != c:
                break
            j_good, j = j, 2 * j
        j_bad = j
        while j_bad - j_good > 1:
            mid = (j_good + j_bad) // 2
            probe = (base[0] + mid * step[0], base[1] + mid * step[1])
            cm = cmp(*probe)
            if cm == 0:
                return probe
            if cm == c:
                j_good = mid
            else:
                j_bad = mid
        new_base = (base[0] + j_good * step[0], base[1] + j_good * step[1])
        new_other = (base[0] + j_bad * step[0], base[1] + j_bad * step[1])
        if c > 0:
            lo, hi = new_base, new_other
        else:
            hi, lo = new_base, new_other


@dataclass
class CkResult:
    k: int
    value: Fraction | None
    lower: Fraction
    upper: Fraction
    exact: bool
    cycle: list[Edge]
    nodes: int
    edges: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "value": None if self.value is None else str(self.value),
            "lower": str(self.lower),
            "upper": str(self.upper),
            "exact": self.exact,
            "cycle": [str(e.move) for e in self.cycle],
            "nodes": self.nodes,
            "edges": self.edges,
        }


def compute_ck(k: int, caps: Caps | None = None, best_effort: bool = False) -> CkResult:
    """c_k from the full piece graph; in best-effort mode a node cap gives a bracket.

    The lower end is the best of the explored-subgraph ratio and a built-in
    pattern's density; every explored cycle is realisable, so it cannot
    overshoot. The upper end is the series 1 + 1/2 + 1/2 + 1/3 + ... .
    """
    G = enumerate_Tk(k, caps, allow_partial=best_effort)
    ratio, cyc = max_ratio_cycle(G)
    if G.complete:
        return CkResult(k, ratio, ratio, ratio, True, cyc, len(G.nodes), len(G.edges))
    lower = ratio
    if k <= 3:
        lower = max(lower, density(builtin_family(k).pattern))
    return CkResult(k, None, lower, series_sum(k), False, cyc, len(G.nodes), len(G.edges))


# --------------------------------------------------------------------------
# patterns from cycles


@dataclass
class ExtractedPattern:
    pattern: RepeatablePattern
    prefix: list[Move]
    prefix_falls: int
    fall_free_prefix: bool
    copies: int


def _bfs_prefix(G: PieceGraph, targets: set[int], fall_free: bool) -> tuple[int, list[Edge]] | None:
    adj = G.out_edges()
    prev: dict[int, Edge | None] = {0: None}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        if v in targets:
            path = []
            while prev[v] is not None:
                e = prev[v]
                path.append(e)
                v = e.src
            path.reverse()
            return (path[-1].dst if path else 0), path
        for e in adj[v]:
            if fall_free and e.df:
                continue
            if e.dst not in prev:
                prev[e.dst] = e
                queue.append(e.dst)
    return None


def _shift_sets(sets, t):
    return [tuple(x + t for x in s) for s in sets]


def extract_repeatable_pattern(G: PieceGraph, cycle: Sequence[Edge], k: int, max_copies: int = 12) -> ExtractedPattern:
    """Turn an optimal cycle into a repeatable pattern of the same density."""
    if not cycle:
        raise InvalidInput("empty cycle")
    on_cycle = {e.src for e in cycle}
    found = _bfs_prefix(G, on_cycle, fall_free=True)
    fall_free = found is not None
    if found is None:
        found = _bfs_prefix(G, on_cycle, fall_free=False)
        if found is None:
            raise InvalidInput("cycle is unreachable from the identity")
    entry, prefix = found
    start = next(i for i, e in enumerate(cycle) if e.src == entry)
    cyc = list(cycle[start:]) + list(cycle[:start])
    L = sum(e.dk for e in cyc)
    d = sum(e.df for e in cyc)
    if L == 0:
        raise InvalidInput("cycle has no level-k meetings")
    pre_moves = [e.move for e in prefix]
    cyc_moves = [e.move for e in cyc]

    w = Wires()
    for m in pre_moves:
        w.cross(m.h) if m.kind == CROSS else w.fall(m.h)
    last = w.top(k)
    segs: list[list[tuple[int, ...]]] = []
    befores: list[tuple[int, ...]] = []
    for _ in range(max_copies):
        befores.append(last)
        seg = []
        for m in cyc_moves:
            w.cross(m.h) if m.kind == CROSS else w.fall(m.h)
            if kappa_gain(m, k):
                seg.append(w.top(k))
        segs.append(seg)
        last = seg[-1]
        j = len(segs) - 2
        if j >= 1 and segs[j + 1] == _shift_sets(segs[j], d) and segs[j] == _shift_sets(segs[j - 1], d):
            base = [befores[j]] + segs[j]
            off = min(base[0]) - 1
            base = _shift_sets(base, -off)
            path = MonotonePath(k, max(max(s) for s in base), tuple(base))
            if tuple(x + d for x in base[0]) != base[-1]:
                raise InternalContradiction("periodic segment does not close up under the fall count")
            pat = RepeatablePattern(path, d)
            if not is_repeatable(path, d):
                raise InternalContradiction("extracted pattern is not repeatable")
            if pat.L != L or density(pat) != Fraction(L, d):
                raise InternalContradiction("extracted pattern disagrees with the cycle weights")
            return ExtractedPattern(pat, pre_moves, sum(e.df for e in prefix), fall_free, len(segs))
    raise InternalContradiction(f"no periodic tail within {max_copies} copies")


# --------------------------------------------------------------------------
# brute-force link with M(k, n)


def max_level_k_crossings(k: int, n: int, max_level: int | None = None) -> int:
    """Max level-k count over simple diagrams whose top k levels only see wires 1..n.

    Depth-limited: moves stay within ``max_level`` levels (default n + 1),
    wires above n never fall, and two wires above n never cross.
    """
    max_level = max_level or n + 1
    memo: dict = {}

    def best(levels: tuple[int, ...], fallen: frozenset) -> int:
        key = (levels, fallen)
        if key in memo:
            return memo[key]
        w = Wires()
        w.levels, w.fallen = list(levels), set(fallen)
        w.nxt = len(levels) + len(fallen) + 1
        pi = w.pi()
        out = 0
        for m in legal_moves(pi, k):
            if m.h > max_level:
                continue
            w2 = Wires()
            w2.levels, w2.fallen, w2.nxt = list(levels), set(fallen), w.nxt
            w2._grow(m.h + 1)
            if m.kind == CROSS:
                u, l = w2.levels[m.h - 1], w2.levels[m.h]
                if u > n and l > n:
                    continue
                if m.h == k and l > n:
                    continue
                w2.cross(m.h)
            else:
                a = w2.levels[m.h - 1]
                if a > n:
                    continue
                if m.h <= k and w2.at(k + 1) > n:
                    continue
                w2.fall(m.h)
            lv = list(w2.levels)
            # canonical form: drop the untouched tail
            while lv and lv[-1] == len(lv) + len(w2.fallen) and lv[-1] >= w2.nxt - 1:
                lv.pop()
                w2.nxt -= 1
            out = max(out, kappa_gain(m, k) + best(tuple(lv), frozenset(w2.fallen)))
        memo[key] = out
        return out

    return best((), frozenset())


# --------------------------------------------------------------------------
# fixed diagrams (level-based)

GENERALIZED_EXAMPLE = ExplicitDiagram.of(
    [(CROSS, 1), (FALL, 2), (CROSS, 2), (CROSS, 1), (FALL, 3), (CROSS, 2)]
)
K2_PERIOD_BLOCK = ((CROSS, 2), (CROSS, 1), (FALL, 2), (FALL, 2))


def k2_simple_diagram(repeats: int = 2) -> ExplicitDiagram:
    return ExplicitDiagram.of(list(K2_PERIOD_BLOCK) * repeats)


# six-wire diagram for k=2: crossing level in each unit time slot
K2_SIX_WIRE = ExplicitDiagram.of(
    [(CROSS, h) for h in (2, 1, 2, 3, 2, 4, 3, 2, 1, 2, 5, 4, 3, 2)], n_hint=6
)
