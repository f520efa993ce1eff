"""Arc diagrams of monotone paths, exact weights, and the k=3 decomposition.

Arcs are the (removed, added) pairs of a path's steps. Each arc (i, j)
spreads a unit of weight evenly over [i, j], so any interval collects the
covered fraction of every arc. Everything here is exact ``Fraction``
arithmetic; ties at the 11/6 limit matter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import MonotonePath, require_valid
from .errors import InternalContradiction, InvalidInput, Unsupported

Arc = tuple[int, int]
Interval = tuple[int, int]

LIMIT = Fraction(11, 6)


@dataclass(frozen=True)
class ArcDiagram:
    n: int
    arcs: frozenset[Arc]

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        for i, j in self.arcs:
            if not 1 <= i < j <= self.n:
                raise InvalidInput(f"bad arc {(i, j)} for n={self.n}")

    def __contains__(self, arc) -> bool:
        i, j = arc
        return (min(i, j), max(i, j)) in self.arcs

    def unit_weights(self) -> list[Fraction]:
        """wt([i, i+1]) for i = 1..n-1 (index 0 holds [1, 2])."""
        out = [Fraction(0)] * (self.n - 1)
        for i, j in self.arcs:
            share = Fraction(1, j - i)
            for u in range(i, j):
                out[u - 1] += share
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": sorted(list(a) for a in self.arcs)}


@dataclass(frozen=True)
class BicoloredArcDiagram:
    n: int
    black_arcs: tuple[Arc, ...]       # the C-sequence, in path order
    red_arcs: frozenset[Arc]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "black_arcs": [list(a) for a in self.black_arcs],
            "red_arcs": sorted(list(a) for a in self.red_arcs),
        }


@dataclass
class Decomposition:
    intervals: list[Interval]
    # (case label, H interval) per interval group, for reporting
    cases: list[tuple[str, Interval]] = field(default_factory=list)


def build_arc_diagram(path: MonotonePath) -> ArcDiagram:
    require_valid(path)
    return ArcDiagram(path.n, frozenset(path.swaps()))


def _check_interval(n: int, a, b) -> None:
    if not (1 <= a <= b <= n):
        raise InvalidInput(f"interval [{a}, {b}] not inside [1, {n}]")


def weight(D: ArcDiagram, a, b) -> Fraction:
    """Weight collected by [a, b]; endpoints may be rationals."""
    a, b = Fraction(a), Fraction(b)
    _check_interval(D.n, a, b)
    total = Fraction(0)
    for i, j in D.arcs:
        lo, hi = max(a, i), min(b, j)
        if hi > lo:
            total += Fraction(hi - lo) / (j - i)
    return total


def _unit_limit(n: int, i: int) -> Fraction:
    if i in (1, n - 1):
        return Fraction(1)
    if i in (2, n - 2):
        return Fraction(3, 2)
    return LIMIT


def wtlim(n: int, a: int, b: int) -> Fraction:
    """Sum of the per-unit limits over [a, b] (k=3 only, n >= 6)."""
    if n < 6:
        raise Unsupported("weight limits are defined for n >= 6")
    if int(a) != a or int(b) != b:
        raise InvalidInput("wtlim needs integer endpoints")
    _check_interval(n, a, b)
    return sum((_unit_limit(n, i) for i in range(a, b)), Fraction(0))


def segments(D: ArcDiagram) -> tuple[list[Interval], list[Interval]]:
    """Maximal runs (L list, H list): H units exceed their limit, L units do not.

    Always returns len(L) == len(H) + 1. The caller decides what an empty
    diagram or an all-H diagram means.
    """
    n = D.n
    ws = D.unit_weights()
    over = [ws[i - 1] > _unit_limit(n, i) for i in range(1, n)]
    L: list[Interval] = []
    H: list[Interval] = []
    start, state = 1, over[0] if over else False
    for i in range(2, n):
        if over[i - 1] != state:
            (H if state else L).append((start, i))
            start, state = i, over[i - 1]
    (H if state else L).append((start, n))
    if over and over[0]:
        L.insert(0, (1, 1))
    if over and over[-1]:
        L.append((n, n))
    return L, H


def decompose(D: ArcDiagram) -> Decomposition:
    """Run the case analysis on every over-limit run and verify the result.

    Raises InternalContradiction for an over-limit run longer than 4, an
    interval leaving [1, n], overlapping intervals, or an interval above
    its limit.
    """
    n = D.n
    if n in (4, 5):
        return Decomposition([])
    if n < 4:
        raise Unsupported("decompose needs n >= 4")
    L, H = segments(D)
    out: list[Interval] = []
    cases: list[tuple[str, Interval]] = []

    def add(label: str, h: Interval, *ivs: Interval) -> None:
        for a, b in ivs:
            if not 1 <= a < b <= n:
                raise InternalContradiction(f"case {label} at {h} asks for [{a}, {b}] outside [1, {n}]")
            out.append((a, b))
            cases.append((label, h))

    for h in H:
        a, end = h
        mu = end - a
        left = (a - 1, a) in D
        if mu == 4:
            add("1", h, (a - 1, a + 2), (a + 2, a + 5))
        elif mu == 3:
            add("2.2", h, (a, a + 4)) if left else add("2.1", h, (a - 1, a + 3))
        elif mu == 2:
            if not left:
                add("3.1", h, (a - 1, a + 2))
            elif (a + 2, a + 3) not in D:
                add("3.2", h, (a, a + 3))
            else:
                add("3.3", h, (a - 2, a + 1), (a + 1, a + 4))
        elif mu == 1:
            if not left:
                add("4.1", h, (a - 1, a + 1))
            elif (a + 1, a + 2) not in D:
                add("4.2", h, (a, a + 2))
            else:
                if a - 2 < 1:
                    raise InternalContradiction(f"case 4.3 at {h} needs [{a - 2}, {a + 1}]")
                if weight(D, a - 2, a + 1) <= wtlim(n, a - 2, a + 1):
                    add("4.3", h, (a - 2, a + 1))
                else:
                    add("4.3", h, (a, a + 3))
        else:
            raise InternalContradiction(f"over-limit run {h} has length {mu} > 4")
    result = Decomposition(out, cases)
    why = decomposition_violation(D, result)
    if why:
        raise InternalContradiction(why)
    return result


def decomposition_violation(D: ArcDiagram, dec: Decomposition) -> str | None:
    ivs = sorted(dec.intervals)
    for (a, b), (c, d) in zip(ivs, ivs[1:]):
        if c < b:
            return f"intervals [{a}, {b}] and [{c}, {d}] overlap"
    for a, b in ivs:
        if weight(D, a, b) > wtlim(D.n, a, b):
            return f"interval [{a}, {b}] has weight {weight(D, a, b)} > limit {wtlim(D.n, a, b)}"
    return None


def covered_bound_holds(D: ArcDiagram, dec: Decomposition) -> bool:
    """Units outside the intervals respect their limits, so wt([1,n]) <= wtlim([1,n])."""
    inside = set()
    for a, b in dec.intervals:
        inside.update(range(a, b))
    ws = D.unit_weights()
    return all(ws[i - 1] <= _unit_limit(D.n, i) for i in range(1, D.n) if i not in inside)


# --------------------------------------------------------------------------
# structural predicates for k=3 diagrams


def has_nine_arc_configuration(D: ArcDiagram) -> int | None:
    """Smallest i where all nine arcs (i,i+1)..(i+4,i+5), (i,i+2)..(i+3,i+5) occur."""
    for i in range(1, D.n - 4):
        need = [(i + t, i + t + 1) for t in range(5)] + [(i + t, i + t + 2) for t in range(4)]
        if all(a in D.arcs for a in need):
            return i
    return None


def exceeding_weights_are_two(D: ArcDiagram) -> bool:
    ws = D.unit_weights()
    return all(w == 2 for i, w in enumerate(ws, start=1) if w > _unit_limit(D.n, i))


def lengths_violation(D: ArcDiagram) -> str | None:
    """Check the run-length restrictions on the L/H segmentation (n >= 6)."""
    L, H = segments(D)
    if not H:
        return None
    mu = lambda iv: iv[1] - iv[0]  # noqa: E731
    if mu(L[0]) < 2:
        return f"first low run {L[0]} shorter than 2"
    if mu(L[-1]) < 2:
        return f"last low run {L[-1]} shorter than 2"
    for iv in L[1:-1]:
        if mu(iv) < 3:
            return f"interior low run {iv} shorter than 3"
    for iv in H:
        if mu(iv) > 4:
            return f"high run {iv} longer than 4"
    return None


def c_sequence(path: MonotonePath) -> tuple[Arc, ...]:
    return tuple((x, y) for x, y in path.swaps())


def build_bicolored(path: MonotonePath) -> BicoloredArcDiagram:
    if path.k != 3:
        raise InvalidInput("bicolored diagrams are defined for k=3")
    require_valid(path)
    C = c_sequence(path)
    black = set(C)
    red: set[Arc] = set()
    for (a, b), (c, d) in zip(C, C[1:]):
        for u, v in ((b, c), (a, d)):
            if u == v:
                continue
            e = (min(u, v), max(u, v))
            if e in black or e in red:
                raise InternalContradiction(f"red arc {e} duplicates an existing arc")
            red.add(e)
    return BicoloredArcDiagram(path.n, C, frozenset(red))


def consecutive_outcome(c1: Arc, c2: Arc) -> str | None:
    """Which of the six allowed shapes two consecutive arcs form, or None."""
    (a, b), (c, d) = sorted(c1), sorted(c2)
    if a < b == c < d:
        return "i"
    if c < d == a < b:
        return "ii"
    if a < c < b < d:
        return "iii"
    if c < a < d < b:
        return "iv"
    if a < c < d < b:
        return "v"
    if c < a < b < d:
        return "vi"
    return None


def check_consecutive_configurations(path_or_arcs: MonotonePath | Sequence[Arc]) -> bool:
    C = c_sequence(path_or_arcs) if isinstance(path_or_arcs, MonotonePath) else tuple(path_or_arcs)
    return all(consecutive_outcome(x, y) is not None for x, y in zip(C, C[1:]))


# --------------------------------------------------------------------------
# SVG


def render_svg(D: ArcDiagram | BicoloredArcDiagram, scale: int = 40) -> str:
    """Vertices at x = i on a baseline, arcs as upper semicircles."""
    if isinstance(D, BicoloredArcDiagram):
        groups = [("black", sorted(set(D.black_arcs))), ("red", sorted(D.red_arcs))]
    else:
        groups = [("black", sorted(D.arcs))]
    n = D.n
    span = max((j - i for _, arcs in groups for i, j in arcs), default=0)
    pad = scale // 2
    width = (n - 1) * scale + 2 * pad
    base = span * scale // 2 + pad
    height = base + pad + 14
    x = lambda i: pad + (i - 1) * scale  # noqa: E731
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<style>.arc{fill:none;stroke-width:1.5}.black{stroke:#000}.red{stroke:#c00;stroke-dasharray:4 2}"
        ".v{fill:#000}text{font:11px sans-serif;text-anchor:middle}</style>",
        f'<line x1="{x(1)}" y1="{base}" x2="{x(n)}" y2="{base}" stroke="#999" stroke-width="0.5"/>',
    ]
    for color, arcs in groups:
        for i, j in arcs:
            r = (j - i) * scale / 2
            lines.append(
                f'<path class="arc {color}" d="M {x(i)} {base} A {r:g} {r:g} 0 0 1 {x(j)} {base}"/>'
            )
    for i in range(1, n + 1):
        lines.append(f'<circle class="v" cx="{x(i)}" cy="{base}" r="3"/>')
        lines.append(f'<text x="{x(i)}" y="{base + 14}">{i}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
