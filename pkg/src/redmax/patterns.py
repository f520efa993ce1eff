"""Repeatable patterns: concatenation, finite certification, built-in families.

A pattern (A_0, ..., A_L) with A_L = A_0 + d is repeatable when every
concatenation power is a monotone weakly separated path. Copies far enough
apart are order-separated (everything in one is below everything in the
other), so only the first ``m*`` copies can ever conflict; checking that
power certifies all of them.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import MonotonePath, is_weakly_separated, ksubset, parse_set, path_violation
from .errors import InvalidInput
from .search import iter_paths


class ConcatenationError(InvalidInput):
    """Concatenation produced an invalid path; ``pair`` holds the offending indices."""

    def __init__(self, msg: str, pair: tuple[int, int] | None = None):
        super().__init__(msg)
        self.pair = pair


def _shift(s, t: int) -> tuple[int, ...]:
    return tuple(x + t for x in s)


def _violating_pair(sets) -> tuple[int, int] | None:
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] == sets[j] or not is_weakly_separated(sets[i], sets[j]):
                return i, j
    for i in range(len(sets) - 1):
        a, b = set(sets[i]), set(sets[i + 1])
        if len(a - b) != 1 or not max(a - b) < min(b - a):
            return i, i + 1
    return None


def concatenate(P: MonotonePath, Q: MonotonePath, validate: bool = True) -> MonotonePath:
    """P * Q: drop P's last set and append Q shifted so its first set lands there.

    With ``validate`` a result that is not a monotone weakly separated path
    raises ConcatenationError; otherwise the raw sequence is returned.
    """
    if P.k != Q.k:
        raise InvalidInput("patterns of different k")
    t = P.sets[-1][0] - Q.sets[0][0]
    if _shift(Q.sets[0], t) != P.sets[-1]:
        raise InvalidInput(f"{Q.sets[0]} is not a translate of {P.sets[-1]}")
    sets = P.sets[:-1] + tuple(_shift(s, t) for s in Q.sets)
    if min(s[0] for s in sets) < 1:
        raise InvalidInput("concatenation leaves the positive integers")
    n = max(P.n, Q.n + t, max(max(s) for s in sets))
    out = MonotonePath(P.k, n, sets)
    if validate:
        why = path_violation(out)
        if why is not None:
            raise ConcatenationError(f"concatenation is not a valid path: {why}", _violating_pair(sets))
    return out


def power(P: MonotonePath, m: int, validate: bool = False) -> MonotonePath:
    if m < 1:
        raise InvalidInput("power needs m >= 1")
    out = P
    for _ in range(m - 1):
        out = concatenate(out, P, validate=False)
    if validate:
        why = path_violation(out)
        if why:
            raise ConcatenationError(why, _violating_pair(out.sets))
    return out


@dataclass(frozen=True)
class RepeatablePattern:
    base: MonotonePath
    d: int

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def L(self) -> int:
        return self.base.steps

    def to_json(self) -> dict:
        return {"k": self.k, "d": self.d, "sets": [list(s) for s in self.base.sets]}

    @classmethod
    def from_json(cls, data: dict | str) -> "RepeatablePattern":
        if isinstance(data, str):
            data = json.loads(data)
        sets = tuple(ksubset(s) for s in data["sets"])
        k = int(data.get("k", len(sets[0])))
        return cls(MonotonePath(k, max(max(s) for s in sets), sets), int(data["d"]))


def certification_copies(P: MonotonePath, d: int) -> int:
    """m* = ceil((max A_L - min A_0) / d) + 1."""
    return math.ceil((P.sets[-1][-1] - P.sets[0][0]) / d) + 1


def _check_shift(P: MonotonePath, d: int) -> None:
    if d <= 0:
        raise InvalidInput("shift d must be positive")
    if _shift(P.sets[0], d) != P.sets[-1]:
        raise InvalidInput(f"last set {P.sets[-1]} is not the first set shifted by {d}")


def is_repeatable(P: MonotonePath, d: int) -> bool:
    _check_shift(P, d)
    return path_violation(power(P, certification_copies(P, d))) is None


def density(pattern: RepeatablePattern) -> Fraction:
    return Fraction(pattern.L, pattern.d)


# --------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class PatternFamily:
    pattern: RepeatablePattern
    prefixes: dict = field(default_factory=dict)   # n -> MonotonePath

    @property
    def k(self) -> int:
        return self.pattern.k


def _p(text: str) -> MonotonePath:
    return MonotonePath.of(text.split("-"))


def builtin_family(k: int) -> PatternFamily:
    if k == 1:
        pat = RepeatablePattern(MonotonePath.of([(1,), (2,)]), 1)
        return PatternFamily(pat, {2: MonotonePath.of([(1,), (2,)])})
    if k == 2:
        pat = RepeatablePattern(_p("12-13-23-34"), 2)
        return PatternFamily(pat, {3: _p("12-13-23"), 4: _p("12-13-23-34")})
    if k == 3:
        pat = RepeatablePattern(_p("123-124-125-145-245-345-456-457-567-578-678-789"), 6)
        return PatternFamily(pat, {
            4: _p("123-124-134-234"),
            5: _p("123-124-125-145-245-345"),
            6: _p("123-124-125-145-245-345-456"),
            7: _p("123-124-125-145-245-345-456-457-567"),
            8: _p("123-124-125-145-245-345-456-457-567-578-678"),
            9: _p("123-124-125-145-245-345-456-457-567-578-579-589-789"),
        })
    raise InvalidInput(f"no built-in family for k={k}")


def assemble_witness(family: PatternFamily, n: int) -> MonotonePath:
    """The family's path for ground set [n]: a stored prefix, or pattern * (path for n - d)."""
    k, d = family.k, family.pattern.d
    if n < k + 1:
        raise InvalidInput(f"need n >= k+1, got n={n}")
    m = n
    reps = 0
    while m not in family.prefixes:
        m -= d
        reps += 1
        if m < min(family.prefixes, default=n + 1):
            raise InvalidInput(f"family does not cover n={n}")
    out = family.prefixes[m]
    for _ in range(reps):
        out = concatenate(family.pattern.base, out, validate=False)
    out = MonotonePath(k, n, out.sets)
    why = path_violation(out)
    if why:
        raise InvalidInput(f"assembled path for n={n} is invalid: {why}")
    if out.sets[0] != tuple(range(1, k + 1)) or out.sets[-1] != tuple(range(n - k + 1, n + 1)):
        raise InvalidInput(f"assembled path for n={n} has wrong endpoints")
    return out


def expected_terms(k: int, n: int) -> int:
    if k == 1:
        return n
    if k == 2:
        return math.ceil(3 * n / 2) - 2
    if k == 3:
        return math.ceil(11 * n / 6) - 4
    raise InvalidInput(f"no closed form for k={k}")


def search_patterns(k: int, span: int, max_paths: int | None = None) -> list[RepeatablePattern]:
    """Repeatable patterns starting at {1..k} that stay inside [1, span]."""
    out = []
    for path in iter_paths(k, span, complete=False, max_paths=max_paths):
        if path.steps == 0:
            continue
        t = path.sets[-1][0] - path.sets[0][0]
        if t > 0 and _shift(path.sets[0], t) == path.sets[-1] and is_repeatable(path, t):
            out.append(RepeatablePattern(path, t))
    return out


def parse_pattern(text: str, d: int) -> RepeatablePattern:
    sets = tuple(parse_set(s) for s in text.split("-"))
    return RepeatablePattern(MonotonePath(len(sets[0]), max(max(s) for s in sets), sets), d)
