"""Permutations, reduced words, k-subsets and monotone weakly separated paths.

Conventions: permutations are one-line tuples of 1..n; the generator ``s_i``
acts on the right, swapping positions ``i`` and ``i+1``. A k-subset is a
sorted tuple of distinct positive integers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInput

KSubset = tuple[int, ...]


def ksubset(elems: Iterable[int]) -> KSubset:
    s = tuple(sorted(elems))
    if len(set(s)) != len(s) or (s and s[0] < 1):
        raise InvalidInput(f"not a set of positive integers: {s}")
    return s


def parse_set(text: str | Sequence[int]) -> KSubset:
    """``"124"`` or ``[1, 2, 4]`` -> ``(1, 2, 4)``. Digit strings only cover 1..9."""
    if isinstance(text, str):
        return ksubset(int(c) for c in text)
    return ksubset(text)


# --------------------------------------------------------------------------
# permutations and words


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def longest_permutation(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def inversions(perm: Sequence[int]) -> int:
    """Inversion count, O(n log n) via a Fenwick tree."""
    n = len(perm)
    tree = [0] * (n + 1)
    inv = 0
    for v in reversed(perm):
        i = v - 1
        while i > 0:
            inv += tree[i]
            i -= i & -i
        i = v
        while i <= n:
            tree[i] += 1
            i += i & -i
    return inv


def is_permutation(perm: Sequence[int]) -> bool:
    return sorted(perm) == list(range(1, len(perm) + 1))


@dataclass(frozen=True)
class Word:
    """A word in the generators s_1..s_{n-1} of S_n."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.n < 1:
            raise InvalidInput("n must be positive")
        for i in self.letters:
            if not 1 <= i <= self.n - 1:
                raise InvalidInput(f"generator s_{i} out of range for n={self.n}")

    def __len__(self):
        return len(self.letters)

    def count(self, k: int) -> int:
        return self.letters.count(k)

    def product(self) -> tuple[int, ...]:
        return apply_word(identity(self.n), self.letters)

    def to_json(self) -> dict:
        return {"n": self.n, "letters": list(self.letters)}

    @classmethod
    def from_json(cls, data: dict | str) -> "Word":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["n"]), tuple(int(i) for i in data["letters"]))


def apply_word(perm: Sequence[int], letters: Iterable[int]) -> tuple[int, ...]:
    w = list(perm)
    for i in letters:
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def is_reduced(word: Word) -> bool:
    """A word is reduced iff its letter count equals the inversion count of its product."""
    return inversions(word.product()) == len(word.letters)


# --------------------------------------------------------------------------
# weak separation and paths


def is_weakly_separated(I: Sequence[int], J: Sequence[int]) -> bool:
    if len(I) != len(J):
        raise InvalidInput(f"size mismatch: {tuple(I)} vs {tuple(J)}")
    si, sj = set(I), set(J)
    a, b = si - sj, sj - si
    if not a:
        return True
    return max(a) < min(b) or max(b) < min(a)


@dataclass(frozen=True)
class MonotonePath:
    """Sequence of k-subsets A_0, ..., A_N of [n]."""

    k: int
    n: int
    sets: tuple[KSubset, ...]

    def __post_init__(self):
        sets = tuple(ksubset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise InvalidInput("a path has at least one set")
        for s in sets:
            if len(s) != self.k:
                raise InvalidInput(f"{s} does not have size k={self.k}")
            if s[-1] > self.n:
                raise InvalidInput(f"{s} not inside [1, {self.n}]")

    @classmethod
    def of(cls, sets: Iterable[Iterable[int] | str], n: int | None = None) -> "MonotonePath":
        sets = tuple(parse_set(s) for s in sets)
        if n is None:
            n = max(max(s) for s in sets)
        return cls(len(sets[0]), n, sets)

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    @property
    def steps(self) -> int:
        return len(self.sets) - 1

    def swaps(self) -> list[tuple[int, int]]:
        """(removed x, added y) for every step."""
        out = []
        for a, b in zip(self.sets, self.sets[1:]):
            gone = set(a) - set(b)
            new = set(b) - set(a)
            if len(gone) != 1 or len(new) != 1:
                raise InvalidInput(f"step {a} -> {b} is not a single swap")
            out.append((gone.pop(), new.pop()))
        return out

    def shifted(self, t: int) -> "MonotonePath":
        return MonotonePath(self.k, self.n + t, tuple(tuple(x + t for x in s) for s in self.sets))

    def compact(self) -> str:
        if self.n <= 9:
            return "-".join("".join(map(str, s)) for s in self.sets)
        return " - ".join("{" + ",".join(map(str, s)) + "}" for s in self.sets)

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "sets": [list(s) for s in self.sets]}

    @classmethod
    def from_json(cls, data: dict | str) -> "MonotonePath":
        if isinstance(data, str):
            data = json.loads(data)
        sets = tuple(tuple(int(x) for x in s) for s in data["sets"])
        k = int(data.get("k", len(sets[0])))
        n = int(data.get("n", max(max(s) for s in sets)))
        return cls(k, n, sets)


def path_violation(path: MonotonePath) -> str | None:
    """First reason ``path`` is not a monotone weakly separated path, or None."""
    sets = path.sets
    for j, (a, b) in enumerate(zip(sets, sets[1:])):
        gone = set(a) - set(b)
        new = set(b) - set(a)
        if len(gone) != 1 or len(new) != 1:
            return f"step {j}: {a} -> {b} is not a single swap"
        if not max(gone) < min(new):
            return f"step {j}: {a} -> {b} is not monotone"
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] == sets[j] or not is_weakly_separated(sets[i], sets[j]):
                return f"sets {i} and {j} ({sets[i]}, {sets[j]}) are not weakly separated"
    return None


def validate_path(path: MonotonePath) -> bool:
    return path_violation(path) is None


def require_valid(path: MonotonePath) -> None:
    why = path_violation(path)
    if why is not None:
        raise InvalidInput(f"invalid monotone weakly separated path: {why}")


# --------------------------------------------------------------------------
# the word <-> path correspondence


def word_to_path(word: Word, k: int) -> MonotonePath:
    """Top-k value sets of the prefixes ending at each occurrence of s_k."""
    if not 1 <= k <= word.n - 1:
        raise InvalidInput(f"k={k} out of range for n={word.n}")
    if not is_reduced(word):
        raise InvalidInput("word is not reduced")
    w = list(range(1, word.n + 1))
    sets = [tuple(range(1, k + 1))]
    for i in word.letters:
        w[i - 1], w[i] = w[i], w[i - 1]
        if i == k:
            sets.append(tuple(sorted(w[:k])))
    return MonotonePath(k, word.n, tuple(sets))


def path_to_word(path: MonotonePath, n: int | None = None) -> Word:
    """A reduced word whose s_k-path is ``path`` (which must start at {1..k}).

    Each step moving x out and y in is realised by carrying x down to
    position k, carrying y up to position k+1 and applying s_k.
    """
    k = path.k
    n = path.n if n is None else n
    if path.sets[0] != tuple(range(1, k + 1)):
        raise InvalidInput("path must start at {1..k}")
    require_valid(path)
    if n < k:
        raise InvalidInput("need n >= k")
    w = list(range(1, n + 1))
    pos = {v: i + 1 for i, v in enumerate(w)}
    letters: list[int] = []

    def s(i: int) -> None:
        u, v = w[i - 1], w[i]
        w[i - 1], w[i] = v, u
        pos[u], pos[v] = i + 1, i
        letters.append(i)

    for x, y in path.swaps():
        a, b = pos[x], pos[y]
        for i in range(a, k):
            s(i)
        for i in range(b - 1, k, -1):
            s(i)
        s(k)
    return Word(n, tuple(letters))


def complete_to_w0(word: Word) -> Word:
    """Extend a reduced word to a reduced word of the longest permutation.

    Greedily appends the smallest ascent generator; each append adds one
    inversion, so the result is reduced with ``word`` as a prefix.
    """
    if not is_reduced(word):
        raise InvalidInput("word is not reduced")
    w = list(word.product())
    letters = list(word.letters)
    n = word.n
    i = 1
    while i < n:
        if w[i - 1] < w[i]:
            w[i - 1], w[i] = w[i], w[i - 1]
            letters.append(i)
            i = max(1, i - 1)
        else:
            i += 1
    return Word(n, tuple(letters))


def complement_reflect(path: MonotonePath) -> MonotonePath:
    """Map A -> {n+1-a : a not in A}; a monotone weakly separated path for n-k."""
    n = path.n
    full = set(range(1, n + 1))
    sets = tuple(tuple(sorted(n + 1 - a for a in full - set(s))) for s in path.sets)
    return MonotonePath(n - path.k, n, sets)
