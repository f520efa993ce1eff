import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from redmax import InvalidInput
from redmax.core import (
    MonotonePath,
    Word,
    complete_to_w0,
    inversions,
    is_reduced,
    is_weakly_separated,
    longest_permutation,
    path_to_word,
    path_violation,
    validate_path,
    word_to_path,
)
from redmax.search import iter_paths

W0_6 = Word(6, (3, 2, 1, 3, 2, 3, 4, 3, 5, 4, 3, 2, 1, 3, 2))
G_WD = MonotonePath.of("123-124-134-234-345-346-456".split("-"))


class TestWeakSeparation:
    def test_crossing_pair(self):
        assert not is_weakly_separated((1, 3), (2, 4))

    def test_equal(self):
        assert is_weakly_separated((1, 2), (1, 2))

    def test_nested_difference(self):
        assert is_weakly_separated((1, 2, 4), (1, 3, 4))

    def test_size_mismatch(self):
        with pytest.raises(InvalidInput):
            is_weakly_separated((1, 2), (1, 2, 3))

    def test_not_transitive(self):
        # 13 ~ 23 ~ 24 but 13 and 24 interleave
        assert is_weakly_separated((1, 3), (2, 3))
        assert is_weakly_separated((2, 3), (2, 4))
        assert not is_weakly_separated((1, 3), (2, 4))

    @given(st.sets(st.integers(1, 9), min_size=3, max_size=3),
           st.sets(st.integers(1, 9), min_size=3, max_size=3))
    def test_symmetric(self, a, b):
        a, b = sorted(a), sorted(b)
        assert is_weakly_separated(a, b) == is_weakly_separated(b, a)


class TestValidatePath:
    def test_example_path(self):
        assert validate_path(G_WD)

    def test_interleaving_pair_reported(self):
        P = MonotonePath.of(["12", "13", "23", "24", "34"])
        assert not validate_path(P)
        assert "(1, 3)" in path_violation(P) and "(2, 4)" in path_violation(P)

    def test_single_set(self):
        assert validate_path(MonotonePath.of(["123"]))

    def test_non_monotone_step(self):
        assert not validate_path(MonotonePath.of(["13", "12"]))

    def test_repeated_set(self):
        assert not validate_path(MonotonePath.of(["12", "12"]))


class TestReduced:
    def test_repeat(self):
        assert not is_reduced(Word(3, (1, 1)))

    def test_example_word(self):
        assert is_reduced(W0_6)
        assert W0_6.product() == longest_permutation(6)

    def test_empty(self):
        assert is_reduced(Word(4, ()))

    def test_letter_out_of_range(self):
        with pytest.raises(InvalidInput):
            Word(3, (3,))

    def test_inversions(self):
        assert inversions((3, 2, 1)) == 3
        assert inversions((1, 2, 3)) == 0


class TestWordToPath:
    def test_example(self):
        assert word_to_path(W0_6, 3) == G_WD

    def test_empty_word(self):
        assert word_to_path(Word(4, ()), 2).sets == ((1, 2),)

    def test_k1_singletons(self):
        P = word_to_path(Word(5, (1, 2, 3, 4)), 1)
        assert P.sets == ((1,), (2,))
        P = word_to_path(Word(4, (1, 2, 1, 3, 2, 1)), 1)
        assert P.sets == ((1,), (2,), (3,), (4,))

    def test_rejects_non_reduced(self):
        with pytest.raises(InvalidInput):
            word_to_path(Word(3, (2, 2)), 2)

    def test_count_link_random(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(2, 8)
            w = complete_to_w0(Word(n, ()))
            # random reduced word of w0 by shuffling greedy choices
            letters, perm = [], list(range(1, n + 1))
            while True:
                asc = [i for i in range(1, n) if perm[i - 1] < perm[i]]
                if not asc:
                    break
                i = rng.choice(asc)
                perm[i - 1], perm[i] = perm[i], perm[i - 1]
                letters.append(i)
            w = Word(n, tuple(letters))
            assert is_reduced(w)
            for k in range(1, n):
                assert len(word_to_path(w, k)) - 1 == w.count(k)


class TestPathToWord:
    def test_example_roundtrip(self):
        w = path_to_word(G_WD)
        assert is_reduced(w)
        assert word_to_path(w, 3) == G_WD

    def test_single_set(self):
        assert path_to_word(MonotonePath.of(["12"])).letters == ()

    def test_one_step(self):
        w = path_to_word(MonotonePath.of(["12", "13"]))
        assert w.letters[-1] == 2
        assert word_to_path(w, 2).sets == ((1, 2), (1, 3))

    def test_invalid(self):
        with pytest.raises(InvalidInput):
            path_to_word(MonotonePath.of(["12", "13", "23", "24", "34"]))

    def test_wrong_start(self):
        with pytest.raises(InvalidInput):
            path_to_word(MonotonePath.of(["13", "23"]))

    @pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 8) for k in range(1, min(n, 4))])
    def test_roundtrip_all(self, k, n):
        count = 0
        for P in iter_paths(k, n, complete=False):
            w = path_to_word(P)
            assert is_reduced(w)
            assert word_to_path(w, k) == P
            count += 1
        assert count >= 1


class TestCompleteToW0:
    def test_empty(self):
        w = complete_to_w0(Word(3, ()))
        assert len(w) == 3 and w.product() == (3, 2, 1)

    def test_prefix(self):
        w = complete_to_w0(Word(3, (2,)))
        assert w.letters == (2, 1, 2)

    def test_already_full(self):
        assert complete_to_w0(W0_6) == W0_6

    @pytest.mark.parametrize("n", range(2, 7))
    def test_keeps_prefix_and_count(self, n):
        for letters in itertools.product(range(1, n), repeat=min(3, n)):
            w = Word(n, letters)
            if not is_reduced(w):
                continue
            full = complete_to_w0(w)
            assert full.letters[: len(letters)] == letters
            assert is_reduced(full) and full.product() == longest_permutation(n)
            for k in range(1, n):
                assert full.count(k) >= w.count(k)


def test_json_roundtrip():
    assert MonotonePath.from_json(G_WD.to_json()) == G_WD
    assert Word.from_json(W0_6.to_json()) == W0_6
