import random
from itertools import permutations

import pytest

from permkit import perm_core as pc


def random_perm(rng, n):
    word = list(range(1, n + 1))
    rng.shuffle(word)
    return tuple(word)


def naive_inversions(p):
    return sum(
        1
        for i in range(len(p))
        for j in range(i + 1, len(p))
        if p[i] > p[j]
    )


class TestWordBasics:
    def test_identity(self):
        assert pc.identity(4) == (1, 2, 3, 4)

    def test_parse_rejects_bad_words(self):
        for text in ["1 1 2", "0 1 2", "1 3", "-1 2", "", "a b"]:
            with pytest.raises(ValueError):
                pc.parse_perm(text)

    def test_parse_format_round_trip(self):
        assert pc.parse_perm("4 2 1 3 7 5 6") == (4, 2, 1, 3, 7, 5, 6)
        assert pc.format_perm((4, 2, 1, 3)) == "4 2 1 3"


class TestCompose:
    def test_identity_neutral(self):
        rng = random.Random(11)
        for n in (1, 4, 9):
            p = random_perm(rng, n)
            assert pc.compose(pc.identity(n), p) == p
            assert pc.compose(p, pc.identity(n)) == p

    def test_inverse_cancels(self):
        rng = random.Random(12)
        for _ in range(20):
            p = random_perm(rng, 8)
            assert pc.compose(p, pc.inverse(p)) == pc.identity(8)
            assert pc.compose(pc.inverse(p), p) == pc.identity(8)

    def test_pointwise_convention(self):
        # result maps i to q(p(i)): i=1 goes p(1)=2 then q(2)=3
        assert pc.compose((2, 1, 3), (1, 3, 2)) == (3, 1, 2)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            pc.compose((1, 2), (1, 2, 3))


class TestInverse:
    def test_identity(self):
        assert pc.inverse(pc.identity(5)) == pc.identity(5)

    def test_three_cycle(self):
        assert pc.inverse((2, 3, 1)) == (3, 1, 2)

    def test_involution(self):
        rng = random.Random(13)
        for _ in range(20):
            p = random_perm(rng, 10)
            assert pc.inverse(pc.inverse(p)) == p


class TestInversions:
    def test_identity_and_reversal(self):
        for n in range(1, 9):
            assert pc.inversions(pc.identity(n)) == 0
            assert pc.inversions(tuple(range(n, 0, -1))) == n * (n - 1) // 2

    def test_matches_naive_pair_count(self):
        rng = random.Random(14)
        for _ in range(50):
            n = rng.randint(1, 12)
            p = random_perm(rng, n)
            assert pc.inversions(p) == naive_inversions(p)


class TestParity:
    def test_identity_even(self):
        assert pc.parity(pc.identity(6)) == 0

    def test_adjacent_swap_odd(self):
        assert pc.parity((2, 1, 3, 4)) == 1

    def test_homomorphism(self):
        rng = random.Random(15)
        for _ in range(30):
            p = random_perm(rng, 7)
            q = random_perm(rng, 7)
            assert pc.parity(pc.compose(p, q)) == pc.parity(p) ^ pc.parity(q)


class TestKendallDistance:
    def test_zero_on_equal(self):
        rng = random.Random(16)
        p = random_perm(rng, 9)
        assert pc.kendall_distance(p, p) == 0

    def test_adjacent_swap(self):
        for n in (3, 5, 8):
            swapped = (2, 1) + tuple(range(3, n + 1))
            assert pc.kendall_distance(pc.identity(n), swapped) == 1

    def test_size4_code_words_at_sixty(self):
        a1 = (1, 6, 7, 12, 14, 13, 11, 10, 9, 8, 5, 4, 3, 2)
        a2 = (2, 5, 8, 11, 14, 13, 12, 10, 9, 7, 6, 4, 3, 1)
        assert pc.kendall_distance(a1, a2) == 60

    def test_fast_equals_naive_exhaustive_s4(self):
        words = list(permutations(range(1, 5)))
        for p in words:
            for q in words:
                assert pc.kendall_distance(p, q) == pc.kendall_distance_naive(p, q)

    def test_fast_equals_naive_random(self):
        rng = random.Random(17)
        for _ in range(200):
            n = rng.randint(2, 12)
            p, q = random_perm(rng, n), random_perm(rng, n)
            assert pc.kendall_distance(p, q) == pc.kendall_distance_naive(p, q)

    def test_naive_reversal(self):
        for n in (4, 7, 10):
            rev = tuple(range(n, 0, -1))
            assert pc.kendall_distance_naive(pc.identity(n), rev) == n * (n - 1) // 2

    def test_distance_from_identity_is_inversions(self):
        for p in permutations(range(1, 7)):
            assert pc.kendall_distance(pc.identity(6), p) == pc.inversions(p)


class TestMetricProperties:
    def test_right_invariance(self):
        rng = random.Random(18)
        for _ in range(50):
            n = rng.randint(2, 10)
            s, p, r = (random_perm(rng, n) for _ in range(3))
            assert pc.kendall_distance(s, p) == pc.kendall_distance(
                pc.compose(s, r), pc.compose(p, r)
            )

    def test_metric_axioms(self):
        rng = random.Random(19)
        for _ in range(50):
            n = rng.randint(2, 9)
            a, b, c = (random_perm(rng, n) for _ in range(3))
            assert pc.kendall_distance(a, b) == pc.kendall_distance(b, a)
            assert (pc.kendall_distance(a, b) == 0) == (a == b)
            assert pc.kendall_distance(a, c) <= (
                pc.kendall_distance(a, b) + pc.kendall_distance(b, c)
            )

    def test_parity_law_s5(self):
        # distance parity equals the parity sum, exhaustively on S_5
        words = list(permutations(range(1, 6)))
        parities = [pc.parity(w) for w in words]
        for i, p in enumerate(words):
            for j, q in enumerate(words):
                assert pc.kendall_distance(p, q) % 2 == (parities[i] + parities[j]) % 2


class TestOrderMask:
    def test_mask_xor_popcount_is_distance(self):
        rng = random.Random(20)
        for _ in range(100):
            n = rng.randint(2, 11)
            p, q = random_perm(rng, n), random_perm(rng, n)
            xor = pc.order_mask(p) ^ pc.order_mask(q)
            assert xor.bit_count() == pc.kendall_distance_naive(p, q)

    def test_mask_of_identity_is_zero(self):
        assert pc.order_mask(pc.identity(8)) == 0


class TestLehmer:
    def test_rank_is_lex_position(self):
        for rank, word in enumerate(permutations(range(1, 6))):
            assert pc.lehmer_rank(word) == rank
            assert pc.lehmer_unrank(5, rank) == word

    def test_unrank_range_check(self):
        with pytest.raises(ValueError):
            pc.lehmer_unrank(3, 6)


class TestPermCode:
    def test_rejects_mixed_lengths(self):
        with pytest.raises(ValueError):
            pc.PermCode(3, 1, ((1, 2, 3), (1, 2)))

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            pc.PermCode(3, 1, ((1, 2, 3), (1, 2, 3)))

    def test_minimum_distance_small(self):
        words = ((1, 2, 3, 4), (4, 3, 2, 1), (2, 1, 3, 4))
        assert pc.minimum_distance(words) == 1

    def test_minimum_distance_bulk_matches_pairwise(self):
        rng = random.Random(21)
        words = set()
        while len(words) < 80:
            words.add(random_perm(rng, 6))
        words = tuple(sorted(words))
        expected = min(
            pc.kendall_distance_naive(words[i], words[j])
            for i in range(len(words))
            for j in range(i + 1, len(words))
        )
        assert pc.minimum_distance(words) == expected

    def test_verify_code(self):
        good = pc.PermCode(4, 4, ((1, 2, 3, 4), (4, 3, 2, 1)))
        assert pc.verify_code(good) == (True, 6)
        bad = pc.PermCode(4, 7, ((1, 2, 3, 4), (4, 3, 2, 1)))
        assert pc.verify_code(bad) == (False, 6)
        single = pc.PermCode(4, 5, ((1, 2, 3, 4),))
        assert pc.verify_code(single) == (True, None)
