import random
from itertools import permutations
from math import comb, factorial

import pytest

from permkit import balls
from permkit.perm_core import identity, inversions, kendall_distance


class TestMahonianTable:
    def test_s3_row(self):
        assert balls.mahonian_table(3).counts == (1, 2, 2, 1)

    def test_shell_count_531(self):
        assert balls.mahonian_table(7).counts[12] == 531

    def test_rows_sum_to_factorial(self):
        for n in range(1, 13):
            assert sum(balls.mahonian_table(n).counts) == factorial(n)

    def test_symmetry(self):
        for n in range(2, 13):
            counts = balls.mahonian_table(n).counts
            top = comb(n, 2)
            assert all(counts[k] == counts[top - k] for k in range(top + 1))

    def test_matches_direct_enumeration(self):
        for n in range(1, 7):
            histogram = [0] * (comb(n, 2) + 1)
            for p in permutations(range(1, n + 1)):
                histogram[inversions(p)] += 1
            assert balls.mahonian_table(n).counts == tuple(histogram)

    def test_endpoints_are_one(self):
        counts = balls.mahonian_table(9).counts
        assert counts[0] == 1 and counts[-1] == 1


class TestBallSize:
    def test_radius_one(self):
        for n in range(2, 10):
            assert balls.ball_size(n, 1) == n

    def test_whole_group(self):
        for n in range(1, 9):
            assert balls.ball_size(n, comb(n, 2)) == factorial(n)

    def test_shell_at_twelve(self):
        assert balls.ball_size(7, 12) - balls.ball_size(7, 11) == 531

    def test_strictly_increasing(self):
        for n in (5, 8):
            sizes = [balls.ball_size(n, r) for r in range(comb(n, 2) + 1)]
            assert all(a < b for a, b in zip(sizes, sizes[1:]))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            balls.ball_size(5, 11)


class TestBallEnumerate:
    def test_radius_zero(self):
        assert balls.ball_enumerate((2, 1, 3), 0).words == ((2, 1, 3),)

    def test_s4_radius_two(self):
        ball = balls.ball_enumerate(identity(4), 2)
        assert len(ball.words) == balls.ball_size(4, 2) == 9

    def test_members_within_radius(self):
        center = (3, 1, 4, 2, 5)
        ball = balls.ball_enumerate(center, 3)
        assert all(kendall_distance(center, w) <= 3 for w in ball.words)
        assert len(set(ball.words)) == len(ball.words)

    def test_agrees_with_table_all_radii(self):
        for n in range(1, 7):
            for r in range(comb(n, 2) + 1):
                ball = balls.ball_enumerate(identity(n), r)
                assert len(ball.words) == balls.ball_size(n, r)

    def test_center_independence(self):
        rng = random.Random(31)
        for _ in range(5):
            word = list(range(1, 7))
            rng.shuffle(word)
            ball = balls.ball_enumerate(tuple(word), 4)
            assert len(ball.words) == balls.ball_size(6, 4)

    def test_deterministic_order(self):
        a = balls.ball_enumerate(identity(5), 3).words
        b = balls.ball_enumerate(identity(5), 3).words
        assert a == b

    def test_size_guard(self):
        with pytest.raises(ValueError):
            balls.ball_enumerate(identity(10), 1)


class TestDoubleBall:
    def test_closed_form_radius_one(self):
        for n in range(2, 30):
            assert balls.double_ball_size(n, 1) == 2 * (n - 1)

    def test_radius_one_matches_enumeration(self):
        # brute-force union of the two balls in S_4
        first, second = (1, 2, 3, 4), (2, 1, 3, 4)
        members = {
            p
            for p in permutations(range(1, 5))
            if kendall_distance(first, p) <= 1 or kendall_distance(second, p) <= 1
        }
        assert balls.double_ball_size(4, 1) == len(members) == 6

    def test_strictly_below_twice_ball(self):
        for n in (4, 5, 6):
            for r in range(1, comb(n, 2) + 1):
                assert balls.double_ball_size(n, r) < 2 * balls.ball_size(n, r)

    def test_enumerated_values(self):
        assert balls.double_ball_size(4, 2) == 12
        assert balls.double_ball_size(5, 2) == 20
        assert balls.double_ball_size(6, 2) == 30

    def test_guard_for_large_n(self):
        with pytest.raises(ValueError):
            balls.double_ball_size(12, 2)
