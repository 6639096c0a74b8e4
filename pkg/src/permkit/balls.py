"""Sizes and enumeration of Kendall tau balls, shells and double balls.

Ball sizes are center independent (the metric is right invariant), so
they reduce to partial sums of the Mahonian numbers T(n, k), the counts
of permutations of [n] with exactly k inversions.  Sizes are exact big
integers throughout; n! overflows 64 bits already at n = 21.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

from .perm_core import Perm, PermCode, check_word

# BFS enumeration keeps the whole ball in memory; 9! is the agreed limit.
ENUMERATION_MAX_N = 9


@dataclass(frozen=True)
class MahonianTable:
    """The triangle row T(n, 0..C(n,2)) of inversion counts."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != comb(self.n, 2) + 1:
            raise ValueError("wrong row length")


def mahonian_table(n: int) -> MahonianTable:
    """Inversion-number counts by the standard recurrence.

    T(n, k) = sum of T(n-1, k-j) over 0 <= j <= min(k, n-1).

    >>> mahonian_table(3).counts
    (1, 2, 2, 1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    row = [1]
    for m in range(2, n + 1):
        prev = row
        width = len(prev) + m - 1
        row = [0] * width
        # prefix sums turn the windowed sum into two lookups
        prefix = [0]
        for v in prev:
            prefix.append(prefix[-1] + v)
        for k in range(width):
            lo = max(0, k - m + 1)
            hi = min(k, len(prev) - 1)
            row[k] = prefix[hi + 1] - prefix[lo]
    return MahonianTable(n, tuple(row))


def ball_size(n: int, r: int) -> int:
    """Number of permutations within Kendall distance r of any center."""
    if not 0 <= r <= comb(n, 2):
        raise ValueError(f"radius {r} out of range for n={n}")
    counts = mahonian_table(n).counts
    return sum(counts[: r + 1])


def _adjacent_swaps(word: Perm) -> Iterator[Perm]:
    # children in ascending swap-position order, so BFS order is deterministic
    for i in range(len(word) - 1):
        yield word[:i] + (word[i + 1], word[i]) + word[i + 2 :]


def ball_enumerate(center: Perm, r: int) -> PermCode:
    """All permutations within distance r of ``center``, by BFS.

    Breadth-first closure under the n-1 adjacent transpositions up to
    depth r; each swap changes the distance by exactly 1, so depth
    equals distance.  Members are returned in discovery order.
    """
    center = check_word(center)
    n = len(center)
    if n > ENUMERATION_MAX_N:
        raise ValueError(f"n={n} too large for ball enumeration (max {ENUMERATION_MAX_N})")
    if not 0 <= r <= comb(n, 2):
        raise ValueError(f"radius {r} out of range for n={n}")
    seen = {center}
    order = [center]
    frontier = [center]
    for _ in range(r):
        nxt = []
        for word in frontier:
            for child in _adjacent_swaps(word):
                if child not in seen:
                    seen.add(child)
                    order.append(child)
                    nxt.append(child)
        frontier = nxt
    return PermCode(n, 0, tuple(order))


def double_ball_size(n: int, r: int) -> int:
    """Size of the union of two radius-r balls about centers at distance 1.

    Closed form 2(n-1) for r = 1; enumerated for r >= 2 (n <= 9).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 1 <= r <= comb(n, 2):
        raise ValueError(f"radius {r} out of range for n={n}")
    if r == 1:
        return 2 * (n - 1)
    if n > ENUMERATION_MAX_N:
        raise ValueError(f"n={n} too large for double-ball enumeration (r >= 2)")
    first = tuple(range(1, n + 1))
    second = (2, 1) + tuple(range(3, n + 1))
    members = set(ball_enumerate(first, r).words)
    members.update(ball_enumerate(second, r).words)
    return len(members)


