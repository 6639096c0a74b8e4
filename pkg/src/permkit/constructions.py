"""Constructive procedures: equal-sum 3-partitions, the size-4 code at
distance floor(2/3 C(n,2)), and permutations at any prescribed distance.

The size-4 construction turns a 3-partition of [n-1] (or [n-1] minus 1)
with equal part sums into three permutations pairwise far apart: a
permutation built from a subset D of [n-1] sits at distance
C(n,2) - sum(D) from the identity, and two such permutations built from
disjoint subsets sit at distance sum(D1) + sum(D2) from each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .perm_core import (
    Perm,
    PermCode,
    identity,
    kendall_distance,
    minimum_distance,
)

# Explicit equal-sum triples for the small ground sets; everything larger
# reduces to one of these plus 6-blocks split into equal-sum pairs.
_BASE_TRIPLES: dict[int, tuple[tuple[int, ...], ...]] = {
    5: ((5,), (1, 4), (3, 2)),
    6: ((6, 1), (5, 2), (3, 4)),
    7: ((2, 7), (3, 6), (4, 5)),
    8: ((8, 4), (7, 3, 2), (1, 5, 6)),
    9: ((6, 5, 4), (9, 1, 2, 3), (8, 7)),
    10: ((10, 8), (9, 2, 7), (3, 4, 6, 5)),
}


@dataclass(frozen=True)
class PartitionTriple:
    """Three disjoint equal-sum subsets partitioning the ground set.

    The ground set is [n] when n = 0, 2 (mod 3) and [n] minus {1} when
    n = 1 (mod 3) (the full sum is not divisible by 3 in that case).
    """

    n: int
    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]
    ground: frozenset[int]

    def __post_init__(self):
        union: set[int] = set()
        total = sum(self.parts[0])
        for part in self.parts:
            if not part:
                raise ValueError("empty part")
            if sum(part) != total:
                raise ValueError("part sums differ")
            if union & part:
                raise ValueError("parts overlap")
            union |= part
        if union != set(self.ground):
            raise ValueError("parts do not partition the ground set")


def equal_sum_partition(n: int) -> PartitionTriple:
    """Three equal-sum subsets partitioning [n], or [n]-{1} if n = 1 (mod 3).

    For n <= 10 the fixed base triples are returned; for larger n the
    values above the base are consumed in 6-blocks {k+1..k+6}, each
    split into the equal-sum pairs {k+1,k+6}, {k+2,k+5}, {k+3,k+4}.
    """
    if n < 5:
        raise ValueError("needs n >= 5")
    r = n if n <= 10 else 5 + (n - 5) % 6
    parts = [set(p) for p in _BASE_TRIPLES[r]]
    for k in range(r, n, 6):
        parts[0] |= {k + 1, k + 6}
        parts[1] |= {k + 2, k + 5}
        parts[2] |= {k + 3, k + 4}
    ground = set(range(1, n + 1)) - ({1} if n % 3 == 1 else set())
    return PartitionTriple(
        n=n,
        parts=(frozenset(parts[0]), frozenset(parts[1]), frozenset(parts[2])),
        ground=frozenset(ground),
    )


def permutation_from_subset(n: int, subset) -> Perm:
    """The word whose distance from the identity is C(n,2) - sum(subset).

    With D' = {n - j : j in subset}, the word lists D' ascending and the
    complement descending.  The descending suffix is what creates the
    inversions; each j in ``subset`` removes exactly j of them.
    """
    subset = set(subset)
    if not subset <= set(range(1, n)):
        raise ValueError(f"subset must lie within 1..{n - 1}")
    mapped = sorted(n - j for j in subset)
    rest = sorted(set(range(1, n + 1)) - set(mapped), reverse=True)
    return tuple(mapped + rest)


def subset_with_sum(n: int, t: int) -> frozenset[int]:
    """A subset of [n-1] with sum t, chosen greedily from the top.

    Takes n-1, n-2, ... while they fit, then the remainder.  Any
    0 <= t <= C(n,2) is reachable.
    """
    if not 0 <= t <= comb(n, 2):
        raise ValueError(f"target {t} out of range 0..{comb(n, 2)}")
    chosen: set[int] = set()
    remaining = t
    for v in range(n - 1, 0, -1):
        if remaining >= v:
            chosen.add(v)
            remaining -= v
    if remaining:
        raise RuntimeError("greedy selection failed")  # unreachable
    return frozenset(chosen)


def permutation_at_distance(n: int, d: int) -> Perm:
    """A permutation at Kendall distance exactly d from the identity."""
    if not 0 <= d <= comb(n, 2):
        raise ValueError(f"distance {d} out of range 0..{comb(n, 2)}")
    word = permutation_from_subset(n, subset_with_sum(n, comb(n, 2) - d))
    actual = kendall_distance(identity(n), word)
    if actual != d:
        raise RuntimeError(f"construction produced distance {actual}, wanted {d}")
    return word


@dataclass(frozen=True)
class SizedCode:
    """A constructed code together with the distance it was built for."""

    code: PermCode
    target_distance: int


def construct_size4(n: int) -> SizedCode:
    """A 4-element code with minimum distance floor(2/3 C(n,2)), n >= 6.

    The three non-identity words come from an equal-sum 3-partition of
    [n-1]; their pairwise distances are the sums of two parts, and their
    distances to the identity are at least as large.
    """
    if n < 6:
        raise ValueError("needs n >= 6")
    triple = equal_sum_partition(n - 1)
    words = (identity(n),) + tuple(
        permutation_from_subset(n, part) for part in triple.parts
    )
    target = (2 * comb(n, 2)) // 3
    actual = minimum_distance(words)
    if actual < target:
        raise RuntimeError(
            f"constructed code has minimum distance {actual} < {target}"
        )
    return SizedCode(code=PermCode(n=n, d=target, words=words), target_distance=target)
