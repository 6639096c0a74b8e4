"""Exact small-n certificates: shells, equidistant cliques, and max cliques.

An equidistant code (all pairwise distances equal to d) containing the
identity lives inside the shell at radius d, so questions about the
largest equidistant code reduce to clique questions on the shell graph.
The pair-sum counting argument then turns those clique facts into exact
values of the largest code size for specific (n, d).

Bulk distance work runs on packed pair-order masks: the distance between
two words is the popcount of the xor of their masks (see
``perm_core.order_mask``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from math import comb, factorial
from pathlib import Path

import numpy as np

from .perm_core import (
    Perm,
    inversions,
    lehmer_rank,
    order_masks_u64,
)

SHELL_MAX_N = 8
SHELL_CLIQUE_CAP = 1000
DISTANCE_MATRIX_MAX_N = 7
CACHE_ENV_VAR = "PERMKIT_CACHE_DIR"


@dataclass(frozen=True)
class Shell:
    """All permutations at distance exactly d from the identity, lex order."""

    n: int
    d: int
    members: tuple[Perm, ...]


@dataclass(frozen=True)
class EquidistantCode:
    """A code whose pairwise distances all equal ``common_distance``."""

    n: int
    common_distance: int
    words: tuple[Perm, ...]

    def __post_init__(self):
        masks = [int(m) for m in order_masks_u64(self.words)]
        for i in range(len(masks)):
            for j in range(i + 1, len(masks)):
                d = (masks[i] ^ masks[j]).bit_count()
                if d != self.common_distance:
                    raise ValueError(
                        f"words {self.words[i]} and {self.words[j]} are at "
                        f"distance {d}, not {self.common_distance}"
                    )


def shell(n: int, d: int) -> Shell:
    if n > SHELL_MAX_N:
        raise ValueError(f"n={n} too large for shell enumeration (max {SHELL_MAX_N})")
    if not 0 <= d <= comb(n, 2):
        raise ValueError(f"d={d} out of range 0..{comb(n, 2)}")
    members = tuple(
        p for p in permutations(range(1, n + 1)) if inversions(p) == d
    )
    return Shell(n=n, d=d, members=members)


def _all_masks(n: int) -> np.ndarray:
    return order_masks_u64(list(permutations(range(1, n + 1))))


class DistanceMatrix:
    """Dense n! x n! Kendall distance table, indexed by lexicographic rank.

    One byte per entry; n = 7 needs about 25 MB.  The optional cache
    file is raw row-major bytes in rank order, so it can be memory
    mapped directly.
    """

    def __init__(self, n: int, data: np.ndarray):
        size = factorial(n)
        if data.shape != (size, size) or data.dtype != np.uint8:
            raise ValueError("bad distance matrix payload")
        self.n = n
        self.data = data

    @classmethod
    def build(cls, n: int) -> "DistanceMatrix":
        if n > DISTANCE_MATRIX_MAX_N:
            raise ValueError(
                f"n={n} too large for a dense matrix (max {DISTANCE_MATRIX_MAX_N})"
            )
        masks = _all_masks(n)
        size = len(masks)
        data = np.empty((size, size), dtype=np.uint8)
        block = 1024
        for s in range(0, size, block):
            x = masks[s : s + block, None] ^ masks[None, :]
            data[s : s + block] = np.bitwise_count(x).astype(np.uint8)
        return cls(n, data)

    @classmethod
    def load_or_build(cls, n: int, cache_dir: str | os.PathLike | None = None) -> "DistanceMatrix":
        """Load from the cache directory (or $PERMKIT_CACHE_DIR), else build.

        A freshly built matrix is written back to the cache when one is
        configured.
        """
        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_ENV_VAR)
        if cache_dir is None:
            return cls.build(n)
        path = Path(cache_dir) / f"kendall_s{n}.dist"
        size = factorial(n)
        if path.is_file() and path.stat().st_size == size * size:
            data = np.memmap(path, dtype=np.uint8, mode="r", shape=(size, size))
            return cls(n, np.asarray(data))
        matrix = cls.build(n)
        path.parent.mkdir(parents=True, exist_ok=True)
        matrix.data.tofile(path)
        return matrix

    def distance(self, p: Perm, q: Perm) -> int:
        return int(self.data[lehmer_rank(p), lehmer_rank(q)])


def _shell_adjacency(sh: Shell, d: int) -> list[int]:
    """Bitset adjacency on shell members: edge when distance is exactly d."""
    masks = [int(m) for m in order_masks_u64(sh.members)]
    m = len(masks)
    adj = [0] * m
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            if (mi ^ masks[j]).bit_count() == d:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def count_equidistant_cliques(sh: Shell, d: int, max_size: int) -> tuple[int, ...]:
    """Counts of i-subsets of the shell pairwise at distance exactly d.

    Returns the counts for i = 2..max_size.  Ordered extension (only
    vertices above the current maximum index) counts every subset once.
    """
    if len(sh.members) > SHELL_CLIQUE_CAP:
        raise ValueError(f"shell of size {len(sh.members)} exceeds the clique cap")
    if max_size < 2:
        raise ValueError("max_size must be at least 2")
    adj = _shell_adjacency(sh, d)
    counts = [0] * (max_size + 1)

    def extend(cand: int, size: int) -> None:
        for v in _iter_bits(cand):
            counts[size + 1] += 1
            if size + 1 < max_size:
                higher = cand & ~((1 << (v + 1)) - 1)
                extend(higher & adj[v], size + 1)

    for v in range(len(adj)):
        higher = adj[v] & ~((1 << (v + 1)) - 1)
        extend(higher, 1)
    return tuple(counts[2 : max_size + 1])


def _cliques_of_size(adj: list[int], size: int):
    """Yield all cliques of exactly ``size`` as ascending index tuples."""

    def extend(members: tuple[int, ...], cand: int) -> None:
        if len(members) == size:
            yield members
            return
        for v in _iter_bits(cand):
            higher = cand & ~((1 << (v + 1)) - 1)
            yield from extend(members + (v,), higher & adj[v])

    for v in range(len(adj)):
        higher = adj[v] & ~((1 << (v + 1)) - 1)
        yield from extend((v,), higher)


def ep_max(n: int, d: int) -> int:
    """Size of the largest code with all pairwise distances exactly d.

    Right invariance lets the identity be assumed a member, so the rest
    is a clique in the shell graph at radius d; the answer is one plus
    the largest clique size there.
    """
    if n > 7:
        raise ValueError("exact equidistant maximum is limited to n <= 7")
    if not 1 <= d <= comb(n, 2):
        raise ValueError(f"d={d} out of range 1..{comb(n, 2)}")
    sh = shell(n, d)
    if not sh.members:
        return 1
    adj = _shell_adjacency(sh, d)
    best = 1

    def extend(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        for v in _iter_bits(cand):
            if size + (cand >> v).bit_count() <= best:
                break  # remaining candidates cannot beat the record
            higher = cand & ~((1 << (v + 1)) - 1)
            extend(size + 1, higher & adj[v])

    for v in range(len(adj)):
        higher = adj[v] & ~((1 << (v + 1)) - 1)
        extend(1, higher)
    return 1 + best


@dataclass(frozen=True)
class ExtensionReport:
    """Outcome of scanning all 6-element equidistant candidates in S_7."""

    candidate_count: int
    max_overlap: int            # largest number of admissible extra words
    overlap_limit: int          # asserted ceiling on max_overlap


def epc_extension_check(n: int = 7, max_allowed: int = 14) -> ExtensionReport:
    """Check how far a 6-element equidistant code in S_7 can be extended.

    For every candidate M = {identity} + A with A a 5-clique of the
    (7, 12) shell graph, collect B_M = all words at distance >= 11 from
    every member of M.  Raises unless |B_M| <= ``max_allowed`` for every
    M and every two distinct members of each B_M are at distance < 11
    (so at most one of them can ever be added).
    """
    if n != 7:
        raise ValueError("the extension scan is specific to n=7")
    sh = shell(7, 12)
    adj = _shell_adjacency(sh, 12)
    matrix = DistanceMatrix.load_or_build(7).data
    ranks = np.array([lehmer_rank(p) for p in sh.members])
    far_enough = matrix >= 11  # identity has rank 0

    max_overlap = 0
    count = 0
    for clique in _cliques_of_size(adj, 5):
        count += 1
        rows = far_enough[0]
        for v in clique:
            rows = rows & far_enough[ranks[v]]
        overlap = int(rows.sum())
        if overlap > max_allowed:
            raise RuntimeError(
                f"extension set of size {overlap} exceeds the limit {max_allowed}"
            )
        if overlap > max_overlap:
            max_overlap = overlap
        if overlap >= 2:
            members = np.nonzero(rows)[0]
            block = matrix[np.ix_(members, members)]
            iu = np.triu_indices(len(members), 1)
            if (block[iu] >= 11).any():
                raise RuntimeError(
                    "two admissible extension words at distance >= 11"
                )
    return ExtensionReport(
        candidate_count=count, max_overlap=max_overlap, overlap_limit=max_allowed
    )


@dataclass(frozen=True)
class EpFacts:
    """Previously certified equidistant facts feeding the counting argument.

    ``equidistant_max[(n, d)]`` is the largest all-pairs-at-d code size;
    ``containment_max[(n, d, m, d2)]`` is the largest (n, d) code
    containing an equidistant subcode of size m at distance d2.
    """

    equidistant_max: dict[tuple[int, int], int]
    containment_max: dict[tuple[int, int, int, int], int]


@dataclass(frozen=True)
class SplitOutcome:
    even_count: int
    odd_count: int
    pair_sum_lower: int
    survives: bool
    forced_equidistant: bool
    ruled_out: bool


@dataclass(frozen=True)
class FeasibilityReport:
    n: int
    d: int
    size: int
    sigma_max: int
    verdict: str                      # "feasible" | "contradiction"
    sigma_min: int | None = None      # even-d route
    splits: tuple[SplitOutcome, ...] = ()


def sum_distance_feasibility(n: int, d: int, size: int, facts: EpFacts) -> FeasibilityReport:
    """Pair-sum counting argument for a hypothetical (n, d) code of ``size``.

    The sum of all pairwise distances is at most
    C(n,2) * ceil(size/2) * floor(size/2).

    Even d: every pair contributes at least d, and when ``size`` exceeds
    the certified equidistant maximum at d, some pair contributes d+1.

    Odd d: split the code by parity.  Same-parity pairs have even
    distance, hence at least d+1; cross pairs at least d.  A split whose
    forced minimum meets the ceiling exactly would make both classes
    equidistant at d+1, which the containment facts can rule out.
    """
    pairs = comb(n, 2)
    sigma_max = pairs * ((size + 1) // 2) * (size // 2)

    if d % 2 == 0:
        sigma_min = comb(size, 2) * d
        ep = facts.equidistant_max.get((n, d))
        if ep is not None and size > ep:
            sigma_min += 1  # not all pairs can sit at exactly d
        verdict = "contradiction" if sigma_min > sigma_max else "feasible"
        return FeasibilityReport(
            n=n, d=d, size=size, sigma_max=sigma_max,
            verdict=verdict, sigma_min=sigma_min,
        )

    outcomes = []
    all_ruled_out = True
    for small in range(0, size // 2 + 1):
        big = size - small
        lower = (d + 1) * (comb(big, 2) + comb(small, 2)) + d * big * small
        survives = lower <= sigma_max
        forced = survives and lower == sigma_max
        ruled_out = not survives
        if forced:
            for part in (big, small):
                limit = facts.containment_max.get((n, d, part, d + 1))
                if limit is not None and size > limit:
                    ruled_out = True
                    break
        outcomes.append(
            SplitOutcome(
                even_count=big, odd_count=small, pair_sum_lower=lower,
                survives=survives, forced_equidistant=forced, ruled_out=ruled_out,
            )
        )
        if not ruled_out:
            all_ruled_out = False
    return FeasibilityReport(
        n=n, d=d, size=size, sigma_max=sigma_max,
        verdict="contradiction" if all_ruled_out else "feasible",
        splits=tuple(outcomes),
    )


def max_clique_exact(n: int, d: int) -> int:
    """Exact largest (n, d) code size by branch-and-bound max clique.

    Vertices are the words of S_n, edges join pairs at distance >= d.
    Right invariance pins the identity into some maximum clique, so the
    search runs inside its neighborhood.  Greedy-coloring bound; only
    the runtime depends on it.  Guarded to n <= 5, or n = 6 with d >= 5.
    """
    if not (n <= 5 or (n == 6 and d >= 5)):
        raise ValueError("exact clique search is limited to n <= 5, or n = 6 with d >= 5")
    if not 1 <= d <= comb(n, 2):
        raise ValueError(f"d={d} out of range 1..{comb(n, 2)}")
    masks = [int(m) for m in order_masks_u64(list(permutations(range(1, n + 1))))]
    ident_mask = masks[0]
    verts = [m for m in masks if (m ^ ident_mask).bit_count() >= d]
    k = len(verts)
    if k == 0:
        return 1
    adj = [0] * k
    for a in range(k):
        for b in range(a + 1, k):
            if (verts[a] ^ verts[b]).bit_count() >= d:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    best = 0

    def coloring(cand: int) -> tuple[list[int], list[int]]:
        # vertices grouped into independent color classes; a clique meets
        # each class at most once, so color index bounds the clique size
        order: list[int] = []
        bounds: list[int] = []
        color = 0
        while cand:
            color += 1
            avail = cand
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail = (avail ^ low) & ~adj[v]
                cand ^= low
                order.append(v)
                bounds.append(color)
        return order, bounds

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, bounds = coloring(cand)
        prefix = cand
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            prefix &= ~(1 << v)
            if size + 1 > best:
                best = size + 1
            sub = prefix & adj[v]
            if sub:
                expand(size + 1, sub)

    expand(0, (1 << k) - 1)
    return 1 + best
