"""Permutations in one-line word notation and the Kendall tau metric.

A permutation of [n] = {1, ..., n} is stored as a tuple of values
[p(1), ..., p(n)].  Everything here is 1-based: the identity of S_4 is
(1, 2, 3, 4).

Composition convention
----------------------
``compose(p, q)`` is the *left-to-right* product: the result maps i to
q(p(i)), i.e. p acts first.  This is the reverse of ordinary function
composition, so read products left to right.  The Kendall tau distance
is defined purely by pair counting and is therefore independent of this
choice; all distance code below avoids composition entirely so that a
convention bug cannot corrupt it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Sequence

import numpy as np

Perm = tuple[int, ...]

# Words longer than this are rejected by the enumeration/search modules.
MAX_WORD_N = 64


def identity(n: int) -> Perm:
    """The identity word (1, 2, ..., n).

    >>> identity(4)
    (1, 2, 3, 4)
    """
    return tuple(range(1, n + 1))


def check_word(word: Sequence[int]) -> Perm:
    """Validate that ``word`` is a permutation of 1..n and return it as a tuple.

    Rejects duplicates, gaps, zeros and negatives.
    """
    w = tuple(int(x) for x in word)
    n = len(w)
    if n < 1:
        raise ValueError("empty permutation word")
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {w}")
    return w


def parse_perm(text: str) -> Perm:
    """Parse a space-separated one-line word, e.g. ``"4 2 1 3 7 5 6"``."""
    try:
        values = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise ValueError(f"bad permutation text {text!r}") from exc
    return check_word(values)


def format_perm(word: Perm) -> str:
    return " ".join(str(v) for v in word)


def compose(p: Perm, q: Perm) -> Perm:
    """Left-to-right product: returns the word of i -> q(p(i)).

    ``compose(p, q)`` applies p first, then q.

    >>> compose((2, 1, 3), (1, 3, 2))
    (3, 1, 2)
    """
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    return tuple(q[v - 1] for v in p)


def inverse(p: Perm) -> Perm:
    """The inverse word r, satisfying r(p(i)) = i for all i.

    >>> inverse((2, 3, 1))
    (3, 1, 2)
    """
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


def _merge_count(seq: list[int]) -> tuple[list[int], int]:
    n = len(seq)
    if n < 2:
        return seq, 0
    left, cl = _merge_count(seq[: n // 2])
    right, cr = _merge_count(seq[n // 2 :])
    merged: list[int] = []
    count = cl + cr
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            count += len(left) - i
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, count


def inversions(p: Perm) -> int:
    """Number of value pairs i < j that p places in reversed order.

    Equals the Kendall tau distance from the identity.  O(n log n)
    merge count.

    >>> inversions((3, 2, 1))
    3
    """
    _, count = _merge_count(list(p))
    return count


def parity(p: Perm) -> int:
    """0 for even permutations, 1 for odd (parity of the inversion count)."""
    return inversions(p) & 1


def kendall_distance(p: Perm, q: Perm) -> int:
    """Kendall tau distance: the number of discordant value pairs.

    A pair i < j is discordant when p and q order the two values
    oppositely.  Equivalently the minimum number of adjacent swaps
    turning one word into the other.  Computed by relabeling q through
    the positions of p and merge-counting inversions of the result.

    >>> kendall_distance((1, 2, 3), (2, 1, 3))
    1
    """
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    pos = inverse(p)
    relabeled = [pos[v - 1] for v in q]
    _, count = _merge_count(relabeled)
    return count


def kendall_distance_naive(p: Perm, q: Perm) -> int:
    """Reference O(n^2) pair count, kept as an independent oracle."""
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    n = len(p)
    ppos = inverse(p)
    qpos = inverse(q)
    count = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if (ppos[i - 1] < ppos[j - 1]) != (qpos[i - 1] < qpos[j - 1]):
                count += 1
    return count


def order_mask(p: Perm) -> int:
    """Pack the relative order of all value pairs into one integer.

    Bit b corresponds to the b-th pair (i, j), i < j, in lexicographic
    order (1,2), (1,3), ..., (1,n), (2,3), ...; it is set when p places
    i after j.  For any two words of the same length,
    ``(order_mask(p) ^ order_mask(q)).bit_count()`` is their Kendall
    tau distance, which makes bulk distance work cheap.
    """
    n = len(p)
    pos = inverse(p)
    mask = 0
    bit = 0
    for i in range(1, n + 1):
        pi = pos[i - 1]
        for j in range(i + 1, n + 1):
            if pi > pos[j - 1]:
                mask |= 1 << bit
            bit += 1
    return mask


def order_masks_u64(words: Sequence[Perm]) -> np.ndarray:
    """order_mask for each word as a uint64 array (needs C(n,2) <= 64)."""
    if words and comb(len(words[0]), 2) > 64:
        raise ValueError("pair mask does not fit 64 bits")
    return np.array([order_mask(w) for w in words], dtype=np.uint64)


def lehmer_rank(p: Perm) -> int:
    """Lexicographic rank of the word within S_n, from 0 to n! - 1.

    Factorial-base digits are the per-position counts of smaller values
    to the right, so ranks sort exactly like the words themselves.
    """
    n = len(p)
    rank = 0
    for i in range(n):
        smaller_right = sum(1 for j in range(i + 1, n) if p[j] < p[i])
        rank += smaller_right * factorial(n - 1 - i)
    return rank


def lehmer_unrank(n: int, rank: int) -> Perm:
    """Inverse of :func:`lehmer_rank`."""
    if not 0 <= rank < factorial(n):
        raise ValueError(f"rank {rank} out of range for S_{n}")
    available = list(range(1, n + 1))
    word = []
    for i in range(n):
        f = factorial(n - 1 - i)
        idx, rank = divmod(rank, f)
        word.append(available.pop(idx))
    return tuple(word)


@dataclass(frozen=True)
class PermCode:
    """A set of permutations of [n] with a claimed minimum distance.

    ``d == 0`` means no distance claim is attached.
    """

    n: int
    d: int
    words: tuple[Perm, ...]

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("claimed distance must be non-negative")
        for w in self.words:
            if len(w) != self.n:
                raise ValueError(f"word {w} has length {len(w)}, expected {self.n}")
            check_word(w)
        if len(set(self.words)) != len(self.words):
            raise ValueError("duplicate codewords")

    def __len__(self) -> int:
        return len(self.words)


def minimum_distance(words: Sequence[Perm]) -> int:
    """Exact minimum pairwise Kendall distance over a set of words."""
    m = len(words)
    if m < 2:
        raise ValueError("need at least two words")
    n = len(words[0])
    if comb(n, 2) <= 64 and m >= 48:
        masks = order_masks_u64(words)
        best = comb(n, 2)
        block = 1024
        for s in range(0, m, block):
            x = masks[s : s + block, None] ^ masks[None, :]
            counts = np.bitwise_count(x)
            # mask the diagonal of this block before taking the minimum
            for k in range(min(block, m - s)):
                counts[k, s + k] = 255
            best = min(best, int(counts.min()))
        return best
    masks_py = [order_mask(w) for w in words]
    return min(
        (masks_py[i] ^ masks_py[j]).bit_count()
        for i in range(m)
        for j in range(i + 1, m)
    )


def verify_code(code: PermCode) -> tuple[bool, int | None]:
    """Check the claimed minimum distance.  Returns (ok, actual minimum).

    A code with fewer than two words is vacuously valid (actual is None).
    """
    if len(code.words) < 2:
        return True, None
    actual = minimum_distance(code.words)
    return actual >= code.d, actual
