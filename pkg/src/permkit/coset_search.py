"""Codes built from a subgroup of S_n and a selection of its left cosets.

A subgroup H whose minimum weight is at least d is itself an (n, d)
code.  Left cosets xH are *not* isometric to H (the metric is right
invariant only), so each candidate coset is checked in full: its
internal minimum distance, and its distance to everything accepted so
far.  The weaker representative-only test would sometimes accept a
violating coset; the greedy records where the two tests disagree.

Embedded here are the known coset-code tables for S_7 and S_8 that this
module can re-verify from scratch (``verify_all_table_rows``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from itertools import permutations

import numpy as np

from .perm_core import (
    MAX_WORD_N,
    Perm,
    PermCode,
    check_word,
    compose,
    identity,
    inversions,
    kendall_distance,
    minimum_distance,
    order_masks_u64,
    parse_perm,
)

DEFAULT_CLOSURE_CAP = 10**6


class CodeVerificationError(Exception):
    """A claimed code property failed; carries the offending witness."""


@dataclass(frozen=True)
class Subgroup:
    n: int
    generators: tuple[Perm, ...]
    elements: frozenset[Perm]

    def __len__(self) -> int:
        return len(self.elements)


def closure(n: int, generators, cap: int = DEFAULT_CLOSURE_CAP) -> Subgroup:
    """BFS closure of the generators under composition.

    The group is finite, so closing under right multiplication by the
    generators alone already yields inverses.  Guarded by ``cap``.
    """
    if n > MAX_WORD_N:
        raise ValueError(f"n={n} exceeds the search limit {MAX_WORD_N}")
    gens = tuple(check_word(g) for g in generators)
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {g} is not a permutation of 1..{n}")
    start = identity(n)
    elements = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                x = compose(e, g)
                if x not in elements:
                    elements.add(x)
                    if len(elements) > cap:
                        raise ValueError(f"closure exceeded cap {cap}")
                    nxt.append(x)
        frontier = nxt
    return Subgroup(n=n, generators=gens, elements=frozenset(elements))


def subgroup_min_weight(subgroup: Subgroup) -> int:
    """Minimum distance within the subgroup.

    Right invariance collapses this to the minimum distance from the
    identity, i.e. the minimum inversion count over non-identity
    elements.
    """
    if len(subgroup) < 2:
        raise ValueError("trivial subgroup has no minimum weight")
    ident = identity(subgroup.n)
    return min(inversions(h) for h in subgroup.elements if h != ident)


def left_coset(x: Perm, subgroup: Subgroup) -> frozenset[Perm]:
    """The left coset xH = {xh : h in H} in left-to-right composition."""
    return frozenset(compose(x, h) for h in subgroup.elements)


def left_transversal(subgroup: Subgroup, cap: int = DEFAULT_CLOSURE_CAP) -> tuple[Perm, ...]:
    """One representative per left coset: the lex-smallest member.

    Listed in lexicographic order, which puts the identity's coset
    first.  Walking S_n in lex order and skipping words already covered
    by an earlier coset yields exactly the lex-minimal representatives.
    """
    n = subgroup.n
    if factorial(n) > cap * len(subgroup):
        raise ValueError("transversal enumeration exceeds cap")
    seen: set[Perm] = set()
    reps: list[Perm] = []
    for word in permutations(range(1, n + 1)):
        if word in seen:
            continue
        reps.append(word)
        seen.update(left_coset(word, subgroup))
    return tuple(reps)


def coset_min_distance(x: Perm, subgroup: Subgroup) -> int:
    """Minimum pairwise distance within the left coset xH.

    All-pairs scan; no shortcut exists because left translation does
    not preserve the metric.
    """
    if len(subgroup) < 2:
        raise ValueError("trivial subgroup")
    return minimum_distance(tuple(left_coset(x, subgroup)))


def min_distance_to_set(code_words, g: Perm) -> int:
    """Minimum distance from g to a non-empty set of words."""
    words = tuple(code_words)
    if not words:
        raise ValueError("empty set")
    return min(kendall_distance(g, m) for m in words)


@dataclass(frozen=True)
class CosetCode:
    """A code of the form H union of selected left cosets xH."""

    subgroup: Subgroup
    reps: tuple[Perm, ...]
    code: PermCode
    d: int
    # transversal entries where the representative-only distance test
    # disagreed with the full coset-vs-code test (greedy search only)
    shortcut_discrepancies: tuple[Perm, ...] = field(default=())

    def __post_init__(self):
        expected = (len(self.reps) + 1) * len(self.subgroup)
        if len(self.code.words) != expected:
            raise ValueError(
                f"coset union has {len(self.code.words)} words, expected {expected}"
            )


def _min_cross_distance(a_masks: np.ndarray, b_masks: np.ndarray) -> int:
    x = a_masks[:, None] ^ b_masks[None, :]
    return int(np.bitwise_count(x).min())


def greedy_coset_code(
    subgroup: Subgroup,
    d: int,
    seed_reps: tuple[Perm, ...] = (),
) -> CosetCode:
    """Grow an (n, d) code from H by scanning the canonical transversal.

    A representative j is accepted when its coset jH has internal
    minimum distance at least d and every element of jH is at distance
    at least d from everything accepted so far.  ``seed_reps`` are
    validated and installed before the scan, so a known code can be
    extended.  Output is deterministic.
    """
    n = subgroup.n
    if subgroup_min_weight(subgroup) < d:
        raise ValueError("subgroup minimum weight is below d")
    code_words: list[Perm] = sorted(subgroup.elements)
    code_masks = order_masks_u64(code_words)
    covered: set[Perm] = set(code_words)
    reps: list[Perm] = []
    flagged: list[Perm] = []

    def try_add(j: Perm, strict: bool) -> None:
        nonlocal code_masks
        coset = sorted(left_coset(j, subgroup))
        coset_masks = order_masks_u64(coset)
        internal_ok = minimum_distance(coset) >= d
        full_ok = internal_ok and _min_cross_distance(coset_masks, code_masks) >= d
        if strict and not full_ok:
            raise CodeVerificationError(f"seed representative {j} violates distance {d}")
        if not full_ok:
            if internal_ok and min_distance_to_set(code_words, j) >= d:
                flagged.append(j)  # representative-only test would have accepted
            return
        reps.append(j)
        code_words.extend(coset)
        covered.update(coset)
        code_masks = np.concatenate([code_masks, coset_masks])

    for j in seed_reps:
        j = check_word(j)
        if j in covered:
            raise CodeVerificationError(f"seed representative {j} duplicates a coset")
        try_add(j, strict=True)
    for j in left_transversal(subgroup):
        if j in covered:
            continue
        try_add(j, strict=False)

    code = PermCode(n=n, d=d, words=tuple(code_words))
    return CosetCode(
        subgroup=subgroup,
        reps=tuple(reps),
        code=code,
        d=d,
        shortcut_discrepancies=tuple(flagged),
    )


# --- bundled coset-code tables for S_7 and S_8 ------------------------------


@dataclass(frozen=True)
class TableRow:
    d: int
    generators: tuple[Perm, ...]
    order: int
    reps: tuple[Perm, ...]


def _row(d, gens, order, reps):
    return TableRow(
        d=d,
        generators=tuple(tuple(g) for g in gens),
        order=order,
        reps=tuple(tuple(r) for r in reps),
    )


TABLE_S7: tuple[TableRow, ...] = (
    _row(4, [(4, 2, 1, 3, 7, 5, 6), (3, 5, 2, 6, 7, 1, 4)], 21,
         [(1, 2, 3, 7, 4, 6, 5), (1, 2, 3, 5, 7, 6, 4), (1, 2, 6, 3, 4, 7, 5),
          (1, 2, 4, 7, 3, 5, 6), (1, 2, 5, 4, 3, 7, 6), (1, 2, 5, 6, 3, 4, 7),
          (1, 2, 4, 6, 5, 3, 7), (1, 2, 6, 7, 5, 3, 4), (1, 2, 7, 4, 6, 5, 3),
          (1, 4, 2, 3, 6, 7, 5), (1, 6, 2, 7, 4, 3, 5), (1, 5, 2, 7, 6, 3, 4),
          (1, 6, 4, 2, 3, 5, 7), (1, 6, 5, 2, 3, 7, 4)]),
    _row(5, [(3, 4, 1, 2, 6, 5, 7), (5, 2, 1, 7, 3, 4, 6)], 42,
         [(1, 2, 5, 3, 7, 6, 4), (1, 2, 7, 6, 4, 3, 5)]),
    _row(6, [(7, 2, 1, 5, 6, 4, 3), (3, 4, 2, 5, 7, 1, 6)], 21,
         [(1, 2, 3, 7, 6, 5, 4), (1, 2, 7, 4, 6, 5, 3), (1, 6, 2, 5, 4, 7, 3)]),
    _row(7, [(6, 2, 4, 3, 7, 1, 5), (1, 3, 6, 5, 7, 2, 4)], 42, []),
    _row(8, [(2, 5, 7, 3, 4, 1, 6)], 7,
         [(1, 2, 7, 6, 3, 5, 4), (1, 5, 7, 2, 4, 3, 6), (1, 5, 6, 3, 2, 7, 4)]),
    _row(9, [(2, 5, 7, 4, 1, 3, 6)], 3,
         [(1, 7, 2, 4, 6, 5, 3), (1, 6, 3, 4, 7, 5, 2), (4, 6, 2, 1, 7, 3, 5),
          (3, 6, 5, 1, 2, 7, 4)]),
    _row(10, [(2, 4, 7, 5, 3, 6, 1)], 6, [(3, 6, 4, 2, 5, 1, 7)]),
    _row(11, [(6, 5, 3, 7, 2, 1, 4)], 2,
         [(1, 7, 3, 5, 6, 4, 2), (5, 4, 3, 2, 1, 7, 6), (7, 2, 1, 4, 6, 5, 3)]),
    _row(12, [(2, 4, 7, 6, 3, 5, 1)], 7, []),
    _row(13, [(1, 7, 6, 4, 5, 3, 2)], 2, [(6, 2, 4, 5, 7, 3, 1)]),
    _row(14, [(6, 5, 3, 4, 2, 1, 7)], 2, [(7, 5, 1, 4, 3, 6, 2)]),
)

# The d=7 row's first representative circulates with its final symbol 8
# dropped; appending it is the unique completion reaching distance 7.
TABLE_S8: tuple[TableRow, ...] = (
    _row(3, [(4, 2, 5, 1, 3, 8, 7, 6), (8, 6, 3, 4, 1, 7, 2, 5)], 336,
         [(1, 2, 3, 4, 5, 8, 7, 6), (1, 2, 3, 4, 6, 8, 5, 7), (1, 2, 3, 7, 4, 5, 6, 8),
          (1, 2, 3, 8, 4, 7, 5, 6), (1, 2, 3, 7, 4, 8, 6, 5), (1, 2, 3, 6, 5, 4, 8, 7),
          (1, 2, 3, 8, 5, 4, 6, 7), (1, 2, 3, 8, 6, 4, 5, 7), (1, 2, 3, 7, 5, 8, 4, 6),
          (1, 2, 3, 7, 8, 6, 5, 4)]),
    _row(4, [(7, 1, 8, 3, 4, 2, 6, 5), (6, 5, 4, 2, 3, 8, 1, 7)], 168,
         [(1, 2, 3, 4, 8, 5, 7, 6), (1, 2, 3, 4, 6, 8, 7, 5), (1, 2, 3, 7, 4, 5, 8, 6),
          (1, 2, 3, 5, 8, 4, 6, 7), (1, 2, 3, 6, 5, 4, 8, 7), (1, 2, 3, 6, 7, 4, 5, 8),
          (1, 2, 3, 8, 7, 4, 6, 5), (1, 2, 3, 5, 7, 6, 4, 8), (1, 2, 3, 8, 5, 7, 6, 4),
          (1, 2, 3, 6, 8, 7, 5, 4), (1, 2, 5, 4, 3, 6, 8, 7), (1, 2, 8, 5, 4, 3, 6, 7)]),
    _row(5, [(7, 2, 8, 6, 5, 4, 1, 3), (6, 4, 3, 5, 2, 8, 7, 1)], 336,
         [(1, 2, 3, 8, 4, 7, 5, 6)]),
    _row(6, [(8, 3, 4, 6, 5, 7, 1, 2), (5, 2, 4, 8, 3, 1, 6, 7)], 56,
         [(1, 2, 3, 8, 4, 6, 7, 5), (1, 2, 3, 7, 6, 4, 8, 5), (1, 2, 3, 5, 8, 6, 7, 4),
          (1, 2, 6, 5, 3, 4, 8, 7), (1, 2, 7, 5, 3, 6, 8, 4), (1, 2, 7, 8, 6, 3, 5, 4)]),
    _row(7, [(8, 5, 4, 1, 6, 3, 7, 2), (7, 2, 1, 3, 6, 8, 5, 4)], 56,
         [(1, 2, 7, 6, 3, 4, 5, 8), (1, 2, 4, 6, 7, 8, 5, 3)]),
    _row(8, [(5, 3, 6, 1, 2, 8, 7, 4), (7, 2, 6, 8, 4, 5, 3, 1)], 56,
         [(1, 2, 4, 8, 5, 7, 3, 6)]),
    _row(9, [(4, 1, 7, 6, 8, 3, 5, 2), (5, 1, 7, 3, 2, 6, 4, 8)], 48, []),
    _row(10, [(6, 1, 3, 5, 7, 2, 4, 8), (8, 7, 1, 6, 3, 2, 4, 5)], 24,
         [(1, 2, 7, 6, 5, 3, 8, 4)]),
    _row(11, [(5, 6, 8, 7, 1, 2, 4, 3), (1, 3, 7, 8, 5, 2, 4, 6)], 12,
         [(2, 8, 3, 1, 6, 4, 7, 5)]),
    _row(12, [(7, 8, 5, 6, 3, 4, 1, 2), (4, 8, 5, 2, 7, 3, 6, 1)], 24, []),
    _row(13, [(4, 6, 1, 5, 8, 3, 7, 2)], 7, [(3, 7, 4, 6, 2, 5, 1, 8)]),
    _row(14, [(4, 6, 1, 5, 8, 3, 7, 2)], 7, [(3, 7, 4, 6, 2, 5, 1, 8)]),
    _row(15, [(4, 6, 7, 8, 1, 3, 5, 2)], 8, []),
    _row(16, [(4, 7, 6, 8, 1, 2, 3, 5), (7, 4, 5, 3, 2, 1, 8, 6)], 8, []),
    _row(17, [(7, 3, 8, 2, 6, 1, 5, 4)], 4, []),
    _row(18, [(7, 3, 8, 2, 6, 1, 5, 4)], 4, []),
)

TABLES = {7: TABLE_S7, 8: TABLE_S8}


def _find_violating_pair(words, d: int) -> tuple[Perm, Perm, int] | None:
    masks = [int(m) for m in order_masks_u64(words)]
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            dist = (masks[i] ^ masks[j]).bit_count()
            if dist < d:
                return words[i], words[j], dist
    return None


def verify_table_row(
    n: int,
    d: int,
    generators,
    reps,
    expected_order: int | None = None,
    convention: str = "left",
) -> CosetCode:
    """Rebuild one table row from its generators and check everything.

    Checks the closure size (when ``expected_order`` is given), that the
    cosets are disjoint (union size is (len(reps)+1) * |H|), and that
    the union has minimum distance at least d.  ``convention`` selects
    how a coset is formed from a representative x: ``"left"`` takes
    {compose(x, h)}, ``"right"`` takes {compose(h, x)}.
    """
    if convention not in ("left", "right"):
        raise ValueError(f"unknown convention {convention!r}")
    subgroup = closure(n, generators)
    if expected_order is not None and len(subgroup) != expected_order:
        raise CodeVerificationError(
            f"closure has order {len(subgroup)}, table says {expected_order}"
        )
    words: list[Perm] = sorted(subgroup.elements)
    reps = tuple(check_word(r) for r in reps)
    for x in reps:
        if convention == "left":
            coset = left_coset(x, subgroup)
        else:
            coset = frozenset(compose(h, x) for h in subgroup.elements)
        words.extend(sorted(coset))
    expected_size = (len(reps) + 1) * len(subgroup)
    if len(set(words)) != expected_size:
        raise CodeVerificationError(
            f"cosets overlap: {len(set(words))} distinct words, expected {expected_size}"
        )
    actual = minimum_distance(words)
    if actual < d:
        witness = _find_violating_pair(words, d)
        detail = f"; offending pair {witness[0]} / {witness[1]}" if witness else ""
        raise CodeVerificationError(f"minimum distance {actual} < {d}{detail}")
    code = PermCode(n=n, d=d, words=tuple(words))
    return CosetCode(subgroup=subgroup, reps=reps, code=code, d=d)


def verify_all_table_rows(n: int) -> list[tuple[TableRow, CosetCode]]:
    """Verify every bundled row for S_n under one shared coset convention.

    Tries the left convention for all rows first and falls back to the
    right convention only as a whole; mixing conventions across rows is
    not allowed.
    """
    rows = TABLES.get(n)
    if rows is None:
        raise ValueError(f"no bundled table for n={n}")
    last_error: Exception | None = None
    for convention in ("left", "right"):
        results = []
        try:
            for row in rows:
                results.append(
                    (row,
                     verify_table_row(n, row.d, row.generators, row.reps,
                                      expected_order=row.order,
                                      convention=convention))
                )
            return results
        except CodeVerificationError as exc:
            last_error = exc
    raise CodeVerificationError(
        f"no single coset convention validates all rows: {last_error}"
    )


def cyclic_subgroup_source(n: int) -> list[Subgroup]:
    """All non-trivial cyclic subgroups of S_n, deduplicated.

    Ordered by (order, elements) so the output is stable.  The trivial
    subgroup is excluded: it cannot carry a distance claim.
    """
    if n > 8:
        raise ValueError("cyclic enumeration is limited to n <= 8")
    ident = identity(n)
    seen: dict[frozenset[Perm], Perm] = {}
    for g in permutations(range(1, n + 1)):
        if g == ident:
            continue
        elems = [ident]
        x = g
        while x != ident:
            elems.append(x)
            x = compose(x, g)
        key = frozenset(elems)
        if key not in seen:
            seen[key] = g
    groups = [
        Subgroup(n=n, generators=(gen,), elements=elems)
        for elems, gen in seen.items()
    ]
    groups.sort(key=lambda s: (len(s), sorted(s.elements)))
    return groups


# --- file formats ------------------------------------------------------------


def parse_generator_file(text: str) -> tuple[int, list[Perm]]:
    """Generator file: first line n, then one permutation per line."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty generator file")
    try:
        n = int(lines[0].strip())
    except ValueError as exc:
        raise ValueError(f"bad n line {lines[0]!r}") from exc
    gens = []
    for ln in lines[1:]:
        g = parse_perm(ln)
        if len(g) != n:
            raise ValueError(f"generator {g} does not match n={n}")
        gens.append(g)
    return n, gens


def write_generator_file(n: int, generators) -> str:
    lines = [str(n)]
    lines.extend(" ".join(str(v) for v in g) for g in generators)
    return "\n".join(lines) + "\n"


def parse_code_file(text: str) -> PermCode:
    """Code file: first line ``n d``, then one permutation per line."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty code file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad header {lines[0]!r}, expected 'n d'")
    n, d = int(header[0]), int(header[1])
    words = []
    for ln in lines[1:]:
        w = parse_perm(ln)
        if len(w) != n:
            raise ValueError(f"word {w} does not match n={n}")
        words.append(w)
    return PermCode(n=n, d=d, words=tuple(words))


def write_code_file(code: PermCode) -> str:
    lines = [f"{code.n} {code.d}"]
    lines.extend(" ".join(str(v) for v in w) for w in code.words)
    return "\n".join(lines) + "\n"
