"""Coset-action matrix of the Young subgroup with shape (n-r, 1, ..., 1).

The right cosets of that subgroup are labelled by ordered r-tuples F of
distinct symbols (the images of the last r positions).  Multiplying a
coset by an adjacent transposition t just applies t to the label, so the
action matrix of T = {identity} + {adjacent transpositions} is computed
tuple-wise.  Its structure (heavy diagonal, 0/1 off-diagonal, constant
row sum n) makes it strictly diagonally dominant whenever r < n/4, and
the associated packing LP has value exactly (n-1)! at uniform points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

DEFAULT_SIZE_CAP = 10**5
LP_SIZE_CAP = 200


@dataclass(frozen=True)
class CosetActionMatrix:
    n: int
    r: int
    ell: int
    entries: tuple[tuple[int, ...], ...]
    labels: tuple[tuple[int, ...], ...]  # row index -> defining r-tuple

    def row_sum(self, i: int) -> int:
        return sum(self.entries[i])


def build_coset_matrix(n: int, r: int, cap: int = DEFAULT_SIZE_CAP) -> CosetActionMatrix:
    """Build the action matrix; requires r < n/4 (the dominance regime)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if 4 * r >= n:
        raise ValueError(f"requires r < n/4, got r={r}, n={n}")
    ell = factorial(n) // factorial(n - r)
    if ell > cap:
        raise ValueError(f"matrix size {ell} exceeds cap {cap}")
    labels = list(permutations(range(1, n + 1), r))
    index = {lab: i for i, lab in enumerate(labels)}
    rows = [[0] * ell for _ in range(ell)]
    swaps = [(a, a + 1) for a in range(1, n)]
    for i, lab in enumerate(labels):
        rows[i][i] += 1  # identity fixes every label
        for a, b in swaps:
            moved = tuple(b if f == a else a if f == b else f for f in lab)
            rows[i][index[moved]] += 1
    return CosetActionMatrix(
        n=n, r=r, ell=ell,
        entries=tuple(tuple(row) for row in rows),
        labels=tuple(labels),
    )


@dataclass(frozen=True)
class MatrixPropertyReport:
    symmetric: bool
    diagonal_ok: bool        # every diagonal entry >= n - 2r
    off_diagonal_ok: bool    # every off-diagonal entry in {0, 1}
    row_sums_ok: bool        # every row sums to n
    strictly_dominant: bool  # a_ii > sum of off-diagonal row entries
    violations: tuple[str, ...]

    @property
    def all_ok(self) -> bool:
        return (self.symmetric and self.diagonal_ok and self.off_diagonal_ok
                and self.row_sums_ok and self.strictly_dominant)


def verify_matrix_properties(m: CosetActionMatrix) -> MatrixPropertyReport:
    """Check the structural properties; lists violations instead of raising.

    Strict diagonal dominance certifies invertibility without touching a
    determinant.
    """
    n, ell, a = m.n, m.ell, m.entries
    violations = []
    symmetric = True
    off_ok = True
    for i in range(ell):
        for j in range(i + 1, ell):
            if a[i][j] != a[j][i]:
                symmetric = False
                violations.append(f"asymmetry at ({i},{j})")
            if a[i][j] not in (0, 1):
                off_ok = False
                violations.append(f"off-diagonal {a[i][j]} at ({i},{j})")
    diag_ok = True
    rows_ok = True
    dominant = True
    for i in range(ell):
        if a[i][i] < n - 2 * m.r:
            diag_ok = False
            violations.append(f"diagonal {a[i][i]} < {n - 2 * m.r} at row {i}")
        s = sum(a[i])
        if s != n:
            rows_ok = False
            violations.append(f"row {i} sums to {s}, expected {n}")
        if a[i][i] <= s - a[i][i]:
            dominant = False
            violations.append(f"row {i} not strictly dominant")
    return MatrixPropertyReport(
        symmetric=symmetric,
        diagonal_ok=diag_ok,
        off_diagonal_ok=off_ok,
        row_sums_ok=rows_ok,
        strictly_dominant=dominant,
        violations=tuple(violations),
    )


def _simplex_max_sum(a_rows, b) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Maximize sum(x) s.t. Ax <= b, x >= 0, in exact rationals.

    Slack variables give the starting basis (b > 0 here).  Bland's rule
    guarantees termination.  Returns (optimum, primal x, dual y), the
    dual read off the slack columns of the final objective row.
    """
    m = len(a_rows)
    nv = len(a_rows[0])
    width = nv + m + 1
    tableau = [
        [Fraction(a_rows[i][j]) for j in range(nv)]
        + [Fraction(1 if k == i else 0) for k in range(m)]
        + [Fraction(b[i])]
        for i in range(m)
    ]
    # objective row: reduced costs, last entry = current objective value
    cost = [Fraction(-1)] * nv + [Fraction(0)] * (m + 1)
    basis = list(range(nv, nv + m))
    while True:
        enter = next((j for j in range(nv + m) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best_ratio = None
        for i in range(m):
            if tableau[i][enter] > 0:
                ratio = tableau[i][width - 1] / tableau[i][enter]
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leave])):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            raise RuntimeError("LP is unbounded")
        pivot = tableau[leave][enter]
        tableau[leave] = [v / pivot for v in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter]:
                f = tableau[i][enter]
                tableau[i] = [vi - f * vl for vi, vl in zip(tableau[i], tableau[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [ci - f * vl for ci, vl in zip(cost, tableau[leave])]
        basis[leave] = enter
    x = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            x[var] = tableau[i][width - 1]
    y = [cost[nv + i] for i in range(m)]
    return cost[width - 1], x, y


def ip_relaxation_upper(m: CosetActionMatrix) -> Fraction:
    """Exact optimum of the LP relaxation max sum(x), Ax <= (n-r)! 1, x >= 0.

    The uniform point (n-r)!/n * 1 is feasible with objective (n-1)!
    because every row sums to n, so the optimum is at least (n-1)!.  The
    returned value carries a verified duality certificate.
    """
    if m.ell > LP_SIZE_CAP:
        raise ValueError(f"LP size {m.ell} exceeds cap {LP_SIZE_CAP}")
    rhs = [factorial(m.n - m.r)] * m.ell
    optimum, x, y = _simplex_max_sum(m.entries, rhs)
    # certificate: primal feasible, dual feasible, zero gap
    for i in range(m.ell):
        lhs = sum(Fraction(m.entries[i][j]) * x[j] for j in range(m.ell))
        if lhs > rhs[i] or x[i] < 0:
            raise RuntimeError("primal certificate failed")
    for j in range(m.ell):
        col = sum(Fraction(m.entries[i][j]) * y[i] for i in range(m.ell))
        if col < 1:
            raise RuntimeError("dual certificate failed")
    if any(v < 0 for v in y):
        raise RuntimeError("dual certificate failed")
    if sum(x) != sum(Fraction(rhs[i]) * y[i] for i in range(m.ell)) or sum(x) != optimum:
        raise RuntimeError("duality gap is non-zero")
    return optimum
