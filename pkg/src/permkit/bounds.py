"""Lower and upper bounds on P(n, d), the largest (n, d) permutation code.

Every returned bound is an exact big integer.  All comparisons that
would mathematically involve a square root are done by cross-multiplied
integer-square comparison, never floating point: the interesting values
sit close to rounding boundaries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb, factorial, isqrt

from .balls import double_ball_size, mahonian_table

# provenance tags
GV = "GV"
SPHERE_PACKING = "SPHERE_PACKING"
DOUBLE_BALL = "DOUBLE_BALL"
HALF = "HALF"
JIANG_3 = "JIANG_3"
BARG_3 = "BARG_3"
WZYG_LOWER = "WZYG_LOWER"
WZYG_FEASIBILITY = "WZYG_FEASIBILITY"
RADICAL_3 = "RADICAL_3"
EXACT_RANGE = "EXACT_RANGE"

PROVENANCE_TAGS = frozenset(
    {GV, SPHERE_PACKING, DOUBLE_BALL, HALF, JIANG_3, BARG_3, WZYG_LOWER,
     WZYG_FEASIBILITY, RADICAL_3, EXACT_RANGE}
)


def is_prime(n: int) -> bool:
    """Trial division; 1 is not prime."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def is_prime_power(n: int) -> bool:
    """True when n = p^k for a prime p and k >= 1; 1 is not a prime power."""
    if n < 2:
        return False
    for p in range(2, isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return True  # n itself is prime


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_d(n: int, d: int) -> None:
    if not 1 <= d <= comb(n, 2):
        raise ValueError(f"d={d} out of range 1..{comb(n, 2)} for n={n}")


def gv_lower(n: int, d: int) -> int:
    """Gilbert-Varshamov bound: ceil(n! / B(d-1)).

    Also defined at the degenerate d = C(n,2) + 1, where the ball is
    the whole group and the bound collapses to 1.
    """
    if not 1 <= d <= comb(n, 2) + 1:
        raise ValueError(f"d={d} out of range 1..{comb(n, 2) + 1} for n={n}")
    counts = mahonian_table(n).counts
    return _ceil_div(factorial(n), sum(counts[:d]))


def sphere_packing_upper(n: int, d: int) -> int:
    """Sphere-packing bound: floor(n! / B(floor((d-1)/2)))."""
    _check_d(n, d)
    counts = mahonian_table(n).counts
    radius = (d - 1) // 2
    return factorial(n) // sum(counts[: radius + 1])


def double_ball_upper(n: int, d: int) -> int:
    """Upper bound n! / DB_{n,t} for even d = 2(t+1).

    d = 4 uses the closed form n!/(2(n-1)); larger even d enumerates
    the double ball, which restricts n to the enumeration guard.
    """
    _check_d(n, d)
    if d % 2 != 0 or d < 4:
        raise ValueError("double-ball bound needs even d >= 4")
    t = (d - 2) // 2
    return factorial(n) // double_ball_size(n, t)


def half_lower(n: int, d: int, odd_lower: int) -> int:
    """P(n, 2t) >= P(n, 2t-1)/2: half of any valid lower bound for d-1."""
    if d % 2 != 0:
        raise ValueError("half bound needs even d")
    return _ceil_div(odd_lower, 2)


def jiang_lower3(n: int) -> int:
    """P(n, 3) >= n!/(2n-1)."""
    return _ceil_div(factorial(n), 2 * n - 1)


def barg_lower3(n: int) -> int:
    """P(n, 3) >= n!/(2n-2), valid when n-2 is a prime power."""
    if not is_prime_power(n - 2):
        raise ValueError(f"n-2={n - 2} is not a prime power")
    return _ceil_div(factorial(n), 2 * n - 2)


def wzyg_lower(n: int, d: int) -> int:
    """Prime-power construction bound, n-2 a prime power.

    With m = ((n-2)^(t+1) - 1)/(n-3):
    P(n, 2t+1) >= n!/((2t+1) m) and P(n, 2t+2) >= n!/(2(2t+1) m).
    """
    if not is_prime_power(n - 2):
        raise ValueError(f"n-2={n - 2} is not a prime power")
    _check_d(n, d)
    t = (d - 1) // 2 if d % 2 else (d - 2) // 2
    if t < 1:
        raise ValueError("needs d >= 3 (odd) or d >= 4 (even)")
    m = ((n - 2) ** (t + 1) - 1) // (n - 3)
    denom = (2 * t + 1) * m
    if d % 2 == 0:
        denom *= 2
    return _ceil_div(factorial(n), denom)


def wzyg_max_size(n: int, d: int) -> int | None:
    """Largest M passing the pair-sum feasibility inequality, or None.

    A code of size M and minimum distance d satisfies
      even d = 2t:   2 C(M,2) t <= C(n,2) floor(M/2) ceil(M/2)
      odd  d = 2t+1: (2t+2)(C(fl,2)+C(ce,2)) + (2t+1) fl ce
                         <= C(n,2) fl ce
    so the first M that fails gives the upper bound M - 1.  For small d
    the inequality never fails and no bound exists (returns None).
    """
    if d < 2:
        raise ValueError("needs d >= 2")
    _check_d(n, d)
    pairs = comb(n, 2)
    # below these thresholds the inequality holds for every M
    if d % 2 == 0 and 2 * d <= pairs:
        return None
    if d % 2 == 1 and 2 * d + 1 <= pairs:
        return None

    def holds(m: int) -> bool:
        fl, ce = m // 2, _ceil_div(m, 2)
        rhs = pairs * fl * ce
        if d % 2 == 0:
            t = d // 2
            return 2 * comb(m, 2) * t <= rhs
        t = (d - 1) // 2
        lhs = (2 * t + 2) * (comb(fl, 2) + comb(ce, 2)) + (2 * t + 1) * fl * ce
        return lhs <= rhs

    m = 2
    while holds(m):
        m += 1
        if m > factorial(n):  # cannot happen in the bounded regime
            raise RuntimeError("feasibility scan diverged")
    return m - 1


@dataclass(frozen=True)
class RadicalBoundEvaluation:
    """Exact evaluation of the subtracted radical term for the P(n,3) bound.

    The bound is (n-1)! - t with
        t = (n - 6r) sqrt((n-1)! / (n (n-r)!)) / sqrt(n^2 - 8rn + 20r^2).
    ``term_floor``/``term_ceil`` bracket t exactly.  Since any code size
    is an integer, the sound bound subtracts the ceiling; ``table mode``
    subtracts the floor, matching published tabulations.
    """

    n: int
    r: int
    term_floor: int
    term_ceil: int
    bound_sound: int
    bound_table_mode: int

    @property
    def term_is_exact(self) -> bool:
        return self.term_floor == self.term_ceil


def _radical_term_squared(n: int, r: int) -> tuple[int, int]:
    # t^2 = num/den as exact integers
    disc = n * n - 8 * r * n + 20 * r * r
    num = (n - 6 * r) ** 2 * factorial(n - 1)
    den = disc * n * factorial(n - r)
    return num, den


def radical_upper3(n: int, r: int) -> RadicalBoundEvaluation:
    """Upper bound on P(n, 3) for prime n, via exact radical evaluation.

    Requires prime n and 1 <= r <= n/6.  term_floor is the largest
    integer k with k^2 (n^2-8rn+20r^2) n (n-r)! <= (n-6r)^2 (n-1)!, and
    term_ceil the smallest k at least the true term; no floating point
    is involved anywhere.
    """
    if not is_prime(n):
        raise ValueError(f"n={n} is not prime")
    if not 1 <= r or 6 * r > n:
        raise ValueError(f"r={r} out of range 1..n/6 for n={n}")
    if n - 6 * r <= 0:
        raise ValueError("n - 6r must be positive")
    num, den = _radical_term_squared(n, r)
    term_floor = isqrt(num // den)
    # guard against any rounding slack in the isqrt argument
    while (term_floor + 1) ** 2 * den <= num:
        term_floor += 1
    while term_floor**2 * den > num:
        term_floor -= 1
    term_ceil = term_floor if term_floor**2 * den == num else term_floor + 1
    base = factorial(n - 1)
    return RadicalBoundEvaluation(
        n=n,
        r=r,
        term_floor=term_floor,
        term_ceil=term_ceil,
        bound_sound=base - term_ceil,
        bound_table_mode=base - term_floor,
    )


def radical_upper3_best(n: int) -> RadicalBoundEvaluation:
    """The radical bound at the r maximizing the subtracted term.

    Term comparisons across r are exact: t(r1) > t(r2) iff
    num1 * den2 > num2 * den1.
    """
    if not is_prime(n) or n < 7:
        raise ValueError(f"needs a prime n >= 7, got {n}")
    best_r = 1
    best_num, best_den = _radical_term_squared(n, 1)
    for r in range(2, n // 6 + 1):
        num, den = _radical_term_squared(n, r)
        if num * best_den > best_num * den:
            best_r, best_num, best_den = r, num, den
    return radical_upper3(n, best_r)


def radical_dominates_closed_form(r: int, branch: str) -> bool:
    """Exact check that the radical term beats the closed asymptotic form.

    For prime n = 6r+1 the form is 1.61 (5r+5)^((r-4)/2); for prime
    n = 6r+5 it is 5 * 1.61 (5r+9)^((r-4)/2).  Requires r >= 6.  Returns
    term_floor >= ceil(form), with the half-integer exponent handled by
    comparing squares (1.61 = 161/100 exactly).
    """
    if r < 6:
        raise ValueError("needs r >= 6")
    if branch == "6r+1":
        n, base, scale = 6 * r + 1, 5 * r + 5, 161
    elif branch == "6r+5":
        n, base, scale = 6 * r + 5, 5 * r + 9, 5 * 161
    else:
        raise ValueError(f"unknown branch {branch!r}")
    if not is_prime(n):
        raise ValueError(f"n={n} is not prime")
    term = radical_upper3(n, r).term_floor
    if (r - 4) % 2 == 0:
        # rational form: scale * base^((r-4)/2) / 100
        num = scale * base ** ((r - 4) // 2)
        rhs_ceil = _ceil_div(num, 100)
    else:
        # form^2 = scale^2 * base^(r-4) / 100^2
        sq_num = scale * scale * base ** (r - 4)
        sq_den = 10000
        fl = isqrt(sq_num // sq_den)
        while (fl + 1) ** 2 * sq_den <= sq_num:
            fl += 1
        while fl**2 * sq_den > sq_num:
            fl -= 1
        rhs_ceil = fl if fl**2 * sq_den == sq_num else fl + 1
    return term >= rhs_ceil


@dataclass(frozen=True)
class BoundReport:
    """All applicable bounds for one (n, d) cell, with provenance."""

    n: int
    d: int
    lower: tuple[tuple[int, str], ...]
    upper: tuple[tuple[int, str], ...]

    @property
    def best_lower(self) -> int:
        return max(v for v, _ in self.lower)

    @property
    def best_upper(self) -> int:
        return min(v for v, _ in self.upper)

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "d": self.d,
            "lower": [
                {"value_decimal": str(v), "provenance": tag} for v, tag in self.lower
            ],
            "upper": [
                {"value_decimal": str(v), "provenance": tag} for v, tag in self.upper
            ],
            "best_lower": str(self.best_lower),
            "best_upper": str(self.best_upper),
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def _exact_value(n: int, d: int) -> int | None:
    pairs = comb(n, 2)
    if d == 1:
        return factorial(n)
    if d == 2:
        return factorial(n) // 2
    if 3 * d > 2 * pairs:  # d > (2/3) C(n,2)
        return 2
    if n >= 6 and 5 * d > 3 * pairs and 3 * d <= 2 * pairs:
        # the (3/5, 2/3] window where the size-4 construction is optimal
        return 4
    return None


def best_bounds(n: int, d: int, table_mode: bool = False) -> BoundReport:
    """Aggregate every applicable formula for one (n, d) cell.

    ``table_mode`` switches the d = 3 radical bound to the floor
    rounding at r = floor(n/6), matching published tables; the default
    is the sound ceiling rounding at the term-maximizing r.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    _check_d(n, d)
    lower: list[tuple[int, str]] = []
    upper: list[tuple[int, str]] = []

    exact = _exact_value(n, d)
    if exact is not None:
        lower.append((exact, EXACT_RANGE))
        upper.append((exact, EXACT_RANGE))

    lower.append((gv_lower(n, d), GV))
    upper.append((sphere_packing_upper(n, d), SPHERE_PACKING))

    if d == 3:
        lower.append((jiang_lower3(n), JIANG_3))
        if is_prime_power(n - 2):
            lower.append((barg_lower3(n), BARG_3))
        if is_prime(n) and n >= 7:
            if table_mode:
                ev = radical_upper3(n, n // 6)
                upper.append((ev.bound_table_mode, RADICAL_3))
            else:
                ev = radical_upper3_best(n)
                upper.append((ev.bound_sound, RADICAL_3))

    wzyg_ok = (d % 2 == 1 and d >= 3) or (d % 2 == 0 and d >= 4)
    if wzyg_ok and is_prime_power(n - 2):
        lower.append((wzyg_lower(n, d), WZYG_LOWER))

    if d % 2 == 0:
        odd_report = best_bounds(n, d - 1, table_mode=table_mode)
        lower.append((half_lower(n, d, odd_report.best_lower), HALF))
        if d >= 4 and (d == 4 or n <= 9):
            upper.append((double_ball_upper(n, d), DOUBLE_BALL))

    if d >= 2:
        m = wzyg_max_size(n, d)
        if m is not None:
            upper.append((m, WZYG_FEASIBILITY))

    return BoundReport(n=n, d=d, lower=tuple(lower), upper=tuple(upper))
