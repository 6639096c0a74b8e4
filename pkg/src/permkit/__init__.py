"""Permutation codes under the Kendall tau metric.

Library and CLI for constructing, searching, verifying and bounding
permutation codes: exact ball/shell sizes, classical and exact-arithmetic
bounds on the largest code size, subgroup/coset code search, equidistant
code certificates, and Young-subgroup coset-action matrices.
"""

from .perm_core import (
    Perm,
    PermCode,
    compose,
    identity,
    inverse,
    inversions,
    kendall_distance,
    kendall_distance_naive,
    minimum_distance,
    parity,
    parse_perm,
    format_perm,
    verify_code,
)

__all__ = [
    "Perm",
    "PermCode",
    "compose",
    "identity",
    "inverse",
    "inversions",
    "kendall_distance",
    "kendall_distance_naive",
    "minimum_distance",
    "parity",
    "parse_perm",
    "format_perm",
    "verify_code",
]
