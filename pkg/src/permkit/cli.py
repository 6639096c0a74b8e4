"""Command-line interface.  One subcommand per capability.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
All subcommands are deterministic: identical invocations produce
identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import balls, bounds, constructions, coset_search, epc_exact, young_matrix
from .perm_core import (
    format_perm,
    identity,
    kendall_distance,
    parse_perm,
    verify_code,
)

USAGE_ERROR = 2
VERIFY_ERROR = 1


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_dist(args) -> int:
    p = parse_perm(args.p)
    q = parse_perm(args.q)
    print(kendall_distance(p, q))
    return 0


def _cmd_ball(args) -> int:
    print(balls.ball_size(args.n, args.r))
    if args.enumerate:
        ball = balls.ball_enumerate(identity(args.n), args.r)
        for word in ball.words:
            print(format_perm(word))
    return 0


def _cmd_bounds(args) -> int:
    report = bounds.best_bounds(args.n, args.d, table_mode=args.table_mode)
    print(report.to_json())
    return 0


def _cmd_construct4(args) -> int:
    sized = constructions.construct_size4(args.n)
    _emit(coset_search.write_code_file(sized.code), args.output)
    return 0


def _cmd_atdist(args) -> int:
    print(format_perm(constructions.permutation_at_distance(args.n, args.d)))
    return 0


def _cmd_verify(args) -> int:
    code = coset_search.parse_code_file(Path(args.code).read_text())
    ok, actual = verify_code(code)
    if ok:
        print(f"PASS n={code.n} size={len(code.words)} claimed_d={code.d} min_distance={actual}")
        return 0
    print(f"FAIL n={code.n} size={len(code.words)} claimed_d={code.d} min_distance={actual}")
    return VERIFY_ERROR


def _cmd_search(args) -> int:
    if args.groups:
        n, gens = coset_search.parse_generator_file(Path(args.groups).read_text())
        if n != args.n:
            raise ValueError(f"generator file is for n={n}, requested n={args.n}")
        groups = [coset_search.closure(n, gens, cap=args.cap)]
    else:
        groups = coset_search.cyclic_subgroup_source(args.n)
    best = None
    for subgroup in groups:
        try:
            weight = coset_search.subgroup_min_weight(subgroup)
        except ValueError:
            continue
        if weight < args.d:
            continue
        result = coset_search.greedy_coset_code(subgroup, args.d)
        print(
            f"subgroup order={len(subgroup)} weight={weight} "
            f"reps={len(result.reps)} code_size={len(result.code.words)}"
        )
        if result.shortcut_discrepancies:
            print(
                f"  note: {len(result.shortcut_discrepancies)} cosets rejected that "
                "a representative-only test would have accepted"
            )
        if best is None or len(result.code.words) > len(best.code.words):
            best = result
    if best is None:
        print("no admissible subgroup found")
        return VERIFY_ERROR
    print(f"best code: size={len(best.code.words)} d={best.d}")
    if args.output:
        _emit(coset_search.write_code_file(best.code), args.output)
    return 0


def _cmd_tables_verify(args) -> int:
    try:
        results = coset_search.verify_all_table_rows(args.n)
    except coset_search.CodeVerificationError as exc:
        print(f"FAIL {exc}")
        return VERIFY_ERROR
    for row, built in results:
        actual = verify_code(built.code)[1]
        print(
            f"d={row.d} |H|={row.order} reps={len(row.reps)} "
            f"size={len(built.code.words)} min_distance={actual} PASS"
        )
    if args.emit_generators:
        outdir = Path(args.emit_generators)
        outdir.mkdir(parents=True, exist_ok=True)
        for row, _ in results:
            stem = f"s{args.n}_d{row.d:02d}"
            (outdir / f"{stem}_generators.txt").write_text(
                coset_search.write_generator_file(args.n, row.generators)
            )
            (outdir / f"{stem}_reps.txt").write_text(
                coset_search.write_generator_file(args.n, row.reps)
            )
    return 0


def _cmd_epc(args) -> int:
    ep = epc_exact.ep_max(args.n, args.d)
    sh = epc_exact.shell(args.n, args.d)
    counts = epc_exact.count_equidistant_cliques(sh, args.d, max_size=ep)
    doc = {
        "n": args.n,
        "d": args.d,
        "shell_size": len(sh.members),
        "clique_counts_from_2": list(counts),
        "ep_max": ep,
    }
    if args.extension_check:
        if (args.n, args.d) != (7, 12):
            raise ValueError("--extension-check applies to --n 7 --d 12 only")
        report = epc_exact.epc_extension_check(args.n)
        doc["extension"] = {
            "candidates": report.candidate_count,
            "max_overlap": report.max_overlap,
        }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def _cmd_clique(args) -> int:
    print(epc_exact.max_clique_exact(args.n, args.d))
    return 0


def _cmd_youngmat(args) -> int:
    matrix = young_matrix.build_coset_matrix(args.n, args.r)
    report = young_matrix.verify_matrix_properties(matrix)
    doc = {
        "n": args.n,
        "r": args.r,
        "ell": matrix.ell,
        "symmetric": report.symmetric,
        "diagonal_ok": report.diagonal_ok,
        "off_diagonal_ok": report.off_diagonal_ok,
        "row_sums_ok": report.row_sums_ok,
        "strictly_dominant": report.strictly_dominant,
        "all_ok": report.all_ok,
        "violations": list(report.violations),
    }
    if args.lp:
        optimum = young_matrix.ip_relaxation_upper(matrix)
        doc["lp_optimum"] = str(optimum)
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.csv:
        lines = [",".join(str(v) for v in row) for row in matrix.entries]
        Path(args.csv).write_text("\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permkit",
        description="Permutation codes under the Kendall tau metric",
    )
    parser.add_argument(
        "--threads", type=int, default=1,
        help="reserved; results never depend on it",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="Kendall distance between two words")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("ball", help="ball size (and optionally its members)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--enumerate", action="store_true")
    p.set_defaults(func=_cmd_ball)

    p = sub.add_parser("bounds", help="all applicable bounds for one (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--table-mode", action="store_true",
                   help="floor rounding at r = n//6 for the d=3 radical bound")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("construct4", help="size-4 code at distance 2/3 C(n,2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_construct4)

    p = sub.add_parser("atdist", help="a word at a prescribed distance from identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_atdist)

    p = sub.add_parser("verify", help="check a code file against its claimed distance")
    p.add_argument("--code", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="greedy subgroup/coset code search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--groups", help="generator file defining one subgroup")
    p.add_argument("--cyclic", action="store_true",
                   help="search all cyclic subgroups")
    p.add_argument("--cap", type=int, default=coset_search.DEFAULT_CLOSURE_CAP)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("tables-verify", help="re-verify the bundled coset-code tables")
    p.add_argument("--n", type=int, required=True, choices=(7, 8))
    p.add_argument("--emit-generators", metavar="DIR",
                   help="export the bundled rows as generator/representative files")
    p.set_defaults(func=_cmd_tables_verify)

    p = sub.add_parser("epc", help="equidistant clique counts on a shell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--extension-check", action="store_true")
    p.set_defaults(func=_cmd_epc)

    p = sub.add_parser("clique", help="exact largest code size by clique search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_clique)

    p = sub.add_parser("youngmat", help="Young-subgroup coset action matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--lp", action="store_true",
                   help="also solve the exact LP relaxation")
    p.add_argument("--csv", metavar="FILE", help="write the matrix as CSV")
    p.set_defaults(func=_cmd_youngmat)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    if args.command == "search" and bool(args.groups) == bool(args.cyclic):
        parser.error("search needs exactly one of --groups or --cyclic")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except coset_search.CodeVerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return VERIFY_ERROR


if __name__ == "__main__":
    sys.exit(main())
