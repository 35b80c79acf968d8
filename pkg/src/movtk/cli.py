"""Command-line interface: solve, mov, count, verify, gen.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 budget
exceeded.  ``--format json`` emits a stable machine-readable schema (see the
README); table output is meant for humans.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from .core import (
    BudgetExceededError,
    FormatError,
    Tournament,
    Weighting,
    generate_tight_co_constructive,
    generate_tight_destructive,
    generate_uniform,
    parse_tournament,
    parse_weights,
    serialize_tournament,
    serialize_weights,
)
from .margins import DEFAULT_BUDGET, margin
from .oracle import DEFAULT_ORACLE_BUDGET, brute_force_mov, relative_mov
from .solutions import SolutionId, choice_set, is_member, kings

SOLUTION_NAMES = {
    "co": SolutionId("copeland"),
    "tc": SolutionId("topcycle"),
    "uc": SolutionId("uncovered"),
    "ba": SolutionId("banks"),
}
ALL_SOLUTIONS_DEFAULT = ("co", "tc", "uc", "kkings:3", "ba")


class CliError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _resolve_solution(name: str, k: int | None, n: int) -> SolutionId:
    if name in SOLUTION_NAMES:
        if k is not None:
            raise CliError(f"--k is only valid with --solution kkings, not {name}")
        return SOLUTION_NAMES[name]
    if name == "kkings":
        if k is None:
            raise CliError("--solution kkings requires --k")
        if k < 2:
            raise CliError(f"k must be at least 2, got {k}")
        if k == 2:
            return SolutionId("uncovered")
        if k > n - 1 and n >= 3:
            raise CliError(f"k must be at most n-1 = {n - 1}, got {k}")
        return kings(k)
    raise CliError(f"unknown solution {name!r}")


def _load_tournament(path: str) -> Tournament:
    try:
        return parse_tournament(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except FormatError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _load_weights(path: str | None, t: Tournament) -> Weighting | None:
    if path is None:
        return None
    try:
        return parse_weights(Path(path).read_text(), t)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except FormatError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _resolve_alternative(t: Tournament, alt: str) -> int:
    if t.labels is not None and alt in t.labels:
        return t.labels.index(alt)
    try:
        idx = int(alt)
    except ValueError:
        raise CliError(f"unknown alternative {alt!r}") from None
    if not 0 <= idx < t.n:
        raise CliError(f"alternative index {idx} out of range for n={t.n}")
    return idx


def _witness_json(t: Tournament, edges) -> list[list]:
    return [[t.label_of(i), t.label_of(j)] for (i, j) in sorted(edges)]


def cmd_solve(args: argparse.Namespace) -> int:
    t = _load_tournament(args.tournament)
    sol = _resolve_solution(args.solution, args.k, t.n)
    members = sorted(choice_set(t, sol))
    if args.format == "json":
        print(json.dumps({
            "command": "solve",
            "solution": str(sol),
            "members": [t.label_of(i) for i in members],
            "indices": members,
        }))
    else:
        print(" ".join(t.label_of(i) for i in members))
    return 0


def _margin_record(t: Tournament, w: Weighting | None, x: int, sol: SolutionId, budget: int) -> dict:
    record: dict = {
        "index": x,
        "label": t.label_of(x),
        "solution": str(sol),
        "member": is_member(t, sol, x),
    }
    try:
        res = margin(t, x, sol, w, budget=budget)
    except BudgetExceededError as exc:
        record["error"] = f"budget-exceeded: {exc}"
        return record
    record["value"] = res.value
    record["witness"] = _witness_json(t, res.witness.edges)
    record["witness_indices"] = [list(e) for e in sorted(res.witness.edges)]
    record["method"] = res.method
    if w is None or w.is_unit_for(t):
        # the worst-case bounds behind the relative margin are unweighted-only
        record["relative"] = relative_mov(t, x, sol, res.value)
    return record


def cmd_mov(args: argparse.Namespace) -> int:
    t = _load_tournament(args.tournament)
    w = _load_weights(args.weights, t)
    if args.all_solutions:
        sols = [_resolve_solution(*_split_solution_token(tok), n=t.n) for tok in ALL_SOLUTIONS_DEFAULT]
    else:
        sols = [_resolve_solution(args.solution, args.k, t.n)]
    if args.all:
        alternatives = list(range(t.n))
    elif args.alt is not None:
        alternatives = [_resolve_alternative(t, args.alt)]
    else:
        raise CliError("mov needs --alt or --all")
    records = [_margin_record(t, w, x, sol, args.budget) for sol in sols for x in alternatives]
    exceeded = any("error" in r for r in records)
    if args.format == "json":
        print(json.dumps({
            "command": "mov",
            "tournament": args.tournament,
            "weighted": w is not None,
            "results": records,
        }))
    else:
        for r in records:
            if "error" in r:
                print(f"{r['label']:>4}  {r['solution']:>8}  ERROR {r['error']}")
                continue
            witness = " ".join("({},{})".format(*e) for e in r["witness"])
            rel = f"  rel={r['relative']:.3f}" if "relative" in r else ""
            print(f"{r['label']:>4}  {r['solution']:>8}  {r['value']:>4}  {{{witness}}}  {r['method']}{rel}")
    return 3 if exceeded else 0


def _split_solution_token(tok: str) -> tuple[str, int | None]:
    if ":" in tok:
        name, k = tok.split(":", 1)
        return name, int(k)
    return tok, None


def cmd_count(args: argparse.Namespace) -> int:
    t = _load_tournament(args.tournament)
    w = _load_weights(args.weights, t)
    sol = _resolve_solution(args.solution, args.k, t.n)
    records = []
    for x in range(t.n):
        try:
            rep = brute_force_mov(t, x, sol, w, budget=args.budget)
        except BudgetExceededError as exc:
            raise CliError(f"budget exceeded for alternative {t.label_of(x)}: {exc}", code=3) from exc
        records.append({
            "index": x,
            "label": t.label_of(x),
            "value": rep.mov,
            "count": rep.count,
            "witnesses": [_witness_json(t, ws.edges) for ws in rep.witnesses],
        })
    if args.format == "json":
        print(json.dumps({"command": "count", "solution": str(sol), "results": records}))
    else:
        for r in records:
            print(f"{r['label']}: {r['count']} (mov {r['value']})")
    return 0


def _orientations(n: int):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        rows = [0] * n
        for bit, (i, j) in zip(choice, pairs):
            if bit:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        yield Tournament(n, tuple(rows))


def cmd_verify(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise CliError("--n must be at least 2")
    sol = _resolve_solution(args.solution, args.k, args.n)
    if args.exhaustive:
        if args.n > 5:
            raise CliError("exhaustive verification is limited to n <= 5")
        instances = _orientations(args.n)
    else:
        instances = (generate_uniform(args.n, args.seed + i) for i in range(args.samples))
    checked = 0
    mismatches = []
    for t in instances:
        checked += 1
        for x in range(t.n):
            try:
                expected = brute_force_mov(t, x, sol, budget=args.budget)
                got = margin(t, x, sol, budget=args.budget)
            except BudgetExceededError as exc:
                raise CliError(f"budget exceeded: {exc}", code=3) from exc
            if expected.mov != got.value:
                mismatches.append((t.rows, x, expected.mov, got.value))
    if mismatches:
        for rows, x, want, got in mismatches[:20]:
            print(f"MISMATCH rows={rows} x={x} oracle={want} algorithm={got}")
        print(f"FAILED ({len(mismatches)} mismatches over {checked} tournaments)")
        return 1
    print(f"OK ({checked} tournaments)")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "uniform":
        t = generate_uniform(args.n, args.seed)
        distinguished = None
    elif args.family == "tight-destructive":
        t, distinguished = generate_tight_destructive(args.n)
    elif args.family == "tight-co-constructive":
        t, distinguished = generate_tight_co_constructive(args.n)
    else:
        raise CliError(f"unknown family {args.family!r}")
    text = serialize_tournament(t)
    if args.out is None:
        sys.stdout.write(text)
        if distinguished is not None:
            print(f"# distinguished alternative: {distinguished}", file=sys.stderr)
    else:
        out = Path(args.out)
        out.write_text(text)
        wrote = [str(out)]
        if args.with_weights:
            wts = out.with_suffix(".wts")
            wts.write_text(serialize_weights(Weighting.ones(t)))
            wrote.append(str(wts))
        note = "" if distinguished is None else f" (distinguished alternative: {distinguished})"
        print(f"wrote {', '.join(wrote)}{note}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="movtk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, weights: bool = True) -> None:
        p.add_argument("--solution", choices=["co", "tc", "uc", "kkings", "ba"], default="uc")
        p.add_argument("--k", type=int, default=None, help="path bound for kkings (k >= 2)")
        p.add_argument("--format", choices=["table", "json"], default="table")
        if weights:
            p.add_argument("--weights", default=None, help="path to a .wts file")

    p_solve = sub.add_parser("solve", help="print the choice set")
    p_solve.add_argument("tournament")
    add_common(p_solve, weights=False)
    p_solve.set_defaults(func=cmd_solve)

    p_mov = sub.add_parser("mov", help="margins of victory with witnesses")
    p_mov.add_argument("tournament")
    add_common(p_mov)
    p_mov.add_argument("--alt", default=None, help="alternative label or index")
    p_mov.add_argument("--all", action="store_true", help="all alternatives")
    p_mov.add_argument("--all-solutions", action="store_true",
                       help="evaluate co, tc, uc, 3-kings, and ba")
    p_mov.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_mov.set_defaults(func=cmd_mov)

    p_count = sub.add_parser("count", help="count minimum reversal sets per alternative")
    p_count.add_argument("tournament")
    add_common(p_count)
    p_count.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    p_count.set_defaults(func=cmd_count)

    p_verify = sub.add_parser("verify", help="cross-check algorithms against the oracle")
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--exhaustive", action="store_true",
                          help="all orientations (n <= 5) instead of samples")
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    add_common(p_verify, weights=False)
    p_verify.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="write instance files")
    p_gen.add_argument("--family", choices=["uniform", "tight-destructive", "tight-co-constructive"],
                       default="uniform")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None, help="output .trn path (stdout when omitted)")
    p_gen.add_argument("--with-weights", action="store_true",
                       help="also write a unit .wts next to --out")
    p_gen.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def console() -> None:
    sys.exit(main())
