"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import distribution, theory, verify
from .core import (
    MAX_MATERIALIZED_DEPTH,
    PHI,
    GameFormatError,
    SampleSpec,
    read_game,
    sample_game,
    to_binary,
    to_text,
)
from .fragility import witness
from .montecarlo import EstimationRequest, default_workers, estimate

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_p(text: str) -> float:
    if text.strip().lower() in ("golden", "phi"):
        return PHI
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"p must lie in [0, 1], got {p}")
    return p


def parse_seed(text: str) -> int:
    seed = int(text, 0)
    if not 0 <= seed < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _emit(text: str | bytes, out: str | None) -> None:
    if out is None or out == "-":
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(text)
    elif isinstance(text, bytes):
        Path(out).write_bytes(text)
    else:
        Path(out).write_text(text)


def cmd_sample(args) -> int:
    if not 0 <= args.depth <= MAX_MATERIALIZED_DEPTH:
        raise UsageError(f"--depth must be in [0, {MAX_MATERIALIZED_DEPTH}]")
    game = sample_game(SampleSpec(args.depth, args.p, args.seed, args.index))
    _emit(to_binary(game) if args.binary else to_text(game), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    report = witness(read_game(args.file))
    _emit(json.dumps(report.to_dict()) + "\n", args.out)
    return EXIT_OK


def _exact_json(rows) -> str:
    return json.dumps(
        [
            {"n": r.n, "p": r.p, "cap": r.cap, "prob_v1": r.prob_v1, "F": r.F, "alpha": r.alpha, "beta": r.beta}
            for r in rows
        ],
        indent=2,
    ) + "\n"


def cmd_exact(args) -> int:
    if not 0 <= args.depth <= distribution.MAX_EXACT_DEPTH:
        raise UsageError(f"--depth must be in [0, {distribution.MAX_EXACT_DEPTH}]")
    if not 1 <= args.dmax <= distribution.MAX_CAP:
        raise UsageError(f"--dmax must be in [1, {distribution.MAX_CAP}]")
    rows = distribution.exact_table(args.depth, args.p, args.dmax)
    if not args.all_n:
        rows = rows[-1:]
    text = _exact_json(rows) if args.format == "json" else distribution.rows_to_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_theory(args) -> int:
    if not 1 <= args.dmax <= distribution.MAX_CAP:
        raise UsageError(f"--dmax must be in [1, {distribution.MAX_CAP}]")
    rows = theory.xi_sequence(args.dmax)
    if args.format == "json":
        text = json.dumps(
            [{"d": r.d, "xi": r.xi, "xi_sq": r.xi_sq, "H": r.H, "F": r.F, "one_minus_F": r.complement} for r in rows],
            indent=2,
        ) + "\n"
    else:
        text = theory.rows_to_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_mc(args) -> int:
    workers = args.workers if args.workers is not None else default_workers()
    try:
        req = EstimationRequest(args.depth, args.p, args.dmax, args.samples, args.seed, workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(estimate(req).to_json() + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not 0 <= args.max_depth <= 4:
        raise UsageError("--max-depth must be in [0, 4]")
    if args.budget < 1:
        raise UsageError("--budget must be positive")
    failed = False
    lines = []
    for result in verify.run_all(args.max_depth, args.budget):
        lines.append(result.line())
        print(lines[-1], flush=True)
        if not result.passed:
            failed = True
            break
    summary = "verification FAILED" if failed else "all checks passed"
    print(summary)
    if args.out:
        _emit("\n".join(lines + [summary]) + "\n", args.out)
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--p", type=parse_p, default=PHI, help="leaf probability of payoff 1, or 'golden' (default)")
    shared.add_argument("--seed", type=parse_seed, default=0)
    shared.add_argument("--out", default=None, help="output file (default: stdout)")
    shared.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="golden-games",
        description="Value and flip-fragility of random alternating win-lose games on binary trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[shared], help="write one seeded random game")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--index", type=parse_seed, default=0, help="sample index within the seed")
    p.add_argument("--binary", action="store_true", help="write the packed binary format")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("eval", parents=[shared], help="value, fragility and witness of a game file")
    p.add_argument("file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("exact", parents=[shared], help="exact Pr[V=1], F_n(d), alpha, beta")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--dmax", type=int, default=5)
    p.add_argument("--all-n", action="store_true", help="emit every depth 0..N, not only N")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("theory", parents=[shared], help="asymptotic xi_d, H(d), F(d) for golden games")
    p.add_argument("--dmax", type=int, default=5)
    p.set_defaults(func=cmd_theory)

    p = sub.add_parser("mc", parents=[shared], help="Monte Carlo estimate with Wilson intervals")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=None, help="default from $GOLDEN_GAMES_THREADS or 1")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("verify", parents=[shared], help="run the cross-oracle check suites")
    p.add_argument("--max-depth", type=int, default=3)
    p.add_argument("--budget", type=int, default=8)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GameFormatError as exc:
        print(f"error: malformed game file: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
