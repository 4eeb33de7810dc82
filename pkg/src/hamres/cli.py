"""Command line: check, reduce, generate, embed, dump and bench.

Exit codes: 0 resolving (or success), 1 not resolving, 2 usage or parse
error, 3 budget exhausted, 4 disagreement between bench methods.  Results go
to stdout; diagnostics go to stderr.  ``HAMRES_LOG`` sets the log level.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
import warnings
from typing import Callable, Sequence

from .groebner import DEFAULT_STEP_BUDGET
from .hamgraph import (
    HammingGraph,
    brute_force_is_resolving,
    embed,
    parse_vertex_list,
    read_vertex_file,
)
from .resolver import (
    DEFAULT_ENUM_BUDGET,
    build_system,
    check_resolving_enumeration,
    check_resolving_groebner,
    check_resolving_hypercube,
)
from .setops import RandomSource, generate_resolving, reduce_generative, reduce_top_down
from .verdict import BudgetExceeded, NotResolvingError, ResolvabilityVerdict

__all__ = ["main", "build_parser", "witness_pair", "BENCH_FIELDS", "METHODS"]

logger = logging.getLogger("hamres")

EXIT_RESOLVING = 0
EXIT_NOT_RESOLVING = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_DISAGREEMENT = 4

BENCH_FIELDS = ["trial", "k", "a", "set_size", "method", "verdict", "wall_us", "seed"]
METHODS = ("groebner", "bruteforce", "enumeration", "hypercube")


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, required=True, help="word length")
    p.add_argument("--a", type=int, required=True, help="alphabet size")


def _set_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--vertices", help="comma separated vertices (';' when a > 10)")
    src.add_argument("--set", dest="set_file", metavar="FILE", help="vertex file")


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ordering", choices=["lex", "grlex", "grevlex"], default="grevlex")
    p.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("--groebner-budget", type=int, default=DEFAULT_STEP_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamres", description="Resolving sets of Hamming graphs via Gröbner bases."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a vertex set resolves H_{k,a}")
    _graph_args(p)
    _set_args(p)
    p.add_argument("--method", choices=METHODS, default="groebner")
    _budget_args(p)

    p = sub.add_parser("reduce", help="shrink a resolving set")
    _graph_args(p)
    _set_args(p)
    p.add_argument("--method", choices=["topdown", "generative"], default="topdown")
    p.add_argument("--seed", type=_seed, default=0)
    _budget_args(p)

    p = sub.add_parser("generate", help="build a resolving set from random vertices")
    _graph_args(p)
    p.add_argument("--seed", type=_seed, default=0)
    _budget_args(p)

    p = sub.add_parser("embed", help="distance vectors of vertices to a reference set")
    _graph_args(p)
    _set_args(p)
    p.add_argument("--input", required=True, metavar="FILE", help="vertices to embed")

    p = sub.add_parser("dump", help="print A, rref(A), P and the shifted polynomials")
    _graph_args(p)
    _set_args(p)

    p = sub.add_parser("bench", help="time the checkers on generated sets, write CSV")
    _graph_args(p)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--fraction-resolving", type=float, default=0.5)
    p.add_argument("--method", dest="methods", default=None,
                   help="comma separated methods (default: all that apply)")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", metavar="FILE", help="CSV path (default stdout)")
    _budget_args(p)
    return parser


def _graph(args) -> HammingGraph:
    try:
        return HammingGraph(args.k, args.a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _vertices(args, g: HammingGraph) -> list[tuple]:
    try:
        if args.set_file is not None:
            out = read_vertex_file(args.set_file, g)
            if not out:
                raise ValueError(f"{args.set_file}: no vertices")
            return out
        return parse_vertex_list(g, args.vertices)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def witness_pair(g: HammingGraph, w: tuple) -> tuple[tuple, tuple]:
    """Two vertices with equal distance vectors, from either witness form.

    An admissible vector becomes ``x`` holding the ``+1`` symbols and ``y`` the
    ``-1`` symbols; zero blocks get symbol 0 in both.
    """
    if len(w) == 2 and isinstance(w[0], tuple):
        return w
    x, y = [], []
    for b in range(g.k):
        block = w[b * g.a : (b + 1) * g.a]
        x.append(block.index(1) if 1 in block else 0)
        y.append(block.index(-1) if -1 in block else 0)
    return tuple(x), tuple(y)


def _witness(g: HammingGraph, r, verdict: ResolvabilityVerdict, args) -> tuple | None:
    if verdict.witness is not None:
        return witness_pair(g, verdict.witness)
    try:
        found = check_resolving_enumeration(build_system(g, r), args.enum_budget)
    except BudgetExceeded:
        logger.warning("no witness: enumeration budget exhausted")
        return None
    return witness_pair(g, found.witness)


def _checker(method: str, g: HammingGraph, args) -> Callable[[Sequence[tuple]], ResolvabilityVerdict]:
    if method == "groebner":
        return lambda r: check_resolving_groebner(
            build_system(g, r), args.ordering, args.groebner_budget
        )
    if method == "enumeration":
        return lambda r: check_resolving_enumeration(build_system(g, r), args.enum_budget)
    if method == "bruteforce":
        return lambda r: brute_force_is_resolving(g, r)
    if method == "hypercube":
        if g.a != 2:
            raise UsageError("the hypercube method needs --a 2")
        return lambda r: check_resolving_hypercube(
            g, r, args.enum_budget, args.groebner_budget, args.ordering
        )
    raise UsageError(f"unknown method {method!r}")


def cmd_check(args, out) -> int:
    g = _graph(args)
    r = _vertices(args, g)
    verdict = _checker(args.method, g, args)(r)
    print(verdict.label, file=out)
    if not verdict.resolving:
        pair = _witness(g, r, verdict, args)
        if pair is not None:
            print(f"witness {g.format_vertex(pair[0])} {g.format_vertex(pair[1])}", file=out)
    return EXIT_RESOLVING if verdict.resolving else EXIT_NOT_RESOLVING


def cmd_reduce(args, out) -> int:
    g = _graph(args)
    r = _vertices(args, g)
    reducer = reduce_top_down if args.method == "topdown" else reduce_generative
    rng = RandomSource(args.seed)
    try:
        result = reducer(g, r, rng, args.ordering, args.groebner_budget)
    except NotResolvingError as exc:
        print(f"hamres: {exc}", file=sys.stderr)
        return EXIT_NOT_RESOLVING
    for v in result:
        print(g.format_vertex(v), file=out)
    return EXIT_RESOLVING


def cmd_generate(args, out) -> int:
    g = _graph(args)
    result = generate_resolving(g, RandomSource(args.seed), args.ordering, args.groebner_budget)
    for v in result:
        print(g.format_vertex(v), file=out)
    return EXIT_RESOLVING


def cmd_embed(args, out) -> int:
    g = _graph(args)
    refs = _vertices(args, g)
    try:
        inputs = read_vertex_file(args.input, g)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["vertex"] + [f"d{i}" for i in range(1, len(refs) + 1)])
    for v, d in zip(inputs, embed(g, refs, inputs)):
        writer.writerow([g.format_vertex(v)] + list(d))
    return EXIT_RESOLVING


def cmd_dump(args, out) -> int:
    g = _graph(args)
    out.write(build_system(g, _vertices(args, g)).dump())
    return EXIT_RESOLVING


def bench_sets(g: HammingGraph, trials: int, fraction: float, rng: RandomSource, args):
    """Candidate sets with their oracle labels.

    The first ``round(fraction * trials)`` trials (in shuffled positions) keep
    a generated resolving set; the others delete random elements from one
    until the brute-force oracle says it no longer resolves.
    """
    n_res = round(fraction * trials)
    labels = rng.shuffled([True] * n_res + [False] * (trials - n_res))
    for want in labels:
        r = generate_resolving(g, rng, args.ordering, args.groebner_budget)
        if not want:
            r = list(r)
            while brute_force_is_resolving(g, r).resolving:
                r.pop(rng.integers(len(r)))
        yield r, want


def cmd_bench(args, out) -> int:
    g = _graph(args)
    if args.trials < 0:
        raise UsageError("--trials must be >= 0")
    if not 0.0 <= args.fraction_resolving <= 1.0:
        raise UsageError("--fraction-resolving must lie in [0, 1]")
    if args.methods:
        methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    else:
        methods = [m for m in METHODS if m != "hypercube" or g.a == 2]
    checkers = {m: _checker(m, g, args) for m in methods}

    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else out
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BENCH_FIELDS)
        if args.trials == 0:
            return EXIT_RESOLVING
        rng = RandomSource(args.seed)
        warm = generate_resolving(g, RandomSource(args.seed), args.ordering, args.groebner_budget)
        for check in checkers.values():
            try:
                check(warm)
            except BudgetExceeded:
                pass
        for trial, (r, truth) in enumerate(bench_sets(g, args.trials, args.fraction_resolving, rng, args)):
            seen = {}
            for m, check in checkers.items():
                t0 = time.perf_counter_ns()
                try:
                    verdict = "resolving" if check(r).resolving else "not-resolving"
                except BudgetExceeded:
                    verdict = "unknown"
                wall_us = (time.perf_counter_ns() - t0) // 1000
                writer.writerow([trial, g.k, g.a, len(r), m, verdict, wall_us, args.seed])
                seen[m] = verdict
            known = {v for v in seen.values() if v != "unknown"}
            expected = "resolving" if truth else "not-resolving"
            if known - {expected}:
                fh.flush()
                print(f"hamres: verdicts disagree on trial {trial}: {seen}", file=sys.stderr)
                return EXIT_DISAGREEMENT
            logger.info("trial %d: %d vertices, %s", trial, len(r), expected)
    finally:
        if fh is not out:
            fh.close()
    return EXIT_RESOLVING


COMMANDS = {
    "check": cmd_check,
    "reduce": cmd_reduce,
    "generate": cmd_generate,
    "embed": cmd_embed,
    "dump": cmd_dump,
    "bench": cmd_bench,
}


def _setup_logging() -> None:
    level = os.environ.get("HAMRES_LOG", "WARNING").upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.captureWarnings(True)


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"hamres: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print("unknown", file=out)
        print(f"hamres: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
