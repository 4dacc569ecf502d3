"""Command-line interface.

Exit codes: 0 success (or "true"), 1 a negative answer (non-isomorphic,
failed suite), 2 bad input or flags, 3 a size guard was hit.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .canon import canonical_string, canonise, iso_test
from .decomposition import format_decomposition, rank_width_exact
from .expressions import evaluate_expression, parse_expression
from .graph import Graph, GuardError, ParseError, connected_components, parse_graph, to_edge_list
from .pebble import spoiler_wins
from .splitflip import (
    find_flip_extension,
    find_split_pair,
    flip_extension_graph,
    respects_cut,
)
from .verify import SUITES, run_suite, suite_names
from .wl import colour_histogram, wl_stable_k

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _vertex_list(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        values = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError("vertices must be nonnegative")
    return values


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> Graph:
    try:
        return parse_graph(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _set_for(G: Graph, X: tuple[int, ...]) -> tuple[int, ...]:
    bad = [v for v in X if v >= G.n]
    if bad:
        raise _UsageError(f"--set: vertex {bad[0]} out of range for n={G.n}")
    return tuple(sorted(set(X)))


def _join(values) -> str:
    return ",".join(str(v) for v in values)


# --------------------------------------------------------------------------
# commands


def cmd_canon(args: argparse.Namespace) -> int:
    print(canonical_string(canonise(_graph(args.file), args.dim)))
    return EXIT_OK


def cmd_iso(args: argparse.Namespace) -> int:
    same = iso_test(_graph(args.file1), _graph(args.file2), args.dim, check=args.check)
    print("isomorphic" if same else "non-isomorphic")
    return EXIT_OK if same else EXIT_FALSE


def cmd_wl(args: argparse.Namespace) -> int:
    c = wl_stable_k(_graph(args.file), args.dim)
    hist = colour_histogram(c)
    print(f"dim={args.dim} rounds={c.rounds} colours={len(hist)}")
    for colour, count in hist:
        print(f"{colour} {count}")
    return EXIT_OK


def cmd_rankwidth(args: argparse.Namespace) -> int:
    G = _graph(args.file)
    if G.n == 0:
        raise _UsageError("rank width needs at least one vertex")
    width, witness = rank_width_exact(G)
    print(width)
    print(format_decomposition(witness))
    return EXIT_OK


def cmd_cwexpr(args: argparse.Namespace) -> int:
    e = parse_expression(_read(args.file))
    G, labels = evaluate_expression(e)
    sys.stdout.write(to_edge_list(G))
    print("# labels " + " ".join(map(str, labels)))
    return EXIT_OK


def cmd_pebble(args: argparse.Namespace) -> int:
    print(spoiler_wins(_graph(args.file1), _graph(args.file2), args.pebbles).winner)
    return EXIT_OK


def cmd_splitpair(args: argparse.Namespace) -> int:
    G = _graph(args.file)
    sp = find_split_pair(G, _set_for(G, args.set))
    print(f"rank={len(sp.a)}")
    print(f"a={_join(sp.a)}")
    print(f"b={_join(sp.b)}")
    return EXIT_OK


def cmd_flipext(args: argparse.Namespace) -> int:
    G = _graph(args.file)
    X = _set_for(G, args.set)
    sp = find_split_pair(G, X)
    s = find_flip_extension(G, X, sp)

    def pattern(M: int) -> str:
        return "{" + _join(s.pattern_set(M)) + "}"

    print(f"a={_join(s.a)}")
    print(f"b={_join(s.b)}")
    for (M, N), d in sorted(s.table.items()):
        print(f"f({pattern(M)},{pattern(N)})={d}")
    comps = connected_components(flip_extension_graph(G, s))
    print("components " + " ".join("{" + _join(C) + "}" for C in comps))
    print("cut respected" if respects_cut(comps, X) else "cut violated")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        result = run_suite(name, args.seed)
        for line in result.lines():
            print(line, flush=True)
        ok = ok and result.passed
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwiso",
        description="Weisfeiler-Leman isomorphism and canonisation for graphs of small rank width.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="print the canonical form of a graph")
    p.add_argument("file")
    p.add_argument("--dim", type=_positive, default=2, help="k; refinement runs at k+1 (default 2)")
    p.set_defaults(run=cmd_canon)

    p = sub.add_parser("iso", help="test two graphs for isomorphism")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--dim", type=_positive, default=2, help="k; refinement runs at k+1 (default 2)")
    p.add_argument("--check", action="store_true", help="cross-check against WL equivalence")
    p.set_defaults(run=cmd_iso)

    p = sub.add_parser("wl", help="stable k-WL colour histogram")
    p.add_argument("file")
    p.add_argument("--dim", type=_positive, default=1)
    p.set_defaults(run=cmd_wl)

    p = sub.add_parser("rankwidth", help="exact rank width and a witness decomposition")
    p.add_argument("file")
    p.set_defaults(run=cmd_rankwidth)

    p = sub.add_parser("cwexpr", help="evaluate a k-expression")
    p.add_argument("file")
    p.set_defaults(run=cmd_cwexpr)

    p = sub.add_parser("pebble", help="solve the bijective pebble game")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--pebbles", type=_positive, default=2)
    p.set_defaults(run=cmd_pebble)

    p = sub.add_parser("splitpair", help="ordered split pair of a vertex set")
    p.add_argument("file")
    p.add_argument("--set", type=_vertex_list, required=True, help='vertices, e.g. "0,1,2"')
    p.set_defaults(run=cmd_splitpair)

    p = sub.add_parser("flipext", help="flip extension of a vertex set and its components")
    p.add_argument("file")
    p.add_argument("--set", type=_vertex_list, required=True, help='vertices, e.g. "0,1,2"')
    p.set_defaults(run=cmd_flipext)

    p = sub.add_parser("verify", help="run a self-test suite")
    p.add_argument("suite", choices=suite_names())
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except GuardError as exc:
        print(f"rwiso: size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, _UsageError) as exc:
        print(f"rwiso: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
