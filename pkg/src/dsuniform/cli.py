"""``dsuniform`` command-line front end.

Exit codes: 0 success, 1 a negative answer (nothing found, false), 2 input
error, 3 search budget exhausted ("unknown").
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import io
from .dstree import DEFAULT_NODE_BUDGET, generate_ds
from .errors import BudgetExceeded, DsError, InfeasibleTarget, StageFailure
from .ordinal import format_ordinal, parse_ordinal
from .orders import LEX1, LEX2, ORDER3, WORDS, cmp, hausdorff_embed, min_lex1, min_lex2, star_relation
from .rank import rank_table, reduced_rank
from .search import (
    DEFAULT_SEARCH_BUDGET,
    DEFAULT_TUPLE_CAP,
    adversary_search,
    find_uniform_copy,
    partition_number,
    stepping_up_pipeline,
    verify_certificate,
)

OK, NEGATIVE, INPUT_ERROR, UNKNOWN = 0, 1, 2, 3
CMP_KINDS = {"lex1": LEX1, "lex2": LEX2, "lex3": ORDER3}

log = logging.getLogger("dsuniform")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DsError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _nat(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is not a natural number")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be positive")
    return value


def cmd_order_cmp(args) -> int:
    a, b = io.parse_seq(args.a), io.parse_seq(args.b)
    if args.kind == "star":
        print(star_relation(a, b))
    else:
        print(WORDS[cmp(CMP_KINDS[args.kind], a, b)])
    return OK


def cmd_order_min(args) -> int:
    # a minimum is defined for any nonempty set, so no prefix-closure check
    rows = [io.parse_seq(raw, n) for n, raw in io._lines(_read(args.file))]
    if not rows:
        raise DsError("the set is empty")
    best = min_lex2(rows) if args.kind == "lex2" else min_lex1(rows)
    print(io.format_seq(best))
    return OK


def cmd_order_hausdorff(args) -> int:
    h = hausdorff_embed(parse_ordinal(args.alpha), parse_ordinal(args.beta), args.reversed)
    lines = [
        f"{format_ordinal(g)};{io.format_seq(eta)};{io.format_seq(h(eta, g))}\n"
        for eta, g in h.domain(args.node_budget)
    ]
    _emit(args, "".join(lines))
    return OK


def cmd_rank(args) -> int:
    tree = io.load_tree(_read(args.file))
    nodes = [io.parse_seq(args.node)] if args.node is not None else sorted(tree)
    cap = parse_ordinal(args.cap) if args.cap is not None else None
    table = rank_table(tree, args.mu)
    lines = []
    for node in nodes:
        r = table.get(node, -1) if cap is None else reduced_rank(tree, args.mu, cap, node)
        lines.append(f"{io.format_seq(node)};{r if isinstance(r, int) else format_ordinal(r)}\n")
    _emit(args, "".join(lines))
    return OK


def cmd_ds(args) -> int:
    _emit(args, io.dump_tree(generate_ds(args.n, args.node_budget)))
    return OK


def cmd_copy(args) -> int:
    tree = io.load_tree(_read(args.tree))
    c = io.load_colouring(_read(args.colouring), tree)
    cert = find_uniform_copy(tree, c, args.m, args.mode)
    if cert is None:
        print("none")
        return NEGATIVE
    _emit(args, io.dump_certificate(cert))
    return OK


def cmd_number(args) -> int:
    try:
        n = partition_number(
            args.m, args.mode, args.palette, args.bound, args.budget, args.threads, args.cap
        )
    except BudgetExceeded as exc:
        print(f"unknown at {getattr(exc, 'at', '?')}")
        return UNKNOWN
    if n is None:
        print("exceeds bound")
        return NEGATIVE
    _emit(args, f"{n}\n")
    return OK


def cmd_adversary(args) -> int:
    c = adversary_search(
        args.n, args.m, args.mode, args.palette, args.budget, args.threads, args.cap, args.node_budget
    )
    if c is None:
        print("none")
        return NEGATIVE
    _emit(args, io.dump_colouring(c))
    return OK


def cmd_pipeline(args) -> int:
    chain = [io.load_tree(_read(p)) for p in args.chain.split(",")]
    c = io.load_colouring(_read(args.colouring), chain[-1])
    try:
        cert = stepping_up_pipeline(chain, c, args.n)
    except StageFailure as exc:
        print(f"stage {exc.stage} failed: {exc.reason}")
        return NEGATIVE
    _emit(args, io.dump_certificate(cert))
    return OK


def cmd_verify(args) -> int:
    tree = io.load_tree(_read(args.tree))
    c = io.load_colouring(_read(args.colouring), tree)
    cert = io.load_certificate(_read(args.cert))
    v = verify_certificate(tree, c, cert)
    print("true" if v else f"false: {v.reason}")
    return OK if v else NEGATIVE


def _globals(parser, suppress: bool) -> None:
    d = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    g = parser.add_argument_group("global options")
    g.add_argument("--threads", type=_positive, default=d(1), help="worker processes for searches")
    g.add_argument("--node-budget", type=_positive, default=d(DEFAULT_NODE_BUDGET))
    g.add_argument("--seed", type=_nat, default=d(0), help="seed for randomized corpus generation")
    g.add_argument("--out", default=d(None), help="write the main output here instead of stdout")
    g.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dsuniform", description=__doc__.splitlines()[0])
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name, fn, **kw):
        p = group.add_parser(name, **kw)
        _globals(p, suppress=True)
        p.set_defaults(fn=fn)
        return p

    order = sub.add_parser("order", help="compare sequences, minima, Hausdorff maps")
    osub = order.add_subparsers(dest="action", required=True)
    p = leaf(osub, "cmp", cmd_order_cmp)
    p.add_argument("--kind", choices=["lex1", "lex2", "lex3", "star"], required=True)
    p.add_argument("a")
    p.add_argument("b")
    p = leaf(osub, "min", cmd_order_min)
    p.add_argument("--kind", choices=["lex1", "lex2"], required=True)
    p.add_argument("--file", required=True)
    p = leaf(osub, "hausdorff", cmd_order_hausdorff)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--reversed", action="store_true")

    p = leaf(sub, "rank", cmd_rank, help="node ranks of a tree file")
    p.add_argument("--file", required=True)
    p.add_argument("--mu", type=_positive, default=1)
    p.add_argument("--node")
    p.add_argument("--lambda", dest="cap")

    p = leaf(sub, "ds", cmd_ds, help="write the tree file of ds(N)")
    p.add_argument("n", type=_nat)

    search = sub.add_parser("search", help="uniform copies, partition numbers, pipeline")
    ssub = search.add_subparsers(dest="action", required=True)

    def search_opts(p):
        p.add_argument("--budget", type=_positive, default=DEFAULT_SEARCH_BUDGET)
        p.add_argument("--cap", type=_positive, default=DEFAULT_TUPLE_CAP, help="largest tuple size")

    p = leaf(ssub, "copy", cmd_copy)
    p.add_argument("--tree", required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("--m", type=_nat, required=True)
    p.add_argument("--mode", required=True)
    p = leaf(ssub, "number", cmd_number)
    p.add_argument("--m", type=_nat, required=True)
    p.add_argument("--mode", required=True)
    p.add_argument("--palette", type=_positive, required=True)
    p.add_argument("--bound", type=_nat, required=True)
    search_opts(p)
    p = leaf(ssub, "adversary", cmd_adversary)
    p.add_argument("--n", type=_nat, required=True, help="host ds(N)")
    p.add_argument("--m", type=_nat, required=True)
    p.add_argument("--mode", required=True)
    p.add_argument("--palette", type=_positive, required=True)
    search_opts(p)
    p = leaf(ssub, "pipeline", cmd_pipeline)
    p.add_argument("--chain", required=True, help="comma-separated tree files T0,...,Tk")
    p.add_argument("--colouring", required=True)
    p.add_argument("--n", type=_nat, required=True)

    p = leaf(sub, "verify", cmd_verify, help="re-check a certificate")
    p.add_argument("--tree", required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("--cert", required=True)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    log.info("seed %d", args.seed)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return UNKNOWN
    except InfeasibleTarget as exc:
        print(f"infeasible target: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except DsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
