"""Exhaustive search for uniform copies, adversarial colourings, partition
numbers, and the stepping-up pipeline, all producing re-checkable
certificates.

Search modes:

``level``
    node colourings; every level of the copy (below the root) is
    monochromatic.
``end``
    the copy is end-uniform for a tuple colouring.
``nend:N``
    the copy is N-end-uniform for a tuple colouring.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional, Sequence, Union

from .dstree import DEFAULT_NODE_BUDGET, Tree, generate_ds, lex2_key, meet_len
from .embed import compose, is_embedding, iter_embeddings
from .errors import (
    BudgetExceeded,
    DsError,
    InfeasibleTarget,
    PreconditionError,
    StageFailure,
    Verdict,
)
from .similarity import invariant
from .uniformity import (
    Colouring,
    is_end_uniform,
    is_level_uniform,
    is_n_end_uniform,
    stage_colouring,
)

log = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 1_000_000
DEFAULT_TUPLE_CAP = 3
SPLIT_DEPTH = 4


class Mode(NamedTuple):
    kind: str  # "level", "end" or "nend"
    n: int = 1

    def __str__(self):
        return f"nend:{self.n}" if self.kind == "nend" else self.kind


def parse_mode(text: Union[str, Mode]) -> Mode:
    if isinstance(text, Mode):
        return text
    if text in ("level", "end"):
        return Mode(text)
    kind, _, n = text.partition(":")
    if kind == "nend" and n.isdigit() and int(n) >= 1:
        return Mode("nend", int(n))
    raise DsError(f"unknown search mode {text!r} (use level, end or nend:N)")


@dataclass
class Certificate:
    embedding: dict
    mode: str
    m: Optional[int]  # None when the domain is not a full ds(m)
    palette: int
    checked_pairs: int = 0


def check_mode(mode: Mode, nodes, c: Colouring) -> Verdict:
    """Evaluate the mode's predicate directly on a node set."""
    if mode.kind == "level":
        return is_level_uniform(nodes, c)
    if mode.kind == "end":
        return is_end_uniform(nodes, c)
    return is_n_end_uniform(nodes, c, mode.n)


class _LevelHook:
    def __init__(self, c: Colouring):
        self.table = c.table
        self.colours: dict = {}
        self.stack: list = []

    def push(self, node, image) -> bool:
        if not image:
            self.stack.append(None)
            return True
        colour = self.table[(image,)]
        lvl = len(image)
        entry = self.colours.get(lvl)
        if entry is None:
            self.colours[lvl] = [colour, 1]
        elif entry[0] != colour:
            return False
        else:
            entry[1] += 1
        self.stack.append(lvl)
        return True

    def pop(self) -> None:
        lvl = self.stack.pop()
        if lvl is not None:
            entry = self.colours[lvl]
            entry[1] -= 1
            if not entry[1]:
                del self.colours[lvl]


class _TupleHook:
    """Incremental form of the end / n-end predicates: each tuple over the
    partial image contributes keys, and one key must never see two colours."""

    def __init__(self, c: Colouring, mode: Mode):
        self.table = c.table
        self.sizes = sorted(s for s in c.sizes if s >= 1)
        self.mode = mode
        self.images: list = []
        self.keys: dict = {}
        self.stack: list = []

    def _keys(self, u: tuple):
        if self.mode.kind == "end":
            split = meet_len(u[-2], u[-1]) if len(u) >= 2 else None
            yield (u[:-1], len(u[-1]), split)
        else:
            inv = invariant(u)
            for j in range(1, min(self.mode.n, len(u)) + 1):
                yield (j, u[:-j], inv)

    def push(self, node, image) -> bool:
        added = []
        ok = True
        for s in self.sizes:
            for combo in combinations(self.images, s - 1):
                u = tuple(sorted(combo + (image,), key=lex2_key))
                colour = self.table[u]
                for key in self._keys(u):
                    entry = self.keys.get(key)
                    if entry is None:
                        self.keys[key] = [colour, 1]
                    elif entry[0] != colour:
                        ok = False
                        break
                    else:
                        entry[1] += 1
                    added.append(key)
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            self._undo(added)
            return False
        self.images.append(image)
        self.stack.append(added)
        return True

    def _undo(self, added):
        for key in added:
            entry = self.keys[key]
            entry[1] -= 1
            if not entry[1]:
                del self.keys[key]

    def pop(self) -> None:
        self._undo(self.stack.pop())
        self.images.pop()


def _hook(c: Colouring, mode: Mode):
    return _LevelHook(c) if mode.kind == "level" else _TupleHook(c, mode)


def _target_tree(target: Union[int, Tree]) -> Tree:
    return generate_ds(target) if isinstance(target, int) else target


def find_uniform_copy(host: Tree, c: Colouring, target: Union[int, Tree], mode) -> Optional[Certificate]:
    """The canonically first copy of the target inside host satisfying mode.

    ``target`` is m (meaning ds(m)) or an explicit domain tree.  Raises
    InfeasibleTarget when the target is deeper than host.
    """
    mode = parse_mode(mode)
    domain = _target_tree(target)
    if domain.depth > host.depth:
        raise InfeasibleTarget(f"target depth {domain.depth} exceeds host depth {host.depth}")
    for f in iter_embeddings(domain, host, _hook(c, mode)):
        verdict = check_mode(mode, f.values(), c)
        if not verdict:
            raise AssertionError(f"incremental search accepted a violating copy: {verdict}")
        m = target if isinstance(target, int) else _ds_index(domain)
        return Certificate(f, str(mode), m, c.palette, verdict.checked)
    return None


def _ds_index(tree: Tree) -> Optional[int]:
    d = tree.depth
    return d if len(tree) == 1 << d and tree == generate_ds(d) else None


def verify_certificate(host: Tree, c: Colouring, cert: Certificate) -> Verdict:
    """Re-check a certificate from scratch: domain shape, embedding, predicate."""
    f = cert.embedding
    try:
        mode = parse_mode(cert.mode)
    except DsError as exc:
        return Verdict(False, str(exc))
    try:
        domain = Tree(f.keys())
    except DsError as exc:
        return Verdict(False, f"domain is not a tree: {exc}")
    if cert.m is not None and domain != generate_ds(cert.m):
        return Verdict(False, f"domain is not ds({cert.m})")
    v = is_embedding(f, domain, host)
    if not v:
        return Verdict(False, f"embedding violation: {v.reason}", v.witness)
    try:
        v = check_mode(mode, f.values(), c)
    except DsError as exc:
        return Verdict(False, f"predicate violation: {exc}")
    if not v:
        return Verdict(False, f"predicate violation: {v.reason}", v.witness, v.checked)
    return v


# Adversary search.


def _colour_groups(host: Tree, mode: Mode, cap: int):
    """Host nodes parents-first, and per node the domain items it completes."""
    nodes = host.bfs()
    if mode.kind == "level":
        return nodes, [[(x,)] if x else [] for x in nodes]
    groups = []
    for j, x in enumerate(nodes):
        earlier = nodes[:j]
        group = []
        for s in range(cap):
            for combo in combinations(earlier, s):
                group.append(tuple(sorted(combo + (x,), key=lex2_key)))
        groups.append(group)
    return nodes, groups


class _Out(Exception):
    pass


def _adversary_task(args):
    """DFS over colourings whose first items are fixed by prefix.

    Returns (colours or None, visited, over_budget).
    """
    host_n, m, mode, palette, cap, prefix, budget = args
    host = generate_ds(host_n)
    nodes, groups = _colour_groups(host, mode, cap)
    items = [u for g in groups for u in g]
    ends = {}
    pos = 0
    for j, g in enumerate(groups):
        pos += len(g)
        if g:
            ends[pos] = j
    arity = "level" if mode.kind == "level" else f"upto:{cap}"
    base = {(): 0} if mode.kind != "level" else {((),): 0}
    table = dict(base)
    colours: list = []
    visited = 0

    def copy_exists(j: int) -> bool:
        sub = Tree(nodes[: j + 1], check=False)
        if sub.depth < m:
            return False
        part = Colouring(sub, table, palette, arity)
        return find_uniform_copy(sub, part, m, mode) is not None

    def dfs(i: int, used: int):
        nonlocal visited
        if i == len(items):
            return list(colours)
        if i < len(prefix):
            choices = [prefix[i]] if prefix[i] <= used and prefix[i] < palette else []
        else:
            choices = range(min(used + 1, palette))
        for col in choices:
            visited += 1
            if visited > budget:
                raise _Out
            colours.append(col)
            table[items[i]] = col
            j = ends.get(i + 1)
            if j is None or not copy_exists(j):
                found = dfs(i + 1, max(used, col + 1))
                if found is not None:
                    return found
            del table[items[i]]
            colours.pop()
        return None

    try:
        found = dfs(0, 0)
    except _Out:
        return None, visited, True
    return found, visited, False


def _prefixes(depth: int, palette: int) -> list:
    """Restricted-growth colour strings of the given length, in lex order."""
    out = []

    def rec(cur, used):
        if len(cur) == depth:
            out.append(tuple(cur))
            return
        for col in range(min(used + 1, palette)):
            rec(cur + [col], max(used, col + 1))

    rec([], 0)
    return out


def adversary_search(
    host_n: int,
    m: int,
    mode,
    palette: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
    threads: int = 1,
    cap: int = DEFAULT_TUPLE_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Optional[Colouring]:
    """A colouring of ds(host_n) with no satisfying copy of ds(m), or None
    when none exists.

    Colourings are enumerated up to renaming colours (each new colour is the
    least unused one).  ``budget`` caps the number of search steps; running
    out raises BudgetExceeded.  The answer does not depend on ``threads``.
    """
    mode = parse_mode(mode)
    if palette < 1:
        raise DsError("palette must be at least 1")
    host = generate_ds(host_n, node_budget)
    nodes, groups = _colour_groups(host, mode, cap)
    n_items = sum(len(g) for g in groups)
    tasks = [
        (host_n, m, mode, palette, cap, p, budget)
        for p in _prefixes(min(SPLIT_DEPTH, n_items), palette)
    ]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = pool.map(_adversary_task, tasks)
            found = _combine(results, budget)
    else:
        found = _combine(map(_adversary_task, tasks), budget)
    if found is None:
        return None
    items = [u for g in groups for u in g]
    arity = "level" if mode.kind == "level" else f"upto:{cap}"
    table = {((),): 0} if mode.kind == "level" else {(): 0}
    table.update(zip(items, found))
    return Colouring(host, table, palette, arity)


def _combine(results, budget: int):
    total = 0
    for found, visited, over in results:
        total += visited
        if over or total > budget:
            raise BudgetExceeded(f"search budget of {budget} steps exhausted")
        if found is not None:
            return found
    return None


def partition_number(
    m: int,
    mode,
    palette: int,
    bound: int,
    budget: int = DEFAULT_SEARCH_BUDGET,
    threads: int = 1,
    cap: int = DEFAULT_TUPLE_CAP,
) -> Optional[int]:
    """Least N <= bound such that every colouring of ds(N) has a satisfying
    copy of ds(m), or None when there is no such N up to bound.

    A budget shortfall at some N raises BudgetExceeded with ``at`` set to N.
    """
    for n in range(bound + 1):
        try:
            adversary = adversary_search(n, m, mode, palette, budget, threads, cap)
        except BudgetExceeded as exc:
            err = BudgetExceeded(f"unknown at {n}: {exc}")
            err.at = n
            raise err from exc
        log.info("N=%d: %s", n, "adversary found" if adversary else "no adversary")
        if adversary is None:
            return n
    return None


def stepping_up_pipeline(chain: Sequence[Tree], c: Colouring, n: int) -> Certificate:
    """Find a copy of chain[0] inside chain[-1] that is n-end-uniform for c.

    Stage i looks for an end-uniform copy of chain[i-1] in chain[i] for the
    current colouring, then replaces the colouring by the encoded derived
    colouring pulled back to chain[i-1].  Composing the stage embeddings
    gives the final copy, which is re-checked before returning.
    """
    k = len(chain) - 1
    if k < 1:
        raise PreconditionError("the chain needs at least two trees")
    if n != k:
        raise PreconditionError(f"n={n} must equal the number of stages {k}")
    if c.base != chain[-1]:
        raise PreconditionError("the colouring must live on the last tree of the chain")
    maps = []
    colour = c
    for i in range(k, 0, -1):
        host, target = chain[i], chain[i - 1]
        try:
            cert = find_uniform_copy(host, colour, target, Mode("end"))
        except InfeasibleTarget as exc:
            raise StageFailure(i, str(exc)) from exc
        if cert is None:
            raise StageFailure(i, f"no end-uniform copy of tree {i - 1} inside tree {i}")
        maps.append(cert.embedding)
        if i > 1:
            colour = stage_colouring(cert.embedding, target, colour)
            log.info("stage %d: derived palette has %d colours", i, colour.palette)
    f = maps[-1]
    for g in reversed(maps[:-1]):
        f = compose(g, f)
    verdict = is_n_end_uniform(f.values(), c, n)
    if not verdict:
        raise AssertionError(f"pipeline output is not {n}-end-uniform: {verdict}")
    return Certificate(f, f"nend:{n}", _ds_index(chain[0]), c.palette, verdict.checked)
