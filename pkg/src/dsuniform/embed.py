"""Tree embeddings: verification, the sibling-pair reduction, and canonical
enumeration of copies of one tree inside another.

A tree map is a plain ``dict`` from domain nodes to image nodes.
"""

from __future__ import annotations

from itertools import islice
from typing import Iterator, Optional

from .dstree import Tree, generate_ds, is_prefix
from .errors import PreconditionError, Verdict
from .orders import lt_star


def is_embedding(f: dict, t1: Tree, t2: Tree) -> Verdict:
    """Check that f preserves level, the initial-segment relation and lex1."""
    for node in t1:
        if node not in f:
            return Verdict(False, "not total", (node,))
    for node in t1:
        if f[node] not in t2:
            return Verdict(False, "image outside codomain", (node, f[node]))
    for node in t1:
        if len(f[node]) != len(node):
            return Verdict(False, "level not preserved", (node, f[node]))
    nodes = t1.nodes
    checked = 0
    for a in nodes:
        fa = f[a]
        for b in nodes:
            if a is b:
                continue
            checked += 1
            fb = f[b]
            if len(a) < len(b) and is_prefix(a, b) and not is_prefix(fa, fb):
                return Verdict(False, "initial segment not preserved", (a, b), checked)
            if a < b and not fa < fb:
                return Verdict(False, "lex1 order not preserved", (a, b), checked)
    return Verdict(True, checked=checked)


def preserves_parents(f: dict, t1: Tree) -> bool:
    """Level and initial-segment preservation, checked edge by edge."""
    if f.get(()) != () and () in t1:
        return False
    for node in t1:
        if node:
            img = f[node]
            if len(img) != len(node) or img[:-1] != f[node[:-1]]:
                return False
    return True


def sibling_check(f: dict, t1: Tree, t2: Tree) -> Verdict:
    """Embedding test reduced to sibling pairs, for level- and
    prefix-preserving maps: siblings must map to lex-star increasing images."""
    if any(node not in f for node in t1) or any(f[n] not in t2 for n in t1):
        raise PreconditionError("map must be total with image inside the codomain")
    if not preserves_parents(f, t1):
        raise PreconditionError("map must preserve level and initial segments")
    checked = 0
    for node in t1:
        kids = t1.children(node)
        for i, a in enumerate(kids):
            for b in kids[i + 1:]:
                checked += 1
                if not lt_star(f[a], f[b]):
                    return Verdict(False, "sibling order not preserved", (a, b), checked)
    return Verdict(True, checked=checked)


def compose(g: dict, f: dict) -> dict:
    """g after f."""
    return {x: g[y] for x, y in f.items()}


def image_tree(f: dict) -> Tree:
    return Tree(f.values(), check=False)


class _Feasibility:
    """Memoized test: can the domain subtree at s be embedded at host node c
    with s sent to c?

    Children of s must go to increasing children of c; matching them
    greedily to the earliest feasible host child is optimal.
    """

    def __init__(self, domain: Tree, host: Tree):
        self.domain = domain
        self.host = host
        self.memo: dict = {}

    def ok(self, s: tuple, c: tuple) -> bool:
        key = (s, c)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.fits(self.domain.children(s), self.host.children(c), 0)
            self.memo[key] = hit
        return hit

    def fits(self, kids: tuple, hosts: tuple, start: int) -> bool:
        j = start
        for s in kids:
            while j < len(hosts) and not self.ok(s, hosts[j]):
                j += 1
            if j == len(hosts):
                return False
            j += 1
        return True


class AcceptAll:
    """Constraint hook that accepts every partial assignment."""

    def push(self, node: tuple, image: tuple) -> bool:
        return True

    def pop(self) -> None:
        pass


def iter_embeddings(domain: Tree, host: Tree, hook=None) -> Iterator[dict]:
    """Yield every embedding of domain into host in canonical order.

    Domain nodes are assigned level by level (lexicographically within a
    level), candidates ascending; the output is therefore lexicographic in
    the images of level-1 nodes, then deeper levels.  ``hook`` may veto
    partial assignments through ``push(node, image) -> bool`` / ``pop()``.
    """
    hook = hook or AcceptAll()
    feas = _Feasibility(domain, host)
    if not feas.ok((), ()):
        return
    order = [n for n in domain.bfs() if n]
    sib_index = {}
    for node in domain:
        for i, child in enumerate(domain.children(node)):
            sib_index[child] = i
    f = {(): ()}
    if not hook.push((), ()):
        return

    def rec(pos: int):
        if pos == len(order):
            yield dict(f)
            return
        node = order[pos]
        parent = node[:-1]
        siblings = domain.children(parent)
        i = sib_index[node]
        hosts = host.children(f[parent])
        start = 0
        if i:
            prev_img = f[siblings[i - 1]]
            start = hosts.index(prev_img) + 1
        rest = siblings[i + 1:]
        for j in range(start, len(hosts)):
            cand = hosts[j]
            if not feas.ok(node, cand) or not feas.fits(rest, hosts, j + 1):
                continue
            if not hook.push(node, cand):
                continue
            f[node] = cand
            yield from rec(pos + 1)
            del f[node]
            hook.pop()

    yield from rec(0)
    hook.pop()


def find_copies(host: Tree, m: int, limit: Optional[int] = None) -> list:
    """Embeddings of ds(m) into host in canonical order, at most limit of them."""
    return list(islice(iter_embeddings(generate_ds(m), host), limit))


def count_copies(domain: Tree, host: Tree) -> int:
    return sum(1 for _ in iter_embeddings(domain, host))
