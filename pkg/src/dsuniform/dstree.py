"""Decreasing sequences of ordinals and finite trees of them.

A decreasing sequence is a plain tuple whose entries are ``int`` (finite
ordinals) or :class:`~dsuniform.ordinal.Ordinal`; :func:`decseq` validates
and normalizes one.  A :class:`Tree` is an immutable, nonempty,
prefix-closed set of such tuples, kept in canonical lex2 order.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .errors import BudgetExceeded, GraftError, SequenceError, TreeError
from .ordinal import as_entry, ordinal

DEFAULT_NODE_BUDGET = 1 << 20

EMPTY: tuple = ()


class _Top:
    """Sentinel above every ordinal; appended to make lex2 sort keys."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return 0x7A11

    def __repr__(self):
        return "TOP"


TOP = _Top()


def lex2_key(seq: tuple) -> tuple:
    """Sort key for lex2: an extension sorts before its proper prefixes."""
    return seq + (TOP,)


def decseq(entries: Iterable = ()) -> tuple:
    """Validate and normalize a strictly decreasing sequence of ordinals."""
    seq = tuple(as_entry(x) for x in entries)
    for i in range(len(seq) - 1):
        if not seq[i] > seq[i + 1]:
            raise SequenceError(f"not strictly decreasing at index {i + 1}: {seq!r}")
    return seq


def is_prefix(a: tuple, b: tuple) -> bool:
    """a is an initial segment of b (a ⊴ b, equality allowed)."""
    return len(a) <= len(b) and b[: len(a)] == a


def meet(a: tuple, b: tuple) -> tuple:
    """The longest common initial segment of a and b."""
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return a[:i]


def meet_len(a: tuple, b: tuple) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def member_ds(alpha, seq: tuple) -> bool:
    """Whether seq lies in ds(alpha), i.e. is empty or starts below alpha."""
    return not seq or seq[0] < ordinal(alpha)


def _missing_prefixes(nodes: frozenset) -> list:
    missing = set()
    for node in nodes:
        for k in range(len(node)):
            if node[:k] not in nodes:
                missing.add(node[:k])
    return sorted(missing, key=lambda s: (len(s), lex2_key(s)))


def validate_tree(nodes: Iterable) -> "Tree":
    """Build a Tree, raising TreeError naming missing prefixes on failure."""
    return Tree(nodes)


class Tree:
    """A finite nonempty prefix-closed set of decreasing sequences."""

    __slots__ = ("_set", "_order", "_children", "_hash", "_depth")

    def __init__(self, nodes: Iterable, *, check: bool = True):
        if check:
            node_set = frozenset(decseq(n) for n in nodes)
            if not node_set:
                raise TreeError("empty node set")
            missing = _missing_prefixes(node_set)
            if missing:
                raise TreeError(
                    f"not closed under initial segments; missing {missing}",
                    tuple(missing),
                )
        else:
            node_set = frozenset(nodes)
        self._set = node_set
        self._order = tuple(sorted(node_set, key=lex2_key))
        children: dict = {n: [] for n in node_set}
        for n in node_set:
            if n:
                children[n[:-1]].append(n)
        self._children = {p: tuple(sorted(cs)) for p, cs in children.items()}
        self._hash = hash(node_set)
        self._depth = max(len(n) for n in node_set)

    @property
    def nodes(self) -> tuple:
        """Nodes in canonical (lex2 ascending) order."""
        return self._order

    @property
    def node_set(self) -> frozenset:
        return self._set

    @property
    def depth(self) -> int:
        """Length of the longest node."""
        return self._depth

    def children(self, node: tuple) -> tuple:
        """Immediate successors of node, ascending in their last entry."""
        return self._children.get(node, ())

    def bfs(self) -> tuple:
        """Nodes ordered by length, then lexicographically (parents first)."""
        return tuple(sorted(self._set, key=lambda s: (len(s), s)))

    def level(self, k: int) -> tuple:
        return tuple(n for n in self._order if len(n) == k)

    def subtree_at(self, node: tuple) -> tuple:
        """Nodes of the tree extending node (node included), canonical order."""
        return tuple(n for n in self._order if is_prefix(node, n))

    def __contains__(self, node) -> bool:
        return node in self._set

    def __iter__(self):
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._set)

    def __eq__(self, other):
        if isinstance(other, Tree):
            return self._set == other._set
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tree({list(self._order)!r})"


def graft(eta: tuple, tree: Tree) -> Tree:
    """The tree of prefixes of eta together with eta ⌢ nu for nu in tree.

    The empty eta gives back the tree itself.
    """
    eta = decseq(eta)
    if eta:
        last = eta[-1]
        for nu in tree:
            if nu and not last > nu[0]:
                raise GraftError(
                    f"grafting {eta!r} onto a tree containing {nu!r} "
                    "gives a non-decreasing sequence",
                    eta + nu,
                )
    nodes = {eta[:k] for k in range(len(eta) + 1)}
    nodes.update(eta + nu for nu in tree)
    return Tree(nodes, check=False)


def generate_ds(n: int, budget: int = DEFAULT_NODE_BUDGET) -> Tree:
    """The full tree ds(n) of decreasing sequences over {0, ..., n-1}."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if (1 << n) > budget:
        raise BudgetExceeded(f"ds({n}) has {1 << n} nodes, over the budget of {budget}")
    return _generate_ds(n)


_DS_CACHE: dict = {}


def _generate_ds(n: int) -> Tree:
    tree = _DS_CACHE.get(n)
    if tree is None:
        desc = list(range(n - 1, -1, -1))
        nodes = [c for k in range(n + 1) for c in combinations(desc, k)]
        tree = Tree(nodes, check=False)
        _DS_CACHE[n] = tree
    return tree


def subtrees(tree: Tree) -> list:
    """Every subtree of tree (prefix-closed subsets containing the root)."""

    def rooted(node):
        # all prefix-closed node sets rooted at node within tree
        options = [frozenset([node])]
        for child in tree.children(node):
            below = rooted(child)
            options = [o | b for o in options for b in below] + options
        return options

    return [Tree(s, check=False) for s in rooted(EMPTY)]
