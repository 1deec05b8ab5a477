"""Rank functions on finite trees and the rank-driven embedding of
eta ⌢ ds(alpha) into a tree.

On a finite tree every rank is -1 (node absent) or a natural number.  A node
has rank at least r+1 exactly when at least ``mu`` of its children have rank
at least r, so the rank of a node is one more than the ``mu``-th largest
child rank, or 0 when it has fewer than ``mu`` children.  Limit stages never
arise at finite scale.
"""

from __future__ import annotations

from functools import lru_cache

from .dstree import Tree, decseq, generate_ds, graft
from .errors import PreconditionError
from .ordinal import ordinal


def _check_mu(mu: int) -> None:
    if not isinstance(mu, int) or mu < 1:
        raise PreconditionError(f"mu must be a positive natural number, got {mu!r}")


@lru_cache(maxsize=4096)
def rank_table(tree: Tree, mu: int = 1) -> dict:
    """Ranks of every node of tree, computed children first."""
    _check_mu(mu)
    ranks: dict = {}
    for node in sorted(tree.node_set, key=len, reverse=True):
        child_ranks = sorted((ranks[c] for c in tree.children(node)), reverse=True)
        ranks[node] = child_ranks[mu - 1] + 1 if len(child_ranks) >= mu else 0
    return ranks


def rank(tree: Tree, mu: int, eta: tuple) -> int:
    _check_mu(mu)
    return rank_table(tree, mu).get(tuple(eta), -1)


def reduced_rank(tree: Tree, mu: int, cap, eta: tuple):
    """min(cap, rank), with -1 below every ordinal."""
    r = rank(tree, mu, eta)
    if r < 0:
        return -1
    return cap if ordinal(cap) < r else r


def rank_embed(tree: Tree, mu: int, eta: tuple, alpha: int) -> dict:
    """Embed eta ⌢ ds(alpha) into tree, fixing every prefix of eta.

    Needs rank(tree, mu, eta) >= alpha.  With mu >= alpha the construction
    always succeeds; with a smaller mu it is attempted and a
    PreconditionError is raised if it gets stuck.  For each beta below
    alpha the image of eta ⌢ <beta> is eta ⌢ <g_beta>, where g_beta is the
    least child entry above every earlier g with child rank at least beta;
    the subtree below is embedded recursively.
    """
    _check_mu(mu)
    eta = decseq(eta)
    r = rank(tree, mu, eta)
    if r < alpha:
        raise PreconditionError(f"rank of {eta!r} is {r}, below alpha={alpha}")
    ranks = rank_table(tree, mu)

    def embed(node: tuple, a: int) -> dict:
        # relative image: nu in ds(a) -> image of node ⌢ nu
        out = {(): node}
        prev = None
        for beta in range(a):
            gammas = [
                c[-1]
                for c in tree.children(node)
                if ranks[c] >= beta and (prev is None or c[-1] > prev)
            ]
            if not gammas:
                if mu < alpha:
                    raise PreconditionError(
                        f"mu={mu} is below alpha={alpha}: no candidate child of {node!r} for {beta}"
                    )
                raise AssertionError("empty candidate set despite the rank precondition")
            prev = min(gammas)
            for nu, image in embed(node + (prev,), beta).items():
                out[(beta,) + nu] = image
        return out

    relative = embed(eta, alpha)
    mapping = {eta[:k]: eta[:k] for k in range(len(eta))}
    for nu, image in relative.items():
        mapping[eta + nu] = image
    return mapping


def rank_embed_domain(eta: tuple, alpha: int) -> Tree:
    """The domain tree eta ⌢ ds(alpha) of :func:`rank_embed`."""
    return graft(eta, generate_ds(alpha))
