"""The lex1, lex2, lex-star and alternating (order3) relations on sequences,
their minimum algorithms, and embeddings of scattered order expressions into
the alternating order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Union

from .dstree import decseq, generate_ds, lex2_key, member_ds
from .errors import BudgetExceeded, DomainError
from .ordinal import add, as_entry, nat_mul, ordinal

LEX1 = "lex1"
LEX2 = "lex2"
LEX_STAR = "lex_star"
ORDER3 = "order3"
TOTAL_KINDS = (LEX1, LEX2, ORDER3)

LESS, EQUAL, GREATER = -1, 0, 1
WORDS = {LESS: "less", EQUAL: "equal", GREATER: "greater"}


def _split(a: tuple, b: tuple) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def cmp(kind: str, a: tuple, b: tuple) -> int:
    """Three-way comparison of two sequences under a total order kind.

    lex1 puts a proper prefix first, lex2 puts it last; order3 puts it first
    and otherwise compares the first differing entry ascending at even
    positions and descending at odd ones.
    """
    ell = _split(a, b)
    la, lb = len(a), len(b)
    if ell == la and ell == lb:
        return EQUAL
    if ell == la or ell == lb:
        a_is_prefix = ell == la
        if kind == LEX1 or kind == ORDER3:
            return LESS if a_is_prefix else GREATER
        if kind == LEX2:
            return GREATER if a_is_prefix else LESS
        raise ValueError(f"unknown total order kind {kind!r}")
    if kind not in TOTAL_KINDS:
        raise ValueError(f"unknown total order kind {kind!r}")
    below = a[ell] < b[ell]
    if kind == ORDER3 and ell % 2:
        below = not below
    return LESS if below else GREATER


def lt(kind: str, a: tuple, b: tuple) -> bool:
    if kind == LEX_STAR:
        return lt_star(a, b)
    return cmp(kind, a, b) == LESS


def lt_star(a: tuple, b: tuple) -> bool:
    """Strict lex-star: below in both lex1 and lex2."""
    ell = _split(a, b)
    if ell == len(a) or ell == len(b):
        return False
    return a[ell] < b[ell]


def le_star(a: tuple, b: tuple) -> bool:
    """Reflexive lex-star."""
    return a == b or lt_star(a, b)


def star_relation(a: tuple, b: tuple) -> str:
    if a == b:
        return "equal"
    if lt_star(a, b):
        return "less"
    if lt_star(b, a):
        return "greater"
    return "incomparable"


def sort_key(kind: str):
    if kind == LEX2:
        return lex2_key
    if kind == LEX1:
        return tuple
    return cmp_to_key(lambda a, b: cmp(kind, a, b))


def min_lex2(nodes: Iterable) -> tuple:
    """The lex2-least member, built one entry at a time.

    Each step fixes the next entry as the least value occurring at that
    position among members agreeing with the prefix built so far; it stops
    when no member extends the prefix.
    """
    members = [decseq(n) for n in nodes]
    if not members:
        raise ValueError("min_lex2 of an empty set")
    prefix: tuple = ()
    while True:
        n = len(prefix)
        nxt = [seq[n] for seq in members if len(seq) > n and seq[:n] == prefix]
        if not nxt:
            break
        prefix += (min(nxt),)
    assert prefix in members
    return prefix


def min_lex1(nodes: Iterable) -> tuple:
    """The lex1-least member: the shortest member prefix of the lex2-least one."""
    members = {decseq(n) for n in nodes}
    best = min_lex2(members)
    n_star = min(m for m in range(len(best) + 1) if best[:m] in members)
    return best[:n_star]


class HausdorffMap:
    """Order embedding of (ds(alpha), <3) x beta, or x beta reversed, into
    (ds(alpha + beta*2 + 1), <3).

    The product is ordered with the beta coordinate most significant.
    """

    def __init__(self, alpha, beta, reversed: bool = False):
        self.alpha = ordinal(alpha)
        self.beta = ordinal(beta)
        self.reversed = reversed
        self.target = add(add(self.alpha, nat_mul(self.beta, 2)), 1)
        self._base = add(self.alpha, self.beta)

    def __call__(self, eta: tuple, gamma) -> tuple:
        eta = decseq(eta)
        if not member_ds(self.alpha, eta):
            raise DomainError(f"{eta!r} is not in ds({self.alpha})")
        if not ordinal(gamma) < self.beta:
            raise DomainError(f"gamma={gamma} is not below beta={self.beta}")
        if self.reversed:
            head = (add(self._base, self.beta), add(self._base, gamma))
        else:
            head = (add(add(self._base, gamma), 1), self._base)
        return tuple(as_entry(x) for x in head) + eta

    def product_cmp(self, x: tuple, y: tuple) -> int:
        """Compare (eta, gamma) pairs in the source product order."""
        (eta1, g1), (eta2, g2) = x, y
        if g1 != g2:
            below = g1 < g2
            if self.reversed:
                below = not below
            return LESS if below else GREATER
        return cmp(ORDER3, eta1, eta2)

    def domain(self, budget: int = 1 << 16) -> list:
        """All (eta, gamma) pairs in product order; needs natural alpha, beta."""
        if not (self.alpha.is_finite() and self.beta.is_finite()):
            raise BudgetExceeded("only natural alpha and beta can be enumerated")
        a, b = self.alpha.natural(), self.beta.natural()
        if b * (1 << a) > budget:
            raise BudgetExceeded(f"{b * (1 << a)} pairs over the budget of {budget}")
        etas = sorted(generate_ds(a), key=sort_key(ORDER3))
        gammas = range(b - 1, -1, -1) if self.reversed else range(b)
        return [(eta, g) for g in gammas for eta in etas]


def hausdorff_embed(alpha, beta, reversed: bool = False) -> HausdorffMap:
    return HausdorffMap(alpha, beta, reversed)


# Scattered order expressions.


@dataclass(frozen=True)
class Ord:
    """The ordinal alpha as a linear order."""

    alpha: object


@dataclass(frozen=True)
class RevOrd:
    """The reverse of the ordinal beta."""

    beta: object


@dataclass(frozen=True)
class DsTree:
    """(ds(alpha), <3)."""

    alpha: object


@dataclass(frozen=True)
class ProductOrd:
    """inner x beta: beta copies of inner, in the order of beta."""

    inner: object
    beta: object


@dataclass(frozen=True)
class ProductRevOrd:
    """inner x beta*: beta copies of inner, in reverse order of beta."""

    inner: object
    beta: object


ScatteredExpr = Union[Ord, RevOrd, DsTree, ProductOrd, ProductRevOrd]


def _nat(x, budget: int) -> int:
    x = ordinal(x)
    if not x.is_finite():
        raise BudgetExceeded(f"{x} is infinite; only finite expressions can be enumerated")
    n = x.natural()
    if n > budget:
        raise BudgetExceeded(f"parameter {n} over the budget of {budget}")
    return n


def elements(e: ScatteredExpr, budget: int = 1 << 14) -> list:
    """The elements of a finite expression, ascending in its order."""
    if isinstance(e, DsTree):
        n = _nat(e.alpha, budget)
        if (1 << n) > budget:
            raise BudgetExceeded(f"ds({n}) over the budget of {budget}")
        return sorted(generate_ds(n), key=sort_key(ORDER3))
    if isinstance(e, Ord):
        return list(range(_nat(e.alpha, budget)))
    if isinstance(e, RevOrd):
        return list(range(_nat(e.beta, budget) - 1, -1, -1))
    if isinstance(e, (ProductOrd, ProductRevOrd)):
        inner = elements(e.inner, budget)
        b = _nat(e.beta, budget)
        if len(inner) * b > budget:
            raise BudgetExceeded(f"{len(inner) * b} elements over the budget of {budget}")
        gammas = range(b) if isinstance(e, ProductOrd) else range(b - 1, -1, -1)
        return [(x, g) for g in gammas for x in inner]
    raise TypeError(f"not a scattered expression: {e!r}")


def compare_elements(e: ScatteredExpr, x, y) -> int:
    """Three-way comparison of two elements of e in e's own order."""
    if isinstance(e, DsTree):
        return cmp(ORDER3, x, y)
    if isinstance(e, (Ord, RevOrd)):
        c = (x > y) - (x < y)
        return -c if isinstance(e, RevOrd) else c
    if isinstance(e, (ProductOrd, ProductRevOrd)):
        (x1, g1), (x2, g2) = x, y
        if g1 != g2:
            c = LESS if g1 < g2 else GREATER
            return -c if isinstance(e, ProductRevOrd) else c
        return compare_elements(e.inner, x1, x2)
    raise TypeError(f"not a scattered expression: {e!r}")


def embed_scattered(e: ScatteredExpr, budget: int = 1 << 14):
    """Return ``(alpha, mapping)`` embedding e's order into (ds(alpha), <3).

    Ordinals and reversed ordinals are treated as products over the
    one-point ds(0); products compose the inner embedding with a
    :class:`HausdorffMap`.
    """
    if isinstance(e, DsTree):
        n = _nat(e.alpha, budget)
        return n, {x: x for x in elements(e, budget)}
    if isinstance(e, (Ord, RevOrd)):
        beta = e.alpha if isinstance(e, Ord) else e.beta
        h = HausdorffMap(0, beta, reversed=isinstance(e, RevOrd))
        return as_entry(h.target), {g: h((), g) for g in elements(e, budget)}
    if isinstance(e, (ProductOrd, ProductRevOrd)):
        inner_bound, inner_map = embed_scattered(e.inner, budget)
        h = HausdorffMap(inner_bound, e.beta, reversed=isinstance(e, ProductRevOrd))
        mapping = {(x, g): h(inner_map[x], g) for (x, g) in elements(e, budget)}
        return as_entry(h.target), mapping
    raise TypeError(f"not a scattered expression: {e!r}")
