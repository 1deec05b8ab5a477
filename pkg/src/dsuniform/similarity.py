"""Similarity of finite tuples of sequences and a fixed enumeration of the
similarity classes.

A tuple is a Python tuple of sequences listed in strictly increasing lex2
order (the canonical listing of a finite set of nodes).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .dstree import lex2_key, meet_len
from .errors import DsError, UnrealizableInvariant
from .orders import LEX2, cmp


@dataclass(frozen=True)
class SimInvariant:
    n: int
    lengths: tuple
    meets: tuple  # n x n, meets[i][j] = length of the common prefix
    perm: tuple  # indices in lex1-ascending order of the elements

    def serialize(self) -> tuple:
        """Field vector: lengths, then the upper triangle of meets row by row."""
        upper = tuple(self.meets[i][j] for i in range(self.n) for j in range(i + 1, self.n))
        return self.lengths + upper


def check_tuple(u: Sequence) -> tuple:
    """Return u as a tuple, raising DsError unless it is strictly lex2-increasing."""
    u = tuple(tuple(x) for x in u)
    for a, b in zip(u, u[1:]):
        if cmp(LEX2, a, b) >= 0:
            raise DsError(f"tuple not strictly lex2-increasing at {a!r}, {b!r}")
    return u


def invariant(u: Sequence) -> SimInvariant:
    u = tuple(u)
    n = len(u)
    lengths = tuple(len(x) for x in u)
    meets = tuple(tuple(meet_len(a, b) for b in u) for a in u)
    perm = tuple(sorted(range(n), key=lambda i: u[i]))
    return SimInvariant(n, lengths, meets, perm)


def similar(u: Sequence, v: Sequence) -> bool:
    """Clause-by-clause similarity: element lengths, pairwise common-prefix
    lengths, and the pairwise lex2 relation all agree."""
    if len(u) != len(v):
        return False
    n = len(u)
    if any(len(u[i]) != len(v[i]) for i in range(n)):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if meet_len(u[i], u[j]) != meet_len(v[i], v[j]):
                return False
    for i in range(n):
        for j in range(n):
            if i != j and (cmp(LEX2, u[i], u[j]) < 0) != (cmp(LEX2, v[i], v[j]) < 0):
                return False
    return True


def tuples_over(nodes: Iterable, sizes: Iterable[int]) -> list:
    """All lex2-increasing tuples from nodes with the given sizes, ordered by
    size and then lexicographically."""
    ordered = sorted(set(nodes), key=lex2_key)
    out = []
    for k in sorted(set(sizes)):
        out.extend(combinations(ordered, k))
    return out


def tuple_key(u: tuple) -> tuple:
    """Canonical sort key for tuples: size, then elementwise lex2."""
    return (len(u), tuple(lex2_key(x) for x in u))


# Realization of candidate invariants.


def realize(n: int, lengths: Sequence[int], meets: Sequence[Sequence[int]]):
    """A lex2-increasing tuple of natural-number sequences with the given
    lengths and common-prefix lengths, or None when there is none."""
    if n == 0:
        return ()
    max_len = max(lengths)
    seqs = [[] for _ in range(n)]
    for p in range(max_len):
        base = (max_len - p) * (n + 1)
        groups: dict = {}
        for i in range(n):
            if lengths[i] > p:
                groups.setdefault(tuple(seqs[i]), []).append(i)
        for members in groups.values():
            firsts: list = []
            slot = {}
            for i in members:
                for r, j in enumerate(firsts):
                    if meets[i][j] > p:
                        slot[i] = r
                        break
                else:
                    slot[i] = len(firsts)
                    firsts.append(i)
            for i in members:
                seqs[i].append(base + slot[i])
    u = tuple(tuple(s) for s in seqs)
    for a, b in zip(u, u[1:]):
        if cmp(LEX2, a, b) >= 0:
            return None
    inv = invariant(u)
    if inv.lengths != tuple(lengths):
        return None
    if any(inv.meets[i][j] != meets[i][j] for i in range(n) for j in range(n)):
        return None
    return u


# Enumeration of classes: by total size, then n, then the field vector.


def _dims(n: int) -> int:
    return n + n * (n - 1) // 2


def _weak(s: int, d: int) -> int:
    """Number of d-part vectors of naturals summing to s."""
    if s < 0:
        return 0
    if d == 0:
        return 1 if s == 0 else 0
    return comb(s + d - 1, d - 1)


def _size_count(size: int) -> int:
    return sum(_weak(size - n, _dims(n)) for n in range(size + 1))


def _vector_rank(vec: Sequence[int], s: int) -> int:
    d = len(vec)
    r, rem = 0, s
    for i, x in enumerate(vec):
        for y in range(x):
            r += _weak(rem - y, d - i - 1)
        rem -= x
    return r


def _vector_unrank(r: int, s: int, d: int) -> tuple:
    out, rem = [], s
    for i in range(d):
        x = 0
        while True:
            c = _weak(rem - x, d - i - 1)
            if r < c:
                break
            r -= c
            x += 1
        out.append(x)
        rem -= x
    return tuple(out)


def class_index(inv: SimInvariant) -> int:
    """Position of the class in the fixed enumeration; the empty tuple is 0."""
    vec = inv.serialize()
    size = inv.n + sum(vec)
    k = sum(_size_count(s) for s in range(size))
    k += sum(_weak(size - n, _dims(n)) for n in range(inv.n))
    return k + _vector_rank(vec, size - inv.n)


def class_of_index(k: int) -> SimInvariant:
    """Inverse of :func:`class_index`; raises UnrealizableInvariant when the
    index decodes to field values no tuple has."""
    if k < 0:
        raise ValueError("class indices are natural numbers")
    size = 0
    while k >= (c := _size_count(size)):
        k -= c
        size += 1
    n = 0
    while k >= (c := _weak(size - n, _dims(n))):
        k -= c
        n += 1
    vec = _vector_unrank(k, size - n, _dims(n))
    lengths = vec[:n]
    meets = [[0] * n for _ in range(n)]
    pos = n
    for i in range(n):
        meets[i][i] = lengths[i]
        for j in range(i + 1, n):
            meets[i][j] = meets[j][i] = vec[pos]
            pos += 1
    u = realize(n, lengths, meets)
    if u is None:
        raise UnrealizableInvariant(f"unrealizable invariant: lengths={lengths}, meets={meets}")
    return invariant(u)
