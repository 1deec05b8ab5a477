"""Colourings of tuples, the uniformity predicates, and the stepping-up
construction: derived colourings, their integer encoding and pushforwards.

Predicates take a node collection ``nodes`` (a tree or the image of an
embedding, inside the colouring's base) and consider the tuples over it whose
sizes lie in the colouring's domain.  Counterexamples are canonical: the
first violating tuple in canonical order together with the first tuple it
should have agreed with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .dstree import Tree, lex2_key, meet_len
from .embed import is_embedding
from .errors import AmbiguousClassValue, DsError, NotEndUniform, Verdict
from .similarity import class_index, invariant, tuple_key, tuples_over


def parse_arity(arity: str) -> tuple:
    """Tuple sizes of an arity policy: ``upto:K``, ``n:K`` or ``level``."""
    if arity == "level":
        return (1,)
    kind, _, k = arity.partition(":")
    if not k.isdigit():
        raise DsError(f"bad arity policy {arity!r}")
    k = int(k)
    if kind == "upto":
        return tuple(range(k + 1))
    if kind == "n":
        return (k,)
    raise DsError(f"bad arity policy {arity!r}")


def lower_arity(arity: str) -> str:
    """Arity of the derived colouring: every tuple size drops by one."""
    kind, _, k = arity.partition(":")
    if kind not in ("upto", "n") or int(k) < 1:
        raise DsError(f"cannot derive from arity policy {arity!r}")
    return f"{kind}:{int(k) - 1}"


@dataclass
class Colouring:
    """A map from tuples over ``base`` to colours below ``palette``."""

    base: Tree
    table: dict
    palette: int
    arity: str = "upto:3"
    sizes: tuple = field(init=False)

    def __post_init__(self):
        self.sizes = parse_arity(self.arity)

    def __call__(self, u: tuple) -> int:
        return self.table[u]

    def domain(self) -> list:
        """Tuples this colouring must cover, in canonical order."""
        us = tuples_over(self.base, self.sizes)
        if self.arity == "level":
            us = [u for u in us if u[0]]
        return us

    def check_total(self) -> Verdict:
        for u in self.domain():
            if u not in self.table:
                return Verdict(False, "colouring not total", (u,))
            colour = self.table[u]
            if not (0 <= colour < self.palette):
                return Verdict(False, f"colour {colour} outside palette {self.palette}", (u,))
        return Verdict(True)

    @classmethod
    def from_function(cls, base: Tree, fn: Callable, palette: int, arity: str = "upto:3"):
        sizes = parse_arity(arity)
        table = {u: fn(u) for u in tuples_over(base, sizes)}
        return cls(base, table, palette, arity)


def _grouped(items: Iterable, colour_of) -> Verdict:
    """Items are (key, tuple); every key must carry a single colour."""
    first: dict = {}
    checked = 0
    for key, u in items:
        colour = colour_of(u)
        seen = first.get(key)
        if seen is None:
            first[key] = (u, colour)
            continue
        checked += 1
        if seen[1] != colour:
            return Verdict(False, "colours differ", (seen[0], u), checked)
    return Verdict(True, checked=checked)


def _colour_lookup(c: Colouring):
    table = c.table

    def colour_of(u):
        try:
            return table[u]
        except KeyError:
            raise DsError(f"colouring is not total: no colour for {u!r}") from None

    return colour_of


def _sorted_tuples(nodes, c: Colouring, min_size: int = 0) -> list:
    us = [u for u in tuples_over(nodes, c.sizes) if len(u) >= min_size]
    return sorted(us, key=tuple_key)


def is_uniform(nodes, c: Colouring) -> Verdict:
    """Similar tuples always receive the same colour."""
    items = ((invariant(u), u) for u in _sorted_tuples(nodes, c))
    return _grouped(items, _colour_lookup(c))


def is_end_uniform(nodes, c: Colouring) -> Verdict:
    """Replacing the last element by one of equal length and equal
    common-prefix length with the element before it keeps the colour."""

    def items():
        for u in _sorted_tuples(nodes, c, 1):
            head, last = u[:-1], u[-1]
            split = meet_len(head[-1], last) if head else None
            yield (head, len(last), split), u

    return _grouped(items(), _colour_lookup(c))


def is_n_end_uniform(nodes, c: Colouring, n: int) -> Verdict:
    """For every j from 1 to n, tuples that share all but their last j
    elements and are similar receive the same colour."""
    if n < 1:
        raise DsError("n must be at least 1")

    def items():
        for u in _sorted_tuples(nodes, c, 1):
            inv = invariant(u)
            for j in range(1, min(n, len(u)) + 1):
                yield (j, u[:-j], inv), u

    return _grouped(items(), _colour_lookup(c))


def is_level_uniform(nodes, c: Colouring) -> Verdict:
    """Every nonempty node gets the colour of its level."""
    ordered = sorted((x for x in nodes if x), key=lambda x: (len(x), x))
    items = ((len(x), (x,)) for x in ordered)
    return _grouped(items, _colour_lookup(c))


@dataclass(frozen=True)
class DerivedVector:
    """Finite-support vector indexed by similarity classes; absent entries are -1."""

    entries: tuple = ()  # sorted (class index, colour) pairs

    def __getitem__(self, m: int) -> int:
        for k, v in self.entries:
            if k == m:
                return v
        return -1

    def as_dict(self) -> dict:
        return dict(self.entries)


def derived_colouring(image, c: Colouring) -> dict:
    """For each tuple rho over ``image``, the vector sending class m to the
    colour of rho extended by some element of ``image`` landing in class m."""
    v = is_end_uniform(image, c)
    if not v:
        raise NotEndUniform("the colouring is not end-uniform on this node set", v.witness)
    nodes = sorted(set(image), key=lex2_key)
    sizes = sorted(s - 1 for s in c.sizes if s >= 1)
    out = {}
    for rho in tuples_over(nodes, sizes):
        values: dict = {}
        for eta in nodes:
            if rho and lex2_key(eta) <= lex2_key(rho[-1]):
                continue
            u = rho + (eta,)
            m = class_index(invariant(u))
            colour = c.table[u]
            if values.setdefault(m, colour) != colour:
                raise AmbiguousClassValue(f"class {m} of {rho!r} has two colours")
        out[rho] = DerivedVector(tuple(sorted(values.items())))
    return out


def _gamma(x: int) -> str:
    b = bin(x + 1)[2:]
    return "0" * (len(b) - 1) + b


def encode_vector(v: DerivedVector) -> int:
    """Injective code: Elias-gamma pairs (index gap, colour) behind a 1 bit."""
    if not v.entries:
        return 0
    bits = ["1"]
    prev = -1
    for m, colour in v.entries:
        bits.append(_gamma(m - prev - 1))
        bits.append(_gamma(colour))
        prev = m
    return int("".join(bits), 2)


def decode_vector(code: int) -> DerivedVector:
    if code == 0:
        return DerivedVector()
    bits = bin(code)[3:]
    nums, i = [], 0
    while i < len(bits):
        z = 0
        while bits[i] == "0":
            z += 1
            i += 1
        nums.append(int(bits[i:i + z + 1], 2) - 1)
        i += z + 1
    entries, prev = [], -1
    for gap, colour in zip(nums[::2], nums[1::2]):
        prev += gap + 1
        entries.append((prev, colour))
    return DerivedVector(tuple(entries))


def pushforward(phi: dict, c: Colouring, domain: Tree = None) -> Colouring:
    """The colouring u -> c(phi(u)) on the domain of phi."""
    domain = domain or Tree(phi.keys(), check=False)
    v = is_embedding(phi, domain, c.base)
    if not v:
        raise DsError(f"pushforward along a non-embedding: {v.reason} at {v.witness}")
    table = {}
    for u in tuples_over(domain, c.sizes):
        if c.arity == "level" and not u[0]:
            continue
        table[u] = c.table[tuple(phi[x] for x in u)]
    return Colouring(domain, table, c.palette, c.arity)


def stage_colouring(phi: dict, domain: Tree, c: Colouring) -> Colouring:
    """Encoded derived colouring of c on the image of phi, pulled back to
    the domain; its tuples are one element shorter than c's."""
    image = Tree(phi.values(), check=False)
    d = derived_colouring(image, c)
    arity = lower_arity(c.arity)
    table = {}
    for u in tuples_over(domain, parse_arity(arity)):
        table[u] = encode_vector(d[tuple(phi[x] for x in u)])
    palette = max(table.values(), default=0) + 1
    return Colouring(domain, table, palette, arity)
