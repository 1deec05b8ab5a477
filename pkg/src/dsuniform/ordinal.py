"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents (themselves ordinals) and positive integer
coefficients.  Finite ordinals compare and hash equal to the matching Python
``int``, so sequence entries may freely mix the two; :func:`as_entry` turns a
finite ordinal back into an ``int``.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Union

from .errors import OrdinalSyntaxError

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "ordinal",
    "as_entry",
    "compare",
    "add",
    "nat_mul",
    "omega_power",
    "parse_ordinal",
    "format_ordinal",
]

OrdLike = Union["Ordinal", int]


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: tuple = ()):
        terms = tuple(terms)
        prev = None
        for exp, coeff in terms:
            if not isinstance(exp, Ordinal):
                raise TypeError("exponents must be Ordinal instances")
            if not isinstance(coeff, int) or isinstance(coeff, bool) or coeff < 1:
                raise ValueError(f"coefficient must be a positive int, got {coeff!r}")
            if prev is not None and _cmp(prev, exp) <= 0:
                raise ValueError("exponents must be strictly decreasing")
            prev = exp
        self.terms = terms
        if self.is_finite():
            self._hash = hash(self.natural())
        else:
            self._hash = hash(terms)

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def natural(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_finite() and self.natural() == other
        return NotImplemented

    def __lt__(self, other):
        try:
            return _cmp(self, ordinal(other)) < 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        try:
            return add(self, other)
        except TypeError:
            return NotImplemented

    def __radd__(self, other):
        try:
            return add(other, self)
        except TypeError:
            return NotImplemented

    def __mul__(self, k):
        if isinstance(k, int) and not isinstance(k, bool):
            return nat_mul(self, k)
        return NotImplemented

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def ordinal(x: OrdLike) -> Ordinal:
    """Coerce a natural number or an Ordinal to an Ordinal."""
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        if x < 0:
            raise ValueError("ordinals are non-negative")
        return Ordinal(((ZERO, x),)) if x else ZERO
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def as_entry(x: OrdLike) -> OrdLike:
    """Canonical sequence entry: ``int`` when finite, otherwise the Ordinal."""
    if isinstance(x, Ordinal):
        return x.natural() if x.is_finite() else x
    ordinal(x)  # type and sign check
    return x


def omega_power(exponent: OrdLike, coeff: int = 1) -> Ordinal:
    """Return w^exponent * coeff."""
    if coeff == 0:
        return ZERO
    return Ordinal(((ordinal(exponent), coeff),))


def _cmp(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def compare(a: OrdLike, b: OrdLike) -> int:
    """Three-way ordinal comparison: -1, 0 or 1."""
    if type(a) is int and type(b) is int:
        return (a > b) - (a < b)
    return _cmp(ordinal(a), ordinal(b))


def add(a: OrdLike, b: OrdLike) -> Ordinal:
    """Ordinal sum a + b (not commutative)."""
    a, b = ordinal(a), ordinal(b)
    if not b.terms:
        return a
    lead_exp, lead_coeff = b.terms[0]
    kept = []
    for exp, coeff in a.terms:
        c = _cmp(exp, lead_exp)
        if c > 0:
            kept.append((exp, coeff))
        elif c == 0:
            lead_coeff += coeff
            break
        else:
            break
    return Ordinal(tuple(kept) + ((lead_exp, lead_coeff),) + b.terms[1:])


def nat_mul(a: OrdLike, k: int) -> Ordinal:
    """a * k for a natural number k, i.e. the k-fold sum a + ... + a."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError(f"multiplier must be a natural number, got {k!r}")
    a = ordinal(a)
    if k == 0 or not a.terms:
        return ZERO
    (exp, coeff), rest = a.terms[0], a.terms[1:]
    return Ordinal(((exp, coeff * k),) + rest)


def format_ordinal(a: OrdLike) -> str:
    a = ordinal(a)
    if not a.terms:
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if not exp.terms:
            parts.append(str(coeff))
            continue
        if exp == 1:
            s = "w"
        elif exp.is_finite():
            s = f"w^{exp.natural()}"
        else:
            s = f"w^({format_ordinal(exp)})"
        if coeff != 1:
            s += f"*{coeff}"
        parts.append(s)
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str, strict: bool):
        self.text = text
        self.pos = 0
        self.strict = strict

    def error(self, message: str):
        raise OrdinalSyntaxError(message, self.text, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        start = self.pos
        if not ("1" <= self.peek() <= "9"):
            self.error("expected a positive natural number")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def ordinal(self) -> Ordinal:
        if self.peek() == "0":
            self.pos += 1
            return ZERO
        start = self.pos
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        if self.strict:
            for left, right in zip(terms, terms[1:]):
                if _cmp(left.terms[0][0], right.terms[0][0]) <= 0:
                    self.pos = start
                    self.error("non-canonical form (exponents must strictly decrease)")
        total = ZERO
        for t in terms:
            total = add(total, t)
        return total

    def term(self) -> Ordinal:
        if self.peek() != "w":
            return ordinal(self.nat())
        self.pos += 1
        exp: Ordinal = ONE
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                exp = self.ordinal()
                self.expect(")")
            else:
                exp = ordinal(self.nat())
        coeff = 1
        if self.peek() == "*":
            self.pos += 1
            coeff = self.nat()
        return omega_power(exp, coeff)


def parse_ordinal(text: str, strict: bool = True) -> Ordinal:
    """Parse the ``0 | term (+ term)*`` grammar, ``w`` standing for omega.

    With ``strict`` (the default) a sum whose exponents do not strictly
    decrease, such as ``w+w^2``, is rejected; otherwise it is normalized by
    ordinal addition.
    """
    p = _Parser(text, strict)
    result = p.ordinal()
    if p.pos != len(text):
        p.error("unexpected character")
    return result
