"""Text formats: sequences, trees, tuples, colourings, tree maps and
certificates.  Writers emit LF-terminated lines in canonical order; loaders
report malformed input as FormatError with a 1-based line and column.

Nodes are listed in lex1 order (root first).
"""

from __future__ import annotations

from .dstree import Tree, lex2_key
from .errors import DsError, FormatError, OrdinalSyntaxError
from .ordinal import as_entry, format_ordinal, parse_ordinal
from .search import Certificate, parse_mode
from .similarity import tuple_key
from .uniformity import Colouring, parse_arity


def format_seq(seq: tuple) -> str:
    return ",".join(format_ordinal(x) for x in seq) if seq else "()"


def parse_seq(text: str, line: int = 1, column: int = 1) -> tuple:
    if text.strip() == "()":
        return ()
    entries = []
    col = column
    for part in text.split(","):
        lead = len(part) - len(part.lstrip())
        try:
            entries.append(as_entry(parse_ordinal(part.strip())))
        except OrdinalSyntaxError as exc:
            raise FormatError(f"bad ordinal {part.strip()!r}: {exc}", line, col + lead + exc.pos) from None
        col += len(part) + 1
    for i in range(1, len(entries)):
        if not entries[i] < entries[i - 1]:
            raise FormatError(f"sequence {text!r} is not strictly decreasing", line, column)
    return tuple(entries)


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        if raw.strip() and not raw.lstrip().startswith("#"):
            yield n, raw.rstrip("\r")


def load_tree(text: str) -> Tree:
    nodes = [parse_seq(raw, n) for n, raw in _lines(text)]
    try:
        return Tree(nodes)
    except DsError as exc:
        raise FormatError(str(exc), 0) from None


def dump_tree(tree) -> str:
    return "".join(format_seq(x) + "\n" for x in sorted(tree))


def format_tuple(u: tuple) -> str:
    return "|".join(format_seq(x) for x in u)


def parse_tuple(text: str, line: int = 1, column: int = 1) -> tuple:
    if not text.strip():
        return ()
    out = []
    col = column
    for part in text.split("|"):
        out.append(parse_seq(part, line, col))
        col += len(part) + 1
    for a, b in zip(out, out[1:]):
        if not lex2_key(a) < lex2_key(b):
            raise FormatError(f"tuple {text!r} is not lex2-increasing", line, column)
    return tuple(out)


def dump_colouring(c: Colouring) -> str:
    lines = [f"palette {c.palette}", f"arity {c.arity}"]
    for u in sorted(c.table, key=tuple_key):
        lines.append(f"{format_tuple(u)};{c.table[u]}")
    return "\n".join(lines) + "\n"


def load_colouring(text: str, tree: Tree) -> Colouring:
    """Parse a colouring file and check it is total on tree."""
    rows = list(_lines(text))
    if not rows or not rows[0][1].startswith("palette "):
        raise FormatError('expected header "palette N"', rows[0][0] if rows else 1)
    n, head = rows[0]
    try:
        palette = int(head.split()[1])
    except (IndexError, ValueError):
        raise FormatError("palette must be a natural number", n, 9) from None
    arity = "upto:3"
    rows = rows[1:]
    if rows and rows[0][1].startswith("arity "):
        arity = rows[0][1].split(None, 1)[1].strip()
        try:
            parse_arity(arity)
        except DsError as exc:
            raise FormatError(str(exc), rows[0][0], 7) from None
        rows = rows[1:]
    table = {}
    for n, raw in rows:
        left, sep, right = raw.rpartition(";")
        if not sep:
            raise FormatError('expected "TUPLE;colour"', n, 1)
        u = parse_tuple(left, n)
        try:
            colour = int(right)
        except ValueError:
            raise FormatError(f"bad colour {right!r}", n, len(left) + 2) from None
        if u in table:
            raise FormatError(f"tuple {left!r} coloured twice", n, 1)
        table[u] = colour
    c = Colouring(tree, table, palette, arity)
    v = c.check_total()
    if not v:
        raise FormatError(f"{v.reason}: {format_tuple(v.witness[0])}", 0)
    return c


def dump_mapping(f: dict) -> str:
    return "".join(f"{format_seq(x)};{format_seq(f[x])}\n" for x in sorted(f))


def _parse_mapping_rows(rows) -> dict:
    f = {}
    for n, raw in rows:
        left, sep, right = raw.partition(";")
        if not sep:
            raise FormatError('expected "domain;image"', n, 1)
        x = parse_seq(left, n)
        if x in f:
            raise FormatError(f"node {left!r} mapped twice", n, 1)
        f[x] = parse_seq(right, n, len(left) + 2)
    return f


def load_mapping(text: str) -> dict:
    return _parse_mapping_rows(_lines(text))


def dump_certificate(cert: Certificate) -> str:
    m = "*" if cert.m is None else str(cert.m)
    return f"{cert.mode};{m};{cert.palette}\n" + dump_mapping(cert.embedding)


def load_certificate(text: str) -> Certificate:
    rows = list(_lines(text))
    if not rows:
        raise FormatError("empty certificate", 1)
    n, head = rows[0]
    parts = head.split(";")
    if len(parts) != 3:
        raise FormatError('expected header "mode;m;palette"', n, 1)
    mode, m, palette = parts
    try:
        parse_mode(mode)
        m = None if m == "*" else int(m)
        palette = int(palette)
    except (DsError, ValueError) as exc:
        raise FormatError(f"bad certificate header: {exc}", n, 1) from None
    return Certificate(_parse_mapping_rows(rows[1:]), mode, m, palette)
