"""Text formats for posets, granular operator spaces and set families.

All three are line based; ``#`` starts a comment.  Tokens made of digits
are read as integers, anything else stays a string.

Poset (``.poset``)::

    elements: 0 a b 1
    0 <= a
    a <= b
    b <= 1

The order is the reflexive-transitive closure of the listed pairs.

Granular operator space (``.gos``)::

    universe: 1 2 3
    block: 1 2
    block: 3
    pawlak

or, with explicit operator tables (one line per subset and operator)::

    universe: 1 2
    granule: 1
    granule: 2
    lower {} -> {}
    lower {1} -> {1}
    upper {1,2} -> {1,2}
    ...

Set family (``.family``)::

    ground: 1 2 3      # optional, defaults to the union of the members
    set: 1 2
    set: 2 3
"""

from __future__ import annotations

import re
from typing import Iterable

from .granular import GranularOperatorSpace, _fmt, _sort_key, pawlak_from_partition
from .poset import FinitePoset, SetFamily, covering_pairs, from_pairs

__all__ = [
    "ParseError",
    "parse_poset",
    "parse_gos",
    "parse_family",
    "dump_poset",
    "dump_gos",
    "dump_family",
    "format_subset",
]

_SUBSET = re.compile(r"\{([^{}]*)\}")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _token(text: str):
    return int(text) if text.isdigit() else text


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            indent = len(body) - len(body.lstrip())
            yield number, indent + 1, body.strip()


def _keyword(body: str, key: str):
    if body.startswith(key + ":"):
        return body[len(key) + 1 :].split()
    return None


def parse_poset(text: str) -> FinitePoset:
    """Parse a poset document.  Closure cycles raise ``NotAntisymmetric``."""
    elements = None
    pairs = []
    for line, col, body in _lines(text):
        names = _keyword(body, "elements")
        if names is not None:
            if elements is not None:
                raise ParseError("duplicate elements line", line, col)
            elements = [_token(t) for t in names]
            if len(set(elements)) != len(elements):
                raise ParseError("repeated element name", line, col)
            continue
        parts = body.split()
        if len(parts) != 3 or parts[1] != "<=":
            raise ParseError(f"expected 'a <= b', got {body!r}", line, col)
        if elements is None:
            raise ParseError("order pair before the elements line", line, col)
        a, b = _token(parts[0]), _token(parts[2])
        for name, offset in ((a, 0), (b, body.rfind(parts[2]))):
            if name not in elements:
                raise ParseError(f"unknown element {name!r}", line, col + offset)
        pairs.append((a, b))
    if elements is None:
        raise ParseError("missing elements line", 1, 1)
    return from_pairs(elements, pairs)


def _parse_subset(text: str, line: int, col: int, universe: set) -> frozenset:
    m = _SUBSET.fullmatch(text.strip())
    if not m:
        raise ParseError(f"expected a subset like {{1,2}}, got {text.strip()!r}", line, col)
    items = [t.strip() for t in m.group(1).split(",") if t.strip()]
    out = frozenset(_token(t) for t in items)
    unknown = out - universe
    if unknown:
        raise ParseError(f"unknown element {sorted(unknown, key=_sort_key)[0]!r}", line, col)
    return out


def parse_gos(text: str) -> GranularOperatorSpace:
    universe = None
    granules: list[frozenset] = []
    pawlak = False
    tables: dict[str, dict] = {"lower": {}, "upper": {}}
    for line, col, body in _lines(text):
        names = _keyword(body, "universe")
        if names is not None:
            if universe is not None:
                raise ParseError("duplicate universe line", line, col)
            universe = [_token(t) for t in names]
            continue
        if universe is None:
            raise ParseError("the universe line must come first", line, col)
        for key in ("block", "granule"):
            names = _keyword(body, key)
            if names is not None:
                g = frozenset(_token(t) for t in names)
                if not g <= set(universe):
                    raise ParseError(f"{key} leaves the universe", line, col)
                granules.append(g)
                break
        else:
            if body == "pawlak":
                pawlak = True
                continue
            op = body.split(None, 1)[0]
            if op not in tables or "->" not in body:
                raise ParseError(f"unrecognised line {body!r}", line, col)
            lhs, rhs = body[len(op) :].split("->", 1)
            arg = _parse_subset(lhs, line, col + len(op), set(universe))
            val = _parse_subset(rhs, line, col + body.index("->") + 2, set(universe))
            if arg in tables[op]:
                raise ParseError(f"duplicate {op} entry for {_fmt(arg)}", line, col)
            tables[op][arg] = val
    if universe is None:
        raise ParseError("missing universe line", 1, 1)
    if pawlak:
        if tables["lower"] or tables["upper"]:
            raise ParseError("pawlak spaces take no operator tables", 1, 1)
        try:
            return pawlak_from_partition(universe, granules)
        except ValueError as exc:
            raise ParseError(str(exc), 1, 1) from None
    try:
        return GranularOperatorSpace.from_tables(universe, granules, tables["lower"], tables["upper"])
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def parse_family(text: str) -> SetFamily:
    ground = None
    members = []
    for line, col, body in _lines(text):
        names = _keyword(body, "ground")
        if names is not None:
            ground = frozenset(_token(t) for t in names)
            continue
        names = _keyword(body, "set")
        if names is None:
            raise ParseError(f"expected 'set:' or 'ground:', got {body!r}", line, col)
        members.append(frozenset(_token(t) for t in names))
    if ground is None:
        return SetFamily.of(members)
    try:
        return SetFamily(ground, tuple(members))
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def format_subset(s: Iterable) -> str:
    return _fmt(frozenset(s))


def dump_poset(poset: FinitePoset) -> str:
    lines = ["elements: " + " ".join(str(e) for e in poset.elements)]
    idx = poset.index
    for a, b in sorted(covering_pairs(poset), key=lambda p: (idx(p[0]), idx(p[1]))):
        lines.append(f"{a} <= {b}")
    return "\n".join(lines) + "\n"


def dump_gos(space: GranularOperatorSpace, pawlak: bool = False) -> str:
    lines = ["universe: " + " ".join(str(x) for x in space.universe)]
    key = "block" if pawlak else "granule"
    for g in space.granulation:
        lines.append(f"{key}: " + " ".join(str(x) for x in sorted(g, key=_sort_key)))
    if pawlak:
        lines.append("pawlak")
    else:
        for op in ("lower", "upper"):
            f = space.lower if op == "lower" else space.upper
            for a in space.subsets():
                lines.append(f"{op} {_fmt(a)} -> {_fmt(f(a))}")
    return "\n".join(lines) + "\n"


def dump_family(family: SetFamily) -> str:
    lines = ["ground: " + " ".join(str(x) for x in sorted(family.ground, key=_sort_key))]
    for m in family.members:
        lines.append("set: " + " ".join(str(x) for x in sorted(m, key=_sort_key)))
    return "\n".join(lines) + "\n"
