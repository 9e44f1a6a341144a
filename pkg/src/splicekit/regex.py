"""Regular expression syntax trees.

The same tree types serve two purposes: ordinary regular expressions over
single-character symbols (compiled to automata in :mod:`splicekit.automata`),
and right-hand sides of generalized context-free productions, where a
:class:`Sym` may name a nonterminal.

Concrete syntax accepted by :func:`parse`::

    a b c      symbols (any printable character that is not an operator)
    _          the empty word
    xy         concatenation
    x+y, x|y   union
    x*         Kleene star
    x+         one or more, when ``+`` is not followed by an operand
    ( )        grouping

Whitespace is ignored.  Note the ``+`` rule: ``(aa)+b`` is the union of
``aa`` and ``b``; write ``(aa)(aa)*b`` for the other reading.
"""

from __future__ import annotations

from dataclasses import dataclass


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Node:
    __slots__ = ()

    def symbols(self) -> set[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class Eps(Node):
    def symbols(self):
        return set()

    def __str__(self):
        return "_"


@dataclass(frozen=True)
class Sym(Node):
    name: str

    def symbols(self):
        return {self.name}

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Cat(Node):
    items: tuple[Node, ...]

    def symbols(self):
        return set().union(*(i.symbols() for i in self.items))

    def __str__(self):
        return " ".join(_wrap(i, Alt) for i in self.items)


@dataclass(frozen=True)
class Alt(Node):
    items: tuple[Node, ...]

    def symbols(self):
        return set().union(*(i.symbols() for i in self.items))

    def __str__(self):
        return " | ".join(str(i) for i in self.items)


@dataclass(frozen=True)
class Star(Node):
    item: Node

    def symbols(self):
        return self.item.symbols()

    def __str__(self):
        return _wrap(self.item, (Alt, Cat)) + "*"


def _wrap(node: Node, kinds) -> str:
    s = str(node)
    return f"( {s} )" if isinstance(node, kinds) else s


def cat(*items: Node) -> Node:
    flat: list[Node] = []
    for i in items:
        if isinstance(i, Cat):
            flat.extend(i.items)
        elif not isinstance(i, Eps):
            flat.append(i)
    if not flat:
        return Eps()
    if len(flat) == 1:
        return flat[0]
    return Cat(tuple(flat))


def alt(*items: Node) -> Node:
    flat: list[Node] = []
    for i in items:
        parts = i.items if isinstance(i, Alt) else (i,)
        for p in parts:
            if p not in flat:
                flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return Alt(tuple(flat))


def plus(item: Node) -> Node:
    return cat(item, Star(item))


def word(w) -> Node:
    """Concatenation of the symbols of ``w`` (a string or a sequence of names)."""
    return cat(*(Sym(c) for c in w))


OPERATORS = set("()+|*_")


def parse(text: str) -> Node:
    """Parse ``text`` into a syntax tree.  Raises :class:`RegexSyntaxError`."""
    toks = [(i, c) for i, c in enumerate(text) if not c.isspace()]
    pos = 0

    def peek():
        return toks[pos][1] if pos < len(toks) else None

    def where():
        return toks[pos][0] if pos < len(toks) else len(text)

    def starts_operand(c):
        return c is not None and (c == "(" or c == "_" or c not in OPERATORS)

    def union():
        nonlocal pos
        items = [concat()]
        while peek() in ("+", "|"):
            pos += 1
            items.append(concat())
        return alt(*items)

    def concat():
        items = []
        while starts_operand(peek()):
            items.append(postfix())
        if not items:
            raise RegexSyntaxError("expected an operand", where())
        return cat(*items)

    def postfix():
        nonlocal pos
        node = atom()
        while True:
            c = peek()
            if c == "*":
                pos += 1
                node = Star(node)
            elif c == "+" and not starts_operand(toks[pos + 1][1] if pos + 1 < len(toks) else None):
                pos += 1
                node = plus(node)
            else:
                return node

    def atom():
        nonlocal pos
        c = peek()
        if c == "(":
            pos += 1
            node = union()
            if peek() != ")":
                raise RegexSyntaxError("expected ')'", where())
            pos += 1
            return node
        if c == "_":
            pos += 1
            return Eps()
        if c is None or c in OPERATORS:
            raise RegexSyntaxError(f"unexpected {c!r}" if c else "unexpected end", where())
        pos += 1
        return Sym(c)

    node = union()
    if pos != len(toks):
        raise RegexSyntaxError(f"unexpected {peek()!r}", where())
    return node
