"""Expression trees and text syntax for join/meet/complement terms.

Terms are built from variable symbols ``x1 .. xn``, atom symbols
``y0 .. y(2^n - 1)``, the constants ``0`` and ``1``, n-ary join (``+``),
n-ary meet (``*``) and a postfix complement (``'``).  Join and meet nodes
are kept flattened: associativity carries no information, so nested nodes
of the same kind are merged on construction.

Grammar (whitespace insignificant, INT is unsigned decimal)::

    expr    := term ("+" term)*
    term    := factor ("*" factor)*
    factor  := primary ["'"]
    primary := "0" | "1" | "x" INT | "y" INT | "(" expr ")"
"""

from __future__ import annotations

from dataclasses import dataclass

# Parenthesis nesting guard; deeper input gets a positioned error instead of
# blowing the interpreter stack (the recursive-descent parser spends four
# frames per level, so this must stay well under the Python recursion limit).
MAX_NESTING = 200


class ParseError(ValueError):
    """Syntax or range error carrying the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Zero(Expr):
    pass


@dataclass(frozen=True)
class One(Expr):
    pass


@dataclass(frozen=True)
class Var(Expr):
    index: int  # 1-based variable index


@dataclass(frozen=True)
class AtomVar(Expr):
    index: int  # atom index, 0 .. 2^n - 1


@dataclass(frozen=True)
class Join(Expr):
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("Join needs at least one child")


@dataclass(frozen=True)
class Meet(Expr):
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("Meet needs at least one child")


@dataclass(frozen=True)
class Complement(Expr):
    child: Expr


def join(*children: Expr) -> Expr:
    """Flattening Join constructor; a single child is returned unwrapped."""
    flat = []
    for c in children:
        if isinstance(c, Join):
            flat.extend(c.children)
        else:
            flat.append(c)
    if len(flat) == 1:
        return flat[0]
    return Join(tuple(flat))


def meet(*children: Expr) -> Expr:
    """Flattening Meet constructor; a single child is returned unwrapped."""
    flat = []
    for c in children:
        if isinstance(c, Meet):
            flat.extend(c.children)
        else:
            flat.append(c)
    if len(flat) == 1:
        return flat[0]
    return Meet(tuple(flat))


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.m = 2**n
        self.pos = 0
        self.depth = 0

    def error(self, message: str) -> ParseError:
        offset = len(self.text[: self.pos].encode("utf-8"))
        return ParseError(message, offset)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        if self.pos < len(self.text):
            return self.text[self.pos]
        return ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and "0" <= self.text[self.pos] <= "9":
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        if self.pos - start > 9:  # any in-range index fits in nine digits
            raise self.error("integer out of range")
        return int(self.text[start : self.pos])

    def expr(self) -> Expr:
        parts = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.term())
        return join(*parts)

    def term(self) -> Expr:
        parts = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            parts.append(self.factor())
        return meet(*parts)

    def factor(self) -> Expr:
        e = self.primary()
        if self.peek() == "'":
            self.pos += 1
            e = Complement(e)
        return e

    def primary(self) -> Expr:
        ch = self.peek()
        if ch == "0":
            self.pos += 1
            return Zero()
        if ch == "1":
            self.pos += 1
            return One()
        if ch == "x":
            self.pos += 1
            i = self.integer()
            if not 1 <= i <= self.n:
                raise self.error(f"variable index x{i} out of range 1..{self.n}")
            return Var(i)
        if ch == "y":
            self.pos += 1
            k = self.integer()
            if not 0 <= k < self.m:
                raise self.error(f"atom index y{k} out of range 0..{self.m - 1}")
            return AtomVar(k)
        if ch == "(":
            self.depth += 1
            if self.depth > MAX_NESTING:
                raise self.error("nesting too deep")
            self.pos += 1
            e = self.expr()
            self.expect(")")
            self.depth -= 1
            return e
        if ch == "":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected character {ch!r}")


def parse(text: str, n: int) -> Expr:
    """Parse ``text`` into an expression tree over n variables.

    Raises ParseError (with a byte offset) on malformed input or on a
    variable/atom index outside the session's range.
    """
    if n < 1:
        raise ValueError("variable count must be >= 1")
    p = _Parser(text, n)
    e = p.expr()
    if p.peek() != "":
        raise p.error("trailing input")
    return e


def _render(e: Expr, level: int) -> str:
    # level 0 = join position, 1 = meet position, 2 = primary position
    if isinstance(e, Zero):
        return "0"
    if isinstance(e, One):
        return "1"
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, AtomVar):
        return f"y{e.index}"
    if isinstance(e, Complement):
        if isinstance(e.child, (Join, Meet, Complement)):
            return f"({_render(e.child, 0)})'"
        return _render(e.child, 2) + "'"
    if isinstance(e, Join):
        body = " + ".join(_render(c, 1) for c in e.children)
        return f"({body})" if level >= 1 else body
    if isinstance(e, Meet):
        body = " * ".join(_render(c, 2) for c in e.children)
        return f"({body})" if level >= 2 else body
    raise TypeError(f"not an expression node: {e!r}")


def render(e: Expr) -> str:
    """Render an expression back to the text syntax.

    ``parse(render(e), n)`` returns a tree structurally equal to ``e`` up to
    re-flattening of nested join/meet nodes.
    """
    return _render(e, 0)
