"""Tokenizer and recursive-descent parser shared by scalar and Weyl expressions.

The grammar is the usual arithmetic one::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' INT)?
    atom  := INT | NAME | NAME '(' expr ')' | '(' expr ')'

Evaluation is delegated to a :class:`Builder`, so the same parser produces
scalars or Weyl elements depending on what the builder returns.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Protocol

__all__ = ["ParseError", "Builder", "parse_expression"]


class ParseError(ValueError):
    """Raised for malformed input; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:  # only trailing whitespace remains
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(_Tok("op", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class Builder(Protocol):
    def integer(self, value: int) -> Any: ...
    def symbol(self, name: str, pos: int) -> Any: ...
    def call(self, name: str, arg: Any, pos: int) -> Any: ...
    def div(self, a: Any, b: Any, pos: int) -> Any: ...


class _Parser:
    def __init__(self, text: str, builder: Builder):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.b = builder

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> _Tok:
        tok = self.take()
        if tok.kind != "op" or tok.value != op:
            raise ParseError(f"expected {op!r}", tok.pos, self.text)
        return tok

    def error(self, message: str, pos: int):
        return ParseError(message, pos, self.text)

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"unexpected {tok.value!r}", tok.pos)
        return value

    def expr(self):
        value = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            tok = self.take()
            rhs = self.unary()
            value = value * rhs if tok.value == "*" else self.b.div(value, rhs, tok.pos)
        return value

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            value = self.unary()
            return -value if tok.value == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise self.error("exponent must be a nonnegative integer literal", tok.pos)
            base = base ** int(tok.value)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.value == "^":
                raise self.error("chained exponents are not allowed", nxt.pos)
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return self.b.integer(int(tok.value))
        if tok.kind == "name":
            if self.peek().kind == "op" and self.peek().value == "(":
                self.take()
                arg = self.expr()
                self.expect(")")
                return self.b.call(tok.value, arg, tok.pos)
            return self.b.symbol(tok.value, tok.pos)
        if tok.kind == "op" and tok.value == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of input", tok.pos)
        raise self.error(f"unexpected {tok.value!r}", tok.pos)


def parse_expression(text: str, builder: Builder):
    """Parse ``text`` and evaluate it with ``builder``."""
    parser = _Parser(text, builder)
    try:
        return parser.parse()
    except ParseError:
        raise
    except ZeroDivisionError as exc:
        raise ParseError(str(exc) or "division by zero", 0, text) from None
