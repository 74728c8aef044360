"""Terms over the co-Heyting signature.

Grammar::

    term := or ; or := and {'|' and} ; and := sub {'&' sub}
    sub  := atom {'-' atom} ; atom := '0' | '1' | ident | '(' term ')'

All binary operators are left-associative; ``-`` binds tightest.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import ParseError, UnboundVariable
from .lattice import Algebra, Downset

_TOKEN = re.compile(r"\s*(?:(?P<op>[|&()\-])|(?P<ident>[A-Za-z_0-9][A-Za-z0-9_#!.+*']*))")


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Term"
    right: "Term"


Term = Union[Const, Var, BinOp]


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:]!r}")
        out.append(m.group("op") or m.group("ident"))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of term")
        self.pos += 1
        return tok

    def level(self, ops: str, sub):
        node = sub()
        while self.peek() == ops:
            self.take()
            node = BinOp(ops, node, sub())
        return node

    def term(self):
        return self.level("|", lambda: self.level("&", lambda: self.level("-", self.atom)))

    def atom(self):
        tok = self.take()
        if tok == "(":
            node = self.term()
            if self.take() != ")":
                raise ParseError("expected ')'")
            return node
        if tok in ("0", "1"):
            return Const(int(tok))
        if tok in "|&-)":
            raise ParseError(f"unexpected {tok!r}")
        return Var(tok)


def parse_term(text: str) -> Term:
    parser = _Parser(_tokenize(text))
    node = parser.term()
    if parser.peek() is not None:
        raise ParseError(f"trailing input at token {parser.peek()!r}")
    return node


def eval_term(algebra: Algebra, term: Term | str, env: Mapping[str, Downset]) -> Downset:
    if isinstance(term, str):
        term = parse_term(term)
    if isinstance(term, Const):
        return algebra.one if term.value else algebra.zero
    if isinstance(term, Var):
        if term.name not in env:
            raise UnboundVariable(term.name)
        return algebra.check(env[term.name])
    left = eval_term(algebra, term.left, env)
    right = eval_term(algebra, term.right, env)
    if term.op == "|":
        return left | right
    if term.op == "&":
        return left & right
    return left - right
