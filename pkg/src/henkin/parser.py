"""Surface reader for the formula language.

Grammar, loosest binding first::

    formula    := implies ("<->" formula)?          right-associative
    implies    := or ("->" implies)?                right-associative
    or         := and ("|" and)*
    and        := unary ("&" unary)*
    unary      := "~" unary | quantifier | primary
    quantifier := ("all" | "ex") var "." formula
                | "ex!!" indvar "." formula
    primary    := "(" formula ")" | application | equality
    application:= predvar indvar ... indvar         exactly arity-many
    equality   := var "=" var                       both sides same sort

Variables are ``x<digits>`` and ``A<digits>^<arity>``.  A quantifier body
extends as far right as possible.  ``ex!!`` is an abbreviation expanded at
parse time into existence plus a two-copy equality clause.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Atom,
    Eq,
    Exists,
    Forall,
    Formula,
    FormulaError,
    Iff,
    Implies,
    Not,
    And,
    Or,
    Var,
    exists_unique,
)


class ParseError(Exception):
    """Syntax error with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.message = message
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<predvar>A\d+\^\d+)"
    r"|(?P<indvar>x\d+)"
    r"|(?P<exbang>ex!!)"
    r"|(?P<all>all\b)"
    r"|(?P<ex>ex\b)"
    r"|(?P<iff><->)"
    r"|(?P<implies>->)"
    r"|(?P<not>~)"
    r"|(?P<and>&)"
    r"|(?P<or>\|)"
    r"|(?P<lpar>\()"
    r"|(?P<rpar>\))"
    r"|(?P<dot>\.)"
    r"|(?P<eq>=)"
)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup or ""
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def _var_of(tok: Token) -> Var:
    if tok.kind == "indvar":
        return Var(int(tok.text[1:]), 0)
    index, arity = tok.text[1:].split("^")
    if int(arity) < 1:
        raise ParseError("predicate variables need arity >= 1", tok.pos)
    return Var(int(index), int(arity))


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}", tok.pos)
        return self.advance()

    def formula(self) -> Formula:
        left = self.implies()
        if self.peek().kind == "iff":
            self.advance()
            return Iff(left, self.formula())
        return left

    def implies(self) -> Formula:
        left = self.or_()
        if self.peek().kind == "implies":
            self.advance()
            return Implies(left, self.implies())
        return left

    def or_(self) -> Formula:
        f = self.and_()
        while self.peek().kind == "or":
            self.advance()
            f = Or(f, self.and_())
        return f

    def and_(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "and":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.advance()
            return Not(self.unary())
        if tok.kind in ("all", "ex", "exbang"):
            return self.quantifier()
        return self.primary()

    def quantifier(self) -> Formula:
        kw = self.advance()
        vtok = self.peek()
        if vtok.kind not in ("indvar", "predvar"):
            raise ParseError("expected a variable after the quantifier", vtok.pos)
        if kw.kind == "exbang" and vtok.kind != "indvar":
            raise ParseError("ex!! binds an individual variable", vtok.pos)
        var = _var_of(self.advance())
        self.expect("dot", "'.' after the quantified variable")
        body = self.formula()
        try:
            if kw.kind == "all":
                return Forall(var, body)
            if kw.kind == "ex":
                return Exists(var, body)
            return exists_unique((var,), body)
        except FormulaError as exc:
            raise ParseError(str(exc), kw.pos) from exc

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "lpar":
            self.advance()
            f = self.formula()
            self.expect("rpar", "')'")
            return f
        if tok.kind == "indvar":
            left = _var_of(self.advance())
            self.expect("eq", "'=' after an individual variable")
            rtok = self.peek()
            if rtok.kind not in ("indvar", "predvar"):
                raise ParseError("expected a variable after '='", rtok.pos)
            right = _var_of(self.advance())
            try:
                return Eq(left, right)
            except FormulaError as exc:
                raise ParseError(str(exc), rtok.pos) from exc
        if tok.kind == "predvar":
            head = _var_of(self.advance())
            if self.peek().kind == "eq":
                self.advance()
                rtok = self.peek()
                if rtok.kind not in ("indvar", "predvar"):
                    raise ParseError("expected a variable after '='", rtok.pos)
                right = _var_of(self.advance())
                try:
                    return Eq(head, right)
                except FormulaError as exc:
                    raise ParseError(str(exc), rtok.pos) from exc
            args = []
            for k in range(head.arity):
                atok = self.peek()
                if atok.kind != "indvar":
                    raise ParseError(
                        f"expected individual variable (argument {k + 1} of {head})",
                        atok.pos,
                    )
                args.append(_var_of(self.advance()))
            return Atom(head, tuple(args))
        raise ParseError("expected a formula", tok.pos)


def parse(text: str) -> Formula:
    """Parse surface text into a formula; round-trips with ``format_formula``."""
    parser = _Parser(tokenize(text))
    f = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError("unexpected trailing input", tok.pos)
    return f


def parse_var(text: str) -> Var:
    """Parse a bare variable name such as ``x3`` or ``A1^2``."""
    tokens = tokenize(text)
    if len(tokens) != 2 or tokens[0].kind not in ("indvar", "predvar"):
        raise ParseError("expected a single variable name", 0)
    return _var_of(tokens[0])
