"""Tokenizer and recursive-descent parser for the ASCII formula grammar.

Grammar (see docs/grammar.md for the published EBNF):

    iff      := implies ("<->" iff)?                  right-assoc
    implies  := or ("->" implies)?                    right-assoc
    or       := and ("|" and)*                        left-assoc
    and      := unary ("&" unary)*                    left-assoc
    unary    := ("!" | "~") unary | quantifier | primary
    quantifier := ("forall" | "exists") NAME (":" NAME)? "." iff
    primary  := "true" | "false" | NAME | NAME "(" terms ")" | "(" iff ")"

Quantifier bodies extend as far right as possible. Predicates and
quantifiers are only accepted in first-order mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .errors import ArityMismatch, ParseError
from .formulas import (
    DEFAULT_SORT,
    FALSE,
    TRUE,
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    Var,
)

_KEYWORDS = {"true", "false", "forall", "exists"}

_PUNCT = [
    ("<->", "IFF"),
    ("->", "IMPLIES"),
    ("&", "AND"),
    ("|", "OR"),
    ("!", "NOT"),
    ("~", "NOT"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
    (".", "DOT"),
    (":", "COLON"),
    (",", "COMMA"),
]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int  # character offset


def _error(text: str, pos: int, expected: str, found: str) -> ParseError:
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    offset = len(text[:pos].encode("utf-8"))
    return ParseError(
        f"expected {expected}, found {found} at line {line}, column {column}",
        offset=offset,
        line=line,
        column=column,
        expected=expected,
        found=found,
    )


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = word.upper() if word in _KEYWORDS else "NAME"
            tokens.append(Token(kind, word, i))
            i = j
            continue
        for lexeme, kind in _PUNCT:
            if text.startswith(lexeme, i):
                tokens.append(Token(kind, lexeme, i))
                i += len(lexeme)
                break
        else:
            raise _error(text, i, "a token", repr(c))
    tokens.append(Token("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, fol: bool):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.fol = fol
        self.scope: set = set()  # quantified names currently in scope
        self.arities: dict = {}

    # -- token helpers --

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.cur
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        if self.cur.kind != kind:
            raise self.fail(what)
        return self.advance()

    def fail(self, expected: str) -> ParseError:
        found = "end of input" if self.cur.kind == "EOF" else repr(self.cur.text)
        return _error(self.text, self.cur.pos, expected, found)

    # -- grammar --

    def parse(self) -> Formula:
        f = self.iff()
        if self.cur.kind != "EOF":
            raise self.fail("an operator or end of input")
        return f

    def iff(self) -> Formula:
        left = self.implies()
        if self.cur.kind == "IFF":
            self.advance()
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.cur.kind == "IMPLIES":
            self.advance()
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.cur.kind == "OR":
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.cur.kind == "AND":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.cur.kind == "NOT":
            self.advance()
            return Not(self.unary())
        if self.cur.kind in ("FORALL", "EXISTS"):
            return self.quantifier()
        return self.primary()

    def quantifier(self) -> Formula:
        tok = self.advance()
        if not self.fol:
            raise _error(
                self.text, tok.pos, "a propositional formula", repr(tok.text)
            )
        name_tok = self.expect("NAME", "a variable name")
        var = name_tok.text
        if var in self.scope:
            raise _error(
                self.text,
                name_tok.pos,
                "a fresh variable name",
                f"{var!r} (already bound by an enclosing quantifier)",
            )
        sort = DEFAULT_SORT
        if self.cur.kind == "COLON":
            self.advance()
            sort = self.expect("NAME", "a sort name").text
        self.expect("DOT", "'.'")
        self.scope.add(var)
        try:
            body = self.iff()  # body extends as far right as possible
        finally:
            self.scope.discard(var)
        cls = Forall if tok.kind == "FORALL" else Exists
        return cls(var, sort, body)

    def primary(self) -> Formula:
        tok = self.cur
        if tok.kind == "TRUE":
            self.advance()
            return TRUE
        if tok.kind == "FALSE":
            self.advance()
            return FALSE
        if tok.kind == "LPAREN":
            self.advance()
            f = self.iff()
            self.expect("RPAREN", "')'")
            return f
        if tok.kind == "NAME":
            self.advance()
            if self.fol:
                return self.predicate(tok)
            return Atom(tok.text)
        raise self.fail("a formula")

    def predicate(self, name_tok: Token) -> Formula:
        args = ()
        if self.cur.kind == "LPAREN":
            self.advance()
            arg_list = [self.term()]
            while self.cur.kind == "COMMA":
                self.advance()
                arg_list.append(self.term())
            self.expect("RPAREN", "')'")
            args = tuple(arg_list)
        seen = self.arities.get(name_tok.text)
        if seen is None:
            self.arities[name_tok.text] = len(args)
        elif seen != len(args):
            raise ArityMismatch(name_tok.text, seen, len(args))
        return Pred(name_tok.text, args)

    def term(self) -> Var:
        tok = self.expect("NAME", "a term")
        return Var(tok.text)


def parse_prop(text: str) -> Formula:
    """Parse a propositional formula; raises ParseError with position."""
    return _Parser(text, fol=False).parse()


def parse_fol(text: str) -> Formula:
    """Parse a first-order formula; raises ParseError or ArityMismatch."""
    return _Parser(text, fol=True).parse()


def parse(text: str, logic: str) -> Formula:
    if logic == "prop":
        return parse_prop(text)
    if logic == "fol":
        return parse_fol(text)
    raise ValueError(f"unknown logic {logic!r}")
