"""Concrete syntax: lexer, parser and pretty-printer.

Grammar (``pretty`` emits exactly this shape, and ``parse(pretty(t))`` is
structurally ``t``)::

    program  ::= command*
    command  ::= "check" term ":" term ";"
               | "compute" term ":" term ";"

    term     ::= "lam" pattern "." term                      -- binds to the right
               | "fun" "(" pattern ":" term ")" "->" term
               | term1
    term1    ::= term1 term2                                 -- application, left-assoc
               | "first" term2
               | "second" term2
               | term2
    term2    ::= ident | "U" | "(" term ")" | "(" term "," term ")"

    pattern  ::= "_" | ident | "(" pattern "," pattern ")"

    ident    ::= letter (letter | digit | "_" | "'")*        -- minus reserved words

Comments: ``--`` to end of line and non-nesting ``{- ... -}``.  Whitespace
and layout are insignificant; every command ends with ``;``.  Reserved
words: ``check compute lam fun first second U``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import naive


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident", "eof", or the literal text of a keyword/symbol
    text: str
    line: int
    col: int


_KEYWORDS = naive.RESERVED_WORDS

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<linecomment>--[^\n]*)
    | (?P<blockcomment>\{-.*?-\})
    | (?P<arrow>->)
    | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
    | (?P<punct>[(),:;._])
    """,
    re.VERBOSE | re.DOTALL,
)


def _lex(src: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(src)
    while pos < n:
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        text = m.group()
        kind = m.lastgroup
        if kind == "ident":
            tokens.append(Token(text if text in _KEYWORDS else "ident", text, line, col))
        elif kind in ("arrow", "punct"):
            tokens.append(Token(text, text, line, col))
        # whitespace and comments advance position only
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


_ATOM_STARTERS = ("ident", "U", "(")


class _Parser:
    def __init__(self, src: str):
        self.tokens = _lex(src)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}",
                tok.line,
                tok.col,
            )
        return self.advance()

    # ---- terms ----

    def term(self) -> naive.Term:
        tok = self.peek()
        if tok.kind == "lam":
            self.advance()
            pattern = self.pattern()
            self.expect(".")
            return naive.Lam(pattern, naive.ScopedTerm(self.term()))
        if tok.kind == "fun":
            self.advance()
            self.expect("(")
            pattern = self.pattern()
            self.expect(":")
            domain = self.term()
            self.expect(")")
            self.expect("->")
            return naive.Pi(pattern, domain, naive.ScopedTerm(self.term()))
        return self.app_term()

    def app_term(self) -> naive.Term:
        tok = self.peek()
        if tok.kind == "first":
            self.advance()
            head: naive.Term = naive.First(self.atom())
        elif tok.kind == "second":
            self.advance()
            head = naive.Second(self.atom())
        else:
            head = self.atom()
        while self.peek().kind in _ATOM_STARTERS:
            head = naive.App(head, self.atom())
        return head

    def atom(self) -> naive.Term:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return naive.Var(naive.VarIdent(tok.text, loc=(tok.line, tok.col)))
        if tok.kind == "U":
            self.advance()
            return naive.Universe()
        if tok.kind == "(":
            self.advance()
            left = self.term()
            if self.peek().kind == ",":
                self.advance()
                right = self.term()
                self.expect(")")
                return naive.Pair(left, right)
            self.expect(")")
            return left
        raise ParseError(
            f"expected a term, found {tok.text or 'end of input'!r}", tok.line, tok.col
        )

    # ---- patterns ----

    def pattern(self) -> naive.Pattern:
        tok = self.peek()
        if tok.kind == "_":
            self.advance()
            return naive.PatternWildcard()
        if tok.kind == "ident":
            self.advance()
            return naive.PatternVar(naive.VarIdent(tok.text, loc=(tok.line, tok.col)))
        if tok.kind == "(":
            self.advance()
            left = self.pattern()
            self.expect(",")
            right = self.pattern()
            self.expect(")")
            return naive.PatternPair(left, right)
        raise ParseError(
            f"expected a pattern, found {tok.text or 'end of input'!r}",
            tok.line,
            tok.col,
        )

    # ---- programs ----

    def command(self) -> naive.Command:
        tok = self.peek()
        if tok.kind not in ("check", "compute"):
            raise ParseError(
                f"expected 'check' or 'compute', found {tok.text or 'end of input'!r}",
                tok.line,
                tok.col,
            )
        self.advance()
        term = self.term()
        self.expect(":")
        annot = self.term()
        self.expect(";")
        if tok.kind == "check":
            return naive.Check(term, annot)
        return naive.Compute(term, annot)

    def program(self) -> list[naive.Command]:
        commands: list[naive.Command] = []
        while self.peek().kind != "eof":
            commands.append(self.command())
        return commands


def parse_program(src: str) -> list[naive.Command]:
    return _Parser(src).program()


def parse_term(src: str) -> naive.Term:
    """Parse a standalone term (the whole input must be one term)."""
    p = _Parser(src)
    term = p.term()
    p.expect("eof")
    return term


# --------------------------------------------------------------------------
# pretty-printing
# --------------------------------------------------------------------------

_TERM_LEVEL = 0
_APP_LEVEL = 1
_ATOM_LEVEL = 2


def pretty_pattern(pattern: naive.Pattern) -> str:
    match pattern:
        case naive.PatternWildcard():
            return "_"
        case naive.PatternVar(ident):
            return ident.text
        case naive.PatternPair(left, right):
            return f"({pretty_pattern(left)}, {pretty_pattern(right)})"
    raise TypeError(f"not a pattern: {pattern!r}")


def _pp(term: naive.Term, level: int) -> str:
    match term:
        case naive.Var(ident):
            return ident.text
        case naive.Universe():
            return "U"
        case naive.Pair(left, right):
            return f"({_pp(left, _TERM_LEVEL)}, {_pp(right, _TERM_LEVEL)})"
        case naive.First(t):
            s = f"first {_pp(t, _ATOM_LEVEL)}"
            return f"({s})" if level > _APP_LEVEL else s
        case naive.Second(t):
            s = f"second {_pp(t, _ATOM_LEVEL)}"
            return f"({s})" if level > _APP_LEVEL else s
        case naive.App(fun, arg):
            s = f"{_pp(fun, _APP_LEVEL)} {_pp(arg, _ATOM_LEVEL)}"
            return f"({s})" if level > _APP_LEVEL else s
        case naive.Lam(pattern, naive.ScopedTerm(body)):
            s = f"lam {pretty_pattern(pattern)} . {_pp(body, _TERM_LEVEL)}"
            return f"({s})" if level > _TERM_LEVEL else s
        case naive.Pi(pattern, domain, naive.ScopedTerm(codomain)):
            s = (
                f"fun ({pretty_pattern(pattern)} : {_pp(domain, _TERM_LEVEL)})"
                f" -> {_pp(codomain, _TERM_LEVEL)}"
            )
            return f"({s})" if level > _TERM_LEVEL else s
    raise TypeError(f"not a term: {term!r}")


def pretty_term(term: naive.Term) -> str:
    return _pp(term, _TERM_LEVEL)


def pretty_command(command: naive.Command) -> str:
    match command:
        case naive.Check(term, annot):
            return f"check {pretty_term(term)} : {pretty_term(annot)} ;"
        case naive.Compute(term, annot):
            return f"compute {pretty_term(term)} : {pretty_term(annot)} ;"
    raise TypeError(f"not a command: {command!r}")


def pretty_program(commands: list[naive.Command]) -> str:
    return "".join(pretty_command(c) + "\n" for c in commands)
