"""Concrete syntax for terms and types.

Terms:  ``x``, ``_|_``, ``\\x y. M``, juxtaposition, parentheses.
Types:  ``'a``, ``w``, ``->`` (right associative), ``&`` (tighter than ``->``).
The unicode forms λ, ⊥, ω, →, ∧ are accepted too.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .intersection import OMEGA, Arrow, Meet, TVar, Type
from .terms import BOT, App, Bot, BVar, FVar, Lam, Term, abstract, free_vars, spine, strip_lams


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.column = col


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


_TERM_TOKENS = re.compile(
    r"""(?P<ws>\s+)
      |(?P<bot>_\|_|⊥)
      |(?P<lam>\\|λ)
      |(?P<ident>[A-Za-z_][A-Za-z0-9_']*)
      |(?P<dot>\.)
      |(?P<lp>\()
      |(?P<rp>\))""",
    re.VERBOSE,
)

_TYPE_TOKENS = re.compile(
    r"""(?P<ws>\s+)
      |(?P<tvar>'[A-Za-z_][A-Za-z0-9_]*)
      |(?P<omega>w\b|ω)
      |(?P<arrow>->|→)
      |(?P<amp>&|∧)
      |(?P<lp>\()
      |(?P<rp>\))""",
    re.VERBOSE,
)


def _lex(pattern: re.Pattern, text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = pattern.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, pattern: re.Pattern):
        self.text = text
        self.toks = _lex(pattern, text)
        self.i = 0

    @property
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        tok = self.peek
        if tok.kind != kind:
            what = repr(tok.value) if tok.value else "end of input"
            raise ParseError(f"expected {kind}, found {what}", self.text, tok.pos)
        self.i += 1
        return tok

    def done(self) -> None:
        self.take("eof")


class _TermParser(_Parser):
    def term(self) -> Term:
        if self.peek.kind == "lam":
            return self.lam()
        head = self.atom()
        while self.peek.kind in ("ident", "bot", "lp", "lam"):
            if self.peek.kind == "lam":
                return App(head, self.lam())
            head = App(head, self.atom())
        return head

    def lam(self) -> Term:
        self.take("lam")
        names = [self.take("ident").value]
        while self.peek.kind == "ident":
            names.append(self.take("ident").value)
        self.take("dot")
        body = self.term()
        for n in reversed(names):
            body = abstract(body, n)
        return body

    def atom(self) -> Term:
        tok = self.peek
        if tok.kind == "ident":
            self.i += 1
            return FVar(tok.value)
        if tok.kind == "bot":
            self.i += 1
            return BOT
        if tok.kind == "lp":
            self.i += 1
            t = self.term()
            self.take("rp")
            return t
        what = repr(tok.value) if tok.value else "end of input"
        raise ParseError(f"expected a term, found {what}", self.text, tok.pos)


class _TypeParser(_Parser):
    def type(self) -> Type:
        left = self.meet()
        if self.peek.kind == "arrow":
            self.i += 1
            return Arrow(left, self.type())
        return left

    def meet(self) -> Type:
        items = [self.atom()]
        while self.peek.kind == "amp":
            self.i += 1
            items.append(self.atom())
        if len(items) == 1:
            return items[0]
        flat = []
        for it in items:
            flat.extend(it.members if isinstance(it, Meet) else [it])
        return Meet(tuple(flat))

    def atom(self) -> Type:
        tok = self.peek
        if tok.kind == "tvar":
            self.i += 1
            return TVar(tok.value[1:])
        if tok.kind == "omega":
            self.i += 1
            return OMEGA
        if tok.kind == "lp":
            self.i += 1
            t = self.type()
            self.take("rp")
            return t
        what = repr(tok.value) if tok.value else "end of input"
        raise ParseError(f"expected a type, found {what}", self.text, tok.pos)


def parse_term(text: str) -> Term:
    p = _TermParser(text, _TERM_TOKENS)
    t = p.term()
    p.done()
    return t


def parse_type(text: str) -> Type:
    p = _TypeParser(text, _TYPE_TOKENS)
    t = p.type()
    p.done()
    return t


def show_term(t: Term, unicode: bool = False) -> str:
    lam, bot = ("λ", "⊥") if unicode else ("\\", "_|_")
    taken = free_vars(t)

    def fresh(hint: str, scope: list[str]) -> str:
        name = hint
        while name in taken or name in scope:
            name += "'"
        return name

    def go(u: Term, scope: list[str]) -> str:
        match u:
            case Lam():
                hints, body = strip_lams(u)
                inner = list(scope)
                for h in hints:
                    inner.append(fresh(h, inner))
                return f"{lam}{' '.join(inner[len(scope):])}. {go(body, inner)}"
            case App():
                head, args = spine(u)
                parts = [arg(head, scope)] + [arg(a, scope) for a in args]
                return " ".join(parts)
        return arg(u, scope)

    def arg(u: Term, scope: list[str]) -> str:
        match u:
            case FVar(n):
                return n
            case BVar(i):
                if i >= len(scope):
                    return f"#{i - len(scope)}"
                return scope[len(scope) - 1 - i]
            case Bot():
                return bot
        return f"({go(u, scope)})"

    return go(t, [])
