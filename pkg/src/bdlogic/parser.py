"""Concrete ASCII syntax.

Grammar (precedence from loosest to tightest)::

    formula  := quant | implies
    quant    := ("forall" | "exists") var ("," var)* "." formula
    implies  := disj (("->" | "=>") implies)?        right associative
    disj     := conj ("|" conj)*
    conj     := unary ("&" unary)*
    unary    := "~" unary | quant | primary
    primary  := "false" | "true" | "(" formula ")"
              | ("des" | "cons" | "det") "(" formula ")" | "def" "(" term ")"
              | PRED "(" term ("," term)* ")" | PROP
              | term ("=" | "!=" | "==") term
    term     := CONST | FUNC "(" term ("," term)* ")" | VAR

A quantifier extends as far to the right as possible.  Identifiers declared
in the signature are constants, function, predicate or proposition symbols;
every other identifier is a variable.  ``=>`` is strong implication and
``==`` strong equality; both, like the keyword connectives, are expanded to
core formulas while parsing.
"""

from __future__ import annotations

import re

from .errors import ArityError, ParseError, UndeclaredSymbolError
from .syntax import (FALSUM, KEYWORDS, App, Atom, Const, Eq, Exists, ForAll,
                     Implies, Not, Or, And, Prop, Signature, Var, cons, defined, des,
                     det, strong_eq, strong_implies, truth)

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>[0-9]+)
  | (?P<sym>\|-|->|=>|==|!=|:-|[=~&|(),.;:\[\]])
""", re.VERBOSE)


class Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind, self.value, self.pos = kind, value, pos

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, {self.pos})"


def tokenize(text: str) -> list:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class Parser:
    """Recursive-descent parser over a token list.  Callers that embed
    formulas in larger line formats (proof files, database files) drive
    the same instance through :meth:`formula`, :meth:`term` and
    :meth:`expect`."""

    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers ----------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, value) -> bool:
        return self.tok.kind in ("sym", "ident") and self.tok.value == value

    def accept(self, value) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value) -> Token:
        if not self.at(value):
            self.error(f"expected {value!r}, found {self.tok.value or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def error(self, message, pos=None):
        raise ParseError(message, self.tok.pos if pos is None else pos, self.text)

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.error(f"expected an identifier, found {self.tok.value or 'end of input'!r}")
        name = self.tok.value
        self.i += 1
        return name

    def at_end(self) -> bool:
        return self.tok.kind == "eof"

    def finish(self):
        if not self.at_end():
            self.error(f"unexpected {self.tok.value!r}")

    # -- formulas -----------------------------------------------------------
    def formula(self):
        if self.at("forall") or self.at("exists"):
            return self.quantified()
        return self.implies()

    def quantified(self):
        kind = ForAll if self.ident() == "forall" else Exists
        names = [self.variable_name()]
        while self.accept(","):
            names.append(self.variable_name())
        self.expect(".")
        body = self.formula()
        for x in reversed(names):
            body = kind(x, body)
        return body

    def variable_name(self) -> str:
        pos = self.tok.pos
        name = self.ident()
        if name in KEYWORDS or name in self.sig.symbol_names():
            self.error(f"{name!r} cannot be used as a bound variable", pos)
        return name

    def implies(self):
        left = self.disj()
        if self.accept("->"):
            return Implies(left, self.implies())
        if self.accept("=>"):
            return strong_implies(left, self.implies())
        return left

    def disj(self):
        left = self.conj()
        while self.accept("|"):
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.accept("~"):
            return Not(self.unary())
        if self.at("forall") or self.at("exists"):
            return self.quantified()
        return self.primary()

    def primary(self):
        tok = self.tok
        if self.accept("("):
            a = self.formula()
            self.expect(")")
            return a
        if tok.kind != "ident":
            self.error(f"expected a formula, found {tok.value or 'end of input'!r}")
        name = tok.value
        if name == "false":
            self.i += 1
            return FALSUM
        if name == "true":
            self.i += 1
            return truth()
        if name in ("des", "cons", "det"):
            self.i += 1
            self.expect("(")
            a = self.formula()
            self.expect(")")
            return {"des": des, "cons": cons, "det": det}[name](a)
        if name == "def":
            self.i += 1
            self.expect("(")
            t = self.term()
            self.expect(")")
            return defined(t)
        if name in self.sig.predicates:
            self.i += 1
            args = self.arguments(name)
            if len(args) != self.sig.predicates[name]:
                raise ArityError(
                    f"predicate {name} expects {self.sig.predicates[name]} arguments, "
                    f"got {len(args)} (at position {tok.pos})")
            return Atom(name, args)
        if name in self.sig.propositions:
            self.i += 1
            return Prop(name)
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("!="):
            return Not(Eq(left, self.term()))
        if self.accept("=="):
            return strong_eq(left, self.term())
        self.error(f"expected '=', '!=' or '==' after term {name!r}")

    def arguments(self, name) -> tuple:
        if not self.at("("):
            self.error(f"{name!r} needs an argument list")
        self.expect("(")
        args = [self.term()]
        while self.accept(","):
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self):
        tok = self.tok
        name = self.ident()
        if name in KEYWORDS:
            self.error(f"keyword {name!r} cannot be used as a term", tok.pos)
        if name in self.sig.functions:
            args = self.arguments(name)
            if len(args) != self.sig.functions[name]:
                raise ArityError(
                    f"function {name} expects {self.sig.functions[name]} arguments, "
                    f"got {len(args)} (at position {tok.pos})")
            return App(name, args)
        if name in self.sig.constants:
            return Const(name)
        if name in self.sig.predicates or name in self.sig.propositions:
            self.error(f"{name!r} is a predicate or proposition symbol, not a term", tok.pos)
        if self.at("("):
            raise UndeclaredSymbolError(
                f"undeclared function or predicate symbol {name!r} (at position {tok.pos})")
        return Var(name)


def parse_formula(text: str, sig: Signature):
    """Parse one formula; abbreviations come back expanded."""
    p = Parser(text, sig)
    a = p.formula()
    p.finish()
    return a


def parse_term(text: str, sig: Signature):
    p = Parser(text, sig)
    t = p.term()
    p.finish()
    return t


def parse_formula_list(p: Parser, stop=()) -> list:
    """Comma-separated formulas up to one of the ``stop`` symbols or the end."""
    out = []
    if p.at_end() or any(p.at(s) for s in stop):
        return out
    out.append(p.formula())
    while p.accept(","):
        out.append(p.formula())
    return out
