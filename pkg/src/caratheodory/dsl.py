"""A small text language for algebra elements and completion points.

Grammar (ASCII, whitespace insignificant)::

    expr  := term (('|' | '&' | '\\') term)*
    term  := '!' term | '(' expr ')' | '[' rat ',' rat ')'
           | '{' [atom (',' atom)*] '}' | ident | ident '(' args ')'
    rat   := int | int '/' int
    atom  := 'a' int

``!`` binds tightest, then ``&``, then ``|`` and ``\\`` (equal precedence);
binary operators are left-associative.

    >>> to_text(parse("[0,1/2) | ![1/4, 3/4) & [0,1)"))
    '[0,1/2) | ![1/4,3/4) & [0,1)'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union as _U

from .completion import CauchyPoint, constant_point
from .errors import ParseError, UsageError
from .families import BUILTINS, eval_family
from .set_algebra import (
    INTERVAL_UNIT,
    FiniteSubset,
    FiniteWeighted,
    canonicalize,
    complement,
    difference,
    intersect,
    union,
)
from .sigma_ops import complement_pt, difference_pt, intersect_pt, union_pt


@dataclass(frozen=True)
class IntervalLit:
    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class Atoms:
    indices: tuple


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Call:
    ident: str
    args: tuple


@dataclass(frozen=True)
class Union:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Intersect:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Diff:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Complement:
    operand: "Expr"


Expr = _U[IntervalLit, Atoms, Name, Call, Union, Intersect, Diff, Complement]

_BINARY = {"|": (Union, 1), "\\": (Diff, 1), "&": (Intersect, 2)}
_SYMBOL = {Union: "|", Diff: "\\", Intersect: "&"}

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[\[\](){},/|&\\!]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "ident", "sym", "eof"
    text: str
    pos: int


def _position(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _tokenize(text):
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            yield _Tok("eof", "", pos)
            return
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        kind = m.lastgroup
        yield _Tok(kind, m.group(kind), m.start(kind))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = list(_tokenize(text))
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", *_position(self.text, tok.pos))

    def advance(self):
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, sym):
        if self.tok.kind != "sym" or self.tok.text != sym:
            raise self.error(f"expected {sym!r}")
        return self.advance()

    def at(self, sym):
        return self.tok.kind == "sym" and self.tok.text == sym

    def parse(self):
        e = self.expr(0)
        if self.tok.kind != "eof":
            raise self.error("expected an operator or end of input")
        return e

    def expr(self, min_prec):
        left = self.term()
        while self.tok.kind == "sym" and self.tok.text in _BINARY:
            node, prec = _BINARY[self.tok.text]
            if prec < min_prec:
                break
            self.advance()
            left = node(left, self.expr(prec + 1))
        return left

    def term(self):
        tok = self.tok
        if self.at("!"):
            self.advance()
            return Complement(self.term())
        if self.at("("):
            self.advance()
            e = self.expr(0)
            self.expect(")")
            return e
        if self.at("["):
            self.advance()
            lo = self.rational()
            self.expect(",")
            hi = self.rational()
            self.expect(")")
            return IntervalLit(lo, hi)
        if self.at("{"):
            self.advance()
            atoms = []
            if not self.at("}"):
                atoms.append(self.atom())
                while self.at(","):
                    self.advance()
                    atoms.append(self.atom())
            self.expect("}")
            return Atoms(tuple(atoms))
        if tok.kind == "ident":
            self.advance()
            if self.at("("):
                self.advance()
                args = []
                if not self.at(")"):
                    args.append(self.rational())
                    while self.at(","):
                        self.advance()
                        args.append(self.rational())
                self.expect(")")
                return Call(tok.text, tuple(args))
            return Name(tok.text)
        raise self.error("expected '!', '(', '[', '{' or a name")

    def rational(self):
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        p = int(self.advance().text)
        if self.at("/"):
            self.advance()
            if self.tok.kind != "int":
                raise self.error("expected a denominator")
            q_tok = self.advance()
            q = int(q_tok.text)
            if q == 0:
                raise self.error("zero denominator", q_tok)
            return Fraction(p, q)
        return Fraction(p)

    def atom(self):
        tok = self.tok
        if tok.kind != "ident" or not re.fullmatch(r"a\d+", tok.text):
            raise self.error("expected an atom name like a0")
        self.advance()
        return int(tok.text[1:])


def parse(text: str) -> Expr:
    """Parse an expression; raises :class:`ParseError` with line and column."""
    return _Parser(text).parse()


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_text(e: Expr) -> str:
    """Print with the fewest parentheses that reparse to the same tree."""
    if isinstance(e, IntervalLit):
        return f"[{_rat(e.lo)},{_rat(e.hi)})"
    if isinstance(e, Atoms):
        return "{" + ",".join(f"a{i}" for i in e.indices) + "}"
    if isinstance(e, Name):
        return e.ident
    if isinstance(e, Call):
        return f"{e.ident}(" + ",".join(_rat(a) for a in e.args) + ")"
    if isinstance(e, Complement):
        inner = to_text(e.operand)
        if type(e.operand) in _SYMBOL:
            inner = f"({inner})"
        return "!" + inner
    prec = _BINARY[_SYMBOL[type(e)]][1]

    def side(child, right):
        s = to_text(child)
        if type(child) in _SYMBOL:
            p = _BINARY[_SYMBOL[type(child)]][1]
            # left-associative: an equal-precedence right child needs parentheses
            if p < prec or (right and p == prec):
                return f"({s})"
        return s

    return f"{side(e.left, False)} {_SYMBOL[type(e)]} {side(e.right, True)}"


_ELEMENT_NAMES = ("empty", "universe")


def is_family(e: Expr) -> bool:
    """True when the expression mentions a builtin Cauchy family."""
    if isinstance(e, (Name, Call)):
        return e.ident in BUILTINS
    if isinstance(e, Complement):
        return is_family(e.operand)
    if isinstance(e, (Union, Intersect, Diff)):
        return is_family(e.left) or is_family(e.right)
    return False


def eval_element(e: Expr, config=INTERVAL_UNIT):
    """Evaluate a family-free expression to a canonical element."""
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, IntervalLit):
        if isinstance(config, FiniteWeighted):
            raise UsageError("interval literals need the interval algebra")
        return canonicalize([(e.lo, e.hi)])
    if isinstance(e, Atoms):
        if not isinstance(config, FiniteWeighted):
            raise UsageError("atom sets need a finite algebra (--algebra finite:...)")
        return FiniteSubset.from_atoms(e.indices, config)
    if isinstance(e, Name):
        if e.ident == "empty":
            return config.empty()
        if e.ident == "universe":
            return config.universe()
        if e.ident in BUILTINS:
            raise UsageError(f"{e.ident!r} is a Cauchy family, not an element")
        raise UsageError(f"unknown name {e.ident!r}")
    if isinstance(e, Call):
        if e.ident in BUILTINS:
            raise UsageError(f"{e.ident!r} is a Cauchy family, not an element")
        raise UsageError(f"unknown function {e.ident!r}")
    if isinstance(e, Complement):
        return complement(eval_element(e.operand, config))
    op = {Union: union, Intersect: intersect, Diff: difference}[type(e)]
    return op(eval_element(e.left, config), eval_element(e.right, config))


def eval_point(e: Expr, config=INTERVAL_UNIT) -> CauchyPoint:
    """Evaluate to a completion point; plain elements become constant points."""
    if isinstance(e, str):
        e = parse(e)
    if not is_family(e):
        return constant_point(eval_element(e, config), label=to_text(e))
    if isinstance(e, Name):
        return eval_family(e.ident, (), config)
    if isinstance(e, Call):
        return eval_family(e.ident, e.args, config)
    if isinstance(e, Complement):
        return complement_pt(eval_point(e.operand, config))
    op = {Union: union_pt, Intersect: intersect_pt, Diff: difference_pt}[type(e)]
    return op(eval_point(e.left, config), eval_point(e.right, config))
