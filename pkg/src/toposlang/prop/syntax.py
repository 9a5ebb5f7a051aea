"""Grammar, parser and canonical printer for the propositional language.

Primitive propositions assert that a named quantity takes a value inside an
interval set ("A in [2,5]"); bare identifiers are abstract propositional
atoms used when reasoning about validity rather than a concrete system.

Tokens: identifiers, `in`, `~`, `&`, `|`, `->`, parentheses, and interval
literals built from `[ ] ( ) ,`, rational numbers, `-inf`, `+inf`, the
union separator `u` and the literal `empty`.  Precedence is ~ over & over |
over ->, with -> right-associative.  The printer emits the minimal-paren
canonical form and is the inverse of the parser on normal forms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import InputError
from ..intervals import Interval, IntervalSet


class ParseError(InputError):
    pass


@dataclass(frozen=True)
class Prim:
    quantity: str
    delta: IntervalSet


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Prim, Atom, Not, And, Or, Implies]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_@']*)
  | (?P<sym>[~&|()\[\],+\-])
""", re.VERBOSE)

_RESERVED = {"in", "u", "empty", "inf"}


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"lexical error at column {pos}: {text[pos:pos + 10]!r}")
        if m.lastgroup != "ws":
            kind = m.lastgroup
            value = m.group()
            if kind == "name" and value in _RESERVED:
                kind = value
            out.append((kind, value, pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        k, v, pos = self.next()
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind!r} at column {pos}, got {v!r}")
        return v

    def fail(self, what: str):
        _, v, pos = self.peek()
        raise ParseError(f"expected {what} at column {pos}, got {v!r}")

    # formula := or_f ("->" formula)?   (right-assoc)
    def formula(self) -> Formula:
        left = self.or_f()
        if self.peek()[0] == "arrow":
            self.next()
            return Implies(left, self.formula())
        return left

    def or_f(self) -> Formula:
        node = self.and_f()
        while self.peek()[:2] == ("sym", "|"):
            self.next()
            node = Or(node, self.and_f())
        return node

    def and_f(self) -> Formula:
        node = self.unary()
        while self.peek()[:2] == ("sym", "&"):
            self.next()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        if self.peek()[:2] == ("sym", "~"):
            self.next()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, _ = self.peek()
        if (kind, value) == ("sym", "("):
            self.next()
            node = self.formula()
            self.expect("sym", ")")
            return node
        if kind == "name":
            self.next()
            if self.peek()[0] == "in":
                self.next()
                return Prim(value, self.interval_set())
            return Atom(value)
        self.fail("a formula")

    # interval set := "empty" | interval ("u" interval)*
    def interval_set(self) -> IntervalSet:
        if self.peek()[0] == "empty":
            self.next()
            return IntervalSet.empty()
        parts = [self.interval()]
        while self.peek()[0] == "u":
            self.next()
            parts.append(self.interval())
        return IntervalSet.from_parts(parts)

    def interval(self) -> Interval:
        kind, value, pos = self.next()
        if (kind, value) not in (("sym", "["), ("sym", "(")):
            raise ParseError(f"expected an interval at column {pos}, got {value!r}")
        lo_closed = value == "["
        lo = self.bound()
        self.expect("sym", ",")
        hi = self.bound()
        kind, value, pos = self.next()
        if (kind, value) not in (("sym", "]"), ("sym", ")")):
            raise ParseError(f"unterminated interval at column {pos}, got {value!r}")
        hi_closed = value == "]"
        if lo is None and lo_closed:
            raise ParseError("interval cannot be closed at -inf")
        if hi is None and hi_closed:
            raise ParseError("interval cannot be closed at +inf")
        return Interval(lo, lo_closed, hi, hi_closed)

    def bound(self) -> Fraction | None:
        sign = 1
        kind, value, pos = self.next()
        if (kind, value) == ("sym", "-"):
            sign = -1
            kind, value, pos = self.next()
        elif (kind, value) == ("sym", "+"):
            kind, value, pos = self.next()
        if kind == "inf":
            return None
        if kind == "num":
            try:
                return sign * Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"malformed interval bound at column {pos}: {exc}") from None
        raise ParseError(f"expected a rational or inf at column {pos}, got {value!r}")


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    node = p.formula()
    if p.peek()[0] != "eof":
        _, v, pos = p.peek()
        raise ParseError(f"trailing input at column {pos}: {v!r}")
    return node


def parse_interval_set(text: str) -> IntervalSet:
    p = _Parser(text)
    got = p.interval_set()
    if p.peek()[0] != "eof":
        _, v, pos = p.peek()
        raise ParseError(f"trailing input at column {pos}: {v!r}")
    return got


_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Prim: 5, Atom: 5}


def format_formula(node: Formula) -> str:
    """Minimal-paren canonical form; parse(format(x)) == x."""
    def walk(n, required: int) -> str:
        prec = _PREC[type(n)]
        if isinstance(n, Prim):
            body = f"{n.quantity} in {n.delta}"
        elif isinstance(n, Atom):
            body = n.name
        elif isinstance(n, Not):
            body = "~" + walk(n.operand, 4)
        elif isinstance(n, And):
            body = walk(n.left, 3) + " & " + walk(n.right, 4)
        elif isinstance(n, Or):
            body = walk(n.left, 2) + " | " + walk(n.right, 3)
        else:
            body = walk(n.left, 2) + " -> " + walk(n.right, 1)
        return "(" + body + ")" if prec < required else body

    return walk(node, 0)


def leaves(node: Formula) -> list:
    """Distinct primitive leaves (Prim or Atom), in first-occurrence order."""
    out: list = []
    seen = set()

    def walk(n):
        if isinstance(n, (Prim, Atom)):
            if n not in seen:
                seen.add(n)
                out.append(n)
        elif isinstance(n, Not):
            walk(n.operand)
        else:
            walk(n.left)
            walk(n.right)

    walk(node)
    return out


def leaf_key(leaf) -> str:
    """Stable string key for a primitive leaf (used by countermodels)."""
    if isinstance(leaf, Atom):
        return leaf.name
    return format_formula(leaf)
