"""Algebraic tangle expressions: AST, parser, builders.

Grammar (whitespace-insensitive)::

    expr   := term { "+" term }
    term   := factor { "*" factor }
    factor := int | "1" "/" posint | "-" factor | "(" expr ")" | name | "0" | "inf"
    int    := [ "-" ] posint
    name   := "T821" | "T10" | "T20" | "M" posint

`*` binds tighter than `+`; both associate left.  A leading `-` on an
integer literal is a negative twist; on anything else it mirrors.  Named
tangles parse to their fully expanded trees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError

__all__ = [
    "Twist",
    "VTwist",
    "Sum",
    "Star",
    "Mirror",
    "Zero",
    "Infinity",
    "TangleExpr",
    "ZERO_TANGLE",
    "INFINITY_TANGLE",
    "parse_tangle",
    "format_tangle",
    "build_named",
    "crossing_count",
]


@dataclass(frozen=True)
class Twist:
    """k horizontal crossings in a row; sign of k is the crossing sign."""

    k: int

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("Twist(0) is not a tangle; use Zero")


@dataclass(frozen=True)
class VTwist:
    """k crossings stacked vertically: the tangle 1/k (or -1/k for k < 0)."""

    k: int

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("VTwist(0) is not a tangle; use Infinity")


@dataclass(frozen=True)
class Sum:
    left: "TangleExpr"
    right: "TangleExpr"


@dataclass(frozen=True)
class Star:
    """Vertical stacking, left operand above right."""

    left: "TangleExpr"
    right: "TangleExpr"


@dataclass(frozen=True)
class Mirror:
    child: "TangleExpr"


@dataclass(frozen=True)
class Zero:
    """Two horizontal strands, no crossings."""


@dataclass(frozen=True)
class Infinity:
    """Two vertical strands, no crossings."""


TangleExpr = Union[Twist, VTwist, Sum, Star, Mirror, Zero, Infinity]

ZERO_TANGLE = Zero()
INFINITY_TANGLE = Infinity()

_NAME_RE = re.compile(r"T821|T10|T20|M([1-9][0-9]*)|inf")


def crossing_count(e: TangleExpr) -> int:
    """Number of crossings in the expanded diagram of e.

    Memoized per subtree object, so shared doubling towers cost their
    depth, not their expanded size.
    """
    return _crossing_count(e, {})


def _crossing_count(e: TangleExpr, seen: dict) -> int:
    key = id(e)
    hit = seen.get(key)
    if hit is not None:
        return hit
    if isinstance(e, (Twist, VTwist)):
        total = abs(e.k)
    elif isinstance(e, (Sum, Star)):
        total = _crossing_count(e.left, seen) + _crossing_count(e.right, seen)
    elif isinstance(e, Mirror):
        total = _crossing_count(e.child, seen)
    elif isinstance(e, (Zero, Infinity)):
        total = 0
    else:
        raise TypeError(f"not a tangle expression: {e!r}")
    seen[key] = total
    return total


# -- named tangles ----------------------------------------------------------


def build_named(name: str) -> TangleExpr:
    """Expand a named tangle: T821, T10, T20, M<r>, D<r>.

    M<r> is the r-fold doubling family over T20; the doubling shares
    subtrees, so evaluators that memoize per subtree see r nodes, not 2^r.
    D<r> is the tangle whose denominator closure is the family's knot:
    Star(Twist(1), M<r>).
    """
    if name == "T821":
        half = Sum(VTwist(2), Twist(1))
        return Sum(Star(half, Twist(2)), Twist(-3))
    if name == "T10":
        return Star(build_named("T821"), Twist(2))
    if name == "T20":
        t10 = build_named("T10")
        return Sum(t10, Mirror(t10))
    m = re.fullmatch(r"([MD])([1-9][0-9]*)", name)
    if m:
        kind, r = m.group(1), int(m.group(2))
        e = build_named("T20")
        for _ in range(r - 1):
            e = Sum(e, e)
        return Star(Twist(1), e) if kind == "D" else e
    raise ValueError(f"unknown tangle name: {name!r}")


# -- formatting --------------------------------------------------------------

# Precedence levels for minimal parenthesization.
_LEVEL_SUM, _LEVEL_STAR, _LEVEL_ATOM = 0, 1, 2


def format_tangle(e: TangleExpr) -> str:
    """Render so that parse_tangle(format_tangle(e)) == e for parser output."""
    return _fmt(e, _LEVEL_SUM)


def _fmt(e: TangleExpr, level: int) -> str:
    if isinstance(e, Twist):
        s, mine = str(e.k), _LEVEL_ATOM
    elif isinstance(e, VTwist):
        s = f"1/{e.k}" if e.k > 0 else f"-(1/{-e.k})"
        mine = _LEVEL_ATOM
    elif isinstance(e, Zero):
        s, mine = "0", _LEVEL_ATOM
    elif isinstance(e, Infinity):
        s, mine = "inf", _LEVEL_ATOM
    elif isinstance(e, Mirror):
        # Parens force Mirror: a bare "-3" would reparse as Twist(-3).
        s, mine = f"-({_fmt(e.child, _LEVEL_SUM)})", _LEVEL_ATOM
    elif isinstance(e, Sum):
        s = f"{_fmt(e.left, _LEVEL_SUM)} + {_fmt(e.right, _LEVEL_STAR)}"
        mine = _LEVEL_SUM
    elif isinstance(e, Star):
        s = f"{_fmt(e.left, _LEVEL_STAR)} * {_fmt(e.right, _LEVEL_ATOM)}"
        mine = _LEVEL_STAR
    else:
        raise TypeError(f"not a tangle expression: {e!r}")
    return f"({s})" if mine < level else s


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.n = len(text)

    def error(self, message: str):
        raise ParseError(message, self.i)

    def skip_ws(self):
        while self.i < self.n and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.i] if self.i < self.n else ""

    def eat(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def read_posint(self) -> int:
        self.skip_ws()
        start = self.i
        while self.i < self.n and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected a positive integer")
        value = int(self.text[start : self.i])
        if value == 0:
            self.i = start
            self.error("expected a positive integer")
        return value

    def parse(self) -> TangleExpr:
        e = self.expr()
        if self.peek():
            self.error("unexpected trailing input")
        return e

    def expr(self) -> TangleExpr:
        e = self.term()
        while self.peek() == "+":
            self.i += 1
            e = Sum(e, self.term())
        return e

    def term(self) -> TangleExpr:
        e = self.factor()
        while self.peek() == "*":
            self.i += 1
            e = Star(e, self.factor())
        return e

    def factor(self) -> TangleExpr:
        ch = self.peek()
        if ch == "-":
            self.i += 1
            at = self.i
            inner = self.factor()
            # "-" directly on an integer literal negates the twist; the
            # factor() call returned Twist(k) or Zero exactly in that case
            # when the consumed text was bare digits.
            if isinstance(inner, Twist) and self.text[at : self.i].strip().isdigit():
                return Twist(-inner.k)
            if isinstance(inner, Zero) and self.text[at : self.i].strip() == "0":
                self.i = at
                self.error("-0 is not a tangle")
            return Mirror(inner)
        if ch == "(":
            self.i += 1
            e = self.expr()
            self.eat(")")
            return e
        if ch.isdigit():
            at = self.i
            value = self.read_posint() if ch != "0" else self._zero_or_digits()
            if isinstance(value, Zero):
                return value
            if self.peek() == "/":
                if value != 1:
                    self.i = at
                    self.error("only 1/k vertical twists exist")
                self.i += 1
                k = self.read_posint()
                return VTwist(k)
            return Twist(value)
        m = _NAME_RE.match(self.text, self.i) if ch else None
        if m:
            self.i = m.end()
            word = m.group(0)
            if word == "inf":
                return INFINITY_TANGLE
            return build_named(word)
        self.error("expected a tangle factor")

    def _zero_or_digits(self):
        start = self.i
        while self.i < self.n and self.text[self.i].isdigit():
            self.i += 1
        digits = self.text[start : self.i]
        if int(digits) == 0:
            if len(digits) != 1:
                self.i = start
                self.error("expected a positive integer")
            return ZERO_TANGLE
        return int(digits)


def parse_tangle(text: str) -> TangleExpr:
    """Parse a tangle expression; raises ParseError with the bad offset."""
    return _Parser(text).parse()
