"""Vague attribute expressions over a finite elementary attribute set.

Grammar (keywords are case-sensitive ASCII and reserved)::

    expr  := or
    or    := and ("or" and)*
    and   := unary ("and" unary)*
    unary := "not" unary | atom
    atom  := "bot" | "top" | IDENT | QUOTED | "(" expr ")"

    IDENT  := [A-Za-z_][A-Za-z0-9_]*
    QUOTED := '"' any-non-quote+ '"'

Chains such as ``a and b and c`` parse to one n-ary node; explicit
parentheses keep nesting, so ``(a and b) and c`` stays binary-nested.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterator, Sequence, Union

from .errors import DomainError, ExprSyntaxError, UnknownAttributeError

KEYWORDS = frozenset({"bot", "top", "not", "and", "or"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class ElementaryAttributeSet:
    """Ordered, duplicate-free, nonempty list of elementary attribute names."""

    names: tuple[str, ...]
    concept: str | None = None
    attribute: str | None = None
    universe_bounds: tuple[float, float] | None = None

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise DomainError("elementary attribute set must be nonempty")
        for name in names:
            if not isinstance(name, str) or not name:
                raise DomainError(f"attribute names must be nonempty strings, got {name!r}")
            if '"' in name:
                raise DomainError(f"attribute name {name!r} contains a double quote")
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise DomainError(f"duplicate attribute name {dup!r}")
        object.__setattr__(self, "names", names)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownAttributeError(name) from None


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Elem:
    name: str


@dataclass(frozen=True)
class Not:
    child: "AttributeExpr"


@dataclass(frozen=True)
class And:
    children: tuple["AttributeExpr", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise DomainError("And needs at least two operands")


@dataclass(frozen=True)
class Or:
    children: tuple["AttributeExpr", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise DomainError("Or needs at least two operands")


AttributeExpr = Union[Bot, Top, Elem, Not, And, Or]

BOT = Bot()
TOP = Top()


def validate(expr: AttributeExpr, omega: ElementaryAttributeSet) -> AttributeExpr:
    """Raise UnknownAttributeError if ``expr`` names an attribute outside ``omega``."""
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Elem):
            if node.name not in omega:
                raise UnknownAttributeError(node.name)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
        elif not isinstance(node, (Bot, Top)):
            raise DomainError(f"not an attribute expression: {node!r}")
    return expr


def attributes(expr: AttributeExpr) -> set[str]:
    if isinstance(expr, Elem):
        return {expr.name}
    if isinstance(expr, Not):
        return attributes(expr.child)
    if isinstance(expr, (And, Or)):
        return set().union(*(attributes(c) for c in expr.children))
    return set()


# -- tokenizer / parser -------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<quoted>"[^"]+")
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos] == '"':
                raise ExprSyntaxError("unterminated or empty quoted name", pos, text)
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "quoted":
            tokens.append(("name", m.group()[1:-1], pos))
        elif kind == "word":
            word = m.group()
            tokens.append((word if word in KEYWORDS else "name", word, pos))
        elif kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, omega: ElementaryAttributeSet | None):
        self.text = text
        self.omega = omega
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {kind!r}, found {found}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> AttributeExpr:
        expr = self.disjunction()
        self.take("end")
        return expr

    def disjunction(self) -> AttributeExpr:
        parts = [self.conjunction()]
        while self.peek()[0] == "or":
            self.i += 1
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> AttributeExpr:
        parts = [self.unary()]
        while self.peek()[0] == "and":
            self.i += 1
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> AttributeExpr:
        if self.peek()[0] == "not":
            self.i += 1
            return Not(self.unary())
        return self.atom()

    def atom(self) -> AttributeExpr:
        kind, value, pos = self.peek()
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "top":
            self.i += 1
            return TOP
        if kind == "name":
            self.i += 1
            if self.omega is not None and value not in self.omega:
                raise UnknownAttributeError(value)
            return Elem(value)
        if kind == "lpar":
            self.i += 1
            inner = self.disjunction()
            self.take("rpar")
            return inner
        found = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"expected an attribute, found {found}", pos, self.text)


def parse_expr(text: str, omega: ElementaryAttributeSet | None = None) -> AttributeExpr:
    """Parse ``text``; names are checked against ``omega`` when given."""
    return _Parser(text, omega).parse()


# -- formatter ------------------------------------------------------------

def format_name(name: str) -> str:
    if _IDENT.fullmatch(name) and name not in KEYWORDS:
        return name
    return f'"{name}"'


def format_expr(expr: AttributeExpr) -> str:
    """Canonical text; ``parse_expr(format_expr(e)) == e`` for every valid AST."""
    if isinstance(expr, Bot):
        return "bot"
    if isinstance(expr, Top):
        return "top"
    if isinstance(expr, Elem):
        return format_name(expr.name)
    if isinstance(expr, Not):
        child = expr.child
        inner = format_expr(child)
        return f"not ({inner})" if isinstance(child, (And, Or)) else f"not {inner}"
    if isinstance(expr, And):
        # Or binds looser; a nested And must keep its own grouping
        return " and ".join(
            f"({format_expr(c)})" if isinstance(c, (And, Or)) else format_expr(c) for c in expr.children
        )
    if isinstance(expr, Or):
        return " or ".join(f"({format_expr(c)})" if isinstance(c, Or) else format_expr(c) for c in expr.children)
    raise DomainError(f"not an attribute expression: {expr!r}")


# -- enumeration ------------------------------------------------------------

def enumerate_exprs(omega: ElementaryAttributeSet | Sequence[str], max_depth: int) -> Iterator[AttributeExpr]:
    """All expressions up to ``max_depth`` with unary Not and binary And/Or.

    Level d adds Not(e) and every And(a, b) / Or(a, b) over level d - 1.
    Only items built from at least one expression new at level d - 1 are
    emitted, which makes the stream duplicate-free without a seen-set.
    """
    if not isinstance(omega, ElementaryAttributeSet):
        omega = ElementaryAttributeSet(tuple(omega))
    if max_depth < 0:
        raise DomainError("max_depth must be >= 0")
    level: list[AttributeExpr] = [BOT, TOP, *(Elem(n) for n in omega)]
    yield from level
    fresh = list(level)
    for _ in range(max_depth):
        new: list[AttributeExpr] = [Not(e) for e in fresh]
        fresh_ids = {id(e) for e in fresh}
        for a, b in cartesian(level, repeat=2):
            if id(a) in fresh_ids or id(b) in fresh_ids:
                new.append(And((a, b)))
                new.append(Or((a, b)))
        yield from new
        level = level + new
        fresh = new


def count_exprs(n_attributes: int, max_depth: int) -> int:
    """Size of ``enumerate_exprs`` output, from the level recurrence alone."""
    total = n_attributes + 2
    fresh = total
    for _ in range(max_depth):
        old = total - fresh
        new = fresh + 2 * (total * total - old * old)
        total += new
        fresh = new
    return total
