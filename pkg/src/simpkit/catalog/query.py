"""Attribute query language for catalog searches.

Grammar (whitespace-insensitive, keywords case-sensitive)::

    query   := and_expr { "or" and_expr }
    and_expr:= cmp { "and" cmp }
    cmp     := term OP term | "(" query ")"
    term    := product { ("+" | "-") product }
    product := unary { "*" unary }
    unary   := "-" unary | atom
    atom    := integer | attr | "Binomial" "(" term "," term ")" | "(" term ")"
    attr    := "Dim" | "Chi" | "Neighborliness"
             | ("F" | "G" | "H" | "Homology") "[" term "]"

Vector attributes are indexed from 1, so ``F[1]`` is the vertex count.
``Homology[i]`` is the rank of the (i-1)-st homology group.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from ..errors import QueryIndexError, QueryNameError, QuerySyntaxError

SCALAR_ATTRS = ("Dim", "Chi", "Neighborliness")
VECTOR_ATTRS = ("F", "G", "H", "Homology")
KEYWORDS = ("and", "or", "Binomial")
COMPARATORS = ("<=", ">=", "=", "<", ">")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(<=|>=|[=<>+\-*()\[\],]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "sym" or "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            raise QuerySyntaxError(f"unexpected character {text[i]!r}", i)
        if m.group(1) is not None:
            out.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(Token("name", m.group(2), m.start(2)))
        else:
            out.append(Token("sym", m.group(3), m.start(3)))
        i = m.end()
    out.append(Token("end", "", n))
    return out


# -- expression tree ---------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Attr:
    name: str
    index: "Term | None" = None


@dataclass(frozen=True)
class Binomial:
    n: "Term"
    k: "Term"


@dataclass(frozen=True)
class Arith:
    op: str
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    operand: "Term"


@dataclass(frozen=True)
class Compare:
    op: str
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


Term = Union[Num, Attr, Binomial, Arith, Neg]
Query = Union[Compare, And, Or]


class _Missing(Exception):
    """Referenced property absent (or index past its end) for this entry."""


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _is(self, text, kind="sym"):
        t = self.tok
        return t.kind == kind and t.text == text

    def _expect(self, text, what=None):
        if not self._is(text):
            self._fail(what or repr(text))
        self.i += 1

    def _fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise QuerySyntaxError(f"expected {expected}, found {found}", t.pos)

    def parse(self) -> Query:
        q = self.query()
        if self.tok.kind != "end":
            self._fail("'and', 'or' or end of input")
        return q

    def query(self):
        parts = [self.and_expr()]
        while self._is("or", "name"):
            self.i += 1
            parts.append(self.and_expr())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def and_expr(self):
        parts = [self.cmp()]
        while self._is("and", "name"):
            self.i += 1
            parts.append(self.cmp())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def cmp(self):
        if self._is("("):
            # either a parenthesised query or a comparison whose left term
            # starts with a parenthesised term; try the former first
            save = self.i
            try:
                self.i += 1
                q = self.query()
                self._expect(")")
            except QuerySyntaxError:
                self.i = save
            else:
                if self.tok.kind == "sym" and self.tok.text in COMPARATORS + ("+", "-", "*"):
                    self.i = save
                else:
                    return q
        left = self.term()
        t = self.tok
        if t.kind != "sym" or t.text not in COMPARATORS:
            self._fail("comparison operator")
        self.i += 1
        return Compare(t.text, left, self.term())

    def term(self):
        node = self.product()
        while self.tok.kind == "sym" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = Arith(op, node, self.product())
        return node

    def product(self):
        node = self.unary()
        while self._is("*"):
            self.i += 1
            node = Arith("*", node, self.unary())
        return node

    def unary(self):
        if self._is("-"):
            self.i += 1
            return Neg(self.unary())
        return self.atom()

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(int(t.text))
        if self._is("("):
            self.i += 1
            node = self.term()
            self._expect(")")
            return node
        if t.kind == "name":
            name = t.text
            if name == "Binomial":
                self.i += 1
                self._expect("(")
                a = self.term()
                self._expect(",")
                b = self.term()
                self._expect(")")
                return Binomial(a, b)
            if name in SCALAR_ATTRS:
                self.i += 1
                return Attr(name)
            if name in VECTOR_ATTRS:
                self.i += 1
                self._expect("[", f"'[' after {name}")
                idx = self.term()
                self._expect("]")
                return Attr(name, idx)
            if name in ("and", "or"):
                self._fail("term")
            raise QueryNameError(f"unknown attribute {name!r} at position {t.pos}")
        self._fail("term")


def parse_query(text: str) -> Query:
    """Parse ``text`` into an expression tree.

    Raises QuerySyntaxError (with a 0-based character position) on malformed
    input and QueryNameError on an unknown attribute.
    """
    return _Parser(text).parse()


# -- evaluation --------------------------------------------------------------

def _homology_ranks(value):
    return [g[0] if isinstance(g, (list, tuple)) else g for g in value]


def eval_term(node: Term, props: dict) -> int:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        return -eval_term(node.operand, props)
    if isinstance(node, Arith):
        a = eval_term(node.left, props)
        b = eval_term(node.right, props)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Binomial):
        n, k = eval_term(node.n, props), eval_term(node.k, props)
        if k < 0 or n < 0 or k > n:
            return 0
        return math.comb(n, k)
    if node.name not in props:
        raise _Missing(node.name)
    value = props[node.name]
    if node.index is None:
        return value
    i = eval_term(node.index, props)
    if i < 1:
        raise QueryIndexError(f"index {i} for {node.name} is below 1 (indices start at 1)")
    if node.name == "Homology":
        value = _homology_ranks(value)
    if i > len(value):
        raise _Missing(node.name)
    return value[i - 1]


def _compare(op, a, b):
    if op == "=":
        return a == b
    if op == "<":
        return a < b
    if op == ">":
        return a > b
    if op == "<=":
        return a <= b
    return a >= b


def evaluate(q: Query, props: dict) -> bool:
    """Truth value of ``q`` on a property map.

    A comparison mentioning a property the map lacks (or a position past the
    end of a stored vector) is false rather than an error.
    """
    if isinstance(q, And):
        return all(evaluate(p, props) for p in q.parts)
    if isinstance(q, Or):
        return any(evaluate(p, props) for p in q.parts)
    try:
        return _compare(q.op, eval_term(q.left, props), eval_term(q.right, props))
    except _Missing:
        return False


def format_query(q) -> str:
    """Render a tree back to query text (fully parenthesised connectives)."""
    if isinstance(q, Or):
        return " or ".join(f"({format_query(p)})" for p in q.parts)
    if isinstance(q, And):
        return " and ".join(f"({format_query(p)})" for p in q.parts)
    if isinstance(q, Compare):
        return f"{format_query(q.left)}{q.op}{format_query(q.right)}"
    if isinstance(q, Num):
        return str(q.value)
    if isinstance(q, Neg):
        return f"-({format_query(q.operand)})"
    if isinstance(q, Arith):
        return f"({format_query(q.left)}{q.op}{format_query(q.right)})"
    if isinstance(q, Binomial):
        return f"Binomial({format_query(q.n)},{format_query(q.k)})"
    if q.index is None:
        return q.name
    return f"{q.name}[{format_query(q.index)}]"
