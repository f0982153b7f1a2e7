"""Expression syntax for algebra elements and forms.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' int)?
    atom   := rational | 'x' | 'y' | 'dx' | 'dy' | '(' expr ')'

``^`` binds tighter than ``*``.  A negative exponent is only accepted on a
bare ``x`` over a Laurent base.  Products of forms follow the calculus:
``a*dx`` is the twisted left action, ``dx*a`` the right action and
``dx*dy`` the wedge product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .basering import BaseKind, BasePoly
from .calculus import OneForm, TwoForm, calculus_for
from .errors import NonInvertibleImage, OreSmoothError, ParseError
from .ore import AlgebraSpec, OreElement

_TOKEN = re.compile(r"(?P<num>\d+)|(?P<name>dx|dy|x|y)|(?P<op>[-+*^/()])")


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'name', 'op', 'end'
    text: str
    column: int


def tokenize(text: str):
    tokens = []
    pos, n = 0, len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        tokens.append(Token(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", n + 1))
    return tokens


# AST


@dataclass(frozen=True)
class Num:
    value: Fraction
    column: int


@dataclass(frozen=True)
class Var:
    name: str
    column: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    column: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str) -> Token:
        t = self.tok
        if t.kind != "op" or t.text != op:
            raise ParseError(f"expected {op!r}, found {t.text or 'end of input'!r}", 1, t.column)
        return self.advance()

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", 1, self.tok.column)
        return node

    def expr(self):
        terms = []
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        terms.append((sign, self.term()))
        while self.at_op("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            if self.at_op("-", "+"):
                raise ParseError("unary sign is only allowed at the head of an expression", 1, self.tok.column)
            terms.append((sign, self.term()))
        return Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.at_op("*"):
            self.advance()
            factors.append(self.factor())
        return Product(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.at_op("^"):
            caret = self.advance()
            neg = False
            if self.at_op("-"):
                self.advance()
                neg = True
            t = self.tok
            if t.kind != "num":
                raise ParseError("exponent must be an integer", 1, t.column)
            self.advance()
            e = -int(t.text) if neg else int(t.text)
            if e < 0 and not (isinstance(base, Var) and base.name == "x"):
                raise ParseError("negative exponents are only allowed on x", 1, caret.column)
            return Pow(base, e, caret.column)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            num = int(t.text)
            if self.at_op("/"):
                self.advance()
                d = self.tok
                if d.kind != "num":
                    raise ParseError("expected a denominator", 1, d.column)
                self.advance()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", 1, d.column)
                return Num(Fraction(num, int(d.text)), t.column)
            return Num(Fraction(num), t.column)
        if t.kind == "name":
            self.advance()
            return Var(t.text, t.column)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", 1, t.column)


def parse(text: str):
    """Parse expression text into an AST."""
    return _Parser(text).parse()


# evaluation


def _first_column(node) -> int:
    if isinstance(node, (Num, Var, Pow)):
        return node.column
    if isinstance(node, Product):
        return _first_column(node.factors[0])
    return _first_column(node.terms[0][1])


def eval_base_poly(node, kind=BaseKind.POLY) -> BasePoly:
    """Evaluate an AST containing only numbers and x as a base-ring element."""
    kind = BaseKind(kind)
    if isinstance(node, Num):
        return BasePoly.const(node.value, kind)
    if isinstance(node, Var):
        if node.name != "x":
            raise ParseError(f"{node.name} is not allowed in a base-ring polynomial", 1, node.column)
        return BasePoly.gen(kind)
    if isinstance(node, Pow):
        if node.exponent < 0 and kind is not BaseKind.LAURENT:
            raise ParseError("negative powers of x need a Laurent base", 1, node.column)
        return eval_base_poly(node.base, kind) ** node.exponent
    if isinstance(node, Product):
        out = BasePoly.const(1, kind)
        for f in node.factors:
            out = out * eval_base_poly(f, kind)
        return out
    out = BasePoly.zero(kind)
    for sign, t in node.terms:
        v = eval_base_poly(t, kind)
        out = out + v if sign > 0 else out - v
    return out


def parse_base_poly(text: str, kind=BaseKind.POLY) -> BasePoly:
    return eval_base_poly(parse(text), kind)


def _degree(v) -> int:
    if isinstance(v, OneForm):
        return 1
    if isinstance(v, TwoForm):
        return 2
    return 0


def evaluate(node, spec: AlgebraSpec):
    """Evaluate an AST to an OreElement, OneForm or TwoForm over ``spec``."""
    if isinstance(node, Num):
        return spec.const(node.value)
    if isinstance(node, Var):
        if node.name == "x":
            return spec.x
        if node.name == "y":
            return spec.y
        try:
            calc = calculus_for(spec)
        except OreSmoothError as exc:
            raise ParseError(f"{node.name} needs a calculus: {exc}", 1, node.column) from None
        return calc.dx if node.name == "dx" else calc.dy
    if isinstance(node, Pow):
        base = evaluate(node.base, spec)
        if _degree(base):
            raise ParseError("only algebra elements can be raised to a power", 1, node.column)
        if node.exponent < 0 and not spec.is_laurent:
            raise ParseError("negative powers of x need a Laurent base", 1, node.column)
        try:
            return base ** node.exponent
        except NonInvertibleImage as exc:
            raise ParseError(str(exc), 1, node.column) from None
    if isinstance(node, Product):
        value = evaluate(node.factors[0], spec)
        for f in node.factors[1:]:
            rhs = evaluate(f, spec)
            if _degree(value) + _degree(rhs) > 2:
                raise ParseError("product has degree above 2", 1, _first_column(f))
            value = value * rhs
        return value
    value = None
    for sign, t in node.terms:
        v = evaluate(t, spec)
        if sign < 0:
            v = -v
        if value is None:
            value = v
            continue
        if _degree(value) != _degree(v):
            if _is_zero(v):
                continue
            if _is_zero(value):
                value = v
                continue
            raise ParseError("cannot add forms of different degree", 1, _first_column(t))
        value = value + v
    return value


def _is_zero(v) -> bool:
    return v.is_zero()


def parse_value(text: str, spec: AlgebraSpec):
    return evaluate(parse(text), spec)


def parse_element(text: str, spec: AlgebraSpec) -> OreElement:
    v = parse_value(text, spec)
    if not isinstance(v, OreElement):
        raise ParseError("expected an algebra element, got a form", 1, 1)
    return v
