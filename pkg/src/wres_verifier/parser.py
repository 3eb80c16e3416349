"""Expression grammar for xi-rational functions and n-dependent constants.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ['^' ['-'] atom]
    atom   := integer | 'i' | 'xi' | 'n' | call | '(' expr ')'
    call   := ('fact' | 'C' | 'A') '(' expr [',' expr] ')'

Exponents, factorial arguments and binomial arguments must lower to integers.
``C(N,K)`` is the generalized binomial and ``A(N,K)`` the falling factorial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from wres_verifier.arith import I, GaussianRational, binomial_general, factorial, falling_factorial
from wres_verifier.errors import ExpressionSyntaxError
from wres_verifier.ratfunc import RatFuncXi, format_ratfunc

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))")

FUNCTIONS = {"fact": 1, "C": 2, "A": 2}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> Iterator[Token]:
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            yield Token("end", "", len(text))
            return
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup or "op"
        start = match.start(kind)
        yield Token(kind, match.group(kind), start)
        pos = match.end()


# --------------------------------------------------
# AST
# --------------------------------------------------

@dataclass(frozen=True)
class Number:
    value: int


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Xi:
    pass


@dataclass(frozen=True)
class Dimension:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Node", ...]


Node = Union[Number, ImagUnit, Xi, Dimension, Neg, BinOp, Power, Call]


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.token = next(self.tokens)

    def fail(self, message: str, token: Optional[Token] = None) -> ExpressionSyntaxError:
        token = token or self.token
        return ExpressionSyntaxError(message, self.text, token.offset)

    def advance(self) -> Token:
        current = self.token
        self.token = next(self.tokens)
        return current

    def expect(self, text: str) -> Token:
        if self.token.text != text or self.token.kind != "op":
            found = "end of input" if self.token.kind == "end" else repr(self.token.text)
            raise self.fail(f"expected {text!r}, found {found}")
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.token.kind != "end":
            raise self.fail(f"unexpected {self.token.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.token.kind == "op" and self.token.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.token.kind == "op" and self.token.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.token.kind == "op" and self.token.text == "-":
            self.advance()
            return Neg(self.unary())
        if self.token.kind == "op" and self.token.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.token.kind == "op" and self.token.text == "^":
            self.advance()
            if self.token.kind == "op" and self.token.text == "-":
                self.advance()
                return Power(base, Neg(self.atom()))
            return Power(base, self.atom())
        return base

    def atom(self) -> Node:
        token = self.token
        if token.kind == "end":
            raise self.fail("unexpected end of input")
        if token.kind == "number":
            self.advance()
            return Number(int(token.text))
        if token.kind == "name":
            self.advance()
            if token.text == "i":
                return ImagUnit()
            if token.text == "xi":
                return Xi()
            if token.text == "n":
                return Dimension()
            if token.text in FUNCTIONS:
                return self.call(token)
            raise self.fail(f"unknown name {token.text!r}", token)
        if token.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise self.fail(f"unexpected {token.text!r}")

    def call(self, name: Token) -> Node:
        self.expect("(")
        args = [self.expr()]
        while self.token.kind == "op" and self.token.text == ",":
            self.advance()
            args.append(self.expr())
        self.expect(")")
        if len(args) != FUNCTIONS[name.text]:
            raise self.fail(f"{name.text} takes {FUNCTIONS[name.text]} argument(s)", name)
        return Call(name.text, tuple(args))


def parse_ast(text: str) -> Node:
    """Parses ``text`` into an AST.

    Raises:
        ExpressionSyntaxError: With the byte offset of the offending token.
    """
    return _Parser(text).parse()


# --------------------------------------------------
# Lowering
# --------------------------------------------------

def _integer(value: RatFuncXi, what: str) -> int:
    if not value.is_constant() or not value.constant_value().is_integer():
        raise ValueError(f"{what} must be an integer, got {value}")
    return int(value.constant_value().re)


def lower(node: Node, n: Optional[int] = None) -> RatFuncXi:
    """Evaluates an AST to a rational function, binding ``n`` to the dimension."""
    if isinstance(node, Number):
        return RatFuncXi.constant(node.value)
    if isinstance(node, ImagUnit):
        return RatFuncXi.constant(I)
    if isinstance(node, Xi):
        return RatFuncXi.xi()
    if isinstance(node, Dimension):
        if n is None:
            raise ValueError("expression uses n but no dimension was given")
        return RatFuncXi.constant(n)
    if isinstance(node, Neg):
        return -lower(node.operand, n)
    if isinstance(node, BinOp):
        left, right = lower(node.left, n), lower(node.right, n)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    if isinstance(node, Power):
        return lower(node.base, n) ** _integer(lower(node.exponent, n), "exponent")
    if isinstance(node, Call):
        args = [_integer(lower(arg, n), f"argument of {node.name}") for arg in node.args]
        if node.name == "fact":
            return RatFuncXi.constant(factorial(args[0]))
        if node.name == "C":
            return RatFuncXi.constant(binomial_general(*args))
        return RatFuncXi.constant(falling_factorial(*args))
    raise TypeError(f"Unknown node {node!r}")


def parse_expression(text: str, n: Optional[int] = None) -> RatFuncXi:
    """Parses and lowers ``text``; denominators must split over +i and -i."""
    return lower(parse_ast(text), n)


def evaluate_constant(text: str, n: Optional[int] = None) -> GaussianRational:
    value = parse_expression(text, n)
    if not value.is_constant():
        raise ValueError(f"{text!r} depends on xi")
    return value.constant_value()


def format_expression(f: RatFuncXi) -> str:
    return format_ratfunc(f)
