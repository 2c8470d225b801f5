"""A small total expression language for scalar formulas in configs.

Grammar, tightest binding first:

    power  := atom ['^' signed]            (right associative)
    signed := '-' signed | power
    term   := signed (('*' | '/') signed)*
    sum    := term (('+' | '-') term)*
    atom   := NUMBER | NAME | NAME '(' sum (',' sum)* ')' | '(' sum ')'

so '^' binds above unary minus, which binds above '*' and '/', which
bind above '+' and '-'. Numbers are nonnegative integer or decimal
literals; decimals are read exactly (0.25 means one quarter, not its
float). Functions: sqrt (one argument), min and max (two or more).
There are no conditionals and no loops; every parsed expression either
evaluates or raises one of the documented errors.

``to_source`` renders an AST back to text that re-parses to an identical
tree. Literals keep that guarantee whenever their denominator divides a
power of ten (always true for parsed input); a programmatically built
literal like 1/3 falls back to "(1/3)", which re-parses as a division
node of equal value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    DivisionByZero,
    ExprSyntaxError,
    NegativeSqrt,
    UnknownVariable,
)
from .numeric import Mode, Scalar, exact_sqrt, require_mode, scalar_pow

import math


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]


Expr = Union[Lit, Var, Neg, Bin, Call]

# func name -> (min arity, max arity or None for unbounded)
_FUNCTIONS = {"sqrt": (1, 1), "min": (2, None), "max": (2, None)}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            seen_dot = False
            while i < n and (source[i].isdigit() or (source[i] == "." and not seen_dot)):
                if source[i] == ".":
                    seen_dot = True
                i += 1
            tokens.append(_Token("num", source[start:i], start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            tokens.append(_Token("name", source[start:i], start))
            continue
        if ch in "+-*/^(),":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], variables):
        self.tokens = tokens
        self.k = 0
        self.variables = frozenset(variables)

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def advance(self) -> _Token:
        token = self.tokens[self.k]
        self.k += 1
        return token

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            raise ExprSyntaxError(f"expected {kind!r}", token.pos)
        return self.advance()

    def parse(self) -> Expr:
        expr = self.sum_()
        token = self.peek()
        if token.kind != "end":
            raise ExprSyntaxError(f"unexpected {token.text!r} after expression", token.pos)
        return expr

    def sum_(self) -> Expr:
        expr = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            expr = Bin(op, expr, self.term())
        return expr

    def term(self) -> Expr:
        expr = self.signed()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            expr = Bin(op, expr, self.signed())
        return expr

    def signed(self) -> Expr:
        if self.peek().kind == "-":
            self.advance()
            return Neg(self.signed())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "^":
            self.advance()
            return Bin("^", base, self.signed())
        return base

    def atom(self) -> Expr:
        token = self.peek()
        if token.kind == "num":
            self.advance()
            return Lit(Fraction(token.text))
        if token.kind == "name":
            self.advance()
            if self.peek().kind == "(":
                return self.call(token)
            if token.text not in self.variables:
                raise UnknownVariable(token.text, token.pos)
            return Var(token.text)
        if token.kind == "(":
            self.advance()
            expr = self.sum_()
            self.expect(")")
            return expr
        raise ExprSyntaxError("expected a number, name or parenthesis", token.pos)

    def call(self, name_token: _Token) -> Expr:
        name = name_token.text
        arity = _FUNCTIONS.get(name)
        if arity is None:
            raise ExprSyntaxError(f"unknown function {name!r}", name_token.pos)
        self.expect("(")
        args = [self.sum_()]
        while self.peek().kind == ",":
            self.advance()
            args.append(self.sum_())
        self.expect(")")
        lo, hi = arity
        if len(args) < lo or (hi is not None and len(args) > hi):
            raise ExprSyntaxError(
                f"{name} takes {'exactly' if hi == lo else 'at least'} {lo} argument(s)",
                name_token.pos,
            )
        return Call(name, tuple(args))


def parse(source: str, variables=()) -> Expr:
    """Parse source text; free names must come from `variables`."""
    return _Parser(_tokenize(source), variables).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM_PREC = 5


def _format_literal(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        k = max(twos, fives)
        mantissa = value.numerator * 10**k // value.denominator
        digits = str(abs(mantissa)).rjust(k + 1, "0")
        sign = "-" if mantissa < 0 else ""
        return f"{sign}{digits[:-k]}.{digits[-k:]}"
    return f"({value.numerator}/{value.denominator})"


def _render(expr: Expr, context: int) -> str:
    if isinstance(expr, Lit):
        return _format_literal(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Call):
        return f"{expr.func}({', '.join(_render(a, 0) for a in expr.args)})"
    if isinstance(expr, Neg):
        text = "-" + _render(expr.operand, _PREC["neg"])
        return f"({text})" if context > _PREC["neg"] else text
    prec = _PREC[expr.op]
    if expr.op == "^":
        left = _render(expr.left, prec + 1)
        right = _render(expr.right, prec)
    else:
        left = _render(expr.left, prec)
        right = _render(expr.right, prec + 1)
    text = f"{left}{expr.op}{right}"
    return f"({text})" if context > prec else text


def to_source(expr: Expr) -> str:
    """Render an AST back to parseable text."""
    return _render(expr, 0)


def evaluate(expr: Expr, env: dict, mode: Mode = Mode.EXACT) -> Scalar:
    """Evaluate with every free variable bound in env, entirely within the
    given mode. Deterministic and side-effect free."""
    if isinstance(expr, Lit):
        return Fraction(expr.value) if mode is Mode.EXACT else float(expr.value)
    if isinstance(expr, Var):
        try:
            value = env[expr.name]
        except KeyError:
            raise UnknownVariable(expr.name) from None
        return require_mode(value, mode, f"variable {expr.name}")
    if isinstance(expr, Neg):
        return -evaluate(expr.operand, env, mode)
    if isinstance(expr, Call):
        args = [evaluate(a, env, mode) for a in expr.args]
        if expr.func == "sqrt":
            return _sqrt_value(args[0], mode)
        if expr.func == "min":
            return min(args)
        if expr.func == "max":
            return max(args)
        raise ValueError(f"unknown function {expr.func!r}")
    left = evaluate(expr.left, env, mode)
    right = evaluate(expr.right, env, mode)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if expr.op == "/":
        if right == 0:
            raise DivisionByZero("division by zero")
        return left / right
    if expr.op == "^":
        try:
            return scalar_pow(left, right, mode)
        except DivisionByZero:
            raise
        except ZeroDivisionError:
            raise DivisionByZero("zero raised to a negative power") from None
    raise ValueError(f"unknown operator {expr.op!r}")


def _sqrt_value(value: Scalar, mode: Mode) -> Scalar:
    if mode is Mode.EXACT:
        return exact_sqrt(value)
    if value < 0:
        raise NegativeSqrt(f"sqrt of negative value {value}")
    return math.sqrt(value)


def compile_fn(source: str, variables, mode: Mode = Mode.EXACT):
    """Parse once and close over the AST: the returned callable binds its
    positional arguments to `variables` in order."""
    ast = parse(source, variables)
    names = tuple(variables)

    def fn(*args):
        if len(args) != len(names):
            raise TypeError(f"expected {len(names)} arguments, got {len(args)}")
        return evaluate(ast, dict(zip(names, args)), mode)

    return fn
