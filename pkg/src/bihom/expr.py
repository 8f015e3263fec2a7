"""Tokenizer and expression parser shared by scalar literals and the DSL.

Expressions evaluate to scalars (Fraction or Scalar) or to ``Vec`` values
when identifiers resolve to basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DSLSyntaxError, UnknownIdentifier
from .scalar import ParameterContext, Scalar, div, is_zero


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, IDENT, STR, OP, EOL
    text: str
    line: int
    col: int
    adjacent: bool  # no whitespace before this token


_OPS = set("+-*/^()[],=.")


def tokenize(text: str, line: int = 1):
    tokens = []
    i = 0
    n = len(text)
    prev_end = -1
    while i < n:
        ch = text[i]
        if ch in " \t\r":
            i += 1
            continue
        if ch == "#":
            break
        start = i
        if ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            kind = "NUM"
        elif ch.isalpha():
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            kind = "IDENT"
        elif ch == '"':
            i += 1
            while i < n and text[i] != '"':
                i += 1
            if i >= n:
                raise DSLSyntaxError(line, start + 1, "closing quote")
            i += 1
            kind = "STR"
        elif ch in _OPS:
            i += 1
            kind = "OP"
        else:
            raise DSLSyntaxError(line, start + 1, "a token", ch)
        tokens.append(Token(kind, text[start:i], line, start + 1, start == prev_end))
        prev_end = i
    tokens.append(Token("EOL", "", line, n + 1, False))
    return tokens


class Vec:
    """Sparse coordinate vector produced while evaluating DSL expressions."""

    __slots__ = ("dim", "coords", "space")

    def __init__(self, dim, coords, space=None):
        self.dim = dim
        self.coords = {k: v for k, v in coords.items() if not is_zero(v)}
        self.space = space

    def dense(self):
        return [self.coords.get(i, Fraction(0)) for i in range(self.dim)]

    def _same(self, other):
        if self.dim != other.dim or self.space != other.space:
            raise TypeError("vectors from different spaces")

    def __add__(self, other):
        if isinstance(other, Vec):
            self._same(other)
            out = dict(self.coords)
            for k, v in other.coords.items():
                out[k] = out.get(k, Fraction(0)) + v
            return Vec(self.dim, out, self.space)
        if is_zero(other):
            return self
        raise TypeError("cannot add a scalar and a vector")

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Vec(self.dim, {k: -v for k, v in self.coords.items()}, self.space)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Vec):
            raise TypeError("cannot multiply two vectors in an expression")
        return Vec(self.dim, {k: v * other for k, v in self.coords.items()}, self.space)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Vec):
            raise TypeError("cannot divide by a vector")
        return Vec(self.dim, {k: div(v, other) for k, v in self.coords.items()}, self.space)


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, k=0):
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def next(self):
        t = self.peek()
        self.pos += 1
        return t

    def at(self, kind, text=None):
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def accept(self, kind, text=None):
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind, text=None, what=None):
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            raise DSLSyntaxError(t.line, t.col, what or (repr(text) if text else kind), t.text or "end of line")
        return self.next()


def _op_error(tok, exc):
    raise DSLSyntaxError(tok.line, tok.col, "a well-typed expression", str(exc)) from None


class ExprParser:
    """Recursive-descent parser; ``resolve(token)`` maps identifiers to values."""

    def __init__(self, stream: TokenStream, resolve):
        self.s = stream
        self.resolve = resolve

    def expr(self):
        val = self.term()
        while True:
            t = self.s.peek()
            if t.kind == "OP" and t.text in "+-":
                self.s.next()
                rhs = self.term()
                try:
                    val = val + rhs if t.text == "+" else val - rhs
                except TypeError as exc:
                    _op_error(t, exc)
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            t = self.s.peek()
            if t.kind == "OP" and t.text in "*/":
                self.s.next()
                rhs = self.unary()
                try:
                    if t.text == "*":
                        val = val * rhs
                    elif isinstance(rhs, Vec):
                        raise TypeError("cannot divide by a vector")
                    elif isinstance(val, Vec):
                        val = val / rhs
                    else:
                        val = div(val, rhs)
                except TypeError as exc:
                    _op_error(t, exc)
                except ZeroDivisionError:
                    raise DSLSyntaxError(t.line, t.col, "a nonzero divisor", "0") from None
            else:
                return val

    def unary(self):
        t = self.s.peek()
        if t.kind == "OP" and t.text in "+-":
            self.s.next()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        t = self.s.peek()
        if t.kind == "OP" and t.text == "^":
            self.s.next()
            sign = -1 if self.s.accept("OP", "-") else 1
            k = int(self.s.expect("NUM", what="integer exponent").text) * sign
            if isinstance(base, Vec):
                _op_error(t, TypeError("cannot raise a vector to a power"))
            if k < 0:
                if is_zero(base):
                    raise DSLSyntaxError(t.line, t.col, "a nonzero base for a negative exponent")
                base = div(Fraction(1), base) ** (-k)
            else:
                base = base ** k if isinstance(base, Scalar) else Fraction(base) ** k
        return base

    def atom(self):
        t = self.s.next()
        if t.kind == "NUM":
            val = Fraction(int(t.text))
            nxt = self.s.peek()
            if nxt.adjacent and (nxt.kind == "IDENT" or (nxt.kind == "OP" and nxt.text == "(")):
                rhs = self.power()
                try:
                    return val * rhs
                except TypeError as exc:
                    _op_error(nxt, exc)
            return val
        if t.kind == "IDENT":
            return self.resolve(t)
        if t.kind == "OP" and t.text == "(":
            v = self.expr()
            self.s.expect("OP", ")")
            return v
        raise DSLSyntaxError(t.line, t.col, "a number, identifier or '('", t.text or "end of line")


def param_resolver(ctx: ParameterContext | None):
    def resolve(tok):
        if ctx is not None and tok.text in ctx.names:
            return ctx.variable(tok.text)
        raise UnknownIdentifier(f"unknown parameter {tok.text!r}", tok.line, tok.col)

    return resolve


def evaluate_scalar_text(text: str, ctx: ParameterContext | None = None):
    s = TokenStream(tokenize(text))
    val = ExprParser(s, param_resolver(ctx)).expr()
    s.expect("EOL", what="end of expression")
    return val
