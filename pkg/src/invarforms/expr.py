"""Parser and canonical serializer for scalar coefficient expressions.

The grammar covers every coefficient string in the fixture DSL, the JSON
fixture encoding, and certificate files::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ['+'|'-'] atom ['^' nat]
    atom   := nat | 'i' | name | 'conj' '(' name ')' | '(' expr ')'

Division is only allowed by nonzero constants (the ring has no polynomial
division).  ``str(scalar)`` round-trips through :func:`parse_scalar`.
"""

from __future__ import annotations

import re

from .scalars import ParamRegistry, RegistryError, Scalar


class ExprError(ValueError):
    """Malformed coefficient expression."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^|\*|/|\+|-|\(|\)))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ExprError(f"unexpected character at {text[pos:]!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], reg: ParamRegistry):
        self.tokens = tokens
        self.pos = 0
        self.reg = reg

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if expected is not None and tok != expected:
            raise ExprError(f"expected {expected!r}, got {tok!r}")
        self.pos += 1
        return tok

    def parse_expr(self) -> Scalar:
        value = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> Scalar:
        value = self.parse_factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.parse_factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_const() or rhs.is_zero():
                    raise ExprError("division is only allowed by nonzero constants")
                value = value * Scalar.const(rhs.const_value().inverse(), value.reg)
        return value

    def parse_factor(self) -> Scalar:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.parse_atom()
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            if not exp_tok.isdigit():
                raise ExprError(f"exponent must be a natural number, got {exp_tok!r}")
            value = value ** int(exp_tok)
        return value if sign == 1 else -value

    def parse_atom(self) -> Scalar:
        tok = self.take()
        if tok.isdigit():
            return Scalar.const(int(tok), self.reg)
        if tok == "(":
            value = self.parse_expr()
            self.take(")")
            return value
        if tok == "i":
            return Scalar.i(self.reg)
        if tok == "conj":
            self.take("(")
            name = self.take()
            self.take(")")
            return Scalar.var(name, self.reg, conjugated=True)
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            if tok not in self.reg:
                raise RegistryError(f"undeclared name {tok!r} in expression")
            return Scalar.var(tok, self.reg)
        raise ExprError(f"unexpected token {tok!r}")


def parse_scalar(text: str, reg: ParamRegistry) -> Scalar:
    parser = _Parser(_tokenize(text), reg)
    value = parser.parse_expr()
    if parser.peek() is not None:
        raise ExprError(f"trailing input at {parser.tokens[parser.pos:]!r}")
    return value


def scalar_to_expr(s: Scalar) -> str:
    """Canonical expression string; parses back to an equal scalar."""
    return str(s)
