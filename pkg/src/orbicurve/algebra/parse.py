"""Recursive-descent parser for polynomial and rational-function texts.

Grammar (whitespace insignificant)::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*       # '/' only in rational-function mode
    factor   := base ('^' uint)?
    base     := rational | VAR | '(' expr ')'
    rational := uint ('/' uint)?

The leading unary minus is a convenience on top of the strict polynomial grammar;
printed polynomials use it, so ``parse(print(p)) == p``. A literal ``a/b`` is always
read as one rational number, also in rational-function mode, so ``3/4^2 == 9/16``
in both modes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Mapping

from ..errors import ParseError
from .polynomial import Polynomial, Z

MAX_EXPONENT = 4096


class _Parser:
    def __init__(self, text: str, variables: Mapping[str, Any],
                 make_const: Callable[[Fraction], Any], allow_division: bool):
        self.text = text
        self.pos = 0
        self.variables = variables
        self.make_const = make_const
        self.allow_division = allow_division

    # lexing helpers
    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _uint(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an unsigned integer", start)
        return int(self.text[start:self.pos])

    def parse(self):
        if not self.text.strip():
            raise ParseError("empty expression", 0)
        value = self._expr()
        if self._peek():
            raise ParseError(f"unexpected character {self._peek()!r}", self.pos)
        return value

    def _expr(self):
        negate = False
        if self._peek() == "-":
            self.pos += 1
            negate = True
        value = self._term()
        if negate:
            value = -value
        while self._peek() in ("+", "-"):
            op = self._peek()
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self):
        value = self._factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                value = value * self._factor()
            elif ch == "/":
                if not self.allow_division:
                    raise ParseError("division is only allowed inside a rational literal", self.pos)
                at = self.pos
                self.pos += 1
                rhs = self._factor()
                try:
                    value = value / rhs
                except ZeroDivisionError:
                    raise ParseError("division by zero", at) from None
            else:
                return value

    def _factor(self):
        value = self._base()
        if self._peek() == "^":
            self.pos += 1
            at = self.pos
            ch = self._peek()
            if ch == "-" or ch == "(" or ch.isalpha():
                raise ParseError("non-integer exponent", self.pos)
            exp = self._uint()
            if self._peek() == ".":
                raise ParseError("non-integer exponent", self.pos)
            if exp > MAX_EXPONENT:
                raise ParseError(f"exponent overflow (limit {MAX_EXPONENT})", at)
            value = value ** exp
        return value

    def _base(self):
        ch = self._peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return value
        if ch.isdigit():
            num = self._uint()
            save = self.pos
            if self._peek() == "/":
                self.pos += 1
                if self._peek().isdigit():
                    den = self._uint()
                    if den == 0:
                        raise ParseError("zero denominator in rational literal", save)
                    return self.make_const(Fraction(num, den))
                if not self.allow_division:
                    raise ParseError("expected an unsigned integer denominator", self.pos)
                self.pos = save
            if self._peek() == ".":
                raise ParseError("decimal literals are not supported; use a/b", self.pos)
            return self.make_const(Fraction(num))
        if ch.isalpha():
            end = start
            while end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                end += 1
            name = self.text[start:end]
            if name not in self.variables:
                raise ParseError(f"unknown symbol {name!r}", start)
            self.pos = end
            return self.variables[name]
        if not ch:
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected character {ch!r}", self.pos)


def parse_expression(text: str, variables: Mapping[str, Any],
                     make_const: Callable[[Fraction], Any], allow_division: bool = False):
    """Parse ``text`` building values with the ring operations of the variables."""
    return _Parser(text, variables, make_const, allow_division).parse()


def parse_poly(text: str, var: str = "z") -> Polynomial:
    """Parse an exact univariate polynomial in ``var``."""
    return parse_expression(text, {var: Z}, Polynomial.constant)
