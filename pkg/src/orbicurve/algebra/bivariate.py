"""One-parameter families of rational maps: polynomials in ``z`` and ``t`` over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .parse import parse_expression
from .places import RationalMap
from .polynomial import Polynomial


class BiPoly:
    """Sparse polynomial in ``(z, t)``; keys are exponent pairs ``(i, j)`` for ``z^i t^j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        object.__setattr__(self, "terms", {k: Fraction(v) for k, v in items if v != 0})

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def constant(cls, c: Fraction) -> "BiPoly":
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BiPoly") -> "BiPoly":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return BiPoly(acc)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        acc: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                acc[key] = acc.get(key, Fraction(0)) + a * b
        return BiPoly(acc)

    def __pow__(self, e: int) -> "BiPoly":
        out = BiPoly.constant(Fraction(1))
        for _ in range(e):
            out = out * self
        return out

    def t_order(self) -> int:
        """Largest power of ``t`` dividing the polynomial."""
        return min(j for _, j in self.terms)

    def shift_t(self, k: int) -> "BiPoly":
        """Divide by ``t**k`` (caller guarantees divisibility)."""
        return BiPoly({(i, j - k): v for (i, j), v in self.terms.items()})

    def at(self, t: Fraction) -> Polynomial:
        size = 1 + max((i for i, _ in self.terms), default=0)
        coeffs = [Fraction(0)] * size
        for (i, j), v in self.terms.items():
            coeffs[i] += v * Fraction(t) ** j
        return Polynomial(coeffs)


class _FamilyExpr:
    """Formal quotient of two :class:`BiPoly` (no cancellation), for parsing."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly):
        self.num, self.den = num, den

    @classmethod
    def const(cls, c: Fraction) -> "_FamilyExpr":
        return cls(BiPoly.constant(c), BiPoly.constant(Fraction(1)))

    def __add__(self, o):
        return _FamilyExpr(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _FamilyExpr(self.num * o.den - o.num * self.den, self.den * o.den)

    def __neg__(self):
        return _FamilyExpr(-self.num, self.den)

    def __mul__(self, o):
        return _FamilyExpr(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if o.num.is_zero():
            raise ZeroDivisionError
        return _FamilyExpr(self.num * o.den, self.den * o.num)

    def __pow__(self, e: int):
        return _FamilyExpr(self.num ** e, self.den ** e)


class MapFamily:
    """A family ``f_t(z) = A(z, t) / B(z, t)`` of rational maps."""

    __slots__ = ("num", "den", "text")

    def __init__(self, num: BiPoly, den: BiPoly, text: str = ""):
        if den.is_zero():
            raise ZeroDivisionError("family with zero denominator")
        self.num, self.den, self.text = num, den, text

    @classmethod
    def parse(cls, text: str) -> "MapFamily":
        variables = {
            "z": _FamilyExpr(BiPoly({(1, 0): 1}), BiPoly.constant(Fraction(1))),
            "t": _FamilyExpr(BiPoly({(0, 1): 1}), BiPoly.constant(Fraction(1))),
        }
        expr = parse_expression(text, variables, _FamilyExpr.const, allow_division=True)
        return cls(expr.num, expr.den, text)

    def at(self, t: Fraction) -> RationalMap:
        """The member ``f_t``; raises ZeroDivisionError if the denominator vanishes."""
        return RationalMap(self.num.at(t), self.den.at(t))

    def limit(self) -> RationalMap:
        """``f_0`` after clearing the common power of ``t`` from numerator and denominator."""
        if self.num.is_zero():
            return RationalMap(0)
        k = min(self.num.t_order(), self.den.t_order())
        return RationalMap(self.num.shift_t(k).at(Fraction(0)), self.den.shift_t(k).at(Fraction(0)))
