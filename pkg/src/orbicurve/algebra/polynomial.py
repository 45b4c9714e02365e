"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence, Union

from ..errors import InputError

Number = Union[int, Fraction]

#: degree reported for the zero polynomial
ZERO_DEGREE = -1


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {c!r} as an exact coefficient")


class Polynomial:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``z**i``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # construction helpers
    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "Polynomial":
        return cls([0] * degree + [c])

    @classmethod
    def linear(cls, root: Number) -> "Polynomial":
        """The monic polynomial ``z - root``."""
        return cls([-_frac(root), 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "Polynomial":
        return reduce(lambda acc, r: acc * cls.linear(r), roots, ONE)

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a non-negative int")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Number) -> "Polynomial":
        c = _frac(c)
        return Polynomial(c * a for a in self.coeffs)

    def __divmod__(self, other: "Polynomial"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        if len(rem) - 1 < dq:
            return ZERO, self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # calculus and evaluation
    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Return ``self(inner(z))``."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def reversed_to(self, formal_degree: int) -> "Polynomial":
        """Coefficients of ``w**formal_degree * self(1/w)``."""
        if self.degree > formal_degree:
            raise ValueError("formal degree below actual degree")
        padded = list(self.coeffs) + [Fraction(0)] * (formal_degree + 1 - len(self.coeffs))
        return Polynomial(reversed(padded))

    def order_at(self, factor: "Polynomial") -> int:
        """Largest ``k`` with ``factor**k`` dividing ``self`` (self nonzero)."""
        if self.is_zero():
            raise ValueError("order of the zero polynomial is infinite")
        k, p = 0, self
        while True:
            q, r = divmod(p, factor)
            if r:
                return k
            k, p = k + 1, q

    def low_order(self) -> int:
        """Index of the lowest nonzero coefficient (order of vanishing at 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("order of the zero polynomial is infinite")

    def to_integer_primitive(self) -> tuple[Fraction, list[int]]:
        """Write self = c * P with P a primitive integer polynomial, lead(P) > 0."""
        if self.is_zero():
            return Fraction(0), []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(_gcd_int, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    # printing
    def to_text(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


ZERO = Polynomial()
ONE = Polynomial([1])
Z = Polynomial([0, 1])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1, s0, s1, t0, t1 = a, b, ONE, ZERO, ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.leading
    return r0.scale(1 / lc), s0.scale(1 / lc), t0.scale(1 / lc)


def inverse_mod(a: Polynomial, modulus: Polynomial) -> Polynomial:
    g, s, _ = poly_xgcd(a % modulus, modulus)
    if g != ONE:
        raise ZeroDivisionError(f"{a} is not invertible modulo {modulus}")
    return s % modulus


def homogeneous_substitute(h: Polynomial, num: Polynomial, den: Polynomial) -> Polynomial:
    """Return ``sum_i h_i * num**i * den**(k-i)`` with ``k = deg h``.

    This is the numerator of ``h(num/den)`` written over ``den**k``.
    """
    k = h.degree
    pows_num = [ONE]
    for _ in range(k):
        pows_num.append(pows_num[-1] * num)
    acc = ZERO
    den_pow = ONE
    for i in range(k, -1, -1):
        acc = acc + (pows_num[i] * den_pow).scale(h[i])
        den_pow = den_pow * den
    return acc


def as_polynomial(obj: Union[Polynomial, Sequence[Number], Number]) -> Polynomial:
    if isinstance(obj, Polynomial):
        return obj
    if isinstance(obj, (int, Fraction)):
        return Polynomial.constant(obj)
    try:
        return Polynomial(obj)
    except TypeError as exc:
        raise InputError(f"cannot interpret {obj!r} as a polynomial") from exc
