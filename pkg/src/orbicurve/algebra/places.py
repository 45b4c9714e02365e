"""Places of the projective line over Q, exact divisors, and rational maps."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

from ..errors import InputError
from .factor import factor, is_irreducible, poly_sort_key
from .parse import parse_expression, parse_poly
from .polynomial import ONE, ZERO, Polynomial, Z, homogeneous_substitute, poly_gcd

Scalar = Union[int, Fraction]


class Place:
    """A closed point of P^1 over Q: a monic irreducible polynomial, or infinity.

    All complex roots of one irreducible factor form a single place; their local
    multiplicities under any rational map agree, so exact arithmetic never needs the
    individual (possibly irrational) roots.
    """

    __slots__ = ("poly",)

    def __init__(self, poly: Optional[Polynomial], *, check: bool = True):
        if poly is not None:
            if poly.degree < 1:
                raise InputError("a finite place needs a polynomial of degree >= 1")
            poly = poly.monic()
            if check and not is_irreducible(poly):
                raise InputError(f"{poly} is not irreducible over Q")
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("Place is immutable")

    @classmethod
    def at(cls, value: Optional[Scalar]) -> "Place":
        """The rational point ``value`` (``None`` means infinity)."""
        if value is None:
            return INFINITY
        return cls(Polynomial.linear(Fraction(value)), check=False)

    @classmethod
    def parse(cls, text: str, var: str = "z") -> "Place":
        t = text.strip()
        if t.lower() in ("inf", "infinity", "∞"):
            return INFINITY
        return cls(parse_poly(t, var))

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def rational_value(self) -> Optional[Fraction]:
        """The coordinate of a degree-one finite place (``None`` for infinity)."""
        if self.poly is None:
            return None
        if self.poly.degree != 1:
            raise ValueError(f"place {self} is not a rational point")
        return -self.poly[0]

    def sort_key(self) -> tuple:
        return (1,) if self.poly is None else (0,) + poly_sort_key(self.poly)

    def __eq__(self, other) -> bool:
        return isinstance(other, Place) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(("place", self.poly))

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def to_text(self, var: str = "z") -> str:
        return "inf" if self.poly is None else self.poly.to_text(var)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Place({self.to_text()!r})"


INFINITY = Place(None)


class Divisor:
    """Finite formal sum of places with exact rational coefficients (zeros dropped)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for place, coeff in items:
            c = Fraction(coeff)
            acc[place] = acc.get(place, Fraction(0)) + c
        object.__setattr__(self, "_terms", {p: c for p, c in acc.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    def items(self) -> list[tuple[object, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def __iter__(self) -> Iterator:
        return iter(p for p, _ in self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, place) -> Fraction:
        return self._terms.get(place, Fraction(0))

    coefficient = __getitem__

    def support(self) -> list:
        return [p for p, _ in self.items()]

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Divisor":
        return Divisor({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def scale(self, c: Scalar) -> "Divisor":
        return Divisor({p: c * v for p, v in self._terms.items()})

    def __rmul__(self, c: Scalar) -> "Divisor":
        return self.scale(c)

    def degree(self) -> Fraction:
        return sum((c * p.degree for p, c in self._terms.items()), Fraction(0))

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def positive_part(self) -> "Divisor":
        return Divisor({p: c for p, c in self._terms.items() if c > 0})

    def negative_part(self) -> "Divisor":
        """Return the effective divisor ``max(-D, 0)``."""
        return Divisor({p: -c for p, c in self._terms.items() if c < 0})

    def restrict(self, places: Iterable) -> "Divisor":
        keep = set(places)
        return Divisor({p: c for p, c in self._terms.items() if p in keep})

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for p, c in self.items():
            mag = abs(c)
            term = f"[{p}]" if mag == 1 else f"{mag}*[{p}]"
            if not out:
                out = term if c > 0 else f"-{term}"
            else:
                out += f" + {term}" if c > 0 else f" - {term}"
        return out

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Divisor({self.to_text()})"


class RationalMap:
    """A map P^1 -> P^1 given by a coprime pair ``num/den`` over Q.

    Normalization: ``den`` is monic and ``gcd(num, den) = 1``; the zero map is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Polynomial, Scalar], den: Union[Polynomial, Scalar] = ONE):
        num = num if isinstance(num, Polynomial) else Polynomial.constant(num)
        den = den if isinstance(den, Polynomial) else Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational map with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.leading
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMap is immutable")

    @classmethod
    def parse(cls, text: str, var: str = "z") -> "RationalMap":
        return parse_expression(text, {var: IDENTITY}, cls, allow_division=True)

    @classmethod
    def polynomial(cls, p: Polynomial) -> "RationalMap":
        return cls(p, ONE)

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    def is_constant(self) -> bool:
        return self.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("map is not constant")
        return self.num[0]

    def value_at_infinity(self) -> Optional[Fraction]:
        """``f(inf)`` as an exact rational, or ``None`` when it is infinity."""
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            return None
        if dn < dd:
            return Fraction(0)
        return self.num.leading / self.den.leading

    def wronskian(self) -> Polynomial:
        """``num' * den - num * den'``, the numerator of ``f'`` over ``den**2``."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            if isinstance(x, (int, Fraction)):
                return None
            return complex("inf")
        return self.num(x) / d

    def compose(self, inner: "RationalMap") -> "RationalMap":
        """Return ``self(inner(z))``."""
        n = self.degree
        a, b = inner.num, inner.den
        num = _homogenize(self.num, n, a, b)
        den = _homogenize(self.den, n, a, b)
        return RationalMap(num, den)

    # field arithmetic (used by the parser)
    @staticmethod
    def _coerce(other) -> "RationalMap":
        if isinstance(other, RationalMap):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalMap(other)
        if isinstance(other, Polynomial):
            return RationalMap(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalMap(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalMap(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RationalMap(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalMap(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative int")
        return RationalMap(self.num ** e, self.den ** e)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self._coerce(other)
        return isinstance(other, RationalMap) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def to_text(self, var: str = "z") -> str:
        if self.den == ONE:
            return self.num.to_text(var)
        return f"({self.num.to_text(var)})/({self.den.to_text(var)})"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"RationalMap({self.to_text()!r})"


def _homogenize(p: Polynomial, n: int, a: Polynomial, b: Polynomial) -> Polynomial:
    """``sum_i p_i a**i b**(n-i)``: numerator of p(a/b) over ``b**n`` for ``n >= deg p``."""
    acc = ZERO
    apow = ONE
    bpows = [ONE]
    for _ in range(n):
        bpows.append(bpows[-1] * b)
    for i in range(n + 1):
        if p[i]:
            acc = acc + (apow * bpows[n - i]).scale(p[i])
        apow = apow * a
    return acc


IDENTITY = RationalMap(Z)


def order_at_infinity(p: Polynomial, formal_degree: int) -> int:
    """Order of vanishing at ``w = 0`` of ``w**formal_degree * p(1/w)``."""
    return p.reversed_to(formal_degree).low_order()


def local_equation_numerator(f: RationalMap, q: Place) -> tuple[Polynomial, int]:
    """Numerator ``H`` (in z) of the local equation of ``q`` pulled back by ``f``.

    Returns ``(H, formal_degree)`` where the pulled-back divisor is the divisor of the
    binary form of that formal degree, i.e. its affine zeros are the roots of ``H``
    and the multiplicity at infinity is read off after ``z -> 1/w``.
    """
    n = f.degree
    if q.is_infinity:
        return f.den, n
    return homogeneous_substitute(q.poly, f.num, f.den), n * q.degree


def pullback_place(f: RationalMap, q: Place) -> Divisor:
    """Total transform ``f^*[q]`` with exact multiplicities."""
    if f.is_constant():
        raise InputError("pullback along a constant map")
    h, formal = local_equation_numerator(f, q)
    if h.is_zero():
        raise InputError(f"the image of {f} is contained in the place {q}")
    terms = {Place(p, check=False): e for p, e in factor(h)}
    at_inf = order_at_infinity(h, formal)
    if at_inf:
        terms[INFINITY] = at_inf
    return Divisor(terms)


def pullback_divisor(f: RationalMap, d: Divisor) -> Divisor:
    """Linear extension of :func:`pullback_place` to rational divisors."""
    out = Divisor()
    for q, c in d.items():
        out = out + pullback_place(f, q).scale(c)
    return out
