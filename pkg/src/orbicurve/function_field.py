"""Valuations and fibers of functions on elliptic curves ``y^2 = h(x)``.

A function ``a(x) + b(x) y`` is handled in the form ``(P + Q y) / G`` with
polynomials ``P, Q, G``. Valuations never need power series:

* at infinity ``v(x) = -2`` and ``v(y) = -3`` have different parity, so
  ``v(P + Q y) = min(-2 deg P, -2 deg Q - 3)``;
* at a point with ``y = 0`` the local parameter is ``y`` and ``v(x - x0) = 2``, so
  again the two summands have valuations of different parity;
* elsewhere ``x - x0`` is a local parameter and the norm ``P^2 - Q^2 h`` splits the
  order of vanishing between the two points ``(x0, +-y0)``.

Points are closed points over Q (Galois orbits), which keeps every computation in
Q[x] modulo an irreducible polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .algebra.factor import factor, poly_sort_key
from .algebra.parse import parse_poly
from .algebra.places import Divisor, RationalMap
from .algebra.polynomial import ONE, ZERO, Polynomial, inverse_mod, poly_gcd
from .errors import InputError

Scalar = Union[int, Fraction]


class EllipticCurve:
    """Smooth plane cubic ``y^2 = h(x)`` with ``h`` square-free of degree 3."""

    __slots__ = ("h",)

    def __init__(self, h: Union[Polynomial, str]):
        if isinstance(h, str):
            h = parse_poly(h, "x")
        if h.degree != 3:
            raise InputError(f"h must be a cubic, got degree {h.degree}")
        if not poly_gcd(h, h.derivative()).is_constant():
            raise InputError(f"h = {h.to_text('x')} has a repeated root (singular curve)")
        object.__setattr__(self, "h", h)

    def __setattr__(self, name, value):
        raise AttributeError("EllipticCurve is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, EllipticCurve) and self.h == other.h

    def __hash__(self) -> int:
        return hash(("E", self.h))

    def contains(self, x: Scalar, y: Scalar) -> bool:
        return Fraction(y) ** 2 == self.h(Fraction(x))

    def __repr__(self) -> str:
        return f"EllipticCurve('y^2 = {self.h.to_text('x')}')"


class QuadraticSurd:
    """Exact number ``a + b*sqrt(d)`` with ``d`` a square-free integer other than 0, 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Scalar, b: Scalar, d: int):
        self.a, self.b, self.d = Fraction(a), Fraction(b), d

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return (isinstance(other, QuadraticSurd) and self.a == other.a
                and self.b == other.b and (self.b == 0 or self.d == other.d))

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d if self.b else 0))

    def __complex__(self) -> complex:
        root = np.sqrt(complex(self.d))
        return complex(float(self.a) + float(self.b) * root)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.d})"
        tail = rad if self.b == 1 else (f"-{rad}" if self.b == -1 else f"{self.b}*{rad}")
        if self.a == 0:
            return tail
        return f"{self.a} + {tail}" if not tail.startswith("-") else f"{self.a} - {tail[1:]}"

    __repr__ = __str__


def _squarefree_split(q: Fraction) -> tuple[Fraction, int]:
    """Write ``q = s^2 * d`` with ``d`` a square-free integer; returns ``(s, d)``."""
    if q == 0:
        return Fraction(0), 1
    num = q.numerator * q.denominator
    sign = -1 if num < 0 else 1
    num = abs(num)
    d, s, p = 1, 1, 2
    while p * p <= num:
        while num % (p * p) == 0:
            num //= p * p
            s *= p
        if num % p == 0:
            num //= p
            d *= p
        p += 1
    d *= num
    return Fraction(s, q.denominator), sign * d


def sqrt_exact(q: Fraction) -> Union[Fraction, QuadraticSurd]:
    """Principal square root of a rational as a rational or a quadratic surd."""
    s, d = _squarefree_split(Fraction(q))
    if d == 1:
        return s
    return QuadraticSurd(0, s, d)


def _sqrt_in_quadratic(a: Fraction, b: Fraction, d: int) -> Optional[QuadraticSurd]:
    """A square root of ``a + b sqrt(d)`` inside Q(sqrt(d)), if one exists."""
    if b == 0:
        s, dd = _squarefree_split(a)
        if dd == 1:
            return QuadraticSurd(s, 0, d)
        if dd == d:
            return QuadraticSurd(0, s, d)
        s2, dd2 = _squarefree_split(a / d)
        if dd2 == 1:
            return QuadraticSurd(0, s2, d)
        return None
    disc = a * a - b * b * d
    s, dd = _squarefree_split(disc)
    if dd != 1:
        return None
    for u2 in ((a + s) / 2, (a - s) / 2):
        su, du = _squarefree_split(u2)
        if du == 1 and su != 0:
            return QuadraticSurd(su, b / (2 * su), d)
    return None


class EllipticPoint:
    """Closed point of an elliptic curve over Q.

    ``kind`` is one of

    * ``"infinity"`` -- the point at infinity;
    * ``"fiber"`` -- every point whose x-coordinate is a root of ``pi``; when
      ``pi`` divides ``h`` these are the points with ``y = 0``, otherwise the fiber
      stands for both points ``(x0, +-y0)`` carrying equal multiplicity;
    * ``"branch"`` -- the points ``(x0, r(x0))`` for roots ``x0`` of ``pi``.
    """

    __slots__ = ("kind", "pi", "r", "degree", "curve")

    def __init__(self, kind: str, curve: EllipticCurve, pi: Optional[Polynomial] = None,
                 r: Optional[Polynomial] = None):
        self.kind = kind
        self.curve = curve
        self.pi = pi.monic() if pi is not None else None
        self.r = r
        if kind == "infinity":
            self.degree = 1
        elif kind == "fiber":
            self.degree = self.pi.degree if self.is_two_torsion else 2 * self.pi.degree
        elif kind == "branch":
            if self.is_two_torsion:
                raise InputError("branch points need y != 0; use a fiber point")
            self.r = r % self.pi
            if (self.r * self.r - curve.h) % self.pi:
                raise InputError("the branch polynomial does not square to h modulo pi")
            self.degree = self.pi.degree
        else:
            raise ValueError(kind)

    @classmethod
    def at_infinity(cls, curve: EllipticCurve) -> "EllipticPoint":
        return cls("infinity", curve)

    @classmethod
    def from_coordinates(cls, curve: EllipticCurve, x: Scalar, y: Scalar) -> "EllipticPoint":
        x, y = Fraction(x), Fraction(y)
        if not curve.contains(x, y):
            raise InputError(f"({x}, {y}) is not on {curve}")
        pi = Polynomial.linear(x)
        if y == 0:
            return cls("fiber", curve, pi)
        return cls("branch", curve, pi, Polynomial.constant(y))

    @property
    def is_two_torsion(self) -> bool:
        return self.pi is not None and not (self.curve.h % self.pi)

    def conjugate(self) -> "EllipticPoint":
        if self.kind != "branch":
            return self
        return EllipticPoint("branch", self.curve, self.pi, -self.r)

    def _key(self):
        return (self.kind, self.pi, self.r)

    def __eq__(self, other) -> bool:
        return isinstance(other, EllipticPoint) and self.curve == other.curve and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def sort_key(self) -> tuple:
        if self.kind == "infinity":
            return (1,)
        rk = poly_sort_key(self.r) if self.r is not None else ()
        return (0,) + poly_sort_key(self.pi) + (self.kind, rk)

    def coordinates(self) -> list[tuple]:
        """Exact coordinates of the geometric points (at most quadratic surds)."""
        if self.kind == "infinity":
            return []
        h = self.curve.h
        if self.pi.degree == 1:
            x0 = -self.pi[0]
            if self.is_two_torsion:
                return [(x0, Fraction(0))]
            if self.kind == "branch":
                return [(x0, self.r[0])]
            y0 = sqrt_exact(h(x0))
            if isinstance(y0, Fraction):
                return [(x0, y0), (x0, -y0)]
            return [(x0, y0), (x0, QuadraticSurd(0, -y0.b, y0.d))]
        if self.pi.degree == 2:
            b, c = self.pi[1], self.pi[0]
            s, d = _squarefree_split(b * b / 4 - c)
            roots = [(QuadraticSurd(-b / 2, sign * s, d)) for sign in (1, -1)]
            out = []
            for xr in roots:
                if self.is_two_torsion:
                    out.append((xr, Fraction(0)))
                elif self.kind == "branch":
                    out.append((xr, _eval_quadratic(self.r, xr)))
                else:
                    hv = _eval_quadratic(h, xr)
                    yr = _sqrt_in_quadratic(hv.a, hv.b, d)
                    if yr is None:
                        raise InputError(f"coordinates of {self._describe()} need a degree-4 field")
                    out.extend([(xr, yr), (xr, QuadraticSurd(-yr.a, -yr.b, d))])
            return out
        raise InputError(f"coordinates of {self._describe()} need a field of degree "
                         f"{self.pi.degree} or more")

    def approximate(self) -> list[tuple[complex, complex]]:
        """Floating-point coordinates of every geometric point in the cluster."""
        if self.kind == "infinity":
            return []
        xs = np.roots([float(c) for c in reversed(self.pi.coeffs)])
        out = []
        for x0 in xs:
            if self.is_two_torsion:
                out.append((complex(x0), 0j))
            elif self.kind == "branch":
                out.append((complex(x0), complex(self.r(complex(x0)))))
            else:
                y0 = np.sqrt(complex(self.curve.h(complex(x0))))
                out.extend([(complex(x0), complex(y0)), (complex(x0), -complex(y0))])
        return out

    def _describe(self) -> str:
        if self.kind == "infinity":
            return "inf"
        tag = f"y = {self.r.to_text('x')}" if self.kind == "branch" else "all y"
        return f"{{{self.pi.to_text('x')} = 0, {tag}}}"

    def to_text(self) -> str:
        """Exact coordinates when they fit in a quadratic field, else a symbolic cluster."""
        if self.kind == "infinity":
            return "inf"
        try:
            return "; ".join(f"({x}, {y})" for x, y in self.coordinates())
        except InputError:
            return self._describe()

    __str__ = to_text

    def __repr__(self) -> str:
        return f"EllipticPoint({self.to_text()})"


def _eval_quadratic(p: Polynomial, x: QuadraticSurd) -> QuadraticSurd:
    a, b = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        a, b = a * x.a + b * x.b * x.d + c, a * x.b + b * x.a
    return QuadraticSurd(a, b, x.d)


@dataclass(frozen=True)
class EllipticFunction:
    """The function ``a(x) + b(x) * y`` with rational functions ``a, b`` in x."""

    a: RationalMap
    b: RationalMap = RationalMap(ZERO)

    @classmethod
    def parse(cls, a: str, b: str = "0") -> "EllipticFunction":
        return cls(RationalMap.parse(a, "x"), RationalMap.parse(b, "x"))

    @classmethod
    def x(cls) -> "EllipticFunction":
        return cls(RationalMap(Polynomial([0, 1])))

    @classmethod
    def y(cls) -> "EllipticFunction":
        return cls(RationalMap(ZERO), RationalMap(ONE))

    def is_zero(self) -> bool:
        return self.a.num.is_zero() and self.b.num.is_zero()

    def minus(self, c: Scalar) -> "EllipticFunction":
        return EllipticFunction(self.a - Fraction(c), self.b)

    def times(self, other: "EllipticFunction", curve: EllipticCurve) -> "EllipticFunction":
        h = RationalMap(curve.h)
        return EllipticFunction(self.a * other.a + self.b * other.b * h,
                                self.a * other.b + self.b * other.a)

    def parts(self) -> tuple[Polynomial, Polynomial, Polynomial]:
        """Polynomials ``(P, Q, G)`` with ``self = (P + Q y) / G``."""
        a, b = self.a, self.b
        return a.num * b.den, a.den * b.num, a.den * b.den

    def to_text(self) -> str:
        if self.b.num.is_zero():
            return self.a.to_text("x")
        bt = self.b.to_text("x")
        yb = "y" if bt == "1" else f"({bt})*y"
        if self.a.num.is_zero():
            return yb
        return f"{self.a.to_text('x')} + {yb}"


def _ord(p: Polynomial, pi: Polynomial) -> Optional[int]:
    """Order of ``pi`` in ``p``; ``None`` stands for +infinity (p = 0)."""
    return None if p.is_zero() else p.order_at(pi)


def _min_opt(*vals: Optional[int]) -> int:
    finite = [v for v in vals if v is not None]
    if not finite:
        raise InputError("valuation of the zero function")
    return min(finite)


def _numerator_valuation(curve: EllipticCurve, P: Polynomial, Q: Polynomial,
                         pt: EllipticPoint) -> int:
    """Order of ``P + Q y`` at a closed point (equal at all its geometric points)."""
    if pt.kind == "infinity":
        return _min_opt(None if P.is_zero() else -2 * P.degree,
                        None if Q.is_zero() else -2 * Q.degree - 3)
    pi = pt.pi
    if pt.is_two_torsion:
        op, oq = _ord(P, pi), _ord(Q, pi)
        return _min_opt(None if op is None else 2 * op, None if oq is None else 2 * oq + 1)
    e = _min_opt(_ord(P, pi), _ord(Q, pi))
    Pr, Qr = P.exact_div(pi ** e), Q.exact_div(pi ** e)
    norm = Pr * Pr - Qr * Qr * curve.h
    if pt.kind == "fiber":
        if norm % pi:
            return e
        raise InputError(f"the two branches over {pi.to_text('x')} = 0 carry different "
                         "valuations; use branch points")
    if (Pr + Qr * pt.r) % pi:
        return e
    return e + norm.order_at(pi)


def valuation(curve: EllipticCurve, phi: EllipticFunction, point: EllipticPoint) -> int:
    """Order of vanishing of ``phi`` at ``point`` (negative for poles)."""
    if phi.is_zero():
        raise InputError("valuation of the zero function")
    if point.curve != curve:
        raise InputError("point is not on this curve")
    P, Q, G = phi.parts()
    return _numerator_valuation(curve, P, Q, point) - _numerator_valuation(curve, G, ZERO, point)


def principal_divisor(curve: EllipticCurve, phi: EllipticFunction) -> Divisor:
    """``div(phi)`` as an exact divisor of closed points."""
    if phi.is_zero():
        raise InputError("divisor of the zero function")
    P, Q, G = phi.parts()
    h = curve.h
    norm = P * P - Q * Q * h
    candidates = {pi for pi, _ in factor(norm)} | {pi for pi, _ in factor(G)}
    terms: dict[EllipticPoint, int] = {}
    for pi in sorted(candidates, key=poly_sort_key):
        fib = EllipticPoint("fiber", curve, pi)
        vg = _numerator_valuation(curve, G, ZERO, fib)
        if fib.is_two_torsion:
            terms[fib] = _numerator_valuation(curve, P, Q, fib) - vg
            continue
        e = _min_opt(_ord(P, pi), _ord(Q, pi))
        Pr, Qr = P.exact_div(pi ** e), Q.exact_div(pi ** e)
        nr = Pr * Pr - Qr * Qr * h
        if nr % pi:
            terms[fib] = e - vg
            continue
        r = (-Pr * inverse_mod(Qr, pi)) % pi
        up = EllipticPoint("branch", curve, pi, r)
        terms[up] = e + nr.order_at(pi) - vg
        terms[up.conjugate()] = e - vg
    inf = EllipticPoint.at_infinity(curve)
    terms[inf] = _numerator_valuation(curve, P, Q, inf) - _numerator_valuation(curve, G, ZERO, inf)
    return Divisor(terms)


def function_degree(curve: EllipticCurve, phi: EllipticFunction) -> int:
    """Degree of ``phi`` as a morphism to P^1: total order of its poles."""
    return int(principal_divisor(curve, phi).negative_part().degree())


def fiber_divisor(curve: EllipticCurve, phi: EllipticFunction,
                  c: Optional[Scalar]) -> list[tuple[EllipticPoint, int]]:
    """The fiber ``phi^{-1}(c)`` with multiplicities; ``c = None`` means infinity."""
    div = principal_divisor(curve, phi)
    if not div:
        raise InputError("fiber of a constant function")
    if c is None:
        part = div.negative_part()
    else:
        shifted = phi.minus(c)
        if shifted.is_zero():
            raise InputError("fiber of a constant function")
        part = principal_divisor(curve, shifted).positive_part()
    return [(pt, int(m)) for pt, m in part.items()]


def fiber_size(fiber: list[tuple[EllipticPoint, int]]) -> int:
    """Number of geometric points in a fiber."""
    return sum(pt.degree for pt, _ in fiber)
