"""Square-free decomposition and factorization into irreducibles over Q."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from ..errors import InputError
from .polynomial import Polynomial, poly_gcd

# Rational-root search enumerates divisors only below this size; larger
# coefficients go straight to the factorization fallback.
_DIVISOR_LIMIT = 10**6


def squarefree_decompose(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: return ``[(S_e, e), ...]`` with ``p = lc(p) * prod S_e**e``.

    Every ``S_e`` is monic, square-free and non-constant; they are pairwise coprime.
    """
    if p.is_zero():
        raise InputError("square-free decomposition of the zero polynomial")
    a = p.monic()
    if a.is_constant():
        return []
    da = a.derivative()
    c = poly_gcd(a, da)
    w = a.exact_div(c)
    y = da.exact_div(c)
    z = y - w.derivative()
    out: list[tuple[Polynomial, int]] = []
    e = 1
    while not w.is_constant():
        g = poly_gcd(w, z)
        if not g.is_constant():
            out.append((g, e))
        w = w.exact_div(g)
        y = z.exact_div(g)
        z = y - w.derivative()
        e += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(ints: list[int]) -> list[Fraction] | None:
    """Rational roots of a primitive integer polynomial, or None if too costly."""
    roots = []
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.append(Fraction(0))
    const, lead = ints[shift], ints[-1]
    if abs(const) > _DIVISOR_LIMIT or abs(lead) > _DIVISOR_LIMIT:
        return None
    poly = Polynomial(ints[shift:])
    for q in _divisors(lead):
        for p in _divisors(const):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand.denominator == q and poly(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return roots


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def _factor_fallback(p: Polynomial) -> list[Polynomial]:
    import sympy

    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z**i for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, z, domain="QQ")
    out = []
    for fac, mult in factors:
        coeffs = sympy.Poly(fac, z).all_coeffs()[::-1]
        q = Polynomial(Fraction(int(c.p), int(c.q)) for c in coeffs).monic()
        out.extend([q] * int(mult))
    return out


def _factor_squarefree(p: Polynomial) -> list[Polynomial]:
    """Monic irreducible factors of a monic square-free polynomial."""
    if p.degree <= 1:
        return [p] if p.degree == 1 else []
    _, ints = p.to_integer_primitive()
    roots = _rational_roots(ints)
    if roots is None:
        return _factor_fallback(p)
    factors = []
    rest = p
    for r in roots:
        lin = Polynomial.linear(r)
        factors.append(lin)
        rest = rest.exact_div(lin)
    rest = rest.monic()
    if rest.degree <= 0:
        return factors
    if rest.degree == 1:
        return factors + [rest]
    if rest.degree == 2:
        disc = rest[1] ** 2 - 4 * rest[0]
        # no rational roots remain, so the discriminant is not a square
        assert not _is_rational_square(disc)
        return factors + [rest]
    if rest.degree == 3:
        return factors + [rest]
    return factors + _factor_fallback(rest)


@lru_cache(maxsize=4096)
def _factor_cached(p: Polynomial) -> tuple[tuple[Polynomial, int], ...]:
    out: dict[Polynomial, int] = {}
    for s, e in squarefree_decompose(p):
        for f in _factor_squarefree(s):
            out[f] = out.get(f, 0) + e
    return tuple(sorted(out.items(), key=lambda kv: poly_sort_key(kv[0])))


def factor(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic irreducible factors with multiplicities, in a canonical order."""
    if p.is_zero():
        raise InputError("cannot factor the zero polynomial")
    return list(_factor_cached(p.monic()))


def is_irreducible(p: Polynomial) -> bool:
    if p.degree < 1:
        return False
    fs = factor(p)
    return len(fs) == 1 and fs[0][1] == 1


def poly_sort_key(p: Polynomial) -> tuple:
    """Order by degree; monic linear factors ``z - r`` by their root ``r``."""
    if p.degree == 1:
        return (1, (-p[0] / p[1],))
    return (p.degree, tuple(p.coeffs))

