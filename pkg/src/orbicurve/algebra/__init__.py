"""Exact arithmetic foundation: polynomials over Q, places of P^1, divisors, maps."""

from .factor import factor, is_irreducible, squarefree_decompose
from .parse import parse_expression, parse_poly
from .places import (
    IDENTITY,
    INFINITY,
    Divisor,
    Place,
    RationalMap,
    pullback_divisor,
    pullback_place,
)
from .polynomial import ONE, ZERO, ZERO_DEGREE, Polynomial, Z, poly_gcd

__all__ = [
    "Divisor",
    "IDENTITY",
    "INFINITY",
    "ONE",
    "Place",
    "Polynomial",
    "RationalMap",
    "Z",
    "ZERO",
    "ZERO_DEGREE",
    "factor",
    "is_irreducible",
    "parse_expression",
    "parse_poly",
    "poly_gcd",
    "pullback_divisor",
    "pullback_place",
    "squarefree_decompose",
]
