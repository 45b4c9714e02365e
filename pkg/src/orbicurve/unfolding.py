"""Explicit unfoldings of the euclidean signatures by elliptic curves.

Each preset is a function ``pi`` on an elliptic curve ``E``; viewed as a map
``E -> P^1`` it is an étale orbifold cover of ``(P^1 / Delta)`` where ``Delta``
carries, over each branch value, the common ramification index of its fiber.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra.places import Divisor, Place
from .algebra.polynomial import Polynomial
from .errors import InputError
from .function_field import (
    EllipticCurve,
    EllipticFunction,
    EllipticPoint,
    fiber_divisor,
    fiber_size,
    function_degree,
)
from .orbifold import OrbifoldCurve, OrbifoldDivisor, P1, canonical_degree

PRESETS = ("2222", "244", "236", "333")

Fiber = list[tuple[EllipticPoint, int]]


@dataclass(frozen=True)
class CoveringData:
    preset: str
    curve: EllipticCurve
    map: EllipticFunction
    target: OrbifoldCurve
    profile: tuple[tuple[Place, tuple[tuple[EllipticPoint, int], ...]], ...]
    degree: int


def _value(place: Place) -> Optional[Fraction]:
    return None if place.is_infinity else place.rational_value()


def _fiber(curve: EllipticCurve, phi: EllipticFunction, place: Place) -> Fiber:
    return fiber_divisor(curve, phi, _value(place))


def build_unfolding(preset: str, lam: Union[Fraction, int, str, None] = None) -> CoveringData:
    """Construct one of the presets ``2222`` (needs ``lam``), ``244``, ``236``, ``333``."""
    key = preset.strip().lower().removeprefix("sig")
    if key == "2222":
        if lam is None:
            raise InputError("preset 2222 needs the fourth branch value lambda")
        lam = Fraction(lam)
        if lam in (0, 1):
            raise InputError("lambda must differ from 0 and 1")
        curve = EllipticCurve(Polynomial.from_roots([0, 1, lam]))
        phi = EllipticFunction.x()
        branch = {Fraction(0): 2, Fraction(1): 2, lam: 2, None: 2}
    elif key == "244":
        curve = EllipticCurve("x^3 - x")
        phi = EllipticFunction.parse("x^2")
        branch = {Fraction(0): 4, Fraction(1): 2, None: 4}
    elif key == "236":
        # y^2 and x^3 + 1 agree on the curve; the x-only form is stored
        curve = EllipticCurve("x^3 + 1")
        phi = EllipticFunction.parse("x^3 + 1")
        branch = {Fraction(0): 2, Fraction(1): 3, None: 6}
    elif key == "333":
        curve = EllipticCurve("x^3 + 1")
        phi = EllipticFunction.y()
        branch = {Fraction(-1): 3, Fraction(1): 3, None: 3}
    else:
        raise InputError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
    delta = OrbifoldDivisor({Place.at(v): m for v, m in branch.items()})
    target = OrbifoldCurve(P1(), delta)
    profile = tuple((q, tuple(_fiber(curve, phi, q))) for q in delta.support())
    return CoveringData(key, curve, phi, target, profile, function_degree(curve, phi))


@dataclass(frozen=True)
class EtaleReport:
    profile_consistent: bool
    fiber_sums_ok: bool
    ramification_matches: bool
    riemann_hurwitz: tuple[int, int]  # (deg R, 2 * degree)
    degree_equality: tuple[Fraction, Fraction]  # (deg K_E, degree * deg(K + Delta))
    regular_values: tuple[Fraction, ...]
    unramified_elsewhere: bool

    @property
    def ok(self) -> bool:
        rh, eq = self.riemann_hurwitz, self.degree_equality
        return (self.profile_consistent and self.fiber_sums_ok and self.ramification_matches
                and rh[0] == rh[1] and eq[0] == eq[1] and self.unramified_elsewhere)


def etale_cover_report(c: CoveringData, samples: int = 20, seed: int = 0) -> EtaleReport:
    """Recompute the profile and check ``R = pi^* Delta`` together with Riemann-Hurwitz."""
    recomputed = tuple((q, tuple(_fiber(c.curve, c.map, q))) for q in c.target.delta.support())
    consistent = recomputed == c.profile
    if not consistent:
        raise InputError("stored profile disagrees with the valuations of the covering map")
    sums_ok = all(sum(pt.degree * d for pt, d in fib) == c.degree for _, fib in c.profile)
    ram = Divisor({pt: d - 1 for _, fib in c.profile for pt, d in fib})
    pulled = Divisor({pt: d * c.target.delta.weight(q) for q, fib in c.profile for pt, d in fib})
    deg_r = int(ram.degree())
    equality = (Fraction(0), c.degree * canonical_degree(c.target))

    rng = random.Random(seed)
    branch_values = {_value(q) for q in c.target.delta.support()}
    values: list[Fraction] = []
    while len(values) < samples:
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        if v not in branch_values and v not in values:
            values.append(v)
    unramified = True
    for v in values:
        fib = fiber_divisor(c.curve, c.map, v)
        if any(d != 1 for _, d in fib) or fiber_size(fib) != c.degree:
            unramified = False
    return EtaleReport(consistent, sums_ok, ram == pulled, (deg_r, 2 * c.degree), equality,
                       tuple(values), unramified)


def verify_etale_cover(c: CoveringData) -> bool:
    return etale_cover_report(c).ok


def profile_summary(c: CoveringData) -> list[tuple[Optional[Fraction], int, list[int]]]:
    """``(value, number of geometric points, ramification indices)`` per branch value."""
    out = []
    for q, fib in c.profile:
        mults = sorted(d for pt, d in fib for _ in range(pt.degree))
        out.append((_value(q), len(mults), mults))
    return out

