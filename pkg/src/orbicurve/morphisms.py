"""Orbifold morphisms between orbicurves over P^1 (and the unit disc).

Every check reduces to exact pullback multiplicities: a source point ``p`` of
multiplicity ``n`` mapping with local degree ``d`` onto a target component of
multiplicity ``m`` must satisfy ``n*d >= m`` (non-classical) or ``m | n*d``
(classical). Points of infinite multiplicity are not in the domain.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .algebra.bivariate import MapFamily
from .algebra.factor import factor
from .algebra.places import (
    INFINITY,
    Divisor,
    Place,
    RationalMap,
    pullback_divisor,
    pullback_place,
)
from .algebra.polynomial import Polynomial, inverse_mod
from .errors import InputError, PremiseError
from .orbifold import (
    INF,
    Disc,
    Multiplicity,
    OrbifoldCurve,
    OrbifoldDivisor,
    P1,
    canonical_degree,
    multiplicity_text,
    place_inside_disc,
)


class MorphismMode(enum.Enum):
    NONCLASSICAL = "nonclassical"
    CLASSICAL = "classical"

    @classmethod
    def parse(cls, text: str) -> "MorphismMode":
        try:
            return cls(text.strip().lower().replace("-", "").replace("_", ""))
        except ValueError:
            raise InputError(f"unknown mode {text!r}; use classical or nonclassical") from None


def local_condition(n: Multiplicity, d: int, m: Multiplicity, mode: MorphismMode) -> bool:
    """Local orbifold condition at a source point of multiplicity ``n``.

    ``d`` is the local degree onto a target component of multiplicity ``m``.
    """
    if d < 1:
        raise InputError(f"local degree must be positive, got {d}")
    if m == INF:
        return n == INF
    if n == INF:
        return True
    if mode is MorphismMode.NONCLASSICAL:
        return n * d >= m
    return (n * d) % m == 0


def _condition_text(n: Multiplicity, d: int, m: Multiplicity, mode: MorphismMode) -> str:
    if m == INF:
        return "point outside the domain"
    lhs = f"{multiplicity_text(n)}*{d}"
    if mode is MorphismMode.NONCLASSICAL:
        return f"{lhs} >= {m}"
    return f"{m} | {lhs}"


@dataclass(frozen=True)
class Witness:
    source: Place
    target: Place
    d: int
    n: Multiplicity
    m: Multiplicity
    condition: str
    satisfied: bool


@dataclass(frozen=True)
class MorphismVerdict:
    ok: bool
    mode: MorphismMode
    witnesses: tuple[Witness, ...] = ()
    image_in_support: bool = False

    @property
    def failures(self) -> list[Witness]:
        return [w for w in self.witnesses if not w.satisfied]


def _require_explicit(o: OrbifoldCurve, role: str) -> None:
    if not isinstance(o.base, (P1, Disc)):
        raise InputError(f"{role} base must be P1 or disc, got {o.base.kind}")
    if o.punctures:
        raise InputError(f"{role}: give punctures as places of multiplicity inf, "
                         "not as an abstract count")
    if o.delta.infinite_support:
        raise InputError(f"{role}: infinite support cannot be checked pointwise")


def _in_domain(place: Place, source: OrbifoldCurve) -> bool:
    if isinstance(source.base, Disc) and not place_inside_disc(place):
        return False
    return True


def _nonconstant(f: RationalMap) -> None:
    if f.is_constant():
        raise InputError("the map is constant")


def check_morphism(f: RationalMap, source: OrbifoldCurve, target: OrbifoldCurve,
                   mode: MorphismMode = MorphismMode.NONCLASSICAL) -> MorphismVerdict:
    """Verify that ``f`` is an orbifold morphism ``source -> target``."""
    _nonconstant(f)
    _require_explicit(source, "source")
    _require_explicit(target, "target")
    witnesses = []
    for q, m in target.delta.items():
        for p, d in pullback_place(f, q).items():
            if not _in_domain(p, source):
                continue
            n = source.delta.multiplicity(p)
            d = int(d)
            ok = local_condition(n, d, m, mode)
            witnesses.append(Witness(p, q, d, n, m, _condition_text(n, d, m, mode), ok))
    ok = all(w.satisfied for w in witnesses)
    return MorphismVerdict(ok, mode, tuple(witnesses), False)


def local_degree_at_infinity(f: RationalMap) -> int:
    value = f.value_at_infinity()
    q = INFINITY if value is None else Place.at(value)
    return int(pullback_place(f, q)[INFINITY])


def ramification_divisor(f: RationalMap) -> Divisor:
    """``R_f = sum (d_p - 1) [p]`` over all source places."""
    _nonconstant(f)
    w = f.wronskian()
    terms = {Place(p, check=False): e for p, e in factor(w)}
    terms[INFINITY] = local_degree_at_infinity(f) - 1
    r = Divisor(terms)
    assert r.degree() == 2 * f.degree - 2, "Riemann-Hurwitz failed"
    return r


@dataclass(frozen=True)
class CompositionCheck:
    lhs: Divisor
    rhs: Divisor

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def composition_rule_check(f: RationalMap, g: RationalMap) -> CompositionCheck:
    """Compare ``R_{g o f}`` with ``R_f + f^* R_g`` (the correction term vanishes for curves)."""
    _nonconstant(f)
    _nonconstant(g)
    comp = g.compose(f)
    if comp.is_constant():
        raise InputError("the composition is constant")
    lhs = ramification_divisor(comp)
    rhs = ramification_divisor(f) + pullback_divisor(f, ramification_divisor(g))
    return CompositionCheck(lhs, rhs)


def _restrict_to_domain(d: Divisor, in_disc: bool) -> Divisor:
    if not in_disc:
        return d
    return d.restrict(p for p in d.support() if place_inside_disc(p))


@dataclass(frozen=True)
class CriterionResult:
    divisor: Divisor

    @property
    def nonnegative(self) -> bool:
        return self.divisor.is_effective()


def divisor_criterion(f: RationalMap, delta: OrbifoldDivisor, delta_prime: OrbifoldDivisor,
                      *, in_disc: bool = False) -> CriterionResult:
    """``D = R_f + Delta - f^* Delta'``; ``D >= 0`` iff ``f`` is a non-classical morphism."""
    _nonconstant(f)
    d = ramification_divisor(f) + delta.as_divisor() - pullback_divisor(f, delta_prime.as_divisor())
    return CriterionResult(_restrict_to_domain(d, in_disc))


@dataclass(frozen=True)
class DegreeCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def degree_inequality_check(f: RationalMap, source: OrbifoldCurve,
                            target: OrbifoldCurve) -> DegreeCheck:
    """``deg(K + Delta) >= deg(f) * deg(K' + Delta')`` for an orbifold morphism."""
    verdict = check_morphism(f, source, target, MorphismMode.NONCLASSICAL)
    if not verdict.ok:
        raise PremiseError("the map is not an orbifold morphism; the degree inequality does not apply")
    return DegreeCheck(canonical_degree(source), f.degree * canonical_degree(target))


def etale_check(f: RationalMap, source: OrbifoldCurve, target: OrbifoldCurve) -> bool:
    """True iff ``f`` is an orbifold morphism with ``R_f = f^* Delta' - Delta``."""
    if not check_morphism(f, source, target, MorphismMode.NONCLASSICAL).ok:
        return False
    in_disc = isinstance(source.base, Disc)
    lhs = _restrict_to_domain(ramification_divisor(f), in_disc)
    rhs = _restrict_to_domain(
        pullback_divisor(f, target.delta.as_divisor()) - source.delta.as_divisor(), in_disc)
    return lhs == rhs


def _minimal_polynomial_mod(e: Polynomial, rho: Polynomial) -> Polynomial:
    """Minimal polynomial over Q of the class of ``e`` in ``Q[z]/rho`` (rho irreducible)."""
    k = rho.degree
    basis: list[tuple[list[Fraction], list[Fraction]]] = []  # (reduced vector, combination)
    power = Polynomial([1])
    for j in range(k + 1):
        vec = [(power % rho)[i] for i in range(k)]
        combo = [Fraction(0)] * (k + 1)
        combo[j] = Fraction(1)
        for bvec, bcombo in basis:
            pivot = next(i for i, c in enumerate(bvec) if c)
            if vec[pivot]:
                c = vec[pivot] / bvec[pivot]
                vec = [a - c * b for a, b in zip(vec, bvec)]
                combo = [a - c * b for a, b in zip(combo, bcombo)]
        if not any(vec):
            return Polynomial(combo).monic()
        basis.append((vec, combo))
        power = (power * e) % rho
    raise AssertionError("no linear dependence among k+1 powers")


def critical_values(f: RationalMap) -> list[Place]:
    """Target places over which ``f`` ramifies."""
    _nonconstant(f)
    values: set[Place] = set()
    for rho, _ in factor(f.wronskian()):
        if not (f.den % rho):
            values.add(INFINITY)
            continue
        e = (f.num * inverse_mod(f.den, rho)) % rho
        values.add(Place(_minimal_polynomial_mod(e, rho), check=False))
    if local_degree_at_infinity(f) > 1:
        v = f.value_at_infinity()
        values.add(INFINITY if v is None else Place.at(v))
    return sorted(values, key=lambda p: p.sort_key())


def orbifold_base(f: RationalMap, mode: MorphismMode = MorphismMode.NONCLASSICAL) -> OrbifoldDivisor:
    """The largest target divisor making ``f`` a morphism from the trivial orbifold P^1."""
    terms = {}
    for q in critical_values(f):
        mults = [int(d) for _, d in pullback_place(f, q).items()]
        m = min(mults) if mode is MorphismMode.NONCLASSICAL else gcd(*mults)
        if m > 1:
            terms[q] = m
    return OrbifoldDivisor(terms)


# -- limits of families --------------------------------------------------------

DEFAULT_SAMPLES = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))


@dataclass(frozen=True)
class MemberCheck:
    t: Optional[Fraction]
    map: RationalMap
    status: str  # "morphism", "image_in_support" or "not_morphism"
    verdict: Optional[MorphismVerdict] = None


@dataclass(frozen=True)
class LimitClosureReport:
    samples: tuple[MemberCheck, ...]
    limit: MemberCheck
    branch: str
    holds: bool = field(default=False)


def _member_status(f: RationalMap, t: Optional[Fraction], source: OrbifoldCurve,
                   target: OrbifoldCurve, mode: MorphismMode) -> MemberCheck:
    if f.is_constant():
        place = Place.at(f.constant_value())
        status = "image_in_support" if place in target.delta else "morphism"
        return MemberCheck(t, f, status)
    verdict = check_morphism(f, source, target, mode)
    return MemberCheck(t, f, "morphism" if verdict.ok else "not_morphism", verdict)


def limit_closure_check(family: MapFamily, source: OrbifoldCurve, target: OrbifoldCurve,
                        mode: MorphismMode = MorphismMode.NONCLASSICAL,
                        samples: Sequence[Fraction] = DEFAULT_SAMPLES) -> LimitClosureReport:
    """Check that a limit of orbifold morphisms is a morphism or lands in the support."""
    checks = []
    for t in samples:
        t = Fraction(t)
        if t == 0:
            raise InputError("sample parameters must be nonzero")
        try:
            member = family.at(t)
        except ZeroDivisionError:
            raise InputError(f"the family is undefined at t = {t}") from None
        checks.append(_member_status(member, t, source, target, mode))
    bad = [c for c in checks if c.status != "morphism"]
    if bad:
        raise PremiseError(f"f_t is not an orbifold morphism at t = {bad[0].t} ({bad[0].status})")
    try:
        f0 = family.limit()
    except ZeroDivisionError:
        raise InputError("the family degenerates: denominator vanishes identically at t = 0") from None
    limit = _member_status(f0, Fraction(0), source, target, mode)
    return LimitClosureReport(tuple(checks), limit, limit.status, limit.status != "not_morphism")

