"""Kobayashi-type metrics on the disc orbifolds ``(D / (1 - 1/n)[0])``.

The Poincaré metric is normalized as ``4|dz|^2 / (1 - |z|^2)^2`` so that
``d(0, r) = log((1 + r) / (1 - r))``. The classical pseudodistance ``d*_n`` is
computed through the unfolding ``z -> z^n``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy import integrate

from .algebra.places import Place, RationalMap
from .errors import InputError, PremiseError
from .morphisms import MorphismMode, check_morphism
from .orbifold import Disc, OrbifoldCurve, OrbifoldDivisor

Number = Union[int, float, complex, Fraction]


def _check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    return n


def _check_in_disc(*points: complex) -> None:
    for p in points:
        if not abs(p) < 1:
            raise InputError(f"point {p} is not in the open unit disc")


def _exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    """``q**(1/k)`` for ``q >= 0`` when it is rational."""
    num, den = round(q.numerator ** (1 / k)), round(q.denominator ** (1 / k))
    for a in (num - 1, num, num + 1):
        for b in (den - 1, den, den + 1):
            if a >= 0 and b > 0 and Fraction(a, b) ** k == q:
                return Fraction(a, b)
    return None


def poincare_density(z: Number) -> Number:
    _check_in_disc(z)
    if isinstance(z, (int, Fraction)):
        return 4 / (1 - Fraction(z) ** 2) ** 2
    return 4 / (1 - abs(z) ** 2) ** 2


def poincare_distance(x: complex, y: complex) -> float:
    """``2 artanh |(x - y) / (1 - conj(x) y)|``."""
    _check_in_disc(x, y)
    x, y = complex(x), complex(y)
    ratio = abs(x - y) / abs(1 - x.conjugate() * y)
    return 2 * math.atanh(min(ratio, 1.0))


def metric_density(n: int, z: Number) -> Number:
    """Coefficient of ``|dz|^2`` in the push-forward of the Poincaré metric by ``z^n``.

    Equals ``4 / (n^2 |z|^(2 - 2/n) (1 - |z|^(2/n))^2)``. Rational input whose
    radicals are rational gives an exact Fraction.
    """
    n = _check_n(n)
    if not 0 < abs(z) < 1:
        raise InputError("metric density needs 0 < |z| < 1")
    if isinstance(z, (int, Fraction)):
        r2 = Fraction(z) ** 2
        t = _exact_root(r2, n)  # |z|^(2/n)
        if t is not None:
            return 4 / (n * n * (r2 / t) * (1 - t) ** 2)
    log_r = math.log(abs(z))
    one_minus_t = -math.expm1(2 * log_r / n)
    return 4 / (n * n * math.exp((2 - 2 / n) * log_r) * one_minus_t ** 2)


def limit_density(z: Number) -> float:
    """``4 / (|z|^2 (log |z|^2)^2)``, the limit of the density as ``n -> infinity``."""
    if not 0 < abs(z) < 1:
        raise InputError("limit density needs 0 < |z| < 1")
    r = abs(complex(z))
    return 4 / (r * r * math.log(r * r) ** 2)


@dataclass(frozen=True)
class LimitReport:
    z: complex
    limit: float
    ns: tuple[int, ...]
    differences: tuple[float, ...]

    @property
    def decreasing(self) -> bool:
        d = self.differences
        return all(b <= a for a, b in zip(d, d[1:]))


def limit_convergence(z: Number, ns: Sequence[int] = tuple(2**k for k in range(1, 11))) -> LimitReport:
    lim = limit_density(z)
    diffs = tuple(abs(float(metric_density(n, complex(z))) - lim) for n in ns)
    return LimitReport(complex(z), lim, tuple(ns), diffs)


def _nth_roots(p: complex, n: int) -> list[complex]:
    if p == 0:
        return [0j]
    r, phi = abs(p) ** (1 / n), cmath.phase(p)
    return [cmath.rect(r, (phi + 2 * math.pi * k) / n) for k in range(n)]


def classical_distance_disc(n: int, p: Number, q: Number) -> float:
    """``min d_D(x, y)`` over ``x^n = p``, ``y^n = q``; one root of ``p`` suffices."""
    n = _check_n(n)
    p, q = complex(p), complex(q)
    _check_in_disc(p, q)
    if p == q:
        return 0.0
    x = _nth_roots(p, n)[0]
    return min(poincare_distance(x, y) for y in _nth_roots(q, n))


def radial_length(n: int, a: float, b: float) -> tuple[float, float]:
    """Length of the segment ``[a, b]`` of one ray for the density metric, with error."""
    n = _check_n(n)
    lo, hi = sorted((abs(a), abs(b)))
    if not 0 < lo or not hi < 1:
        raise InputError("radial segment must lie in 0 < |z| < 1")
    value, err = integrate.quad(lambda s: math.sqrt(metric_density(n, s)), lo, hi,
                                epsabs=1e-13, epsrel=1e-12, limit=200)
    return value, err


# -- distance decreasing -----------------------------------------------------------

def disc_orbifold(n: int) -> OrbifoldCurve:
    n = _check_n(n)
    delta = OrbifoldDivisor({Place.at(0): n}) if n > 1 else OrbifoldDivisor()
    return OrbifoldCurve(Disc(), delta)


@dataclass(frozen=True)
class PairCheck:
    p: complex
    q: complex
    image_distance: float
    source_distance: float
    ok: bool


@dataclass(frozen=True)
class DistanceDecreasingReport:
    pairs: tuple[PairCheck, ...]
    tolerance: float

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.pairs)


def distance_decreasing_check(f: RationalMap, n_src: int, n_tgt: int,
                              pairs: Iterable[tuple[Number, Number]],
                              tolerance: float = 1e-9) -> DistanceDecreasingReport:
    """Check ``d*_{n_tgt}(f(p), f(q)) <= d*_{n_src}(p, q)`` on sample pairs."""
    pairs = [(complex(p), complex(q)) for p, q in pairs]
    for p, q in pairs:
        _check_in_disc(p, q)
    if f.is_constant():
        c = f.constant_value()
        if n_tgt > 1 and c == 0:
            raise PremiseError("the constant map lands in the orbifold point")
    else:
        radius = max((max(abs(p), abs(q)) for p, q in pairs), default=0.0)
        ring = radius * np.exp(2j * np.pi * np.arange(256) / 256)
        samples = [v for pair in pairs for v in pair] + list(ring)
        if any(not abs(f(complex(s))) < 1 for s in samples):
            raise PremiseError("the map does not send the sampled disc into the unit disc")
        verdict = check_morphism(f, disc_orbifold(n_src), disc_orbifold(n_tgt),
                                 MorphismMode.NONCLASSICAL)
        if not verdict.ok:
            raise PremiseError("the map is not an orbifold morphism of the disc orbifolds")
    checks = []
    for p, q in pairs:
        lhs = classical_distance_disc(n_tgt, complex(f(p)), complex(f(q)))
        rhs = classical_distance_disc(n_src, p, q)
        checks.append(PairCheck(p, q, lhs, rhs, lhs <= rhs + tolerance))
    return DistanceDecreasingReport(tuple(checks), tolerance)


# -- chains of discs (experimental upper bound) --------------------------------------

@dataclass(frozen=True)
class ChainBound:
    value: float
    classical: float
    best: str
    evaluated: int
    improved: bool
    fallback: bool


def _blaschke_power_preimages(a: complex, k1: int, b: Optional[complex], k2: int,
                              w: complex) -> list[complex]:
    """Solutions in D of ``phi_a^k1 * phi_b^k2 = w`` with ``phi_a = (z - a)/(1 - conj(a) z)``."""
    num = np.poly1d([1, -a]) ** k1
    den = np.poly1d([-a.conjugate(), 1]) ** k1
    if b is not None:
        num = num * np.poly1d([1, -b]) ** k2
        den = den * np.poly1d([-b.conjugate(), 1]) ** k2
    roots = (num - w * den).roots
    return [complex(r) for r in np.atleast_1d(roots) if abs(r) < 1 - 1e-12]


def _link(candidate, p: complex, q: complex) -> float:
    a, k1, b, k2 = candidate
    xs = _blaschke_power_preimages(a, k1, b, k2, p)
    ys = _blaschke_power_preimages(a, k1, b, k2, q)
    if not xs or not ys:
        return math.inf
    return min(poincare_distance(x, y) for x in xs for y in ys)


def _candidates(n: int, budget: int) -> list[tuple]:
    grid = [0j] + [cmath.rect(r, 2 * math.pi * j / 8) for r in (0.25, 0.5, 0.75) for j in range(8)]
    out: list[tuple] = [(0j, n, None, 0)]
    for a in grid:
        for b in grid:
            if len(out) >= budget:
                return out
            if b == a:
                continue
            for k1, k2 in ((n, n), (n, n + 1)):
                out.append((a, k1, b, k2))
    return out[:budget]


def _refine(cand: tuple, p: complex, q: complex, value: float, rounds: int = 4) -> tuple[tuple, float, int]:
    """Coordinate search on the Blaschke parameters with halving steps."""
    a, k1, b, k2 = cand
    step, evaluated = 0.1, 0
    for _ in range(rounds):
        moved = True
        while moved:
            moved = False
            for da, db in ((step, 0), (-step, 0), (1j * step, 0), (-1j * step, 0),
                           (0, step), (0, -step), (0, 1j * step), (0, -1j * step)):
                na, nb = a + da, (b + db if b is not None else None)
                if abs(na) >= 0.95 or (nb is not None and abs(nb) >= 0.95):
                    continue
                evaluated += 1
                val = _link((na, k1, nb, k2), p, q)
                if val < value - 1e-12:
                    a, b, value, moved = na, nb, val, True
        step /= 2
    return (a, k1, b, k2), value, evaluated


def chain_upper_bound(n: int, p: Number, q: Number, budget: int = 200) -> ChainBound:
    """Best chain length (at most two links) through non-classical disc morphisms.

    Candidates are ``phi_a^k1 * phi_b^k2`` with ``k1, k2 >= n``, so every zero has order
    at least ``n``; ``phi_a^n * phi_b^n`` is a degree-2 Blaschke product followed by
    ``w -> w^n``. Parameters start on a fixed grid and the best candidate is refined by
    coordinate search. The classical lift ``z^n`` is always a candidate, so the result
    never exceeds ``d*_n(p, q)``.
    """
    n = _check_n(n)
    p, q = complex(p), complex(q)
    _check_in_disc(p, q)
    classical = classical_distance_disc(n, p, q)
    if p == q:
        return ChainBound(0.0, 0.0, "constant", 0, False, False)
    if budget < 1:
        return ChainBound(classical, classical, "classical lift (fallback)", 0, False, True)
    scored = sorted(((_link(c, p, q), i, c) for i, c in enumerate(_candidates(n, budget))),
                    key=lambda t: (t[0], t[1]))
    evaluated = len(scored)
    best, best_desc = classical, "classical lift z^n"
    top_val, _, top = scored[0]
    if top[2] is not None and math.isfinite(top_val):
        top, top_val, extra = _refine(top, p, q, top_val)
        evaluated += extra
    if top_val < best - 1e-12:
        best, best_desc = top_val, _describe(top)
    # two links through intermediate points, each link using the leading candidates
    leaders = [c for _, _, c in scored[:5]]
    mids = [cmath.rect(r, 2 * math.pi * j / 12) for r in (0.2, 0.5, 0.8) for j in range(12)]
    for w in mids:
        first = min(_link(c, p, w) for c in leaders)
        second = min(_link(c, w, q) for c in leaders)
        evaluated += 2 * len(leaders)
        if first + second < best - 1e-12:
            best, best_desc = first + second, f"two links via {w:.3f}"
    return ChainBound(best, classical, best_desc, evaluated, best < classical - 1e-9, False)


def _describe(cand) -> str:
    a, k1, b, k2 = cand
    if b is None:
        return f"phi_{a:.3f}^{k1}"
    return f"phi_{a:.3f}^{k1} * phi_{b:.3f}^{k2}"
