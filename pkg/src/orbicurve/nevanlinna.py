"""Nevanlinna functions of rational maps ``C -> P^1`` and the orbifold truncation check.

Conventions (integration from radius 1, roots inside the unit disc clamped):

* ``N(r, a) = sum_j mult_j * log(r / max(1, |z_j|))`` over roots of ``f = a`` with
  ``|z_j| < r``; ``N1`` counts each root once.
* ``T_area(r) = int_1^r A(t) dt/t`` where ``A(t)`` is the spherical area (total mass
  one on P^1) of ``f(D_t)`` counted with multiplicity (Ahlfors-Shimizu form).
* ``m(r, a)`` is the mean over ``|z| = r`` of ``-log`` of the chordal distance
  between ``f`` and ``a``.
* ``T_a(r) = N(r, a) + m(r, a)``. The First Main Theorem reads
  ``T_area(r) = N(r, a) + m(r, a) - m(1, a)``, so ``T_a = T_area + m(1, a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from .algebra.factor import squarefree_decompose
from .algebra.places import INFINITY, Place, RationalMap, local_equation_numerator
from .algebra.polynomial import Polynomial
from .errors import InputError, PremiseError, QuadratureError
from .morphisms import MorphismMode, check_morphism
from .orbifold import (
    INF,
    Multiplicity,
    OrbifoldCurve,
    OrbifoldDivisor,
    P1,
    canonical_degree,
    check_multiplicity,
    weight,
)

DEFAULT_TOLERANCE = 1e-4
_ANGULAR_RTOL = 1e-11
_MAX_ANGULAR_NODES = 1 << 18


# -- roots ---------------------------------------------------------------------

def _float_coeffs(p: Polynomial) -> np.ndarray:
    """Coefficients highest degree first, as floats."""
    return np.array([float(c) for c in reversed(p.coeffs)], dtype=float)


def aberth_refine(p: Polynomial, z: np.ndarray, max_iter: int = 100) -> np.ndarray:
    """Polish simultaneous approximations of the roots of a square-free polynomial."""
    c = _float_coeffs(p)
    dc = np.polyder(c)
    z = np.array(z, dtype=complex)
    if len(z) < 1:
        return z
    for _ in range(max_iter):
        pz, dpz = np.polyval(c, z), np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(dpz != 0, pz / dpz, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            step = w / (1 - w * s)
        step = np.where(np.isfinite(step), step, 0)
        z = z - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(z))):
            break
    return z


def polynomial_roots(p: Polynomial) -> list[tuple[complex, int]]:
    """Complex roots with exact multiplicities (from the square-free decomposition)."""
    out = []
    for s, e in squarefree_decompose(p):
        approx = np.roots(_float_coeffs(s))
        for z in aberth_refine(s, approx):
            out.append((complex(z), e))
    return out


# -- counting functions ----------------------------------------------------------

def _check_radii(radii: Sequence[float]) -> list[float]:
    rs = [float(r) for r in radii]
    if not rs:
        raise InputError("at least one radius is required")
    if any(not math.isfinite(r) or r < 1 for r in rs):
        raise InputError("radii must be finite and at least 1")
    return rs


def _local_roots(f: RationalMap, q: Place) -> list[tuple[complex, int]]:
    if f.is_constant():
        raise InputError("Nevanlinna functions of a constant map")
    h, _ = local_equation_numerator(f, q)
    if h.is_zero():
        raise InputError(f"the map is identically equal to {q}")
    if h.is_constant():
        return []
    return polynomial_roots(h)


def counting_functions(f: RationalMap, q: Place, radii: Sequence[float]
                       ) -> tuple[list[float], list[float]]:
    """``(N(r, q), N1(r, q))`` for each radius."""
    rs = _check_radii(radii)
    roots = _local_roots(f, q)
    n_vals, n1_vals = [], []
    for r in rs:
        n = n1 = 0.0
        for z, e in roots:
            if abs(z) < r:
                term = math.log(r / max(1.0, abs(z)))
                n += e * term
                n1 += term
        n_vals.append(n)
        n1_vals.append(n1)
    return n_vals, n1_vals


# -- characteristic ----------------------------------------------------------------

def _angular_mean(func, r: float, rtol: float = _ANGULAR_RTOL) -> float:
    """Mean of a smooth periodic function over ``|z| = r`` by trapezoid doubling."""
    n = 64
    theta = 2 * np.pi * np.arange(n) / n
    prev = float(np.mean(func(r * np.exp(1j * theta))))
    while True:
        # the new nodes are the midpoints of the previous ones
        mids = 2 * np.pi * (np.arange(n) + 0.5) / n
        cur = 0.5 * (prev + float(np.mean(func(r * np.exp(1j * mids)))))
        n *= 2
        if abs(cur - prev) <= rtol * max(1.0, abs(cur)) and n >= 256:
            return cur
        if n >= _MAX_ANGULAR_NODES:
            raise QuadratureError(f"angular quadrature did not converge at r = {r}",
                                  abs(cur - prev))
        prev = cur


def _spherical_density(f: RationalMap):
    """``|f'|^2 / (pi (1 + |f|^2)^2)`` written as ``|W|^2 / (pi (|P|^2 + |Q|^2)^2)``."""
    p, q, w = _float_coeffs(f.num), _float_coeffs(f.den), _float_coeffs(f.wronskian())

    def rho(z):
        pv, qv, wv = np.polyval(p, z), np.polyval(q, z), np.polyval(w, z)
        return np.abs(wv) ** 2 / (np.pi * (np.abs(pv) ** 2 + np.abs(qv) ** 2) ** 2)

    return rho


def _breakpoints(f: RationalMap, r: float) -> list[float]:
    pts = {1.0}
    for poly in (f.num, f.den, f.wronskian()):
        if poly.degree >= 1:
            pts.update(abs(z) for z, _ in polynomial_roots(poly))
    merged: list[float] = []
    for p in sorted(p for p in pts if 0 < p < r):
        # moduli of conjugate or repeated roots agree only to rounding
        if not merged or p - merged[-1] > 1e-9 * max(1.0, p):
            merged.append(p)
    return merged


def area_characteristic(f: RationalMap, r: float) -> tuple[float, float]:
    """``(T_area(r), error estimate)`` by polar quadrature of the spherical density."""
    if r < 1:
        raise InputError("radius must be at least 1")
    if f.is_constant() or r == 1:
        return 0.0, 0.0
    rho = _spherical_density(f)

    def radial(s: float) -> float:
        if s == 0:
            return 0.0
        return 2 * np.pi * s * _angular_mean(rho, s) * math.log(r / max(1.0, s))

    value, err = integrate.quad(radial, 0.0, r, points=_breakpoints(f, r) or None,
                                limit=400, epsabs=1e-11, epsrel=1e-10)
    bound = f.degree * math.log(r)
    err = err + _ANGULAR_RTOL * bound
    if not math.isfinite(value) or err > 1e-6 * max(1.0, abs(value)):
        raise QuadratureError(f"radial quadrature did not reach the target at r = {r}", err)
    return value, err


def proximity(f: RationalMap, a: Place, r: float) -> float:
    """``m(r, a)``: mean over ``|z| = r`` of ``log 1/[f, a]`` (chordal distance)."""
    if a.degree != 1:
        raise InputError("proximity is implemented for rational points and infinity")
    if f.is_constant():
        raise InputError("proximity of a constant map")
    p, q = _float_coeffs(f.num), _float_coeffs(f.den)
    half = _angular_mean(lambda z: 0.5 * np.log(np.abs(np.polyval(p, z)) ** 2
                                                + np.abs(np.polyval(q, z)) ** 2), r)
    if a.is_infinity:
        g, shift = f.den, 0.0
    else:
        c = a.rational_value()
        g = f.num - f.den.scale(c)
        shift = 0.5 * math.log1p(float(c) ** 2)
    if g.is_zero():
        raise InputError(f"the map is identically equal to {a}")
    # Jensen: mean of log|g| on |z| = r
    mean_log = math.log(abs(float(g.leading)))
    if g.degree >= 1:
        mean_log += sum(e * math.log(max(r, abs(z))) for z, e in polynomial_roots(g))
    return half + shift - mean_log


def characteristic(f: RationalMap, radii: Sequence[float],
                   place: Optional[Place] = None) -> list[float]:
    """Characteristic function at each radius.

    Without ``place`` this is the area form ``T_area``; with a place ``a`` it is
    ``T_a = T_area + m(1, a) = N(r, a) + m(r, a)``.
    """
    rs = _check_radii(radii)
    if f.is_constant():
        return [0.0] * len(rs)
    shift = proximity(f, place, 1.0) if place is not None else 0.0
    return [area_characteristic(f, r)[0] + shift for r in rs]


def first_main_theorem_residual(f: RationalMap, a: Place, r: float) -> float:
    """``T_area(r) - (N(r, a) + m(r, a) - m(1, a))``; zero up to quadrature error."""
    t, _ = area_characteristic(f, r)
    (n,), _ = counting_functions(f, a, [r])
    return t - (n + proximity(f, a, r) - proximity(f, a, 1.0))


# -- orbifold truncation -------------------------------------------------------------

@dataclass(frozen=True)
class NevanlinnaReport:
    map: RationalMap
    place: Place
    multiplicity: Multiplicity
    alpha: Fraction
    radii: tuple[float, ...]
    T: tuple[float, ...]
    T_area: tuple[float, ...]
    N: tuple[float, ...]
    N1: tuple[float, ...]
    margin: tuple[float, ...]
    margin_area: tuple[float, ...]
    errors: tuple[float, ...]
    tolerance: float
    flagged: tuple[float, ...]

    @property
    def ok(self) -> bool:
        return not self.flagged


def complex_line_source() -> OrbifoldCurve:
    """``C`` as the orbifold P^1 with the point at infinity removed."""
    return OrbifoldCurve(P1(), OrbifoldDivisor({INFINITY: INF}))


def orbi_trunc_check(f: RationalMap, place: Place, m: Multiplicity, radii: Sequence[float],
                     tolerance: float = DEFAULT_TOLERANCE) -> NevanlinnaReport:
    """Check ``(T - N1) - (1 - 1/m) T >= 0`` for an orbifold morphism ``C -> (P^1/(1-1/m)H)``.

    ``T`` is ``T_H``; the area-normalized margin is reported alongside. Radii where
    the margin drops below ``-(quadrature error + tolerance)`` are flagged.
    """
    m = check_multiplicity(m)
    rs = _check_radii(radii)
    if place.degree != 1:
        raise InputError("the truncation check takes a rational point or infinity")
    target = OrbifoldCurve(P1(), OrbifoldDivisor({place: m}))
    verdict = check_morphism(f, complex_line_source(), target, MorphismMode.NONCLASSICAL)
    if not verdict.ok:
        bad = verdict.failures[0]
        raise PremiseError(f"not an orbifold morphism from C: at {bad.source} "
                           f"the condition {bad.condition} fails")
    alpha = weight(m)
    a = float(alpha)
    n_vals, n1_vals = counting_functions(f, place, rs)
    shift = proximity(f, place, 1.0)
    t_area, errs = zip(*(area_characteristic(f, r) for r in rs))
    t_h = [t + shift for t in t_area]
    margin = [(t - n1) - a * t for t, n1 in zip(t_h, n1_vals)]
    margin_area = [(t - n1) - a * t for t, n1 in zip(t_area, n1_vals)]
    flagged = [r for r, mg, e in zip(rs, margin, errs) if mg < -(e + tolerance)]
    return NevanlinnaReport(f, place, m, alpha, tuple(rs), tuple(t_h), tuple(t_area),
                            tuple(n_vals), tuple(n1_vals), tuple(margin), tuple(margin_area),
                            tuple(errs), tolerance, tuple(flagged))


def degree_obstruction(o: OrbifoldCurve) -> bool:
    """True iff ``deg(K + Delta) <= 0``, i.e. entire orbifold curves are not excluded."""
    if not o.is_compact:
        raise InputError("the degree obstruction applies to compact orbifold curves")
    return canonical_degree(o) <= 0
