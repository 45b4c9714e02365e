"""Hyperbolicity classification, unfoldings, fundamental groups and finite quotients."""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .algebra.places import Place
from .errors import InputError
from .orbifold import (
    INF,
    Disc,
    Multiplicity,
    NonCompactifiable,
    OrbifoldCurve,
    OrbifoldDivisor,
    canonical_degree,
    multiplicity_text,
)


class Reason(str, enum.Enum):
    DEG_POSITIVE = "DEG_POSITIVE"
    ELLIPTIC_EMPTY = "ELLIPTIC_EMPTY"
    P1_AT_MOST_TWO_POINTS = "P1_AT_MOST_TWO_POINTS"
    P1_SPHERICAL_TRIPLE = "P1_SPHERICAL_TRIPLE"
    P1_2222 = "P1_2222"
    DEG_NONPOSITIVE_OTHER = "DEG_NONPOSITIVE_OTHER"
    NONCOMPACTIFIABLE = "NONCOMPACTIFIABLE"
    INFINITE_SUPPORT = "INFINITE_SUPPORT"


# the five triples usually listed next to the inequality 1/p + 1/q + 1/r >= 1
ENUMERATED_TRIPLES = frozenset({(2, 3, 4), (2, 3, 5), (2, 3, 6), (2, 4, 4), (3, 3, 3)})


@dataclass(frozen=True)
class ClassificationVerdict:
    hyperbolic: bool
    classical_hyperbolic: bool
    reason: Reason
    degree: Optional[Fraction]
    notes: tuple[str, ...] = ()


def orbifold_points(o: OrbifoldCurve) -> list[Multiplicity]:
    """Multiplicities of all geometric orbifold points, punctures counted as INF."""
    return sorted(o.delta.geometric_multiplicities() + [INF] * o.punctures)


def _unfoldable(mults: Sequence[Multiplicity], genus: int) -> bool:
    if genus > 0:
        return True
    if len(mults) == 1:
        return False
    if len(mults) == 2:
        return mults[0] == mults[1]
    return True


def unfolding_exists(o: OrbifoldCurve) -> bool:
    """Whether a compact orbifold curve admits a finite étale cover by a curve."""
    if not o.is_compact:
        raise InputError("unfolding existence is decided for compact orbifold curves only")
    return _unfoldable(orbifold_points(o), o.base.genus)


def _triple_sum(triple: Sequence[Multiplicity]) -> Fraction:
    return sum((Fraction(0) if m == INF else Fraction(1, int(m)) for m in triple), Fraction(0))


def classify(o: OrbifoldCurve) -> ClassificationVerdict:
    """Decide (classical) orbifold hyperbolicity by the sign of ``deg(K + Delta)``."""
    if isinstance(o.base, (NonCompactifiable, Disc)):
        return ClassificationVerdict(True, True, Reason.NONCOMPACTIFIABLE, None,
                                     ("the base is not a compact curve minus finitely many points",))
    if o.delta.infinite_support:
        return ClassificationVerdict(True, True, Reason.INFINITE_SUPPORT, None,
                                     ("finite sub-divisors of arbitrarily large degree exist",))
    deg = canonical_degree(o)
    if deg > 0:
        return ClassificationVerdict(True, True, Reason.DEG_POSITIVE, deg)
    genus = o.base.genus
    mults = orbifold_points(o)
    notes: list[str] = []
    if genus == 1:
        assert not mults, "a genus-1 curve with orbifold points has positive degree"
        reason = Reason.ELLIPTIC_EMPTY
    elif genus == 0 and len(mults) <= 2:
        reason = Reason.P1_AT_MOST_TWO_POINTS
    else:
        # only here does the argument go through an étale cover by a compact curve
        assert genus == 0 and _unfoldable(mults, genus)
        if len(mults) == 3:
            reason = Reason.P1_SPHERICAL_TRIPLE
            assert _triple_sum(mults) >= 1
            triple = tuple(mults)
            if triple not in ENUMERATED_TRIPLES:
                shown = ",".join(multiplicity_text(m) for m in triple)
                notes.append(f"triple ({shown}) satisfies 1/p+1/q+1/r >= 1 but is not among the "
                             "five enumerated triples (2,3,4),(2,3,5),(2,3,6),(2,4,4),(3,3,3)")
        elif mults == [2, 2, 2, 2]:
            reason = Reason.P1_2222
        else:
            reason = Reason.DEG_NONPOSITIVE_OTHER
    return ClassificationVerdict(False, False, reason, deg, tuple(notes))


# -- fundamental groups -----------------------------------------------------------

@dataclass(frozen=True)
class Pi1Presentation:
    generators: tuple[str, ...]
    relators: tuple[str, ...]
    abelianization: tuple[int, ...]  # invariant factors; 0 stands for a factor Z
    is_trivial: bool

    def abelianization_text(self) -> str:
        parts = ["Z" if a == 0 else f"Z/{a}" for a in self.abelianization]
        return " x ".join(parts) if parts else "0"


def _abelian_invariants(rows: list[list[int]], ncols: int) -> tuple[int, ...]:
    if ncols == 0:
        return ()
    if not rows:
        return (0,) * ncols
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d != 0]
    torsion = tuple(d for d in nonzero if d != 1)
    return torsion + (0,) * (ncols - len(nonzero))


def _trivial_by_uniformization(o: OrbifoldCurve, mults: list[Multiplicity]) -> bool:
    if isinstance(o.base, Disc):
        return not mults
    if o.base.genus != 0:
        return False
    if len(mults) <= 1:
        return True
    if len(mults) == 2:
        n, m = mults
        return n != INF and m != INF and gcd(int(n), int(m)) == 1
    return False


def pi1_presentation(o: OrbifoldCurve) -> Pi1Presentation:
    """Standard presentation of the orbifold fundamental group."""
    if isinstance(o.base, NonCompactifiable):
        raise InputError("no finite presentation for a non-compactifiable base")
    if o.delta.infinite_support:
        raise InputError("infinite support: the group is not finitely presented in this model")
    mults = orbifold_points(o)
    g = 0 if isinstance(o.base, Disc) else o.base.genus
    gens = [s for i in range(1, g + 1) for s in (f"a{i}", f"b{i}")]
    cs = [f"c{j}" for j in range(1, len(mults) + 1)]
    gens += cs
    relators = []
    rows: list[list[int]] = []
    if not isinstance(o.base, Disc):
        word = "".join(f"[a{i},b{i}]" for i in range(1, g + 1)) + "".join(cs)
        relators.append(word or "1")
        rows.append([0] * (2 * g) + [1] * len(cs))
    for j, m in enumerate(mults):
        if m != INF:
            relators.append(f"{cs[j]}^{m}")
            row = [0] * len(gens)
            row[2 * g + j] = int(m)
            rows.append(row)
    ab = _abelian_invariants(rows, len(gens))
    return Pi1Presentation(tuple(gens), tuple(relators), ab, _trivial_by_uniformization(o, mults))


# -- finite group quotients of P^1 ------------------------------------------------

GROUP_CAP = 120
CLUSTER_TOL = 1e-9


def _mobius(a, b, c, d) -> np.ndarray:
    m = np.array([[a, b], [c, d]], dtype=complex)
    return m / cmath.sqrt(np.linalg.det(m))


def group_generators(preset: str, n: Optional[int] = None) -> list[np.ndarray]:
    """Möbius generators (as SL2 matrices) for a finite rotation group preset."""
    key = preset.lower()
    if key in ("cyclic", "dihedral"):
        if n is None or n < 2:
            raise InputError(f"{preset} needs an order n >= 2")
        zeta = cmath.exp(2j * cmath.pi / n)
        gens = [_mobius(zeta, 0, 0, 1)]
        if key == "dihedral":
            gens.append(_mobius(0, 1, 1, 0))
        return gens
    if key == "tetrahedral":
        return [_mobius(-1, 0, 0, 1), _mobius(1, 1j, 1, -1j)]
    if key == "octahedral":
        return [_mobius(1j, 0, 0, 1), _mobius(1, 1j, 1, -1j)]
    if key == "icosahedral":
        eps = cmath.exp(2j * cmath.pi / 5)
        return [
            _mobius(eps, 0, 0, 1),
            _mobius(0, -1, 1, 0),
            _mobius(-(eps - eps**4), eps**2 - eps**3, eps**2 - eps**3, eps - eps**4),
        ]
    raise InputError(f"unknown group preset {preset!r}")


def _same(m1: np.ndarray, m2: np.ndarray) -> bool:
    return np.allclose(m1, m2, atol=1e-9) or np.allclose(m1, -m2, atol=1e-9)


def close_group(gens: Sequence[np.ndarray], cap: int = GROUP_CAP) -> list[np.ndarray]:
    """All elements of the group generated by ``gens`` (up to sign), by breadth-first closure."""
    elements = [np.eye(2, dtype=complex)]
    frontier = list(elements)
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                cand = g @ e
                if not any(_same(cand, x) for x in elements):
                    elements.append(cand)
                    nxt.append(cand)
                    if len(elements) > cap:
                        raise InputError(f"generators do not close to a group of order <= {cap}")
        frontier = nxt
    return elements


def _to_sphere(z: Optional[complex]) -> np.ndarray:
    if z is None:
        return np.array([0.0, 0.0, 1.0])
    d = 1 + abs(z) ** 2
    return np.array([2 * z.real / d, 2 * z.imag / d, (abs(z) ** 2 - 1) / d])


def _apply(m: np.ndarray, z: Optional[complex]) -> Optional[complex]:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if z is None:
        return None if abs(c) < 1e-12 else a / c
    den = c * z + d
    if abs(den) < 1e-12:
        return None
    return (a * z + b) / den


def _fixed_points(m: np.ndarray) -> list[Optional[complex]]:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if abs(c) < 1e-12:
        return [None, b / (d - a)] if abs(d - a) > 1e-12 else [None]
    disc = cmath.sqrt((a - d) ** 2 + 4 * b * c)
    return [(a - d + disc) / (2 * c), (a - d - disc) / (2 * c)]


@dataclass(frozen=True)
class OrbitData:
    representative: Optional[complex]
    orbit_size: int
    stabilizer: int


@dataclass(frozen=True)
class QuotientSignature:
    order: int
    orbits: tuple[OrbitData, ...]
    multiplicities: tuple[int, ...]
    divisor: OrbifoldDivisor = field(compare=False)


def quotient_signature(preset: str, n: Optional[int] = None) -> QuotientSignature:
    """Branch data of ``P^1 -> P^1/G``: stabilizer orders of the special orbits.

    The quotient is normalized so that the branch values sit at ``0, inf`` (two
    orbits) or ``0, 1, inf`` (three orbits), in increasing multiplicity.
    """
    elements = close_group(group_generators(preset, n))
    order = len(elements)
    points: list[tuple[np.ndarray, Optional[complex]]] = []
    for e in elements[1:]:
        for z in _fixed_points(e):
            v = _to_sphere(z)
            if not any(np.linalg.norm(v - w) < CLUSTER_TOL for w, _ in points):
                points.append((v, z))
    orbits = []
    seen: list[np.ndarray] = []
    for v, z in points:
        if any(np.linalg.norm(v - w) < CLUSTER_TOL for w in seen):
            continue
        orbit: list[np.ndarray] = []
        for e in elements:
            w = _to_sphere(_apply(e, z))
            if not any(np.linalg.norm(w - u) < CLUSTER_TOL for u in orbit):
                orbit.append(w)
        stab = sum(1 for e in elements if np.linalg.norm(_to_sphere(_apply(e, z)) - v) < CLUSTER_TOL)
        if len(orbit) * stab != order:
            raise InputError("orbit-stabilizer check failed; numeric clustering is unreliable")
        seen.extend(orbit)
        orbits.append(OrbitData(z, len(orbit), stab))
    mults = tuple(sorted(o.stabilizer for o in orbits if o.stabilizer > 1))
    slots = {2: [Place.at(0), Place.at(None)],
             3: [Place.at(0), Place.at(1), Place.at(None)]}.get(len(mults))
    if slots is None:
        raise InputError(f"unexpected number of branch orbits: {len(mults)}")
    divisor = OrbifoldDivisor(zip(slots, mults))
    return QuotientSignature(order, tuple(orbits), mults, divisor)
