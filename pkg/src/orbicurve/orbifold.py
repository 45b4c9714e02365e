"""Orbifold curves ``(X / Delta)``: multiplicities, orbifold divisors, canonical degree."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional, Union

import numpy as np

from .algebra.places import Divisor, Place
from .errors import InputError
from .function_field import EllipticCurve

INF = math.inf
Multiplicity = Union[int, float]  # an int >= 2, or INF


def check_multiplicity(m: Any, *, allow_one: bool = False) -> Multiplicity:
    """Validate and normalize a multiplicity (``"inf"`` is accepted for INF)."""
    if isinstance(m, str):
        if m.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        try:
            m = int(m.strip())
        except ValueError:
            raise InputError(f"invalid multiplicity {m!r}") from None
    if m == INF:
        return INF
    if isinstance(m, bool) or not isinstance(m, (int, Fraction)) or int(m) != m:
        raise InputError(f"multiplicity must be an integer or 'inf', got {m!r}")
    m = int(m)
    if m < (1 if allow_one else 2):
        raise InputError(f"multiplicity must be at least {1 if allow_one else 2}, got {m}")
    return m


def weight(m: Multiplicity) -> Fraction:
    """``1 - 1/m``; the infinite multiplicity has weight 1."""
    return Fraction(1) if m == INF else 1 - Fraction(1, int(m))


def multiplicity_from_weight(w: Fraction) -> Multiplicity:
    if w == 1:
        return INF
    m = 1 / (1 - Fraction(w))
    if m.denominator != 1 or m < 1:
        raise InputError(f"{w} is not an orbifold weight 1 - 1/m")
    return int(m)


def multiplicity_text(m: Multiplicity) -> str:
    return "inf" if m == INF else str(int(m))


@dataclass(frozen=True)
class AbstractPoint:
    """A labelled rational point on a base curve without explicit coordinates."""

    label: str

    @property
    def degree(self) -> int:
        return 1

    def sort_key(self) -> tuple:
        return (2, self.label)

    def __str__(self) -> str:
        return self.label


class OrbifoldDivisor:
    """Finite map place -> multiplicity, plus a flag for an infinite support.

    Multiplicity-1 entries are dropped at construction.
    """

    __slots__ = ("_terms", "infinite_support")

    def __init__(self, terms: Union[Mapping, Iterable] = (), infinite_support: bool = False):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for place, m in items:
            m = check_multiplicity(m, allow_one=True)
            if place in acc:
                raise InputError(f"place {place} listed twice")
            if m != 1:
                acc[place] = m
        object.__setattr__(self, "_terms", acc)
        object.__setattr__(self, "infinite_support", bool(infinite_support))

    def __setattr__(self, name, value):
        raise AttributeError("OrbifoldDivisor is immutable")

    @classmethod
    def from_weights(cls, weights: Union[Divisor, Mapping]) -> "OrbifoldDivisor":
        items = weights.items()
        return cls({p: multiplicity_from_weight(w) for p, w in items})

    def items(self) -> list[tuple[Any, Multiplicity]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list:
        return [p for p, _ in self.items()]

    def multiplicity(self, place) -> Multiplicity:
        return self._terms.get(place, 1)

    def weight(self, place) -> Fraction:
        return weight(self._terms[place]) if place in self._terms else Fraction(0)

    def __contains__(self, place) -> bool:
        return place in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms) or self.infinite_support

    def as_divisor(self) -> Divisor:
        """The Q-divisor ``sum (1 - 1/m) [p]``."""
        return Divisor({p: weight(m) for p, m in self._terms.items()})

    def finite_part(self) -> "OrbifoldDivisor":
        return OrbifoldDivisor({p: m for p, m in self._terms.items() if m != INF})

    def infinite_places(self) -> list:
        return [p for p, m in self.items() if m == INF]

    def weight_degree(self) -> Fraction:
        return self.as_divisor().degree()

    def with_multiplicity(self, place, m: Multiplicity) -> "OrbifoldDivisor":
        terms = dict(self._terms)
        terms.pop(place, None)
        terms[place] = m
        return OrbifoldDivisor(terms, self.infinite_support)

    def geometric_multiplicities(self) -> list[Multiplicity]:
        """Multiplicities repeated once per geometric point, sorted ascending."""
        out: list[Multiplicity] = []
        for p, m in self._terms.items():
            out.extend([m] * p.degree)
        return sorted(out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, OrbifoldDivisor) and self._terms == other._terms
                and self.infinite_support == other.infinite_support)

    def __hash__(self) -> int:
        return hash((frozenset(self._terms.items()), self.infinite_support))

    def to_text(self) -> str:
        if not self._terms:
            return "0" if not self.infinite_support else "(infinite support)"
        body = " + ".join(f"{weight(m)}*[{p}]" for p, m in self.items())
        return body + (" + (infinite support)" if self.infinite_support else "")

    __str__ = to_text

    def __repr__(self) -> str:
        return f"OrbifoldDivisor({self.to_text()})"


EMPTY = OrbifoldDivisor()


def divisor_leq(a: OrbifoldDivisor, b: OrbifoldDivisor) -> bool:
    """Pointwise ``weight_a <= weight_b``."""
    if a.infinite_support and not b.infinite_support:
        return False
    return all(w <= b.weight(p) for p, w in a.as_divisor().items())


def divisor_max(a: OrbifoldDivisor, b: OrbifoldDivisor) -> OrbifoldDivisor:
    """Pointwise maximum of weights (the join for ``divisor_leq``)."""
    terms = dict(a.items())
    for p, m in b.items():
        terms[p] = max(terms.get(p, 1), m)
    return OrbifoldDivisor(terms, a.infinite_support or b.infinite_support)


# -- base curves ---------------------------------------------------------------

@dataclass(frozen=True)
class P1:
    kind = "P1"

    @property
    def genus(self) -> int:
        return 0


@dataclass(frozen=True)
class Elliptic:
    curve: EllipticCurve
    kind = "elliptic"

    @property
    def genus(self) -> int:
        return 1


@dataclass(frozen=True)
class Disc:
    """The unit disc; not compactifiable by adding finitely many points."""

    kind = "disc"

    @property
    def genus(self) -> None:
        return None


@dataclass(frozen=True)
class CompactGenus:
    g: int
    kind = "genus"

    def __post_init__(self):
        if isinstance(self.g, bool) or not isinstance(self.g, int) or self.g < 0:
            raise InputError(f"genus must be a nonnegative integer, got {self.g!r}")

    @property
    def genus(self) -> int:
        return self.g


@dataclass(frozen=True)
class NonCompactifiable:
    """A curve that is not a compact curve minus finitely many points."""

    kind = "noncompactifiable"

    @property
    def genus(self) -> None:
        return None


BaseCurve = Union[P1, Elliptic, Disc, CompactGenus, NonCompactifiable]


def place_inside_disc(place) -> bool:
    """True when some geometric point of a place of the z-line lies in |z| < 1."""
    if not isinstance(place, Place) or place.is_infinity:
        return False
    if place.degree == 1:
        return abs(place.rational_value()) < 1
    roots = np.roots([float(c) for c in reversed(place.poly.coeffs)])
    return bool(np.any(np.abs(roots) < 1))


@dataclass(frozen=True)
class OrbifoldCurve:
    """An orbifold curve: base curve, orbifold divisor, and a count of punctures.

    Punctures are weight-1 points removed from a compact model; they can also be
    given as places of infinite multiplicity in ``delta``.
    """

    base: BaseCurve = field(default_factory=P1)
    delta: OrbifoldDivisor = EMPTY
    punctures: int = 0

    def __post_init__(self):
        if isinstance(self.punctures, bool) or not isinstance(self.punctures, int) or self.punctures < 0:
            raise InputError(f"punctures must be a nonnegative integer, got {self.punctures!r}")
        for p in self.delta.support():
            _check_place_for_base(self.base, p)

    @property
    def is_compact(self) -> bool:
        if isinstance(self.base, (Disc, NonCompactifiable)):
            return False
        return self.punctures == 0 and not self.delta.infinite_places() and not self.delta.infinite_support

    @property
    def puncture_count(self) -> int:
        """Punctures plus geometric points of infinite multiplicity."""
        return self.punctures + sum(p.degree for p in self.delta.infinite_places())


def _check_place_for_base(base: BaseCurve, place) -> None:
    if isinstance(base, P1):
        ok = isinstance(place, Place)
    elif isinstance(base, Disc):
        ok = isinstance(place, Place) and place_inside_disc(place)
    else:
        ok = isinstance(place, AbstractPoint)
    if not ok:
        raise InputError(f"place {place} is not a valid point of a {base.kind} base")


def canonical_degree(o: OrbifoldCurve) -> Fraction:
    """``deg(K + Delta) = 2g - 2 + sum weights + punctures``."""
    if isinstance(o.base, (Disc, NonCompactifiable)):
        raise InputError(f"canonical degree is undefined for a {o.base.kind} base")
    if o.delta.infinite_support:
        raise InputError("canonical degree is undefined for an infinite support")
    return 2 * o.base.genus - 2 + o.delta.weight_degree() + o.punctures


def blowup_exceptional_threshold(pairs: Iterable[tuple[Multiplicity, int]]
                                 ) -> tuple[Union[Fraction, float], Multiplicity]:
    """Threshold for the exceptional divisor of a blow-up.

    ``pairs`` lists ``(n_i, d_i)``: multiplicity of a component through the blown-up
    point and its order ``d_i`` there. Returns ``(m, k_min)`` with ``m = max n_i/d_i``
    and ``k_min = ceil(m)`` the smallest integer multiplicity whose weight reaches
    ``1 - 1/m`` (1 when no condition arises, INF when some ``n_i`` is infinite).
    """
    pairs = list(pairs)
    if not pairs:
        raise InputError("blow-up threshold needs at least one component")
    best: Union[Fraction, float] = Fraction(0)
    for n, d in pairs:
        n = check_multiplicity(n, allow_one=True)
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise InputError(f"order d must be a positive integer, got {d!r}")
        ratio = INF if n == INF else Fraction(n, d)
        best = max(best, ratio)
    if best == INF:
        return INF, INF
    return best, max(1, math.ceil(best))


# -- JSON documents -------------------------------------------------------------

BASE_KINDS = ("P1", "elliptic", "disc", "genus", "noncompactifiable")


def base_from_json(doc: Mapping) -> BaseCurve:
    if not isinstance(doc, Mapping) or "kind" not in doc:
        raise InputError("base must be an object with a 'kind' field")
    kind = doc["kind"]
    if kind == "P1":
        return P1()
    if kind == "elliptic":
        return Elliptic(EllipticCurve(str(doc.get("h", ""))))
    if kind == "disc":
        return Disc()
    if kind == "genus":
        return CompactGenus(doc.get("g"))
    if kind == "noncompactifiable":
        return NonCompactifiable()
    raise InputError(f"unknown base kind {kind!r}; expected one of {', '.join(BASE_KINDS)}")


def base_to_json(base: BaseCurve) -> dict:
    out: dict = {"kind": base.kind}
    if isinstance(base, Elliptic):
        out["h"] = base.curve.h.to_text("x")
    elif isinstance(base, CompactGenus):
        out["g"] = base.g
    return out


def parse_place(text: str, base: BaseCurve):
    if not isinstance(text, str):
        raise InputError(f"place must be a string, got {text!r}")
    if isinstance(base, (P1, Disc)):
        return Place.parse(text)
    return AbstractPoint(text.strip())


def place_text(place) -> str:
    return place.to_text() if isinstance(place, Place) else str(place)


def orbifold_from_json(doc: Mapping) -> OrbifoldCurve:
    """Build an orbifold curve from its JSON document form."""
    if not isinstance(doc, Mapping):
        raise InputError("orbifold document must be a JSON object")
    unknown = set(doc) - {"base", "divisor", "punctures", "infinite_support"}
    if unknown:
        raise InputError(f"unknown orbifold fields: {', '.join(sorted(unknown))}")
    base = base_from_json(doc.get("base", {"kind": "P1"}))
    terms = []
    for entry in doc.get("divisor", []):
        if not isinstance(entry, Mapping) or "place" not in entry or "mult" not in entry:
            raise InputError("divisor entries need 'place' and 'mult'")
        terms.append((parse_place(entry["place"], base), check_multiplicity(entry["mult"], allow_one=True)))
    infinite = doc.get("infinite_support", False)
    if not isinstance(infinite, bool):
        raise InputError("infinite_support must be a boolean")
    return OrbifoldCurve(base, OrbifoldDivisor(terms, infinite), doc.get("punctures", 0))


def divisor_to_json(delta: OrbifoldDivisor) -> list[dict]:
    return [{"place": place_text(p), "mult": m if m != INF else "inf"} for p, m in delta.items()]


def orbifold_to_json(o: OrbifoldCurve) -> dict:
    return {
        "base": base_to_json(o.base),
        "divisor": divisor_to_json(o.delta),
        "punctures": o.punctures,
        "infinite_support": o.delta.infinite_support,
    }


def p1_orbifold(points: Mapping[Optional[Union[int, Fraction, str]], Multiplicity] = (),
                punctures: int = 0) -> OrbifoldCurve:
    """Convenience: an orbifold on P^1 from ``{value or None or text: multiplicity}``."""
    terms = []
    items = points.items() if isinstance(points, Mapping) else points
    for key, m in items:
        place = Place.parse(key) if isinstance(key, str) else Place.at(key)
        terms.append((place, m))
    return OrbifoldCurve(P1(), OrbifoldDivisor(terms), punctures)
