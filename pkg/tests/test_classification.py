import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbicurve.classification import (
    Reason,
    classify,
    close_group,
    group_generators,
    pi1_presentation,
    quotient_signature,
    unfolding_exists,
)
from orbicurve.errors import InputError
from orbicurve.function_field import EllipticCurve
from orbicurve.orbifold import (
    INF,
    AbstractPoint,
    CompactGenus,
    Disc,
    Elliptic,
    NonCompactifiable,
    P1,
    OrbifoldCurve,
    OrbifoldDivisor,
    canonical_degree,
    p1_orbifold,
)

TORUS = Elliptic(EllipticCurve("x^3 - x"))


def p1(*mults, punctures=0):
    """(P^1; m_1, ..., m_k) with the points placed at 0, 1, 2, ..."""
    return p1_orbifold({k: m for k, m in enumerate(mults)}, punctures=punctures)


# -- classifier ------------------------------------------------------------------------------

def test_classify_examples():
    v = classify(OrbifoldCurve(TORUS, OrbifoldDivisor()))
    assert (v.hyperbolic, v.reason) == (False, Reason.ELLIPTIC_EMPTY)
    v = classify(p1(2, 3, 6))
    assert (v.hyperbolic, v.reason, v.degree) == (False, Reason.P1_SPHERICAL_TRIPLE, 0)
    v = classify(p1(2, 3, 7))
    assert (v.hyperbolic, v.reason, v.degree) == (True, Reason.DEG_POSITIVE, Fraction(1, 42))
    v = classify(p1(2, 2, 2, 2))
    assert (v.hyperbolic, v.reason) == (False, Reason.P1_2222)


def test_classify_special_bases():
    assert classify(OrbifoldCurve(NonCompactifiable(), OrbifoldDivisor())).reason is Reason.NONCOMPACTIFIABLE
    v = classify(OrbifoldCurve(Disc(), OrbifoldDivisor()))
    assert v.hyperbolic and v.degree is None
    v = classify(OrbifoldCurve(TORUS, OrbifoldDivisor(infinite_support=True)))
    assert v.hyperbolic and v.reason is Reason.INFINITE_SUPPORT


def test_classify_punctures():
    assert not classify(p1(punctures=2)).hyperbolic          # C*
    assert classify(p1(punctures=3)).hyperbolic              # P^1 minus three points
    assert classify(p1(2, 2, punctures=1)).reason is Reason.P1_SPHERICAL_TRIPLE  # (2,2,inf)
    assert classify(p1(2, 2, 2, punctures=1)).hyperbolic
    assert classify(p1(2, 3, punctures=1)).hyperbolic
    assert classify(OrbifoldCurve(TORUS, OrbifoldDivisor(), punctures=1)).hyperbolic


def test_off_list_triples_are_noted():
    v = classify(p1(2, 3, 3))
    assert not v.hyperbolic and v.notes
    assert not classify(p1(2, 4, 4)).notes
    v = classify(p1(2, 2, 17))
    assert not v.hyperbolic and v.reason is Reason.P1_SPHERICAL_TRIPLE and v.notes


def test_classification_is_consistent():
    for o in (p1(2, 3, 7), p1(3, 3, 3), OrbifoldCurve(CompactGenus(2), OrbifoldDivisor())):
        v = classify(o)
        assert v.hyperbolic == v.classical_hyperbolic


mults = st.one_of(st.integers(2, 12), st.just(INF))


@given(st.lists(mults, max_size=6), st.integers(0, 2), st.integers(0, 2))
def test_classify_matches_degree_sign(ms, genus, punctures):
    base = TORUS if genus == 1 else CompactGenus(genus)
    points = [f"p{k}" for k in range(len(ms))]
    if genus == 0:
        o = p1(*ms, punctures=punctures)
    else:
        o = OrbifoldCurve(base, OrbifoldDivisor({AbstractPoint(p): m for p, m in zip(points, ms)}),
                          punctures)
    v = classify(o)
    assert v.hyperbolic == (canonical_degree(o) > 0)
    assert v.hyperbolic == v.classical_hyperbolic


def test_triple_scan_up_to_50():
    for p in range(2, 51):
        for q in range(p, 51):
            for r in range(q, 51):
                nonhyp = Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1
                if nonhyp or r < q + 3:  # every non-hyperbolic triple plus a band of the rest
                    assert classify(p1(p, q, r)).hyperbolic is not nonhyp, (p, q, r)


# -- unfoldings ----------------------------------------------------------------------------

def test_unfolding_exists_examples():
    assert not unfolding_exists(p1(3))
    assert not unfolding_exists(p1(2, 4))
    assert unfolding_exists(p1(2, 2))
    assert unfolding_exists(p1(2, 3, 7))
    assert unfolding_exists(OrbifoldCurve(TORUS, OrbifoldDivisor({})))
    with pytest.raises(InputError):
        unfolding_exists(p1(2, punctures=1))


@pytest.mark.parametrize("n", range(2, 13))
@pytest.mark.parametrize("m", range(2, 13))
def test_unfolding_exceptions_two_points(n, m):
    assert unfolding_exists(p1(n, m)) is (n == m)
    assert not unfolding_exists(p1(n))


# -- fundamental groups -----------------------------------------------------------------------

def test_pi1_examples():
    pres = pi1_presentation(p1(2, 4))
    assert not pres.is_trivial and pres.abelianization_text() == "Z/2"
    assert pi1_presentation(p1(2, 3)).is_trivial
    pres = pi1_presentation(OrbifoldCurve(TORUS, OrbifoldDivisor()))
    assert pres.generators == ("a1", "b1") and pres.relators == ("[a1,b1]",)
    assert not pres.is_trivial and pres.abelianization == (0, 0)


def test_pi1_presentation_shape():
    pres = pi1_presentation(OrbifoldCurve(CompactGenus(2), OrbifoldDivisor(), punctures=1))
    assert len(pres.generators) == 5 and len(pres.relators) == 1
    pres = pi1_presentation(p1(2, 3, 7))
    assert len(pres.relators) == 1 + 3 and pres.abelianization == ()
    pres = pi1_presentation(p1(INF, INF))
    assert pres.abelianization == (0,) and not pres.is_trivial
    assert pi1_presentation(p1(INF)).is_trivial
    assert pi1_presentation(OrbifoldCurve(Disc(), OrbifoldDivisor())).is_trivial
    with pytest.raises(InputError):
        pi1_presentation(OrbifoldCurve(TORUS, OrbifoldDivisor(infinite_support=True)))


@pytest.mark.parametrize("n", range(2, 13))
def test_pi1_single_point_trivial(n):
    assert pi1_presentation(p1(n)).is_trivial


@given(st.integers(2, 40), st.integers(2, 40))
def test_pi1_two_points(n, m):
    pres = pi1_presentation(p1(n, m))
    assert pres.is_trivial is (gcd(n, m) == 1)
    g = gcd(n, m)
    assert pres.abelianization == (() if g == 1 else (g,))


# -- quotients by finite rotation groups --------------------------------------------------------

def _oracle_dihedral(n: int, dihedral: bool) -> list[int]:
    """Stabilizer orders from closed-form elements: z -> w z and z -> w / z."""
    roots = [cmath.exp(2j * cmath.pi * k / n) for k in range(n)]
    maps = [("rot", w) for w in roots] + ([("ref", w) for w in roots] if dihedral else [])

    def act(g, z):
        kind, w = g
        if z is None:
            return None if kind == "rot" else 0j
        if kind == "rot":
            return w * z
        return None if abs(z) < 1e-12 else w / z

    def same(a, b):
        return (a is None and b is None) or (a is not None and b is not None and abs(a - b) < 1e-9)

    fixed = [None, 0j] + [cmath.sqrt(w) * s for w in roots for s in (1, -1)] if dihedral else [None, 0j]
    stabs, seen = [], []
    for z in fixed:
        if any(same(z, y) for y in seen):
            continue
        orbit = []
        for g in maps:
            w = act(g, z)
            if not any(same(w, y) for y in orbit):
                orbit.append(w)
        seen.extend(orbit)
        stab = sum(1 for g in maps if same(act(g, z), z))
        if stab > 1:
            stabs.append(stab)
    return sorted(stabs)


@pytest.mark.parametrize("preset, n, mults, order", [
    ("cyclic", 4, (4, 4), 4), ("cyclic", 7, (7, 7), 7), ("dihedral", 3, (2, 2, 3), 6),
    ("dihedral", 2, (2, 2, 2), 4), ("dihedral", 5, (2, 2, 5), 10),
    ("tetrahedral", None, (2, 3, 3), 12), ("octahedral", None, (2, 3, 4), 24),
    ("icosahedral", None, (2, 3, 5), 60),
])
def test_quotient_signatures(preset, n, mults, order):
    sig = quotient_signature(preset, n)
    assert sig.multiplicities == mults and sig.order == order
    assert canonical_degree(OrbifoldCurve(P1(), sig.divisor)) < 0
    if preset in ("cyclic", "dihedral"):
        assert list(mults) == _oracle_dihedral(n, preset == "dihedral")


def test_cyclic_branch_points_are_zero_and_infinity():
    sig = quotient_signature("cyclic", 4)
    fixed = sorted((o.representative is None, o.stabilizer) for o in sig.orbits)
    assert fixed == [(False, 4), (True, 4)]
    assert all(o.representative is None or abs(o.representative) < 1e-12 for o in sig.orbits)


def test_group_preset_errors():
    with pytest.raises(InputError):
        quotient_signature("cyclic", 1)
    with pytest.raises(InputError):
        group_generators("bogus")
    with pytest.raises(InputError):
        close_group(group_generators("cyclic", 200))
