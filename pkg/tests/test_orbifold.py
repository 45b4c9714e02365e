import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbicurve.algebra import INFINITY, Place
from orbicurve.errors import InputError
from orbicurve.function_field import EllipticCurve
from orbicurve.orbifold import (
    EMPTY,
    INF,
    AbstractPoint,
    CompactGenus,
    Disc,
    Elliptic,
    NonCompactifiable,
    OrbifoldCurve,
    OrbifoldDivisor,
    P1,
    blowup_exceptional_threshold,
    canonical_degree,
    check_multiplicity,
    divisor_leq,
    divisor_max,
    orbifold_from_json,
    orbifold_to_json,
    p1_orbifold,
    place_inside_disc,
    weight,
)
from strategies import orbifold_divisors, places


def test_multiplicity_and_weight():
    assert weight(2) == Fraction(1, 2)
    assert weight(INF) == 1
    assert check_multiplicity("inf") == INF
    assert check_multiplicity(" 7 ") == 7
    for bad in (1, 0, -3, "x", 2.5, True):
        with pytest.raises(InputError):
            check_multiplicity(bad)
    assert check_multiplicity(1, allow_one=True) == 1


def test_multiplicity_one_is_dropped():
    d = OrbifoldDivisor({Place.at(0): 1, Place.at(1): 3})
    assert d.support() == [Place.at(1)]
    assert d.multiplicity(Place.at(0)) == 1


@pytest.mark.parametrize("o, expected", [
    (p1_orbifold(), Fraction(-2)),
    (p1_orbifold({0: 2, 1: 3, None: 7}), Fraction(1, 42)),
    (OrbifoldCurve(Elliptic(EllipticCurve("x^3 - x")), OrbifoldDivisor()), Fraction(0)),
    (OrbifoldCurve(CompactGenus(3), OrbifoldDivisor()), Fraction(4)),
    (p1_orbifold({0: 2}, punctures=2), Fraction(1, 2)),
    (p1_orbifold({"z^2 + 1": 2}), Fraction(-1)),
])
def test_canonical_degree_examples(o, expected):
    assert canonical_degree(o) == expected


def test_canonical_degree_errors():
    with pytest.raises(InputError):
        canonical_degree(OrbifoldCurve(Disc(), OrbifoldDivisor()))
    with pytest.raises(InputError):
        canonical_degree(OrbifoldCurve(NonCompactifiable(), OrbifoldDivisor()))
    with pytest.raises(InputError):
        canonical_degree(OrbifoldCurve(P1(), OrbifoldDivisor(infinite_support=True)))


def test_compactness():
    assert p1_orbifold({0: 2}).is_compact
    assert not p1_orbifold({0: INF}).is_compact
    assert not p1_orbifold({}, punctures=1).is_compact
    assert p1_orbifold({0: INF}, punctures=1).puncture_count == 2


@given(orbifold_divisors(), places(range(3, 6)), st.integers(2, 9))
def test_canonical_degree_additive(d, place, m):
    base = OrbifoldCurve(P1(), d)
    raised = OrbifoldCurve(P1(), d.with_multiplicity(place, m))
    assert canonical_degree(raised) - canonical_degree(base) == weight(m) - d.weight(place)


def test_divisor_leq_examples():
    a, b = OrbifoldDivisor({Place.at(0): 2}), OrbifoldDivisor({Place.at(0): 3})
    assert divisor_leq(EMPTY, b)
    assert divisor_leq(a, b)
    assert not divisor_leq(b, OrbifoldDivisor({Place.at(1): 2}))


def test_divisor_max_examples():
    a, b = OrbifoldDivisor({Place.at(0): 2}), OrbifoldDivisor({Place.at(0): 3})
    c = OrbifoldDivisor({Place.at(1): 2})
    assert divisor_max(EMPTY, b) == b
    assert divisor_max(a, b) == b
    assert divisor_max(a, c) == OrbifoldDivisor({Place.at(0): 2, Place.at(1): 2})


@given(orbifold_divisors(), orbifold_divisors(), orbifold_divisors())
def test_partial_order_and_join(a, b, c):
    assert divisor_leq(a, a)
    if divisor_leq(a, b) and divisor_leq(b, a):
        assert a == b
    if divisor_leq(a, b) and divisor_leq(b, c):
        assert divisor_leq(a, c)
    j = divisor_max(a, b)
    assert divisor_leq(a, j) and divisor_leq(b, j)
    if divisor_leq(a, c) and divisor_leq(b, c):
        assert divisor_leq(j, c)


@pytest.mark.parametrize("pairs, m, k", [
    ([(2, 1)], Fraction(2), 2),
    ([(2, 1), (3, 2)], Fraction(2), 2),
    ([(5, 2)], Fraction(5, 2), 3),
    ([(INF, 3), (2, 1)], INF, INF),
    ([(1, 2)], Fraction(1, 2), 1),
])
def test_blowup_threshold_examples(pairs, m, k):
    assert blowup_exceptional_threshold(pairs) == (m, k)


def test_blowup_threshold_errors():
    with pytest.raises(InputError):
        blowup_exceptional_threshold([])
    with pytest.raises(InputError):
        blowup_exceptional_threshold([(2, 0)])


@given(st.lists(st.tuples(st.integers(1, 30), st.integers(1, 8)), min_size=1, max_size=5))
def test_blowup_threshold_is_minimal(pairs):
    m, k = blowup_exceptional_threshold(pairs)
    assert m == max(Fraction(n, d) for n, d in pairs)
    if m >= 1:
        assert 1 - Fraction(1, k) >= 1 - 1 / m
    if k >= 3:
        assert 1 - Fraction(1, k - 1) < 1 - 1 / m
    assert k == max(1, math.ceil(m))


def test_json_round_trip():
    doc = {"base": {"kind": "P1"}, "divisor": [{"place": "z", "mult": 2},
                                               {"place": "z^2 + 1", "mult": "inf"}],
           "punctures": 1, "infinite_support": False}
    o = orbifold_from_json(doc)
    assert orbifold_from_json(orbifold_to_json(o)) == o
    assert o.delta.multiplicity(Place.parse("z^2+1")) == INF


@pytest.mark.parametrize("doc", [
    {"base": {"kind": "torus"}},
    {"base": {"kind": "P1"}, "divisor": [{"place": "z^2 - 1", "mult": 2}]},
    {"base": {"kind": "P1"}, "divisor": [{"place": "z", "mult": 0}]},
    {"base": {"kind": "P1"}, "extra": 1},
    {"base": {"kind": "genus", "g": -1}},
    {"base": {"kind": "disc"}, "divisor": [{"place": "z - 2", "mult": 2}]},
    {"base": {"kind": "P1"}, "punctures": -1},
])
def test_json_rejects_bad_documents(doc):
    with pytest.raises(InputError):
        orbifold_from_json(doc)


def test_abstract_points_on_other_bases():
    o = orbifold_from_json({"base": {"kind": "genus", "g": 2},
                            "divisor": [{"place": "p", "mult": 3}]})
    assert o.delta.support() == [AbstractPoint("p")]
    assert canonical_degree(o) == 2 + Fraction(2, 3)


def test_place_inside_disc():
    assert place_inside_disc(Place.at(Fraction(1, 2)))
    assert not place_inside_disc(Place.at(1))
    assert not place_inside_disc(INFINITY)
    assert place_inside_disc(Place.parse("z^2 + 1/4"))
