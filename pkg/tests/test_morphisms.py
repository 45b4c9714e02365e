from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from orbicurve.algebra import INFINITY, Divisor, Place, RationalMap, pullback_place
from orbicurve.algebra.bivariate import MapFamily
from orbicurve.errors import InputError, PremiseError
from orbicurve.morphisms import (
    MorphismMode,
    check_morphism,
    composition_rule_check,
    critical_values,
    degree_inequality_check,
    divisor_criterion,
    etale_check,
    limit_closure_check,
    local_condition,
    orbifold_base,
    ramification_divisor,
)
from orbicurve.orbifold import (
    INF,
    Disc,
    OrbifoldCurve,
    OrbifoldDivisor,
    P1,
    canonical_degree,
    divisor_leq,
    divisor_max,
    p1_orbifold,
)
from strategies import orbifold_divisors, rational_maps

NC, CL = MorphismMode.NONCLASSICAL, MorphismMode.CLASSICAL
ZERO, ONE, INFTY = Place.at(0), Place.at(1), INFINITY


def f_(text: str) -> RationalMap:
    return RationalMap.parse(text)


def disc(points=None) -> OrbifoldCurve:
    return OrbifoldCurve(Disc(), OrbifoldDivisor({Place.at(k): m for k, m in (points or {}).items()}))


# -- local condition -------------------------------------------------------------------

@pytest.mark.parametrize("n, d, m, mode, expected", [
    (1, 5, 3, NC, True), (2, 1, 2, CL, True), (1, 2, 4, NC, False), (1, 2, 4, CL, False),
    (1, 3, 2, CL, False), (3, 1, 2, NC, True), (INF, 1, 5, CL, True), (5, 1, INF, NC, False),
    (INF, 2, INF, NC, True),
])
def test_local_condition(n, d, m, mode, expected):
    assert local_condition(n, d, m, mode) is expected


def test_mode_parse():
    assert MorphismMode.parse("Non-Classical") is NC
    with pytest.raises(InputError):
        MorphismMode.parse("weird")


# -- check_morphism --------------------------------------------------------------------------

def test_check_morphism_examples():
    assert check_morphism(f_("z"), p1_orbifold({0: 3}), p1_orbifold({0: 2}), NC).ok
    assert check_morphism(f_("z^2"), p1_orbifold(), p1_orbifold({0: 2, None: 2}), NC).ok
    v = check_morphism(f_("z"), p1_orbifold(), p1_orbifold({0: 2}), NC)
    assert not v.ok
    (w,) = v.failures
    assert (w.source, w.target, w.d, w.n, w.m) == (ZERO, ZERO, 1, 1, 2)


def test_check_morphism_identity_iff():
    for n in range(2, 7):
        for m in range(2, 7):
            assert check_morphism(f_("z"), p1_orbifold({0: n}), p1_orbifold({0: m}), NC).ok is (n >= m)


def test_check_morphism_infinite_target():
    # C -> C*: z^2 + 1 omits no finite value, so the puncture at 0 is hit
    source = p1_orbifold({None: INF})
    assert check_morphism(f_("z^2 + 1"), source, p1_orbifold({0: INF, None: INF}), NC).ok is False
    # 1/(z^2 + 1) on P1 minus {+-i, inf} never takes the value 0
    src = p1_orbifold({"z^2 + 1": INF, None: INF})
    assert check_morphism(f_("1/(z^2 + 1)"), src, p1_orbifold({0: INF}), NC).ok


def test_check_morphism_rejects_constant_and_counters():
    with pytest.raises(InputError):
        check_morphism(f_("3"), p1_orbifold(), p1_orbifold())
    with pytest.raises(InputError):
        check_morphism(f_("z"), p1_orbifold({}, punctures=1), p1_orbifold())


def test_disc_source_ignores_outside_points():
    # z^2 - 4 vanishes only at +-2, outside the disc
    assert check_morphism(f_("z^2 - 4"), disc(), OrbifoldCurve(Disc(), OrbifoldDivisor()), NC).ok
    assert check_morphism(f_("(z - 2)*z^2"), disc(), p1_orbifold({0: 2}), NC).ok
    assert not check_morphism(f_("(z - 1/2)*z^2"), disc(), p1_orbifold({0: 2}), NC).ok


# -- ramification and composition ------------------------------------------------------------

@pytest.mark.parametrize("f, expected", [
    ("z^2", {ZERO: 1, INFTY: 1}),
    ("z^3 - 3*z", {ONE: 1, Place.at(-1): 1, INFTY: 2}),
    ("z", {}),
    ("1/z^3", {ZERO: 2, INFTY: 2}),
    ("(z^2 + 1)/z", {ONE: 1, Place.at(-1): 1}),
    ("z^2/(z - 1)", {ZERO: 1, Place.at(2): 1}),
])
def test_ramification_examples(f, expected):
    assert ramification_divisor(f_(f)) == Divisor(expected)


@given(rational_maps())
def test_riemann_hurwitz(f):
    assert ramification_divisor(f).degree() == 2 * f.degree - 2


def test_composition_examples():
    c = composition_rule_check(f_("z^2"), f_("z^3"))
    assert c.equal and c.lhs == Divisor({ZERO: 5, INFTY: 5})
    g = f_("(z^3 + 2)/(z - 1)")
    c = composition_rule_check(f_("z"), g)
    assert c.equal and c.lhs == ramification_divisor(g)
    assert composition_rule_check(f_("z^2 + 1"), f_("z^2")).equal


@given(rational_maps(max_degree=3), rational_maps(max_degree=3))
def test_composition_rule(f, g):
    assume(not g.compose(f).is_constant())
    c = composition_rule_check(f, g)
    assert c.lhs == c.rhs


# -- divisor criterion and degree lemma -------------------------------------------------------

@pytest.mark.parametrize("d", [1, 2, 3, 5])
@pytest.mark.parametrize("n, m", [(1, 2), (2, 3), (3, 2), (4, 6)])
def test_criterion_coefficient_formula(d, n, m):
    res = divisor_criterion(f_(f"z^{d}"), OrbifoldDivisor({ZERO: n} if n > 1 else {}),
                            OrbifoldDivisor({ZERO: m}))
    assert res.divisor[ZERO] == Fraction(-1, n) + Fraction(d, m)


def test_criterion_examples():
    res = divisor_criterion(f_("z^2"), OrbifoldDivisor(), OrbifoldDivisor({ZERO: 2, INFTY: 2}))
    assert res.divisor == Divisor() and res.nonnegative
    res = divisor_criterion(f_("z"), OrbifoldDivisor(), OrbifoldDivisor({ZERO: 2}))
    assert res.divisor == Divisor({ZERO: Fraction(-1, 2)}) and not res.nonnegative


@given(rational_maps(max_degree=4), orbifold_divisors(), orbifold_divisors())
def test_criterion_equivalence_and_classical_implication(f, delta, delta_prime):
    src, tgt = OrbifoldCurve(P1(), delta), OrbifoldCurve(P1(), delta_prime)
    nc = check_morphism(f, src, tgt, NC).ok
    assert nc == divisor_criterion(f, delta, delta_prime).nonnegative
    if check_morphism(f, src, tgt, CL).ok:
        assert nc


@given(rational_maps(max_degree=4), orbifold_divisors(), orbifold_divisors())
def test_degree_lemma(f, delta, delta_prime):
    src, tgt = OrbifoldCurve(P1(), delta), OrbifoldCurve(P1(), delta_prime)
    if check_morphism(f, src, tgt, NC).ok:
        assert degree_inequality_check(f, src, tgt).holds
    else:
        with pytest.raises(PremiseError):
            degree_inequality_check(f, src, tgt)


def test_degree_lemma_examples():
    o = p1_orbifold({0: 2, 1: 3, None: 7})
    d = degree_inequality_check(f_("z"), o, o)
    assert (d.lhs, d.rhs) == (Fraction(1, 42), Fraction(1, 42))
    d = degree_inequality_check(f_("z^2"), p1_orbifold({0: 2, None: 2}), p1_orbifold())
    assert (d.lhs, d.rhs, d.holds) == (-1, -4, True)


@given(rational_maps(max_degree=3), orbifold_divisors(), orbifold_divisors(), orbifold_divisors())
def test_majorisation_and_join(f, d1, d2, smaller):
    src = p1_orbifold()
    ok1 = check_morphism(f, src, OrbifoldCurve(P1(), d1), NC).ok
    ok2 = check_morphism(f, src, OrbifoldCurve(P1(), d2), NC).ok
    if ok1 and divisor_leq(smaller, d1):
        assert check_morphism(f, src, OrbifoldCurve(P1(), smaller), NC).ok
    if ok1 and ok2:
        assert check_morphism(f, src, OrbifoldCurve(P1(), divisor_max(d1, d2)), NC).ok


simple_maps = st.sampled_from(["z^2", "z^3", "z^2*(z - 1)", "(z^2 - 1)^2", "z^2/(z - 1)",
                               "1/z^2", "z^4", "(z^2 + 1)/z"])


@given(simple_maps, simple_maps, orbifold_divisors(values=(-1, 0, 1)),
       orbifold_divisors(values=(-1, 0, 1)), orbifold_divisors(values=(-1, 0, 1)))
def test_composition_closure(f, g, a, b, c):
    f, g = f_(f), f_(g)
    A, B, C = (OrbifoldCurve(P1(), d) for d in (a, b, c))
    for mode in (NC, CL):
        if check_morphism(f, A, B, mode).ok and check_morphism(g, B, C, mode).ok:
            assert check_morphism(g.compose(f), A, C, mode).ok


# -- étale ---------------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 5])
def test_etale_power_map_on_discs(n):
    assert etale_check(f_(f"z^{n}"), disc(), disc({0: n}))


@pytest.mark.parametrize("d, n, m", [(d, n, m) for d in (1, 2, 3) for n in (1, 2, 3) for m in (2, 3, 4, 6)])
def test_etale_power_map_iff(d, n, m):
    src = disc({0: n} if n > 1 else {})
    assert etale_check(f_(f"z^{d}"), src, disc({0: m})) is (n * d == m)


def test_etale_identity_needs_equal_divisors():
    assert etale_check(f_("z"), p1_orbifold({0: 3}), p1_orbifold({0: 3}))
    assert not etale_check(f_("z"), p1_orbifold({0: 3}), p1_orbifold({0: 2}))


@pytest.mark.parametrize("f, src, tgt", [
    ("z^4", {}, {0: 4, None: 4}),
    ("z^2", {0: 3, None: 3}, {0: 6, None: 6}),
    ("(z^3 + 1/z^3)/2", {}, {1: 2, -1: 2, None: 3}),
    ("(z^2 + 1)^2/(4*z^2)", {}, {1: 2, 0: 2, None: 2}),
])
def test_etale_implies_degree_equality(f, src, tgt):
    f, source, target = f_(f), p1_orbifold(src), p1_orbifold(tgt)
    assert etale_check(f, source, target)
    d = degree_inequality_check(f, source, target)
    assert d.lhs == d.rhs


@given(rational_maps(max_degree=4), orbifold_divisors(), orbifold_divisors())
def test_etale_equality_property(f, delta, delta_prime):
    src, tgt = OrbifoldCurve(P1(), delta), OrbifoldCurve(P1(), delta_prime)
    if etale_check(f, src, tgt):
        assert canonical_degree(src) == f.degree * canonical_degree(tgt)


# -- orbifold base ---------------------------------------------------------------------------

def test_orbifold_base_examples():
    assert orbifold_base(f_("z^6"), NC) == OrbifoldDivisor({ZERO: 6, INFTY: 6})
    assert orbifold_base(f_("z^6"), CL) == OrbifoldDivisor({ZERO: 6, INFTY: 6})
    f = f_("z^2*(z - 1)^3")
    assert orbifold_base(f, NC) == OrbifoldDivisor({ZERO: 2, INFTY: 5})
    assert orbifold_base(f, CL) == OrbifoldDivisor({INFTY: 5})
    assert orbifold_base(f_("z"), NC) == OrbifoldDivisor()


def test_third_critical_value_of_example():
    # f' = z (z - 1)^2 (5 z - 2); the third critical value is f(2/5), unramified enough to drop
    f = f_("z^2*(z - 1)^3")
    third = Place.at(f(Fraction(2, 5)))
    assert set(critical_values(f)) == {ZERO, INFTY, third}
    assert pullback_place(f, third)[Place.at(Fraction(2, 5))] == 2
    assert orbifold_base(f, NC).multiplicity(third) == 1


def _assert_maximal(f: RationalMap, mode: MorphismMode) -> None:
    base = orbifold_base(f, mode)
    src = p1_orbifold()
    assert check_morphism(f, src, OrbifoldCurve(P1(), base), mode).ok
    for q in critical_values(f) + [Place.at(7), Place.at(Fraction(-5, 3))]:
        raised = base.with_multiplicity(q, int(base.multiplicity(q)) + 1)
        assert not check_morphism(f, src, OrbifoldCurve(P1(), raised), mode).ok, q


@pytest.mark.parametrize("mode", [NC, CL])
@pytest.mark.parametrize("f", ["z^2*(z - 1)^3", "z^6", "(z^2 - 1)^2", "(z^3 + 1/z^3)/2", "z^3 - 3*z"])
def test_orbifold_base_maximality(f, mode):
    _assert_maximal(f_(f), mode)


@given(rational_maps(max_degree=5), st.sampled_from([NC, CL]))
def test_orbifold_base_maximality_property(f, mode):
    _assert_maximal(f, mode)


# -- limit closure --------------------------------------------------------------------------

TARGET = p1_orbifold({0: 2})


def test_limit_closure_examples():
    rep = limit_closure_check(MapFamily.parse("(z^2 - t)^2"), p1_orbifold(), TARGET)
    assert rep.branch == "morphism" and rep.limit.map == f_("z^4") and rep.holds
    rep = limit_closure_check(MapFamily.parse("t*z^2"), p1_orbifold(), TARGET)
    assert rep.branch == "image_in_support" and rep.holds
    rep = limit_closure_check(MapFamily.parse("z^2"), p1_orbifold(), TARGET)
    assert rep.branch == "morphism" and rep.holds


def test_limit_closure_clears_common_t_power():
    rep = limit_closure_check(MapFamily.parse("(t*z^2 + t^2)/(t*z + t)"), p1_orbifold(),
                              p1_orbifold())
    assert rep.limit.map == f_("z^2/(z + 1)")


def test_limit_closure_premise_and_degeneration():
    with pytest.raises(PremiseError):
        limit_closure_check(MapFamily.parse("z - t"), p1_orbifold(), TARGET)
    with pytest.raises(InputError):
        limit_closure_check(MapFamily.parse("z^2/(t*z)"), p1_orbifold(), TARGET,
                            samples=[Fraction(0)])
