import cmath
import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbicurve.algebra import RationalMap
from orbicurve.errors import InputError, PremiseError
from orbicurve.kobayashi import (
    chain_upper_bound,
    classical_distance_disc,
    distance_decreasing_check,
    limit_convergence,
    limit_density,
    metric_density,
    poincare_density,
    poincare_distance,
    radial_length,
)

disc_points = st.builds(lambda r, t: cmath.rect(r, t), st.floats(0, 0.95), st.floats(0, 2 * math.pi))


def brute_force_classical(n, p, q):
    """Every pair of n-th roots, not just one root of p against all roots of q."""
    def roots(w):
        if w == 0:
            return [0j]
        return [cmath.rect(abs(w) ** (1 / n), (cmath.phase(w) + 2 * math.pi * k) / n) for k in range(n)]
    return min(poincare_distance(x, y) for x, y in itertools.product(roots(p), roots(q)))


# -- densities -------------------------------------------------------------------------

def test_density_examples():
    assert metric_density(2, Fraction(1, 2)) == 8
    assert metric_density(2, Fraction(1, 4)) == Fraction(64, 9)
    assert metric_density(1, Fraction(1, 3)) == poincare_density(Fraction(1, 3)) == Fraction(81, 16)
    assert metric_density(2, 0.25 + 0j) == pytest.approx(64 / 9, rel=1e-14)


@given(st.floats(0.01, 0.99), st.floats(0, 2 * math.pi))
def test_density_n1_is_poincare(r, t):
    z = cmath.rect(r, t)
    assert metric_density(1, z) == pytest.approx(poincare_density(z), rel=1e-12)


def test_density_errors():
    for z in (0, 1, 1.5, 0j):
        with pytest.raises(InputError):
            metric_density(2, z)
    with pytest.raises(InputError):
        metric_density(0, 0.5)


def test_limit_examples():
    assert limit_density(1 / math.e) == pytest.approx(math.e ** 2, rel=1e-14)
    assert limit_density(0.99) > limit_density(0.9) > limit_density(0.5)


@pytest.mark.parametrize("z", [0.2, 0.5, 0.8, 0.5j])
def test_limit_convergence(z):
    rep = limit_convergence(z)
    assert rep.decreasing
    assert rep.differences[-1] < 0.01 and rep.ns[-1] == 1024


# -- classical distance ------------------------------------------------------------------

def test_distance_examples():
    assert classical_distance_disc(3, 0.3j, 0.3j) == 0
    assert classical_distance_disc(1, 0.2, -0.5) == pytest.approx(poincare_distance(0.2, -0.5))
    expected = 2 * math.atanh(abs(0.5 - 0.5j) / abs(1 + 0.25j))
    assert classical_distance_disc(2, 0.25, -0.25) == pytest.approx(expected, abs=1e-14)
    assert 2 * math.atanh(0.6860) == pytest.approx(expected, abs=1e-3)
    assert poincare_distance(0, 0.5) == pytest.approx(math.log(3), abs=1e-14)


@given(st.integers(1, 8), disc_points, disc_points)
def test_one_root_suffices(n, p, q):
    assert classical_distance_disc(n, p, q) == pytest.approx(brute_force_classical(n, p, q), abs=1e-12)


@given(st.integers(1, 8), disc_points, disc_points, disc_points)
def test_metric_axioms(n, p, q, w):
    d = lambda a, b: classical_distance_disc(n, a, b)
    assert d(p, q) >= 0 and d(p, p) == 0
    assert d(p, q) == pytest.approx(d(q, p), abs=1e-12)
    assert d(p, w) <= d(p, q) + d(q, w) + 1e-9


@given(disc_points, disc_points)
def test_monotone_in_n(p, q):
    # the identity is a morphism from multiplicity n + 1 to n, so d_n <= d_(n+1)
    values = [classical_distance_disc(n, p, q) for n in range(1, 17)]
    assert all(a <= b + 1e-9 for a, b in zip(values, values[1:]))


def test_distance_errors():
    with pytest.raises(InputError):
        classical_distance_disc(2, 1, 0)
    with pytest.raises(InputError):
        classical_distance_disc(2, 0.5, 1j)


@pytest.mark.parametrize("n", [1, 2, 3, 7])
@pytest.mark.parametrize("a, b", [(0.1, 0.5), (0.3, 0.9), (0.05, 0.06), (0.6, 0.2)])
def test_radial_integral_matches_distance(n, a, b):
    value, err = radial_length(n, a, b)
    assert err < 1e-9
    assert abs(value - classical_distance_disc(n, a, b)) < 1e-6


# -- distance decreasing -----------------------------------------------------------------

PAIRS = [(0.1, 0.5), (0.3j, -0.2), (0.6 + 0.1j, 0.05), (-0.4, 0.4)]


def test_identity_from_higher_multiplicity():
    rep = distance_decreasing_check(RationalMap.parse("z"), 4, 2, PAIRS)
    assert rep.ok
    with pytest.raises(PremiseError):
        distance_decreasing_check(RationalMap.parse("z"), 2, 4, PAIRS)


def test_square_is_isometric_on_radial_pairs():
    radial = [(0.1, 0.5), (0.2j, 0.7j), (-0.3, -0.05)]
    rep = distance_decreasing_check(RationalMap.parse("z^2"), 1, 2, radial)
    assert rep.ok
    for c in rep.pairs:
        assert c.image_distance == pytest.approx(c.source_distance, abs=1e-12)


def test_constant_and_premises():
    rep = distance_decreasing_check(RationalMap.parse("1/3"), 2, 2, PAIRS)
    assert all(c.image_distance == 0 for c in rep.pairs)
    with pytest.raises(PremiseError):
        distance_decreasing_check(RationalMap.parse("2*z"), 1, 1, PAIRS)


@given(st.integers(1, 4), st.integers(1, 3), disc_points, disc_points)
def test_power_maps_decrease_distance(k, n_tgt, p, q):
    # z^k is a morphism (D, n_src) -> (D, n_tgt) once n_src * k >= n_tgt
    n_src = -(-n_tgt // k)
    rep = distance_decreasing_check(RationalMap.parse(f"z^{k}/2"), n_src, n_tgt, [(p, q)])
    assert rep.ok


# -- chain bound --------------------------------------------------------------------------

def test_chain_bound_examples():
    assert chain_upper_bound(2, 0.3, 0.3).value == 0
    b = chain_upper_bound(1, 0.2, -0.4)
    assert b.value == pytest.approx(poincare_distance(0.2, -0.4), abs=1e-9)
    b = chain_upper_bound(2, 0.25, -0.25)
    assert b.value <= classical_distance_disc(2, 0.25, -0.25) + 1e-9
    assert b.evaluated > 1 and not b.fallback


def test_chain_bound_fallback():
    b = chain_upper_bound(3, 0.2, 0.5, budget=0)
    assert b.fallback and b.value == b.classical
