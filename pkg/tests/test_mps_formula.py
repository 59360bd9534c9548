from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kronecker_moduli.exact_arith import LaurentPolynomial, interpolate, substitute_power
from kronecker_moduli.mps_formula import (
    bipartite_chi,
    compare_poincare,
    euler_polynomial_in_m,
    monomial_shift,
    mps_euler,
    mps_poincare,
    mps_terms,
    scaled_bipartite_poincare,
    weight_factor_euler,
    weight_factor_poincare,
)
from kronecker_moduli.quiver_model import Partition, all_ones, bipartite, kronecker, partition_pairs, partitions
from kronecker_moduli.reineke_engine import euler_characteristic, poincare_polynomial

y = LaurentPolynomial.monomial(1)


@pytest.mark.parametrize("n", range(1, 7))
def test_euler_weight_is_limit_of_poincare_weight(n):
    for p in partitions(n):
        assert weight_factor_poincare(p).value_at_one() == weight_factor_euler(p)


def test_weight_examples():
    assert weight_factor_euler(Partition.trivial(2)) == Fraction(1, 2)
    assert weight_factor_euler(Partition.from_parts([2])) == Fraction(-1, 4)
    assert weight_factor_euler(Partition.from_parts([3])) == Fraction(1, 9)


@pytest.mark.parametrize("m", range(1, 7))
def test_one_two_is_triangular(m):
    assert mps_euler(1, 2, m) == m * (m - 1) // 2 == euler_characteristic(kronecker(m), (1, 2))


def test_one_two_polynomial():
    assert euler_polynomial_in_m(1, 2) == LaurentPolynomial({1: Fraction(-1, 2), 2: Fraction(1, 2)})


def test_two_three_polynomial_matches_interpolation():
    poly = euler_polynomial_in_m(2, 3)
    xs = [1, 2, 3, 4, 5]
    assert poly == interpolate(xs, [mps_euler(2, 3, m) for m in xs])
    assert poly.to_text("m") == "-1/6*m + m^2 - 4/3*m^3 + 1/2*m^4"
    assert poly.degree == 4


@pytest.mark.parametrize("a,b,m", [(1, 1, 1), (1, 1, 3), (1, 2, 2), (1, 2, 3), (2, 3, 2), (1, 3, 3)])
def test_poincare_level_identity_holds_exactly(a, b, m):
    c = compare_poincare(a, b, m)
    assert c.agree and c.shift == 0
    assert c.mps == substitute_power(poincare_polynomial(kronecker(m), (a, b)), 2)
    assert c.limit_matches_euler


def test_euler_routes_agree():
    for a, b in ((1, 2), (2, 3), (1, 3)):
        for m in (1, 2, 3):
            assert mps_euler(a, b, m, route="scaled") == mps_euler(a, b, m, route="direct")


@pytest.mark.parametrize("pair", partition_pairs(2, 3))
def test_scaling_in_m(pair):
    for m in (1, 2, 3):
        Q = bipartite(pair.source, pair.sink, m)
        assert poincare_polynomial(Q, all_ones(Q)) == scaled_bipartite_poincare(pair, m)
        assert bipartite_chi(pair, m, route="scaled") == bipartite_chi(pair, m, route="direct")


def test_terms_cover_all_pairs():
    terms = mps_terms(2, 3, 2, level="poincare")
    assert [t.pair for t in terms] == partition_pairs(2, 3)
    assert sum(t.value() for t in mps_terms(2, 3, 2)) == mps_euler(2, 3, 2)


def test_monomial_shift():
    # p = y**k * r
    assert monomial_shift(y + y**3, y**2 + y**4) == -1
    assert monomial_shift(y**2 + y**4, y + y**3) == 1
    assert monomial_shift(y, 1 + y) is None


def test_invalid_inputs():
    for args in ((2, 2, 1), (0, 1, 1), (1, 2, 0)):
        with pytest.raises(ValueError):
            mps_euler(*args)
    with pytest.raises(ValueError):
        mps_terms(1, 2, 2, level="bogus")
    with pytest.raises(ValueError):
        mps_poincare(3, 3, 1)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3)]), st.integers(1, 5))
def test_mps_matches_reineke(ab, m):
    a, b = ab
    assert mps_euler(a, b, m) == euler_characteristic(kronecker(m), (a, b))
