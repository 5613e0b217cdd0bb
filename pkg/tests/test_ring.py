import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettires.errors import DimensionError, RingMismatchError
from bettires.ring import (
    GREVLEX,
    LEX,
    ElimBlockOrder,
    PrimeField,
    Polynomial,
    Ring,
    monomial_compare,
)


@pytest.fixture
def R():
    return Ring(PrimeField(), ["x0", "x1", "x2", "x3"])


def test_field_inverse_hand_value():
    # extended Euclid by hand: 2 * 16002 = 32004 = 32003 + 1
    F = PrimeField(32003)
    assert F.inv(2) == 16002
    assert F.mul(2, 16002) == 1


def test_field_axioms_random():
    F = PrimeField()
    rng = random.Random(0)
    for _ in range(200):
        a, b = rng.randrange(F.p), rng.randrange(F.p)
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(1, a) == a
        assert F.mul(a, b) == F.mul(b, a)
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        PrimeField().inv(0)


def test_non_prime_characteristic_rejected():
    with pytest.raises(ValueError):
        PrimeField(32001)


def test_grevlex_prefers_smaller_last_exponent():
    # degree-2 monomials in 3 variables: x1^2 beats x0*x2
    assert monomial_compare(GREVLEX, (0, 2, 0), (1, 0, 1)) == 1
    # brute-force: sort all degree-2 monomials and check neighbours compare
    mons = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    ordered = sorted(mons, key=GREVLEX.key, reverse=True)
    assert ordered.index((0, 2, 0)) < ordered.index((1, 0, 1))
    for a, b in zip(ordered, ordered[1:]):
        assert monomial_compare(GREVLEX, a, b) == 1


def test_lex_first_variable_dominates():
    assert monomial_compare(LEX, (1, 0), (0, 9)) == 1


def test_compare_reflexive():
    for order in (GREVLEX, LEX, ElimBlockOrder(1)):
        assert monomial_compare(order, (1, 2, 3), (1, 2, 3)) == 0


def test_compare_length_mismatch():
    with pytest.raises(DimensionError):
        monomial_compare(GREVLEX, (1, 0), (1, 0, 0))


exps3 = st.tuples(*[st.integers(min_value=0, max_value=6)] * 3)


@settings(max_examples=100, deadline=None)
@given(exps3, exps3, exps3)
def test_order_total_antisymmetric_transitive(a, b, c):
    for order in (GREVLEX, LEX, ElimBlockOrder(1)):
        ab = monomial_compare(order, a, b)
        ba = monomial_compare(order, b, a)
        assert ab == -ba
        assert (ab == 0) == (a == b)
        if ab >= 0 and monomial_compare(order, b, c) >= 0:
            assert monomial_compare(order, a, c) >= 0


@settings(max_examples=100, deadline=None)
@given(exps3, exps3)
def test_grevlex_degree_compatible_and_one_minimal(a, b):
    if sum(a) < sum(b):
        assert monomial_compare(GREVLEX, a, b) == -1
    zero = (0, 0, 0)
    if a != zero:
        assert monomial_compare(GREVLEX, zero, a) == -1


def test_elim_block_separates_head_variables():
    order = ElimBlockOrder(2)
    # any monomial touching x0 or x1 beats any pure-tail monomial
    assert monomial_compare(order, (0, 1, 0, 0), (0, 0, 7, 9)) == 1


def test_difference_of_squares(R):
    x0, x1 = R.variable(0), R.variable(1)
    assert (x0 + x1) * (x0 - x1) == x0 * x0 - x1 * x1


def test_cancellation(R):
    f = R.variable(0) * R.variable(2) + R.constant(5)
    assert (f + f.scale(-1)).is_zero()


def test_characteristic_three():
    R3 = Ring(PrimeField(3), ["x0", "x1"])
    assert R3.variable(0).scale(3).is_zero()


def test_ring_mismatch_rejected(R):
    other = Ring(PrimeField(), ["y0", "y1", "y2", "y3"])
    with pytest.raises(RingMismatchError):
        R.variable(0) + other.variable(0)


def _random_poly(R, rng, deg=2):
    return R.random_polynomial(rng.randrange(1, deg + 1), rng, homogeneous=False)


def test_multiplication_commutative_associative_via_evaluation(R):
    rng = random.Random(3)
    p = R.field.p
    for _ in range(5):
        f, g, h = (_random_poly(R, rng) for _ in range(3))
        fg, gf = f * g, g * f
        fgh, f_gh = (f * g) * h, f * (g * h)
        for _ in range(20):
            pt = tuple(rng.randrange(p) for _ in range(4))
            assert fg.evaluate(pt) == gf.evaluate(pt)
            assert fgh.evaluate(pt) == f_gh.evaluate(pt)
    assert fg == gf
    assert fgh == f_gh


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3), st.integers(0, 10**6))
def test_homogeneous_products_add_degrees(d1, d2, seed):
    R = Ring(PrimeField(), ["x0", "x1", "x2"])
    rng = random.Random(seed)
    f = R.random_polynomial(d1, rng)
    g = R.random_polynomial(d2, rng)
    fg = f * g
    assert fg.is_homogeneous()
    if not fg.is_zero():
        assert fg.degree() == d1 + d2
    assert (f + R.random_polynomial(d1, rng)).is_homogeneous()


def test_substitute_basic(R):
    x0, x1 = R.variable(0), R.variable(1)
    assert (x0 * x1).substitute(1, x0) == x0 * x0


def test_substitute_descend_preserves_degree(R):
    rng = random.Random(1)
    f = R.random_polynomial(3, rng)
    small = R.drop_variable(3)
    g = f.substitute(3, small.zero())
    assert g.ring == small
    assert g.is_zero() or (g.is_homogeneous() and g.degree() == 3)


def test_substitute_matches_evaluation_oracle(R):
    # substitute x3 <- x0+x1+x2 and compare with pointwise evaluation
    rng = random.Random(7)
    x0, x1, x2, x3 = (R.variable(i) for i in range(4))
    f = x3 * x3 - x0 * x3
    sub = f.substitute(3, x0 + x1 + x2)
    p = R.field.p
    for _ in range(20):
        pt = [rng.randrange(p) for _ in range(4)]
        pt_sub = (pt[0], pt[1], pt[2], (pt[0] + pt[1] + pt[2]) % p)
        assert sub.evaluate(tuple(pt)) == f.evaluate(pt_sub)


def test_substitute_index_out_of_range(R):
    with pytest.raises(DimensionError):
        R.one().substitute(9, R.zero())


def test_exponent_overflow_is_hard_error(R):
    big = R.monomial((1 << 15, 0, 0, 0))
    with pytest.raises(OverflowError):
        big.mul_monomial((1, 0, 0, 0))
