from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modunits.arith import (DomainError, TieError, bernoulli2, divisors, euler_phi,
                            exact_order_count, fmt_rational, frac, is_prime, mobius,
                            nearest_int, parse_rational)

rationals = st.fractions(max_denominator=10 ** 6).filter(lambda q: abs(q) < 10 ** 6)


def brute_exact_order(k):
    # points (a, b) of (Z/k)^2 whose order is exactly k
    return sum(1 for a, b in product(range(k), repeat=2) if gcd(gcd(a, b), k) == 1)


@pytest.mark.parametrize("x, want", [(0, Fraction(1, 6)), (Fraction(1, 2), Fraction(-1, 12)),
                                     (Fraction(1, 5), Fraction(1, 150))])
def test_bernoulli2_values(x, want):
    assert bernoulli2(x) == want


@pytest.mark.parametrize("x", [1, Fraction(-1, 3), Fraction(7, 3)])
def test_bernoulli2_rejects_outside_unit_interval(x):
    with pytest.raises(DomainError):
        bernoulli2(x)


def test_bernoulli2_rejects_floats():
    with pytest.raises(TypeError):
        bernoulli2(0.25)


@pytest.mark.parametrize("x, want", [(Fraction(7, 3), Fraction(1, 3)),
                                     (Fraction(-1, 4), Fraction(3, 4)), (2, 0)])
def test_frac_values(x, want):
    assert frac(x) == want


@given(rationals)
def test_frac_range_and_integer_difference(x):
    f = frac(x)
    assert 0 <= f < 1
    assert (x - f).denominator == 1


@given(rationals)
def test_bernoulli2_symmetry(x):
    f = frac(x)
    if f:
        assert bernoulli2(f) == bernoulli2(1 - f)


@given(st.integers(-50, 50), st.integers(2, 400))
def test_bernoulli2_continuous_at_integers(n, den):
    # one-sided limits at the integer n agree: B2({n - h}) -> B2(1-), B2({n + h}) -> B2(0)
    h = Fraction(1, den)
    left = bernoulli2(frac(n - h))
    right = bernoulli2(frac(n + h))
    assert abs(left - right) <= 2 * h


@pytest.mark.parametrize("n, want", [(1, 1), (8, 4), (9, 6), (12, 4), (97, 96)])
def test_euler_phi(n, want):
    assert euler_phi(n) == want


@pytest.mark.parametrize("k, want", [(2, 3), (3, 8), (8, 48)])
def test_exact_order_count_values(k, want):
    assert exact_order_count(k) == want


@pytest.mark.parametrize("k", range(2, 26))
def test_exact_order_count_matches_brute_force(k):
    assert exact_order_count(k) == brute_exact_order(k)


def test_exact_order_count_divisible_by_12():
    assert all(exact_order_count(k) % 12 == 0 for k in range(4, 201))


def test_exact_order_counts_partition_torsion():
    for k in range(2, 201):
        assert sum(exact_order_count(d) for d in divisors(k) if d > 1) + 1 == k * k


def test_exact_order_count_domain():
    with pytest.raises(DomainError):
        exact_order_count(1)


@pytest.mark.parametrize("q, want", [(Fraction(1331, 840), 2), (3, 3), (Fraction(11264, 840), 13),
                                     (Fraction(-7, 5), -1), (Fraction(-8, 5), -2)])
def test_nearest_int(q, want):
    assert nearest_int(q) == want


@pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(-3, 2), Fraction(11 * 210 ** 2, 840)])
def test_nearest_int_ties_raise(q):
    with pytest.raises(TieError):
        nearest_int(q)


@given(rationals)
def test_nearest_int_is_nearest(q):
    if (2 * q).denominator == 1 and q.denominator == 2:
        return
    n = nearest_int(q)
    assert abs(q - n) < Fraction(1, 2)


def test_mobius_and_divisors():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(rationals)
def test_fmt_parse_roundtrip(q):
    assert parse_rational(fmt_rational(q)) == q


def test_fmt_rational_forms():
    assert fmt_rational(Fraction(-43, 105)) == "-43/105"
    assert fmt_rational(4) == "4"
