from fractions import Fraction

import pytest

from modunits.arith import divisors, exact_order_count
from modunits.divpoly import (GENERIC, DegeneracyError, DivisionPolynomials, min_monomial_check,
                              recursion_check, relation_check, tate_P)
from modunits.polyring import gens

x, a, b = gens("x", "a", "b")
B, C = gens("B", "C")

Q_CLOSED = {
    1: (0, 1 + 0 * x),
    2: (1, 1 + 0 * x),
    3: (0, 3 * x ** 4 + 6 * a * x ** 2 + 12 * b * x - a ** 2),
    # 4y(...) stored as (2y) * 2(...)
    4: (1, 2 * (x ** 6 + 5 * a * x ** 4 + 20 * b * x ** 3 - 5 * a ** 2 * x ** 2
                - 4 * a * b * x - 8 * b ** 2 - a ** 3)),
}

P_CLOSED = {
    1: 1 + 0 * B,
    2: -B,
    3: -B ** 3,
    4: C * B ** 5,
    5: -(C - B) * B ** 8,
    6: -B ** 12 * (C ** 2 - B + C),
    7: B ** 16 * (C ** 3 - B ** 2 + B * C),
}


@pytest.mark.parametrize("k", sorted(Q_CLOSED))
def test_Q_closed_forms(k):
    Q = GENERIC.bigQ(k)
    assert (Q.y_parity, Q.body) == Q_CLOSED[k]


@pytest.mark.parametrize("k", sorted(P_CLOSED))
def test_P_closed_forms(k):
    assert tate_P(k).body == P_CLOSED[k]


# -- group-law oracle on y^2 = x^3 - 2 with P = (3, 5) -------------------------

A_, B_ = 0, -2
P0 = (Fraction(3), Fraction(5))


def _add(p, q):
    if p is None:
        return q
    if q is None:
        return p
    (x1, y1), (x2, y2) = p, q
    if x1 == x2 and y1 == -y2:
        return None
    lam = (3 * x1 * x1 + A_) / (2 * y1) if p == q else (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def _psi_at(k, R):
    Q = R.bigQ(k)
    val = Q.body.evaluate({"x": P0[0]})
    return val * (2 * P0[1]) ** Q.y_parity


def test_division_polynomials_match_group_law():
    R = DivisionPolynomials.numeric(A_, B_)
    pts = [None, P0]
    for _ in range(2, 16):
        pts.append(_add(pts[-1], P0))
    for k in range(2, 15):
        want = P0[0] - _psi_at(k - 1, R) * _psi_at(k + 1, R) / _psi_at(k, R) ** 2
        assert pts[k][0] == want, k


def test_numeric_specialisation_commutes():
    R = DivisionPolynomials.numeric(1, 1)
    for k in range(3, 11):
        assert GENERIC.specialize(GENERIC.bigQ(k).body, R) == R.bigQ(k).body


def test_singular_curve_rejected():
    with pytest.raises(DegeneracyError):
        DivisionPolynomials.numeric(-3, 2)


@pytest.mark.parametrize("k", range(3, 13))
def test_Q_is_product_of_exact_order_parts(k):
    Q = GENERIC.bigQ(k)
    prod = 1 + 0 * x
    for d in divisors(k):
        if d > 2:
            prod = prod * GENERIC.smallq(d).body
    assert prod == Q.body
    assert Q.y_parity == (k % 2 == 0)


@pytest.mark.parametrize("k", range(2, 13))
def test_divisor_divisibility(k):
    for d in divisors(k):
        assert GENERIC.bigQ(d).body.divides(GENERIC.bigQ(k).body)


def test_non_divisor_does_not_divide():
    assert not GENERIC.bigQ(3).body.divides(GENERIC.bigQ(8).body)


@pytest.mark.parametrize("k", range(2, 21))
def test_smallq_degree_is_half_exact_order_count(k):
    R = DivisionPolynomials.numeric(1, 1)
    assert 2 * R.smallq(k).degree_x() == exact_order_count(k)


@pytest.mark.parametrize("n", range(5, 11))
def test_elliptic_sequence_splits(n):
    assert recursion_check(n)["ok"]


@pytest.mark.parametrize("k", range(2, 6))
def test_relation_with_tate_form(k):
    assert relation_check(k)["ok"]


@pytest.mark.parametrize("k", range(1, 21))
def test_tate_P_is_primitive(k):
    assert tate_P(k).body.content() == 1


@pytest.mark.parametrize("k", range(2, 21))
def test_min_monomial_magnitude(k):
    r = min_monomial_check(k)
    assert r["ok"], r
    assert r["observed_sign"] in (1, -1)


def test_bad_indices():
    with pytest.raises(ValueError):
        GENERIC.bigQ(0)
    with pytest.raises(ValueError):
        tate_P(0)
    with pytest.raises(ValueError):
        GENERIC.smallq(1)
