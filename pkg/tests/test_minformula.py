from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modunits.arith import DomainError
from modunits.cusps import all_orbits
from modunits.minformula import (Divisor, UnitExpr, UnsupportedLevelError, degree_zero_defect,
                                 divisor, q_order, unit_matrix_rank, vk, vk_alt)

F = Fraction


@pytest.mark.parametrize("k, t, want", [(2, F(1, 2), 1), (7, F(2, 7), F(3, 7)), (3, F(1, 5), F(1, 5))])
def test_vk_values(k, t, want):
    assert vk(k)(t) == want


@pytest.mark.parametrize("k", range(3, 31))
def test_vk_alt_agrees(k):
    assert vk(k) == vk_alt(k)


@pytest.mark.parametrize("k", range(2, 31))
def test_vk_integrates_to_zero(k):
    assert vk(k).integrate() == 0


@pytest.mark.parametrize("k", range(2, 21))
def test_vk_corners_on_multiples_of_one_over_k(k):
    assert all((c * k).denominator == 1 for c in vk(k).corners())


@pytest.mark.parametrize("k, N, c, want", [(8, 3, 1, 16), (2, 5, 0, 0), (3, 5, 2, 5)])
def test_q_order(k, N, c, want):
    assert q_order(k, N, c) == want


def test_q_order_differs_from_vk7_by_linear_term():
    # for prime k > 3, v_k is the q_k order minus (m_k / 3) t
    for N in (n for n in range(5, 20) if n != 7):
        for o in all_orbits(N):
            t = F(o.c, N)
            lhs = q_order(7, N, o.c) - o.e * vk(7)(t)
            assert lhs == o.e * 16 * t


def test_divisor_F3_level5():
    d = divisor({3: 1}, 5)
    assert d.orders() == [0, 1, -1]
    assert d.degree_qbar == 1


def test_divisor_F2_level5():
    assert divisor({2: 1}, 5).orders()[0] == -1


def test_divisor_F7_over_F8_level11():
    assert divisor({7: 1, 8: -1}, 11).degree_qbar == 2


@given(st.integers(3, 40), st.dictionaries(st.integers(2, 15), st.integers(-3, 3), min_size=1,
                                           max_size=4))
def test_divisor_is_integral_and_degree_zero(N, exps):
    u = UnitExpr.of({k: e for k, e in exps.items() if k != N})
    if not u:
        return
    d = divisor(u, N)
    assert sum(o.f * v for o, v in d.entries) == 0


@given(st.integers(3, 30), st.integers(2, 12), st.integers(2, 12))
def test_divisor_is_additive(N, k1, k2):
    if N in (k1, k2) or k1 == k2:
        return
    a, b = divisor({k1: 1}, N), divisor({k2: 1}, N)
    ab = divisor({k1: 1, k2: 1}, N)
    assert ab.orders() == [x + y for x, y in zip(a.orders(), b.orders())]


@pytest.mark.parametrize("k", range(2, 21))
def test_degree_zero(k):
    assert all(degree_zero_defect(k, N) == 0 for N in range(3, 61) if N != k)


@pytest.mark.parametrize("N", [5, 7, 12, 13, 20])
def test_unit_matrix_rank(N):
    assert unit_matrix_rank(N) == N // 2


def test_unit_text_forms():
    assert UnitExpr.of({7: 1, 8: -1}).to_text() == "F7/F8"
    assert UnitExpr.of({3: 1, 2: 2}).to_text() == "F2^2*F3"
    assert UnitExpr.of({2: 1, 5: -2}).to_text() == "F2/F5^2"


def test_errors():
    with pytest.raises(UnsupportedLevelError):
        divisor({3: 1}, 2)
    with pytest.raises(DomainError):
        divisor({5: 1}, 5)
    with pytest.raises(DomainError):
        vk(1)
    with pytest.raises(ValueError):
        UnitExpr(((1, 1),))


def test_nonzero_degree_divisor_rejected():
    o = all_orbits(5)
    with pytest.raises(AssertionError):
        Divisor(5, UnitExpr.of({3: 1}), ((o[0], 1),))
