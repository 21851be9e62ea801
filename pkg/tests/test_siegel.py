from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modunits.arith import DomainError
from modunits.minformula import vk
from modunits.siegel import (crosscheck, degree_zero_defect, piecewise_identity_check, siegel_order_F,
                             uord_H, uord_Htilde)

F = Fraction


@pytest.mark.parametrize("args, want", [((1, 5, 1), F(1, 300)), ((2, 5, 0), F(1, 12)),
                                        ((3, 5, 2), F(1, 300))])
def test_uord_H(args, want):
    assert uord_H(*args) == want


@pytest.mark.parametrize("args, want", [((2, 5, 1), F(-1, 20)), ((3, 5, 1), F(-1, 15)),
                                        ((2, 5, 0), F(-1, 4))])
def test_uord_Htilde(args, want):
    assert uord_Htilde(*args) == want


@pytest.mark.parametrize("args, want", [((3, 5, 1), F(1, 5)), ((2, 5, 0), -1),
                                        ((8, 3, 1), vk(8)(F(1, 3)))])
def test_siegel_order_F(args, want):
    assert siegel_order_F(*args) == want


def test_crosscheck_small():
    r = crosscheck(10, 30)
    assert r["checked"] > 0 and r["mismatches"] == []


def test_crosscheck_skips_k_equal_N():
    r = crosscheck(8, 8)
    assert r["mismatches"] == []
    assert r["checked"] == sum(N // 2 + 1 for N in range(3, 9) for k in range(2, 9) if k != N)


@given(st.integers(2, 40), st.integers(3, 150), st.data())
def test_siegel_matches_vk_random(k, N, data):
    if k == N:
        return
    c = data.draw(st.integers(0, N // 2))
    assert siegel_order_F(k, N, c) == vk(k)(F(c, N))


@pytest.mark.parametrize("k", range(2, 13))
def test_siegel_degree_zero(k):
    assert all(degree_zero_defect(k, N) == 0 for N in range(3, 40) if N != k)


def test_piecewise_identities():
    r = piecewise_identity_check(12)
    assert r["mismatches"] == []


def test_errors():
    with pytest.raises(DomainError):
        uord_H(5, 5, 1)
    with pytest.raises(DomainError):
        siegel_order_F(7, 7, 1)
    with pytest.raises(DomainError):
        siegel_order_F(3, 7, 4)
