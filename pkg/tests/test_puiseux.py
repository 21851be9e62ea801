from fractions import Fraction

import pytest

from modunits.arith import DomainError
from modunits.cusps import all_orbits
from modunits.minformula import q_order
from modunits.puiseux import (dominant_terms, epsilon_series_check, lucky_order,
                              reference_coefficient, us_polynomial, verify_observations)


def test_us_polynomial_is_integral_in_u_and_s():
    p = us_polynomial(5)
    assert set(p.vars) == {"u", "s"}
    assert p.degree("u") == 12


@pytest.mark.parametrize("N", [2, 3, 5])
def test_classes_and_multiplicities(N):
    terms = dominant_terms(N)
    assert [t.c for t in terms] == list(range(N // 2 + 1))
    assert [t.multiplicity for t in terms] == [o.n for o in all_orbits(N)]
    for t in terms:
        assert t.exponent == Fraction(t.c, N)
        assert max(abs(r - float(t.exponent)) for r in t.refined_exponents) < 1e-3


def test_irregular_class_at_level_4():
    terms = {t.c: t for t in dominant_terms(4)}
    t = terms[2]
    assert t.exponent == 1 and t.multiplicity == 1
    assert abs(t.coefficient / -672 - 1) < 1e-3


@pytest.mark.parametrize("N", [6, 7])
def test_verify_observations(N):
    r = verify_observations(N)
    assert r["pass"], r
    assert r["approximate"]


def test_measured_exponents_reproduce_q_order():
    terms = dominant_terms(7)
    for N in (3, 10, 11):
        for c in range(N // 2 + 1):
            assert lucky_order(7, N, c, terms) == q_order(7, N, c)


def test_reference_coefficients():
    assert reference_coefficient(2, 1) == -24.0
    assert abs(reference_coefficient(3, 0) - 4.0) < 1e-12
    assert reference_coefficient(10, 1) is None


def test_epsilon_branch():
    r = epsilon_series_check()
    assert r["pass"] and r["rel_error"] < 1e-3


def test_bad_arguments():
    with pytest.raises(DomainError):
        dominant_terms(10)
    with pytest.raises(DomainError):
        dominant_terms(5, s0=Fraction(1, 10))
