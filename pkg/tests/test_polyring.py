from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modunits.polyring import (ContextError, DivisibilityError, MvPolyZ, RatFunc, gens,
                               substitute)

VARS = ("x", "y", "z")
X, Y, Z = gens(*VARS)

polys = st.dictionaries(st.tuples(*[st.integers(0, 4)] * 3), st.integers(-20, 20),
                        max_size=6).map(lambda t: MvPolyZ.from_terms(VARS, t))
points = st.fixed_dictionaries({v: st.integers(-5, 5) for v in VARS})


@settings(max_examples=80)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MvPolyZ(VARS)


@settings(max_examples=80)
@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@settings(max_examples=80)
@given(polys, polys)
def test_exact_div_inverts_mul(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_div(q) == p


def test_exact_div_failures():
    with pytest.raises(DivisibilityError):
        (X ** 2 + 1).exact_div(X + 1)
    with pytest.raises(DivisibilityError):
        (3 * X).exact_div(2)
    with pytest.raises(ZeroDivisionError):
        X.exact_div(MvPolyZ(VARS))


def test_content_and_degree():
    p = 6 * X ** 3 * Y - 4 * Z + 2
    assert p.content() == 2
    assert p.primitive_part() == 3 * X ** 3 * Y - 2 * Z + 1
    assert (p.degree("x"), p.degree("z")) == (3, 1)
    assert p.min_monomial() == ((0, 0, 0), 2)
    assert p.leading_term() == ((3, 1, 0), 6)


def test_to_text():
    assert (X ** 2 - 3 * X * Y + 1).to_text() == "x^2 - 3*x*y + 1"
    assert MvPolyZ(VARS).to_text() == "0"


def test_mixed_contexts_rejected():
    (u,) = gens("u")
    with pytest.raises(ContextError):
        X + u


def test_exponent_overflow_rejected():
    with pytest.raises((OverflowError, ValueError)):
        X ** 40000


def test_ratfunc_arithmetic():
    f = RatFunc(X + 1, X - 1)
    g = RatFunc(X - 1, X + 1)
    assert f * g == RatFunc.lift(1, VARS)
    assert f - f == RatFunc.lift(0, VARS)
    assert (f + g).evaluate({"x": Fraction(3)}) == Fraction(2) + Fraction(1, 2)


def test_substitute_composition():
    p = X ** 2 + Y
    out = substitute(p, {"x": Y + 1, "y": Fraction(1, 2)}, VARS)
    assert out == RatFunc(2 * (Y + 1) ** 2 + 1, 2)


@settings(max_examples=40)
@given(polys, st.integers(-4, 4), st.integers(-4, 4))
def test_substitute_then_evaluate(p, a, b):
    out = substitute(p, {"x": Y + a}, VARS)
    pt = {"x": 0, "y": b, "z": 2}
    assert out.evaluate(pt) == p.evaluate({"x": b + a, "y": b, "z": 2})
