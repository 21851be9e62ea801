"""Division polynomials Q_k, their exact-order parts q_k, and Tate-form P_k.

For ``y^2 = x^3 + a x + b`` the k-th division polynomial is stored as a
y-free body plus a parity bit: ``Q_k = (2y)**parity * body`` with parity 1
exactly for even k. Squares of ``2y`` are rewritten eagerly as
``W = 4(x^3 + a x + b)``, so every body is an honest polynomial and every
division along the recursion can be checked for exactness.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from modunits.arith import divisors, exact_order_count
from modunits.polyring import DivisibilityError, MvPolyZ, RatFunc, substitute

__all__ = [
    "DivisionPoly",
    "TatePoly",
    "DivisionPolynomials",
    "GENERIC",
    "MODULAR",
    "bigQ",
    "smallq",
    "tate_P",
    "tate_discriminant",
    "min_monomial_check",
    "relation_check",
    "recursion_check",
    "tate_normal_form",
    "tate_form_check",
    "TateNormalForm",
    "DegeneracyError",
    "scaled_units",
]


class DegeneracyError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DivisionPoly:
    """``(2y)**y_parity * body`` with ``body`` free of y."""

    k: int
    y_parity: int
    body: MvPolyZ

    def degree_x(self) -> int | Fraction:
        """Degree in x, counting the ``2y`` factor as 3/2."""
        d = self.body.degree("x")
        return d + Fraction(3, 2) if self.y_parity else d

    def stats(self) -> dict:
        exps, coeff = self.body.leading_term()
        return {
            "k": self.k,
            "y_factor": "2y" if self.y_parity else "1",
            "vars": list(self.body.vars),
            "deg_x": self.body.degree("x"),
            "terms": len(self.body),
            "content": self.body.content(),
            "leading_coeff": coeff,
        }


@dataclass(frozen=True)
class TatePoly:
    k: int
    body: MvPolyZ

    def stats(self) -> dict:
        exps, coeff = self.body.min_monomial()
        return {
            "k": self.k,
            "vars": list(self.body.vars),
            "deg_B": self.body.degree("B"),
            "deg_C": self.body.degree("C"),
            "terms": len(self.body),
            "content": self.body.content(),
            "min_monomial": {"B": exps[0], "C": exps[1], "coeff": coeff},
        }


class _YPoly:
    """Helper for ``(2y)**parity * body`` arithmetic with ``(2y)^2 = W``."""

    __slots__ = ("body", "parity", "W")

    def __init__(self, body, parity, W):
        self.body, self.parity, self.W = body, parity, W

    def __mul__(self, other):
        p = self.parity + other.parity
        body = self.body * other.body
        if p == 2:
            body = body * self.W
            p = 0
        return _YPoly(body, p, self.W)

    def __sub__(self, other):
        if self.parity != other.parity:
            raise ArithmeticError("subtracting terms with different y-parity")
        return _YPoly(self.body - other.body, self.parity, self.W)

    def exact_div(self, other):
        p = self.parity - other.parity
        divisor = other.body
        if p < 0:
            # (2y)^-1 = (2y) / W
            divisor = divisor * self.W
            p = 1
        return _YPoly(self.body.exact_div(divisor), p, self.W)


class DivisionPolynomials:
    """Memoized division polynomials of ``y^2 = x^3 + a x + b``.

    ``a`` and ``b`` are polynomials over ``vars`` (which must contain
    ``"x"``): the generic ring ``Z[x, a, b]``, the one-parameter family
    ``a = -3 j0, b = -2 j0`` over ``Z[x, j0]``, or integer specializations
    over ``Z[x]``.
    """

    def __init__(self, vars, a: MvPolyZ | int, b: MvPolyZ | int, name: str = ""):
        self.vars = tuple(vars)
        self.name = name or ",".join(self.vars)
        self.x = MvPolyZ.gen(self.vars, "x")
        self.a = a if isinstance(a, MvPolyZ) else MvPolyZ.const(self.vars, a)
        self.b = b if isinstance(b, MvPolyZ) else MvPolyZ.const(self.vars, b)
        x, a, b = self.x, self.a, self.b
        self.W = 4 * (x ** 3 + a * x + b)
        one = MvPolyZ.const(self.vars, 1)
        self._lock = threading.Lock()
        self._Q: dict[int, MvPolyZ] = {
            1: one,
            2: one,
            3: 3 * x ** 4 + 6 * a * x ** 2 + 12 * b * x - a ** 2,
            # Q_4 = 4y(...) = 2y * 2(...)
            4: 2 * (x ** 6 + 5 * a * x ** 4 + 20 * b * x ** 3 - 5 * a ** 2 * x ** 2
                    - 4 * a * b * x - 8 * b ** 2 - a ** 3),
        }
        self._q: dict[int, MvPolyZ] = {}

    @classmethod
    def generic(cls) -> "DivisionPolynomials":
        vars = ("x", "a", "b")
        return cls(vars, MvPolyZ.gen(vars, "a"), MvPolyZ.gen(vars, "b"), name="xab")

    @classmethod
    def modular(cls) -> "DivisionPolynomials":
        vars = ("x", "j0")
        j0 = MvPolyZ.gen(vars, "j0")
        return cls(vars, -3 * j0, -2 * j0, name="xj0")

    @classmethod
    def numeric(cls, a: int, b: int) -> "DivisionPolynomials":
        if 4 * a ** 3 + 27 * b ** 2 == 0:
            raise DegeneracyError(f"y^2 = x^3 + {a}x + {b} is singular")
        return cls(("x",), a, b, name=f"x|a={a},b={b}")

    def _yp(self, k: int) -> _YPoly:
        return _YPoly(self._body(k), (k + 1) % 2, self.W)

    def _body(self, n: int) -> MvPolyZ:
        got = self._Q.get(n)
        if got is not None:
            return got
        if n < 1:
            raise ValueError(f"division polynomial index must be >= 1, got {n}")
        if n % 2:
            k = (n - 1) // 2
            Qk2, Qk, Qk1, Qkm1 = self._yp(k + 2), self._yp(k), self._yp(k + 1), self._yp(k - 1)
            res = Qk2 * Qk * Qk * Qk - Qkm1 * Qk1 * Qk1 * Qk1
            assert res.parity == 0
            body = res.body
        else:
            k = n // 2
            Qk2, Qkm1, Qkm2, Qk1, Qk = (self._yp(k + 2), self._yp(k - 1), self._yp(k - 2),
                                        self._yp(k + 1), self._yp(k))
            bracket = Qk2 * Qkm1 * Qkm1 - Qkm2 * Qk1 * Qk1
            res = (bracket * Qk).exact_div(self._yp(2))
            assert res.parity == 1
            body = res.body
        with self._lock:
            self._Q.setdefault(n, body)
        return self._Q[n]

    def bigQ(self, k: int) -> DivisionPoly:
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        for i in range(5, k):
            self._body(i)
        return DivisionPoly(k, (k + 1) % 2, self._body(k))

    def smallq(self, k: int) -> DivisionPoly:
        """Exact-order part q_k, so that ``Q_k = prod_{d | k} q_d``."""
        if k < 2:
            raise ValueError(f"smallq needs k >= 2, got {k}")
        if k == 2:
            return DivisionPoly(2, 1, self._body(2))
        got = self._q.get(k)
        if got is None:
            body = self.bigQ(k).body
            # even k: the q_2 = 2y factor is exactly the stored parity
            for d in sorted(divisors(k), reverse=True):
                if 2 < d < k:
                    body = body.exact_div(self.smallq(d).body)
            with self._lock:
                got = self._q.setdefault(k, body)
        return DivisionPoly(k, 0, got)

    def specialize(self, poly: MvPolyZ, target: "DivisionPolynomials") -> MvPolyZ:
        """Image of a generic-ring polynomial under ``a, b -> target.a, target.b``."""
        if self.vars != ("x", "a", "b"):
            raise ValueError("specialize() maps out of the generic (x, a, b) ring")
        out = substitute(poly, {"a": target.a, "b": target.b}, target.vars)
        return out.num.exact_div(out.den)


GENERIC = DivisionPolynomials.generic()
MODULAR = DivisionPolynomials.modular()

_RINGS = {"xab": GENERIC, "xj0": MODULAR}


def _ring(ring) -> DivisionPolynomials:
    if isinstance(ring, DivisionPolynomials):
        return ring
    try:
        return _RINGS[ring]
    except KeyError:
        raise ValueError(f"unknown ring {ring!r}; expected one of {sorted(_RINGS)}") from None


def bigQ(k: int, ring="xab") -> DivisionPoly:
    return _ring(ring).bigQ(k)


def smallq(k: int, ring="xab") -> DivisionPoly:
    return _ring(ring).smallq(k)


# -- Tate normal form polynomials -------------------------------------------

_BC = ("B", "C")
_B = MvPolyZ.gen(_BC, "B")
_C = MvPolyZ.gen(_BC, "C")
_P: dict[int, MvPolyZ] = {
    1: MvPolyZ.const(_BC, 1),
    2: -_B,
    3: -_B ** 3,
    4: _C * _B ** 5,
}
_P_lock = threading.Lock()


def _pbody(n: int) -> MvPolyZ:
    got = _P.get(n)
    if got is not None:
        return got
    if n < 1:
        raise ValueError(f"tate_P index must be >= 1, got {n}")
    if n % 2:
        k = (n - 1) // 2
        body = _pbody(k + 2) * _pbody(k) ** 3 - _pbody(k - 1) * _pbody(k + 1) ** 3
    else:
        k = n // 2
        bracket = _pbody(k + 2) * _pbody(k - 1) ** 2 - _pbody(k - 2) * _pbody(k + 1) ** 2
        body = (bracket * _pbody(k)).exact_div(_P[2])
    with _P_lock:
        _P.setdefault(n, body)
    return _P[n]


def tate_P(k: int) -> TatePoly:
    """``P_k``: the k-th division polynomial of the Tate normal form at (0, 0)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    for i in range(5, k):
        _pbody(i)
    return TatePoly(k, _pbody(k))


def tate_discriminant(B, C):
    """``B^3 (16 B^2 + (1 - 20 C - 8 C^2) B + C (C - 1)^3)``; works for polynomials or RatFuncs."""
    return B ** 3 * (16 * B ** 2 + (1 - 20 * C - 8 * C ** 2) * B + C * (C - 1) ** 3)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def min_monomial_check(k: int) -> dict:
    """Compare the lex-smallest term of ``P_k`` with ``+-B^{floor(k^2/3)} C^{c(c-1)/2}``, ``c = ceil(k/3)``.

    Exponents and ``|coefficient| = 1`` are asserted; the sign is reported
    next to the sign ``(-1)^c (-1)^{floor(k^2/3)}`` of the closed form.
    """
    body = tate_P(k).body
    (eb, ec), coeff = body.min_monomial()
    ck = _ceil_div(k, 3)
    want_b, want_c = k * k // 3, ck * (ck - 1) // 2
    formula_sign = (-1) ** (ck + want_b)
    observed_sign = 1 if coeff > 0 else -1
    ok = (eb, ec) == (want_b, want_c) and abs(coeff) == 1
    return {
        "k": k,
        "expected_exponents": [want_b, want_c],
        "observed_exponents": [eb, ec],
        "observed_coeff": coeff,
        "formula_sign": formula_sign,
        "observed_sign": observed_sign,
        "sign_matches_formula": formula_sign == observed_sign,
        "content": body.content(),
        "ok": ok,
    }


# -- scaled units and the P_k relation over Q(x, j0) -------------------------

@dataclass(frozen=True)
class _YRat:
    """``(2y)**parity * value`` with ``value`` in Q(x, j0)."""

    value: RatFunc
    parity: int
    W: RatFunc = field(repr=False)

    def __mul__(self, other):
        p = self.parity + other.parity
        v = self.value * other.value
        if p == 2:
            v, p = v * self.W, 0
        return _YRat(v, p, self.W)

    def inverse(self):
        if self.parity:
            # (2y)^-1 = 2y / W
            return _YRat(self.value.inverse() / self.W, 1, self.W)
        return _YRat(self.value.inverse(), 0, self.W)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = _YRat(RatFunc.lift(1, self.value.vars), 0, self.W)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out


def _yrat(dp: DivisionPoly, W: RatFunc) -> _YRat:
    return _YRat(RatFunc(dp.body), dp.y_parity, W)


def scaled_units(ring="xj0") -> dict:
    """``F_2, F_3, F_4`` as rational functions over the chosen ring.

    ``F_3 = q_3^3 / q_2^8``, ``F_4 = q_4 / q_2^4`` and
    ``F_2 = q_2^4 / (1728 j0^2 (j0 - 1))`` (the last only over Z[x, j0]).
    """
    R = _ring(ring)
    W = RatFunc(R.W)
    q2 = _yrat(R.smallq(2), W)
    q3 = _yrat(R.smallq(3), W)
    q4 = _yrat(R.smallq(4), W)
    F3 = q3 ** 3 / q2 ** 8
    F4 = q4 / q2 ** (exact_order_count(4) // 3)
    out = {"F3": F3.value, "F4": F4.value, "q2^2": W}
    assert F3.parity == 0 and F4.parity == 0
    if "j0" in R.vars:
        j0 = MvPolyZ.gen(R.vars, "j0")
        F2 = q2 ** 4
        assert F2.parity == 0
        out["F2"] = F2.value / RatFunc(1728 * j0 ** 2 * (j0 - 1))
    return out


def relation_check(k: int) -> dict:
    """Check ``P_k(B=-F_3, C=-F_4) == (q_3/q_2^3)^{k^2-1} Q_k`` in Q(x, j0).

    With ``F_3 = q_3^3 / W^4`` and ``F_4 = q_4 / W^2`` both sides are a
    polynomial over a power of ``W = q_2^2``, so the identity is checked as
    one polynomial equality after clearing the larger power of ``W``.
    """
    if k < 2:
        raise ValueError("relation_check needs k >= 2")
    R = MODULAR
    body = tate_P(k).body
    terms = body.term_list()
    D = max(4 * eb + 2 * ec for (eb, ec), _ in terms)
    nB = -(R.smallq(3).body ** 3)
    nC = -R.smallq(4).body
    powB, powC, powW = {0: 1}, {0: 1}, {0: 1}

    def _pw(cache, base, e):
        if e not in cache:
            cache[e] = base ** e
        return cache[e]

    lhs = MvPolyZ.const(R.vars, 0)
    for (eb, ec), c in terms:
        t = c * _pw(powB, nB, eb) * _pw(powC, nC, ec) * _pw(powW, R.W, D - 4 * eb - 2 * ec)
        lhs = lhs + t
    n = k * k - 1
    Qk = R.bigQ(k)
    if (3 * n - Qk.y_parity) % 2:
        raise ArithmeticError(f"odd residual power of y in relation for k={k}")
    e = (3 * n - Qk.y_parity) // 2
    rhs = R.smallq(3).body ** n * Qk.body
    top = max(D, e)
    ok = lhs * R.W ** (top - D) == rhs * R.W ** (top - e)
    return {"k": k, "ok": ok}


def recursion_check(n: int, ring="xab") -> dict:
    """Recompute ``Q_n`` from every split ``n = m + r`` of the elliptic-sequence identity.

    ``Q_{m+r} Q_{m-r} = Q_{m+1} Q_{m-1} Q_r^2 - Q_{r+1} Q_{r-1} Q_m^2``
    for ``m > r >= 2``; the split ``r = m - 1`` is the defining recursion.
    """
    R = _ring(ring)
    R.bigQ(n)
    target = R._yp(n)
    splits = []
    # r = 1 is trivial (Q_0 = 0)
    for r in range(2, (n + 1) // 2):
        m = n - r
        if m <= r:
            continue
        rhs = (R._yp(m + 1) * R._yp(m - 1) * R._yp(r) * R._yp(r)
               - R._yp(r + 1) * R._yp(r - 1) * R._yp(m) * R._yp(m))
        try:
            got = rhs.exact_div(R._yp(m - r)) if m - r > 1 else rhs
        except DivisibilityError:
            splits.append({"m": m, "r": r, "ok": False})
            continue
        splits.append({"m": m, "r": r,
                       "ok": got.parity == target.parity and got.body == target.body})
    return {"n": n, "splits": splits, "ok": all(s["ok"] for s in splits)}


# -- Tate normal form of y^2 = x^3 - 3 j0 x - 2 j0 at a generic point -------

@dataclass(frozen=True)
class _Quad:
    """``re + im * y0`` with ``y0^2 = r`` over Q(x, j0)."""

    re: RatFunc
    im: RatFunc
    r: RatFunc = field(repr=False)

    def _c(self, o):
        if isinstance(o, _Quad):
            return o
        return _Quad(RatFunc.lift(o, self.re.vars) if not isinstance(o, RatFunc) else o,
                     RatFunc.lift(0, self.re.vars), self.r)

    def __add__(self, o):
        o = self._c(o)
        return _Quad(self.re + o.re, self.im + o.im, self.r)

    __radd__ = __add__

    def __neg__(self):
        return _Quad(-self.re, -self.im, self.r)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return _Quad(self.re * o.re + self.im * o.im * self.r,
                     self.re * o.im + self.im * o.re, self.r)

    __rmul__ = __mul__

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def inverse(self):
        norm = self.re * self.re - self.im * self.im * self.r
        if norm.is_zero():
            raise DegeneracyError("inverting zero in Q(x, j0)(y0)")
        return _Quad(self.re / norm, -self.im / norm, self.r)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()


@dataclass(frozen=True)
class TateNormalForm:
    B: RatFunc
    C: RatFunc
    a1: object = field(repr=False)
    a2: object = field(repr=False)
    a3: object = field(repr=False)


def tate_normal_form() -> TateNormalForm:
    """Move ``(x, y0)`` on ``y^2 = x^3 - 3 j0 x - 2 j0`` to (0, 0) in Tate normal form.

    Steps: translate the point to the origin; shear ``y -> y + lam x`` with
    the tangent slope ``lam`` to reach ``y^2 + a1 xy + a3 y = x^3 + a2 x^2``;
    scale by ``u = a3/a2`` so that ``a2 = a3 = -B``. The y0-components of
    ``B`` and ``C`` are checked to vanish.
    """
    vars = MODULAR.vars
    x = RatFunc(MvPolyZ.gen(vars, "x"))
    j0 = RatFunc(MvPolyZ.gen(vars, "j0"))
    a4, a6 = -3 * j0, -2 * j0
    r = x * x * x + a4 * x + a6
    zero = RatFunc.lift(0, vars)
    y0 = _Quad(zero, RatFunc.lift(1, vars), r)
    # after translating (x, y0) to the origin:
    #   y^2 + 2 y0 y = x^3 + 3 x0 x^2 + (3 x0^2 + a4) x
    lam = (3 * x * x + a4) / (2 * y0)
    a1 = 2 * lam
    a3 = 2 * y0
    a2 = 3 * x - lam * lam
    if a2.is_zero() or a3.is_zero():
        raise DegeneracyError("point of order <= 3; no Tate normal form")
    u = a3 / a2
    B = -(a2 * a2 * a2) / (a3 * a3)
    C = 1 - a1 / u
    for name, val in (("B", B), ("C", C)):
        if not val.im.is_zero():
            raise ArithmeticError(f"{name} has a nonzero y0-component")
    return TateNormalForm(B.re, C.re, a1, a2, a3)


def tate_form_check() -> dict:
    """Check the Tate normal form against the scaled units over Q(x, j0).

    ``B == -F_3``, ``C == -F_4`` and ``B^4 / disc(B, C) == F_2``. The last
    identity is checked after factoring ``B^3`` out of the discriminant:
    ``1728 j0^2 (j0 - 1) q_3^3 == -W^6 * E(B, C)``.
    """
    T = tate_normal_form()
    u = scaled_units("xj0")
    R = MODULAR
    j0 = MvPolyZ.gen(R.vars, "j0")
    E = 16 * _B ** 2 + (1 - 20 * _C - 8 * _C ** 2) * _B + _C * (_C - 1) ** 3
    Ev = substitute(E, {"B": T.B, "C": T.C}, R.vars)
    q3 = R.smallq(3).body
    lhs = 1728 * j0 ** 2 * (j0 - 1) * q3 ** 3 * Ev.den
    rhs = -(R.W ** 6) * Ev.num
    return {
        "B_eq_minus_F3": T.B == -u["F3"],
        "C_eq_minus_F4": T.C == -u["F4"],
        "B4_over_disc_eq_F2": lhs == rhs,
    }
