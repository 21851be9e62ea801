"""Sparse multivariate polynomials over the integers, and quotients of them.

A polynomial carries its ordered variable names; arithmetic between
polynomials over different variable tuples is a usage error. Terms are kept
packed (see :mod:`modunits.kernels`) so that monomial products are integer
additions and lexicographic order (first variable most significant) is
integer order.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping

from modunits import kernels
from modunits.kernels import NotDivisible

__all__ = [
    "MvPolyZ",
    "RatFunc",
    "ContextError",
    "DivisibilityError",
    "EvaluationError",
    "gens",
    "substitute",
]

WIDTH = 16
FIELD = (1 << WIDTH) - 1
MAX_EXP = (1 << (WIDTH - 1)) - 1


class ContextError(ValueError):
    """Operands live over different variable tuples."""


class DivisibilityError(ArithmeticError):
    """A division that was required to be exact was not."""


class EvaluationError(ZeroDivisionError):
    """A denominator became identically zero."""


def _guard(n: int) -> int:
    return sum(1 << (WIDTH * i + WIDTH - 1) for i in range(n))


def _pack(exps, n: int) -> int:
    key = 0
    for e in exps:
        if not 0 <= e <= MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key = (key << WIDTH) | e
    return key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & FIELD
        key >>= WIDTH
    return tuple(out)


class MvPolyZ:
    """Immutable sparse polynomial in ``Z[vars]``."""

    __slots__ = ("vars", "_t", "_hash")

    def __init__(self, vars: Iterable[str], packed: Mapping[int, int] | None = None):
        self.vars = tuple(vars)
        self._t = {k: c for k, c in (packed or {}).items() if c}
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def from_terms(cls, vars, terms: Mapping[tuple, int]) -> "MvPolyZ":
        vars = tuple(vars)
        n = len(vars)
        packed: dict[int, int] = {}
        for exps, c in terms.items():
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not match variables {vars}")
            k = _pack(exps, n)
            packed[k] = packed.get(k, 0) + int(c)
        return cls(vars, packed)

    @classmethod
    def const(cls, vars, c: int) -> "MvPolyZ":
        return cls(vars, {0: int(c)})

    @classmethod
    def gen(cls, vars, name: str) -> "MvPolyZ":
        vars = tuple(vars)
        i = vars.index(name)
        return cls(vars, {1 << (WIDTH * (len(vars) - 1 - i)): 1})

    # basic protocol ---------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def key_bits(self) -> int:
        return WIDTH * len(self.vars)

    def terms(self) -> dict[tuple, int]:
        n = len(self.vars)
        return {_unpack(k, n): c for k, c in self._t.items()}

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._t)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._t.get(0, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        if not isinstance(other, MvPolyZ):
            return NotImplemented
        return self.vars == other.vars and self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._t.items())))
        return self._hash

    def _coerce(self, other) -> "MvPolyZ":
        if isinstance(other, MvPolyZ):
            if other.vars != self.vars:
                raise ContextError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return MvPolyZ(self.vars, {0: other})
        return NotImplemented

    # ring operations --------------------------------------------------
    def __neg__(self) -> "MvPolyZ":
        return MvPolyZ(self.vars, {k: -c for k, c in self._t.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._t)
        for k, c in other._t.items():
            out[k] = out.get(k, 0) + c
        return MvPolyZ(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._t)
        for k, c in other._t.items():
            out[k] = out.get(k, 0) - c
        return MvPolyZ(self.vars, out)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MvPolyZ(self.vars)
            return MvPolyZ(self.vars, {k: c * other for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return MvPolyZ(self.vars)
        out = kernels.mul(self._t, other._t, self.key_bits)
        g = _guard(len(self.vars))
        if any(k & g for k in out):
            raise OverflowError("exponent overflow in product")
        return MvPolyZ(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MvPolyZ":
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        result = MvPolyZ.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, other) -> "MvPolyZ":
        """Quotient ``self / other``; :class:`DivisibilityError` unless exact."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            out = {}
            for k, c in self._t.items():
                q, r = divmod(c, other)
                if r:
                    raise DivisibilityError(f"coefficient {c} not divisible by {other}")
                out[k] = q
            return MvPolyZ(self.vars, out)
        other = self._coerce(other)
        if not other._t:
            raise ZeroDivisionError("division by the zero polynomial")
        try:
            quo = kernels.divexact(self._t, other._t, _guard(len(self.vars)), self.key_bits)
        except NotDivisible as exc:
            raise DivisibilityError(str(exc)) from None
        return MvPolyZ(self.vars, quo)

    def divides(self, other: "MvPolyZ") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        try:
            other.exact_div(self)
        except DivisibilityError:
            return False
        return True

    # inspection -------------------------------------------------------
    def content(self) -> int:
        return reduce(gcd, self._t.values(), 0)

    def primitive_part(self) -> "MvPolyZ":
        c = self.content()
        return self if c in (0, 1) else self.exact_div(c)

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ContextError(f"{var!r} is not one of {self.vars}") from None

    def degree(self, var: str) -> int:
        """Degree in ``var`` (``-1`` for the zero polynomial)."""
        shift = WIDTH * (len(self.vars) - 1 - self._index(var))
        return max(((k >> shift) & FIELD for k in self._t), default=-1)

    def leading_term(self) -> tuple[tuple, int]:
        """Lex-largest term as ``(exponents, coefficient)``."""
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return _unpack(k, len(self.vars)), self._t[k]

    def min_monomial(self) -> tuple[tuple, int]:
        """Lex-smallest term as ``(exponents, coefficient)``.

        Lex order compares the first variable's exponent first, then the
        second, and so on.
        """
        if not self._t:
            raise ValueError("zero polynomial has no smallest monomial")
        k = min(self._t)
        return _unpack(k, len(self.vars)), self._t[k]

    def coefficients_in(self, var: str) -> dict[int, "MvPolyZ"]:
        """Split as ``sum_i c_i * var**i``; the ``c_i`` keep the same variables."""
        shift = WIDTH * (len(self.vars) - 1 - self._index(var))
        out: dict[int, dict[int, int]] = {}
        for k, c in self._t.items():
            e = (k >> shift) & FIELD
            out.setdefault(e, {})[k - (e << shift)] = c
        return {e: MvPolyZ(self.vars, t) for e, t in out.items()}

    def free_vars(self) -> tuple[str, ...]:
        n = len(self.vars)
        used = [False] * n
        for k in self._t:
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a point; values may be ints, Fractions, floats, complex or mpmath numbers."""
        n = len(self.vars)
        missing = [v for v in self.free_vars() if v not in values]
        if missing:
            raise ValueError(f"no value given for {missing}")
        pts = [values.get(v, 0) for v in self.vars]
        powers: list[dict[int, object]] = [{} for _ in range(n)]
        total = 0
        for k, c in self._t.items():
            term = c
            for i, e in enumerate(_unpack(k, n)):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = pts[i] ** e
                    term = term * cache[e]
            total = total + term
        return total

    def reorder(self, vars: Iterable[str]) -> "MvPolyZ":
        """Same polynomial over another variable tuple containing all free variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        missing = [v for v in self.free_vars() if v not in pos]
        if missing:
            raise ContextError(f"variables {missing} not present in {vars}")
        out: dict[tuple, int] = {}
        for exps, c in self.terms().items():
            new = [0] * len(vars)
            for v, e in zip(self.vars, exps):
                if e:
                    new[pos[v]] = e
            out[tuple(new)] = c
        return MvPolyZ.from_terms(vars, out)

    # text -------------------------------------------------------------
    def to_text(self) -> str:
        """Deterministic human-readable form, terms in decreasing lex order."""
        if not self._t:
            return "0"
        parts = []
        n = len(self.vars)
        for k in sorted(self._t, reverse=True):
            c = self._t[k]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, _unpack(k, n)) if e
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def term_list(self) -> list[tuple[tuple, int]]:
        """Sorted ``(exponents, coefficient)`` pairs for debug serialization."""
        n = len(self.vars)
        return [(_unpack(k, n), self._t[k]) for k in sorted(self._t, reverse=True)]

    def __repr__(self) -> str:
        return f"MvPolyZ({self.to_text()!r}, vars={self.vars})"

    __str__ = to_text


def gens(*names: str) -> tuple[MvPolyZ, ...]:
    """Generators of ``Z[names]``, e.g. ``x, a, b = gens("x", "a", "b")``."""
    return tuple(MvPolyZ.gen(names, n) for n in names)


class RatFunc:
    """Quotient of two :class:`MvPolyZ` over the same variables.

    Only the integer content is cancelled; equality is decided by
    cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MvPolyZ | int, den: MvPolyZ | int = 1, vars=None):
        if vars is None:
            vars = num.vars if isinstance(num, MvPolyZ) else den.vars
        vars = tuple(vars)
        if isinstance(num, int):
            num = MvPolyZ.const(vars, num)
        if isinstance(den, int):
            den = MvPolyZ.const(vars, den)
        if num.vars != vars or den.vars != vars:
            raise ContextError(f"variable mismatch: {num.vars} / {den.vars}")
        if den.is_zero():
            raise EvaluationError("denominator is identically zero")
        if num.is_zero():
            den = MvPolyZ.const(vars, 1)
        else:
            g = gcd(num.content(), den.content())
            if den.leading_term()[1] < 0:
                g = -g
            if g != 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
        self.num = num
        self.den = den

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    @classmethod
    def lift(cls, value, vars) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.vars != tuple(vars):
                raise ContextError(f"variable mismatch: {value.vars} vs {tuple(vars)}")
            return value
        if isinstance(value, MvPolyZ):
            return cls(value)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator, vars=vars)
        if isinstance(value, int):
            return cls(value, 1, vars=vars)
        raise TypeError(f"cannot lift {type(value).__name__} into RatFunc")

    def _c(self, other):
        if not isinstance(other, (RatFunc, MvPolyZ, Fraction, int)):
            return NotImplemented
        return RatFunc.lift(other, self.vars)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise EvaluationError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        try:
            o = self._c(other)
        except ContextError:
            return NotImplemented
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc values are compared by cross-multiplication and are unhashable")

    def cancel(self, factor: MvPolyZ) -> "RatFunc":
        """Remove a known common factor from numerator and denominator."""
        return RatFunc(self.num.exact_div(factor), self.den.exact_div(factor))

    def evaluate(self, values):
        d = self.den.evaluate(values)
        if d == 0:
            raise EvaluationError("denominator vanishes at the evaluation point")
        n = self.num.evaluate(values)
        if isinstance(n, int) and isinstance(d, int):
            return Fraction(n, d)
        return n / d

    def to_text(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    def __repr__(self) -> str:
        return f"RatFunc({self.to_text()!r}, vars={self.vars})"


def substitute(p: MvPolyZ | RatFunc, bindings: Mapping[str, object], target_vars) -> RatFunc:
    """Compose ``p`` with ``bindings`` (variable -> value over ``target_vars``).

    Unbound variables of ``p`` are carried over by name and must appear in
    ``target_vars``. Bound values may be ints, Fractions, MvPolyZ or RatFunc.
    """
    target_vars = tuple(target_vars)
    if isinstance(p, RatFunc):
        num = substitute(p.num, bindings, target_vars)
        den = substitute(p.den, bindings, target_vars)
        if den.is_zero():
            raise EvaluationError("denominator becomes identically zero after substitution")
        return num / den
    vals = []
    for v in p.vars:
        if v in bindings:
            vals.append(RatFunc.lift(bindings[v], target_vars))
        elif v in target_vars:
            vals.append(RatFunc(MvPolyZ.gen(target_vars, v)))
        else:
            vals.append(None)
    free = set(p.free_vars())
    for v, val in zip(p.vars, vals):
        if val is None and v in free:
            raise ContextError(f"variable {v!r} is neither bound nor present in {target_vars}")
    n = len(p.vars)
    terms = p.term_list()
    top = [max((e[i] for e, _ in terms), default=0) for i in range(n)]
    # common denominator prod den_i**top_i; numerator sums c * num_i**e_i * den_i**(top_i-e_i)
    num_pows: list[dict[int, MvPolyZ]] = [{} for _ in range(n)]
    den_pows: list[dict[int, MvPolyZ]] = [{} for _ in range(n)]

    def _pw(cache, base, e):
        if e not in cache:
            cache[e] = base ** e
        return cache[e]

    total = MvPolyZ(target_vars)
    for exps, c in terms:
        term = MvPolyZ.const(target_vars, c)
        for i, e in enumerate(exps):
            if not top[i]:
                continue
            val = vals[i]
            if e:
                term = term * _pw(num_pows[i], val.num, e)
            if top[i] - e:
                term = term * _pw(den_pows[i], val.den, top[i] - e)
        total = total + term
    den = MvPolyZ.const(target_vars, 1)
    for i in range(n):
        if top[i]:
            den = den * _pw(den_pows[i], vals[i].den, top[i])
    return RatFunc(total, den)
