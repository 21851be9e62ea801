"""Exact scalars and the small number-theoretic functions shared by every module.

Rationals are :class:`fractions.Fraction`; nothing in this module rounds.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import floor, gcd

Rational = Fraction

__all__ = [
    "Rational",
    "DomainError",
    "TieError",
    "as_rational",
    "bernoulli2",
    "frac",
    "euler_phi",
    "mobius",
    "divisors",
    "is_prime",
    "lcm",
    "exact_order_count",
    "nearest_int",
    "fmt_rational",
    "parse_rational",
]


class DomainError(ValueError):
    """Argument outside the domain of a mathematical function."""


class TieError(ArithmeticError):
    """Nearest-integer rounding asked to break an exact half-integer tie."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(x)


def bernoulli2(x) -> Fraction:
    """Second Bernoulli polynomial ``x**2 - x + 1/6`` on ``[0, 1)``."""
    x = as_rational(x)
    if not 0 <= x < 1:
        raise DomainError(f"bernoulli2 expects 0 <= x < 1, got {x}; reduce with frac() first")
    return x * x - x + Fraction(1, 6)


def frac(x) -> Fraction:
    """Fractional part ``x - floor(x)``, always in ``[0, 1)``."""
    x = as_rational(x)
    return x - floor(x)


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p, _ in _factor(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    fs = _factor(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """Positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def is_prime(n: int) -> bool:
    return n >= 2 and _factor(n) == ((n, 1),)


def exact_order_count(k: int) -> int:
    """Number of points of exact order ``k`` in ``(Z/kZ)^2``.

    This is the Jordan totient ``J_2(k) = sum_{d|k} mu(k/d) d^2``.
    """
    if k < 2:
        raise DomainError(f"exact_order_count needs k >= 2, got {k}")
    return sum(mobius(k // d) * d * d for d in divisors(k))


def nearest_int(q) -> int:
    """Round to the nearest integer; an exact half-integer raises :class:`TieError`."""
    q = as_rational(q)
    lo = floor(q)
    diff = q - lo
    if diff == Fraction(1, 2):
        raise TieError(f"{q} is exactly halfway between {lo} and {lo + 1}")
    return lo + 1 if diff > Fraction(1, 2) else lo


def fmt_rational(q) -> str:
    """Canonical ``"p/q"`` text (``"p"`` when the denominator is 1)."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
