"""Cusp orders of F_k from Siegel functions and the second Bernoulli polynomial.

This route shares no code with :mod:`modunits.minformula` apart from the
orbit bookkeeping, so agreement between the two is a real check.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from modunits.arith import DomainError, bernoulli2, divisors, fmt_rational, frac
from modunits.cusps import all_orbits

__all__ = [
    "uord_H",
    "uord_Htilde",
    "siegel_order_F",
    "crosscheck",
    "piecewise_identity_check",
    "degree_zero_defect",
]

GRID = 2520


def _check(k: int, N: int, c: int) -> None:
    if N < 2:
        raise DomainError(f"level must be >= 2, got {N}")
    if k % N == 0:
        raise DomainError(f"H_{k} is undefined at level {N} (k = 0 mod N)")
    if not 0 <= c <= N // 2:
        raise DomainError(f"orbit label must lie in [0, {N // 2}], got {c}")


def uord_H(k: int, N: int, c: int) -> Fraction:
    """Unweighted order of ``H_k = g_(0, k/N)`` at ``C_c(N)``."""
    _check(k, N, c)
    return bernoulli2(frac(Fraction(c * k, N))) / 2


def _htilde(k: int, t: Fraction) -> Fraction:
    # as a function of t alone; defined for every t, including N | k
    return (bernoulli2(frac(k * t)) - k * k * bernoulli2(frac(t))) / 2


def uord_Htilde(k: int, N: int, c: int) -> Fraction:
    """Unweighted order of ``H_k / H_1^{k^2}`` at ``C_c(N)``."""
    _check(k, N, c)
    return _htilde(k, Fraction(c, N))


def _t_k(k: int, t: Fraction) -> Fraction:
    # order of Q_k / q_2^{(k^2-1)/3} after normalisation: H~_k / H~_2^{(k^2-1)/3}
    return _htilde(k, t) - Fraction(k * k - 1, 3) * _htilde(2, t)


@lru_cache(maxsize=65536)
def _qtilde(k: int, t: Fraction) -> Fraction:
    """Order of the normalised exact-order part q~_k (q~_2 has order 0)."""
    if k <= 2:
        return Fraction(0)
    return _t_k(k, t) - sum((_qtilde(d, t) for d in divisors(k) if 2 < d < k), Fraction(0))


def _order_F(k: int, t: Fraction) -> Fraction:
    if k == 2:
        return 4 * _htilde(2, t)
    if k == 3:
        return 3 * _htilde(3, t) - 8 * _htilde(2, t)
    return _qtilde(k, t)


def siegel_order_F(k: int, N: int, c: int) -> Fraction:
    """Unweighted order of ``F_k`` at ``C_c(N)``, built from Siegel-function orders."""
    if k < 2:
        raise DomainError(f"F_k needs k >= 2, got {k}")
    if k == N:
        raise DomainError(f"F{N} vanishes identically on X_1({N})")
    if N <= 2:
        raise DomainError(f"level must be > 2, got {N}")
    if not 0 <= c <= N // 2:
        raise DomainError(f"orbit label must lie in [0, {N // 2}], got {c}")
    return _order_F(k, Fraction(c, N))


def crosscheck(k_max: int, N_max: int) -> dict:
    """Compare every Siegel-route order with the piecewise-linear ``v_k(c/N)``."""
    from modunits.minformula import vk

    checked, mismatches = 0, []
    for N in range(3, N_max + 1):
        for k in range(2, k_max + 1):
            if k == N:
                continue
            f = vk(k)
            for c in range(N // 2 + 1):
                lhs = siegel_order_F(k, N, c)
                rhs = f(Fraction(c, N))
                checked += 1
                if lhs != rhs:
                    mismatches.append({"k": k, "N": N, "c": c,
                                       "lhs": fmt_rational(lhs), "rhs": fmt_rational(rhs)})
    return {"checked": checked, "mismatches": mismatches}


def _tH_closed(k: int, t: Fraction) -> Fraction:
    s = sum((min(t, Fraction(i, k)) - t for i in range(1, (k + 1) // 2)), Fraction(0))
    return Fraction(k * k - k, 2) * t - Fraction(k * k - 1, 12) + k * s


def _m_a(a: Fraction, t: Fraction) -> Fraction:
    return min(t, a) - 4 * a * (1 - a) * t


def _probes(k: int) -> list[Fraction]:
    pts = {Fraction(i, GRID) for i in range(GRID // 2 + 1)}
    pts |= {Fraction(j, k) for j in range(k // 2 + 1)}
    pts = sorted(pts)
    return pts + [(a + b) / 2 for a, b in zip(pts, pts[1:])]


def piecewise_identity_check(k_max: int) -> dict:
    """Both piecewise identities for ``H~_k`` on the 1/2520 grid plus every ``j/k``.

    Both sides are piecewise linear with corners among the probe points,
    so equality at the probes and their midpoints is equality everywhere.
    """
    checked, mismatches = 0, []
    for k in range(2, k_max + 1):
        for t in _probes(k):
            checked += 1
            lhs, rhs = _htilde(k, t), _tH_closed(k, t)
            if lhs != rhs:
                mismatches.append({"identity": "tH", "k": k, "t": fmt_rational(t),
                                   "lhs": fmt_rational(lhs), "rhs": fmt_rational(rhs)})
            agg = sum((_qtilde(d, t) for d in divisors(k)), Fraction(0))
            closed = k * sum((_m_a(Fraction(i, k), t) for i in range(1, (k + 1) // 2)),
                             Fraction(0))
            if agg != closed:
                mismatches.append({"identity": "lasteq", "k": k, "t": fmt_rational(t),
                                   "lhs": fmt_rational(agg), "rhs": fmt_rational(closed)})
    return {"checked": checked, "mismatches": mismatches}


def degree_zero_defect(k: int, N: int) -> Fraction:
    """``sum_c f_c e_c ord(F_k)`` on the Siegel side."""
    return sum((o.f * o.e * siegel_order_F(k, N, o.c) for o in all_orbits(N)), Fraction(0))
