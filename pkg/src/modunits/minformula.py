"""Cusp orders of the modular units F_k on X_1(N) via piecewise-linear order functions.

``F_k`` has order ``e_c(N) * v_k(c/N)`` at every cusp of the orbit ``C_c(N)``,
where ``v_k`` is an explicit continuous piecewise-linear function of
``t in [0, 1/2]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from modunits.arith import DomainError, exact_order_count
from modunits.cusps import CuspOrbit, all_orbits, orbit
from modunits.piecewise import PiecewiseLin

__all__ = [
    "PiecewiseLin",
    "UnitExpr",
    "Divisor",
    "UnsupportedLevelError",
    "vk",
    "vk_alt",
    "q_order",
    "divisor",
    "unit_matrix_rank",
    "degree_zero_defect",
]


class UnsupportedLevelError(ValueError):
    pass


def _scale(k: int) -> int:
    return 3 if k == 3 else 1


@lru_cache(maxsize=None)
def vk(k: int) -> PiecewiseLin:
    """Unweighted order function of ``F_k``."""
    if k < 2:
        raise DomainError(f"vk needs k >= 2, got {k}")
    if k == 2:
        return PiecewiseLin.affine(4, -1)
    f = PiecewiseLin.affine(-Fraction(exact_order_count(k), 3))
    for o in all_orbits(k)[1:]:
        f = f + o.n * PiecewiseLin.min_t(Fraction(o.c, k))
    return _scale(k) * f


@lru_cache(maxsize=None)
def vk_alt(k: int) -> PiecewiseLin:
    """Same function as :func:`vk`, written without ``m_k``."""
    if k < 3:
        raise DomainError(f"vk_alt needs k >= 3, got {k}")
    f = PiecewiseLin.zero()
    for o in all_orbits(k)[1:]:
        if 2 * o.c == k:
            continue
        a = Fraction(o.c, k)
        f = f + o.n * (PiecewiseLin.min_t(a) + PiecewiseLin.affine(-4 * a * (1 - a)))
    return _scale(k) * f


def q_order(k: int, N: int, c: int) -> Fraction:
    """Weighted order of ``q_k`` (of ``q_2^2`` when k = 2) at ``C_c(N)``."""
    if k < 2:
        raise DomainError(f"q_order needs k >= 2, got {k}")
    if k == N:
        raise DomainError("q_N vanishes identically on X_1(N)")
    oc = orbit(N, c)
    t = Fraction(c, N)
    return oc.e * sum((o.n * min(t, Fraction(o.c, k)) for o in all_orbits(k)), Fraction(0))


@dataclass(frozen=True)
class UnitExpr:
    """Finite product ``prod F_k^{e_k}``; zero exponents are never stored."""

    exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for k, e in self.exponents:
            if k < 2:
                raise ValueError(f"F_k needs k >= 2, got F{k}")
            if e == 0 or not isinstance(e, int):
                raise ValueError(f"exponent of F{k} must be a nonzero integer")

    @classmethod
    def of(cls, exps: Mapping[int, int] | "UnitExpr") -> "UnitExpr":
        if isinstance(exps, UnitExpr):
            return exps
        return cls(tuple(sorted((int(k), int(e)) for k, e in exps.items() if e)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def __bool__(self):
        return bool(self.exponents)

    def to_text(self) -> str:
        """Canonical text such as ``F7/F8`` or ``F2^2*F3``."""
        if not self.exponents:
            return "1"
        out = []
        for k, e in self.exponents:
            if not out:
                out.append(f"F{k}" + (f"^{e}" if e != 1 else ""))
            elif e > 0:
                out.append(f"*F{k}" + (f"^{e}" if e != 1 else ""))
            else:
                out.append(f"/F{k}" + (f"^{-e}" if e != -1 else ""))
        return "".join(out)

    __str__ = to_text


@dataclass(frozen=True)
class Divisor:
    level: int
    unit: UnitExpr
    entries: tuple[tuple[CuspOrbit, int], ...]
    degree_qbar: int = field(init=False)

    def __post_init__(self):
        if sum(o.f * d for o, d in self.entries) != 0:
            raise AssertionError(f"divisor of {self.unit} on X_1({self.level}) has nonzero degree")
        object.__setattr__(self, "degree_qbar", sum(o.f * max(0, d) for o, d in self.entries))

    def orders(self) -> list[int]:
        return [d for _, d in self.entries]

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "unit": self.unit.to_text(),
            "entries": [{"c": o.c, "e": o.e, "f": o.f, "order": d} for o, d in self.entries],
            "degree_qbar": self.degree_qbar,
        }


def divisor(u, N: int) -> Divisor:
    u = UnitExpr.of(u)
    if N == 2:
        raise UnsupportedLevelError("divisors on X_1(2) are not supported")
    if N < 2:
        raise DomainError(f"level must be > 2, got {N}")
    for k, _ in u.exponents:
        if k == N:
            raise DomainError(f"F{N} vanishes identically on X_1({N})")
    entries = []
    for o in all_orbits(N):
        t = Fraction(o.c, N)
        val = o.e * sum((e * vk(k)(t) for k, e in u.exponents), Fraction(0))
        if val.denominator != 1:
            raise AssertionError(f"non-integral order {val} at C_{o.c}({N}) for {u}")
        entries.append((o, int(val)))
    return Divisor(N, u, tuple(entries))


def degree_zero_defect(k: int, N: int) -> Fraction:
    """``sum_c f_c e_c v_k(c/N)``; zero for every admissible pair."""
    return sum((o.f * o.e * vk(k)(Fraction(o.c, N)) for o in all_orbits(N)), Fraction(0))


def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / p[col]
                m[i] = [a - f * b for a, b in zip(m[i], p)]
        rank += 1
    return rank


def unit_matrix_rank(N: int) -> int:
    """Rank over Q of ``[e_c(N) v_k(c/N)]``, k = 2..floor(N/2)+1 (k != N), c = 1..floor(N/2)."""
    if N < 5:
        raise DomainError(f"unit_matrix_rank needs N >= 5, got {N}")
    orbs = all_orbits(N)[1:]
    rows = [[o.e * vk(k)(Fraction(o.c, N)) for o in orbs]
            for k in range(2, N // 2 + 2) if k != N]
    return _rank(rows)
