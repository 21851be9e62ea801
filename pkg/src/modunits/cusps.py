"""Galois orbits of cusps on X_1(N) and their size, width and residue degree."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from modunits.arith import euler_phi

__all__ = ["CuspOrbit", "orbit", "all_orbits", "UsageError"]


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CuspOrbit:
    """Orbit ``C_c(N)``: ``n`` cusps, ramification ``e`` and residue degree ``f``.

    ``width`` is ``N / gcd(c, N)``; ``e`` agrees with it except at the one
    irregular cusp ``(N, c) = (4, 2)`` where ``e = 1``.
    """

    N: int
    c: int
    n: int
    e: int
    f: int
    width: int
    irregular: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def orbit(N: int, c: int) -> CuspOrbit:
    if N < 2:
        raise UsageError(f"level must be >= 2, got {N}")
    if not 0 <= c <= N // 2:
        raise UsageError(f"orbit label must lie in [0, {N // 2}] for N={N}, got {c}")
    width = N // gcd(c, N)
    irregular = (N, c) == (4, 2)
    if c == 0:
        n = 1 if N == 2 else euler_phi(N) // 2
    elif 2 * c == N:
        n = 2 if N == 2 else euler_phi(N // 2)
    else:
        d = gcd(c, N)
        n = euler_phi(d) * (N // d)
    e = 1 if irregular else width
    if n % e:
        raise AssertionError(f"orbit size {n} not divisible by e={e} at (N, c) = ({N}, {c})")
    return CuspOrbit(N, c, n, e, n // e, width, irregular)


def all_orbits(N: int) -> list[CuspOrbit]:
    return [orbit(N, c) for c in range(N // 2 + 1)]
