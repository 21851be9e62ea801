"""Degree of F_7/F_8 on X_1(N) and the nearest-integer bound 11 N^2 / 840.

``v = v_7 - v_8`` and ``m = max(0, v)``. For each level,

* ``B0(N) = sum_{0<c<N/2} n_c(N) m(c/N)`` is the degree of F_7/F_8,
* ``B1(N) = sum_{0<c<N/2} N m(c/N)`` is its majorant.

Everything is evaluated by direct summation; ``N m(c/N)`` is an integer
affine expression in ``(c, N)`` on each segment, which the kernel samples.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd

from modunits import kernels
from modunits.arith import DomainError, fmt_rational, is_prime, nearest_int
from modunits.cusps import orbit
from modunits.minformula import vk
from modunits.piecewise import PiecewiseLin

__all__ = [
    "v_func",
    "v_closed_form",
    "m_func",
    "segments",
    "B0",
    "B1",
    "B0_B1",
    "target",
    "GonalityRow",
    "gonality_row",
    "gonality_table",
    "table_csv",
    "table_json",
    "verify_lemma",
    "offset_periodicity",
    "gonality_bound",
]

PERIOD = 420


def v_func() -> PiecewiseLin:
    return vk(7) - vk(8)


def v_closed_form() -> PiecewiseLin:
    """``7 min(t,1/7) + 7 min(t,2/7) + 7 min(t,3/7) - 8 min(t,1/8) - 4 min(t,1/4) - 8 min(t,3/8) - 2t``."""
    mt = PiecewiseLin.min_t
    F = Fraction
    return (7 * mt(F(1, 7)) + 7 * mt(F(2, 7)) + 7 * mt(F(3, 7))
            - 8 * mt(F(1, 8)) - 4 * mt(F(1, 4)) - 8 * mt(F(3, 8))
            + PiecewiseLin.affine(-2))


_M = None


def m_func() -> PiecewiseLin:
    global _M
    if _M is None:
        _M = v_func().max0()
    return _M


def segments() -> list[tuple[tuple[Fraction, Fraction], tuple[int, int]]]:
    """The four pieces of the support of ``m``: ``((lo, hi), (slope, intercept))``."""
    F = Fraction
    return [
        ((F(1, 4), F(2, 7)), (4, -1)),
        ((F(2, 7), F(1, 3)), (-3, 1)),
        ((F(2, 5), F(3, 7)), (5, -2)),
        ((F(3, 7), F(1, 2)), (-2, 1)),
    ]


def _kernel_tables():
    segs = m_func().segments()
    bps = [segs[0][0]] + [s[1] for s in segs]
    slopes = [s[2] for s in segs]
    icepts = [s[3] for s in segs]
    if any(x.denominator != 1 for x in slopes + icepts):
        raise AssertionError("m has non-integral slope or intercept")
    return ([b.numerator for b in bps], [b.denominator for b in bps],
            [int(x) for x in slopes], [int(x) for x in icepts])


_TABLES = None


def _scaled(N: int) -> list[int]:
    """``N * m(c/N)`` for ``c = 0..N//2``."""
    global _TABLES
    if _TABLES is None:
        _TABLES = _kernel_tables()
    return kernels.sample_scaled(*_TABLES, N)


def B0_B1(N: int) -> tuple[int, int]:
    if N < 2:
        raise DomainError(f"level must be >= 2, got {N}")
    vals = _scaled(N)
    b0 = Fraction(0)
    b1 = 0
    for c in range(1, (N + 1) // 2):
        val = vals[c]
        if val:
            b1 += val
            b0 += Fraction(orbit(N, c).n * val, N)
    if b0.denominator != 1:
        raise AssertionError(f"B0({N}) = {b0} is not an integer")
    return int(b0), b1


def B0(N: int) -> int:
    return B0_B1(N)[0]


def B1(N: int) -> int:
    return B0_B1(N)[1]


def target(N: int) -> Fraction:
    """``11 N^2 / 840``."""
    return Fraction(11 * N * N, 840)


def _is_tie(x: Fraction) -> bool:
    return x - floor(x) == Fraction(1, 2)


@dataclass(frozen=True)
class GonalityRow:
    N: int
    B0: int
    B1: int
    bound: int | None
    offset: Fraction
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "B0": self.B0,
            "B1": self.B1,
            "bound": self.bound,
            "offset": fmt_rational(self.offset),
            "flags": dict(sorted(self.flags.items())),
        }


def gonality_row(N: int) -> GonalityRow:
    b0, b1 = B0_B1(N)
    x = target(N)
    tie = _is_tie(x)
    flags = {
        "prime": is_prime(N),
        "gcd420_coprime": gcd(N, PERIOD) == 1,
        "div7": N % 7 == 0,
        "tie": tie,
    }
    return GonalityRow(N, b0, b1, None if tie else nearest_int(x), b1 - x, flags)


def gonality_table(start: int, stop: int) -> list[GonalityRow]:
    """Rows for ``start <= N <= stop``, ordered by N."""
    return [gonality_row(N) for N in range(max(start, 2), stop + 1)]


_CSV_FIELDS = ["N", "B0", "B1", "bound", "offset", "prime", "gcd420_coprime", "div7", "tie"]


def table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_CSV_FIELDS)
    for r in rows:
        w.writerow([r.N, r.B0, r.B1, "" if r.bound is None else r.bound, fmt_rational(r.offset),
                    *(int(r.flags[k]) for k in _CSV_FIELDS[5:])])
    return buf.getvalue()


def table_json(rows) -> str:
    return json.dumps([r.to_dict() for r in rows], sort_keys=True, indent=2)


def verify_lemma(N_max: int, N_min: int = 9) -> dict:
    """Check the four bounds on B0/B1 for every level in ``[N_min, N_max]`` by enumeration.

    Where ``11 N^2 / 840`` is an exact half-integer the rounding is ambiguous;
    there the floor is used, which makes each upper bound strictly harder.
    """
    if N_max < N_min:
        raise DomainError(f"N_max must be >= {N_min}")
    failures, sharp, ties = [], [], []
    for N in range(N_min, N_max + 1):
        b0, b1 = B0_B1(N)
        x = target(N)
        if _is_tie(x):
            ties.append(N)
            r = floor(x)
        else:
            r = nearest_int(x)

        def fail(claim, **kw):
            failures.append({"N": N, "claim": claim, "B0": b0, "B1": b1, "bound": r, **kw})

        if b0 > r:
            fail("B0 <= [11N^2/840]")
        if b1 > r + 2:
            fail("B1 <= [11N^2/840] + 2")
        if b1 == r + 2:
            sharp.append(N)
            if N % 7:
                fail("B1 = [11N^2/840] + 2 only when 7 | N")
        if gcd(N, PERIOD) == 1 and b1 != r:
            fail("B1 = [11N^2/840] when gcd(N, 420) = 1")
        if is_prime(N) and N > 7 and not (b0 == b1 == r):
            fail("B0 = B1 = [11N^2/840] for prime N")
    return {"N_min": N_min, "N_max": N_max, "checked": N_max - N_min + 1,
            "failures": failures, "sharp": sharp, "ties": ties}


def offset_periodicity(periods: int = 3, first: int = 9) -> dict:
    """``B1(N) - 11 N^2 / 840`` is constant along each residue class mod 420."""
    if periods < 2:
        raise DomainError("need at least two periods")
    offsets, failures = {}, []
    for r in range(first, first + PERIOD):
        seen = [B1(r + i * PERIOD) - target(r + i * PERIOD) for i in range(periods)]
        offsets[r] = seen[0]
        if any(s != seen[0] for s in seen):
            failures.append({"residue": r, "offsets": [fmt_rational(s) for s in seen]})
    return {"periods": periods, "residues": len(offsets),
            "offsets": {str(r): fmt_rational(v) for r, v in offsets.items()},
            "failures": failures}


def gonality_bound(N: int) -> int:
    """Nearest integer to ``11 N^2 / 840``; an upper bound for the Q-gonality of X_1(N).

    ``B0(N)`` is the (possibly sharper) degree of F_7/F_8 itself. Raises
    :class:`TieError` at the levels where the rounding is ambiguous.
    """
    if N <= 8:
        raise DomainError(f"F_7/F_8 gives no bound for N <= 8, got {N}")
    return nearest_int(target(N))

