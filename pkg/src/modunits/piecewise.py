"""Exact continuous piecewise-linear functions on [0, 1/2]."""
from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable

from modunits.arith import DomainError, as_rational, fmt_rational

__all__ = ["PiecewiseLin", "HALF"]

HALF = Fraction(1, 2)


class PiecewiseLin:
    """Continuous piecewise-linear function given by its values at breakpoints.

    Breakpoints run strictly upwards from 0 to 1/2. Redundant breakpoints
    (where the slope does not change) are kept; equality ignores them.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: Iterable, values: Iterable):
        bps = tuple(as_rational(b) for b in breakpoints)
        vals = tuple(as_rational(v) for v in values)
        if len(bps) != len(vals) or len(bps) < 2:
            raise ValueError("need matching breakpoint/value lists with at least two entries")
        if bps[0] != 0 or bps[-1] != HALF:
            raise ValueError("breakpoints must start at 0 and end at 1/2")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.breakpoints = bps
        self.values = vals

    # -- constructors --------------------------------------------------------
    @classmethod
    def affine(cls, slope, intercept=0) -> "PiecewiseLin":
        slope, intercept = as_rational(slope), as_rational(intercept)
        return cls((0, HALF), (intercept, intercept + slope * HALF))

    @classmethod
    def min_t(cls, a) -> "PiecewiseLin":
        """``t -> min(t, a)``."""
        a = as_rational(a)
        if a <= 0:
            return cls.affine(0, a)
        if a >= HALF:
            return cls.affine(1)
        return cls((0, a, HALF), (0, a, a))

    @classmethod
    def zero(cls) -> "PiecewiseLin":
        return cls.affine(0)

    # -- evaluation ----------------------------------------------------------
    def __call__(self, t) -> Fraction:
        t = as_rational(t)
        if not 0 <= t <= HALF:
            raise DomainError(f"t = {t} outside [0, 1/2]")
        bps = self.breakpoints
        i = bisect_right(bps, t) - 1
        if i >= len(bps) - 1:
            return self.values[-1]
        t0, t1 = bps[i], bps[i + 1]
        v0, v1 = self.values[i], self.values[i + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def slopes(self) -> list[Fraction]:
        b, v = self.breakpoints, self.values
        return [(v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(len(b) - 1)]

    def segments(self):
        """``(t0, t1, slope, intercept)`` for each segment."""
        b, v = self.breakpoints, self.values
        out = []
        for i, s in enumerate(self.slopes()):
            out.append((b[i], b[i + 1], s, v[i] - s * b[i]))
        return out

    def integrate(self) -> Fraction:
        b, v = self.breakpoints, self.values
        return sum(((b[i + 1] - b[i]) * (v[i] + v[i + 1]) / 2 for i in range(len(b) - 1)),
                   Fraction(0))

    def corners(self) -> list[Fraction]:
        """Interior breakpoints where the slope actually changes."""
        s = self.slopes()
        return [self.breakpoints[i + 1] for i in range(len(s) - 1) if s[i] != s[i + 1]]

    # -- arithmetic ----------------------------------------------------------
    def _merged(self, other: "PiecewiseLin"):
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        return bps, [self(t) for t in bps], [other(t) for t in bps]

    def __add__(self, other):
        if not isinstance(other, PiecewiseLin):
            return NotImplemented
        bps, a, b = self._merged(other)
        return PiecewiseLin(bps, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return PiecewiseLin(self.breakpoints, [-v for v in self.values])

    def __sub__(self, other):
        if not isinstance(other, PiecewiseLin):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, PiecewiseLin) or isinstance(scalar, float):
            return NotImplemented
        c = as_rational(scalar)
        return PiecewiseLin(self.breakpoints, [c * v for v in self.values])

    __rmul__ = __mul__

    def max0(self) -> "PiecewiseLin":
        """Pointwise ``max(0, f)``; zero crossings become new breakpoints."""
        b, v = self.breakpoints, self.values
        nb, nv = [b[0]], [max(v[0], 0)]
        for i in range(len(b) - 1):
            v0, v1 = v[i], v[i + 1]
            if (v0 < 0 < v1) or (v1 < 0 < v0):
                nb.append(b[i] + (b[i + 1] - b[i]) * v0 / (v0 - v1))
                nv.append(Fraction(0))
            nb.append(b[i + 1])
            nv.append(max(v1, 0))
        return PiecewiseLin(nb, nv)

    def __eq__(self, other):
        if not isinstance(other, PiecewiseLin):
            return NotImplemented
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        probes = bps + [(x + y) / 2 for x, y in zip(bps, bps[1:])]
        return all(self(t) == other(t) for t in probes)

    def __hash__(self):
        raise TypeError("PiecewiseLin is unhashable")

    def support(self) -> list[tuple[Fraction, Fraction]]:
        """Maximal open intervals where the function is nonzero."""
        b, v = self.breakpoints, self.values
        out: list[list[Fraction]] = []
        for i in range(len(b) - 1):
            if v[i] == 0 and v[i + 1] == 0:
                continue
            if out and out[-1][1] == b[i] and v[i] != 0:
                out[-1][1] = b[i + 1]
            else:
                out.append([b[i], b[i + 1]])
        return [tuple(iv) for iv in out]

    def to_dict(self) -> dict:
        return {
            "breakpoints": [fmt_rational(x) for x in self.breakpoints],
            "values": [fmt_rational(x) for x in self.values],
        }

    def __repr__(self) -> str:
        pts = ", ".join(f"({fmt_rational(t)}, {fmt_rational(v)})"
                        for t, v in zip(self.breakpoints, self.values))
        return f"PiecewiseLin[{pts}]"
