"""Numeric dominant terms of the roots of q_N at s = 1/j = 0, for N <= 9.

The polynomial ``q_N(x, j0)`` (``q_2^2`` for N = 2) is rewritten exactly in
``u = x + 1`` and ``s`` with ``j0 = 1/(1 - 1728 s)``, so that coefficients
small in ``s`` are exact before any floating-point evaluation. Roots are
found at ``s0`` and ``s0/2`` with :func:`mpmath.polyroots` and matched by
an assignment on ``|log(u1/u0)|``; the exponent of each root is estimated
from the two samples and rounded into the finite set ``{c/N} (+ {1})``.

Coefficients ``u / s^e`` at a single sample carry a relative error of
order ``s^{1/e_c}``, far above 1e-3 for N near 9, so each root is also
followed down ``s0 / 2^j`` by Newton continuation and the coefficient is
extrapolated to ``s = 0`` (Neville, in the local parameter ``s^{1/e_c}``).
All floating values produced here are approximate.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment

from modunits.arith import DomainError, fmt_rational
from modunits.cusps import all_orbits, orbit
from modunits.divpoly import MODULAR
from modunits.minformula import q_order
from modunits.polyring import MvPolyZ, RatFunc, substitute

__all__ = [
    "NumericError",
    "PuiseuxTerm",
    "us_polynomial",
    "dominant_terms",
    "reference_coefficient",
    "verify_observations",
    "lucky_order",
    "lucky_check",
    "epsilon_series_check",
]

S0 = Fraction(1, 10 ** 8)
TOL = 1e-3
DPS = 60
SAMPLES = 12


class NumericError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PuiseuxTerm:
    """One Galois class of roots: shared exponent, per-root leading coefficients."""

    c: int
    exponent: Fraction
    coefficient: complex
    multiplicity: int
    coefficients: tuple = field(repr=False, default=())
    raw_exponents: tuple = field(repr=False, default=())
    refined_exponents: tuple = field(repr=False, default=())

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "exponent": fmt_rational(self.exponent),
            "multiplicity": self.multiplicity,
            "coefficient_approx": [round(self.coefficient.real, 9), round(self.coefficient.imag, 9)],
        }


def _check_args(N, s0):
    if not 2 <= N <= 9:
        raise DomainError(f"Puiseux verification covers 2 <= N <= 9, got {N}")
    s0 = Fraction(str(s0)) if isinstance(s0, float) else Fraction(s0)
    if not 0 < s0 <= Fraction(1, 10 ** 6):
        raise DomainError(f"s0 must lie in (0, 1e-6], got {float(s0)}")
    return s0


@lru_cache(maxsize=None)
def us_polynomial(N: int) -> MvPolyZ:
    """``(1 - 1728 s)^D q_N(u - 1, 1/(1 - 1728 s))`` in ``Z[u, s]``."""
    body = MODULAR.W if N == 2 else MODULAR.smallq(N).body
    V = ("u", "s")
    u, s = MvPolyZ.gen(V, "u"), MvPolyZ.gen(V, "s")
    r = substitute(body, {"x": u - 1, "j0": RatFunc(MvPolyZ.const(V, 1), 1 - 1728 * s)}, V)
    return r.num


@lru_cache(maxsize=None)
def _coeff_table(N: int):
    # u-degree -> [(s-power, int coefficient)]
    cs = us_polynomial(N).coefficients_in("u")
    deg = max(cs)
    table = []
    for i in range(deg, -1, -1):
        p = cs.get(i)
        table.append([] if p is None else [(e[1], c) for e, c in p.term_list()])
    return deg, table


def _coeffs_at(N: int, s):
    _, table = _coeff_table(N)
    return [mpmath.fsum(c * s ** e for e, c in row) if row else mpmath.mpf(0) for row in table]


def _admissible(N: int) -> list[Fraction]:
    out = [Fraction(c, N) for c in range(N // 2 + 1)]
    if N == 4:
        out.append(Fraction(1))
    return out


def _class_of(N: int, e: Fraction) -> int:
    return 2 if (N == 4 and e == 1) else int(e * N)


def _local_ramification(N: int, c: int) -> int:
    """Denominator of the local parameter: the series live in ``C((s^{1/e}))``."""
    return orbit(N, c).e


def _neville0(ts, ys):
    P = list(ys)
    n = len(ts)
    for m in range(1, n):
        for i in range(n - m):
            P[i] = (-ts[i + m] * P[i] + ts[i] * P[i + 1]) / (ts[i] - ts[i + m])
    return P[0]


def _newton(co, x, eps):
    for _ in range(100):
        p, dp = mpmath.polyval(co, x, derivative=True)
        if dp == 0:
            break
        dx = p / dp
        x -= dx
        if abs(dx) <= abs(x) * eps:
            return x
    raise NumericError("Newton continuation did not converge")


def _roots(co):
    try:
        return mpmath.polyroots(co, maxsteps=800, extraprec=800)
    except mpmath.libmp.NoConvergence as exc:
        raise NumericError(f"root finding did not converge: {exc}") from None


def dominant_terms(N: int, s0=S0, tol: float = TOL, samples: int = SAMPLES) -> list[PuiseuxTerm]:
    """Dominant terms ``kappa s^e`` of ``x + 1`` over all roots of q_N, grouped by class."""
    s0 = _check_args(N, s0)
    if samples < 2:
        raise DomainError("need at least two samples")
    with mpmath.workdps(DPS):
        eps = mpmath.mpf(10) ** (-(DPS - 10))
        s_vals = [mpmath.mpf(s0.numerator) / s0.denominator / 2 ** j for j in range(samples)]
        r0 = _roots(_coeffs_at(N, s_vals[0]))
        r1 = _roots(_coeffs_at(N, s_vals[1]))
        if any(r == 0 for r in list(r0) + list(r1)):
            raise NumericError("root at u = 0")
        cost = np.array([[float(abs(mpmath.log(b / a))) for b in r1] for a in r0])
        _, cols = linear_sum_assignment(cost)
        tracks = [[a, r1[j]] for a, j in zip(r0, cols)]
        raw = [float(mpmath.log(abs(t[0]) / abs(t[1])) / mpmath.log(2)) for t in tracks]
        adm = _admissible(N)
        half_gap = 1 / (2 * N)
        exps = []
        for e in raw:
            best = min(adm, key=lambda q: abs(float(q) - e))
            if abs(float(best) - e) >= half_gap:
                raise NumericError(f"exponent estimate {e:.4f} is not close to any admissible value")
            exps.append(best)
        for j in range(2, samples):
            co = _coeffs_at(N, s_vals[j])
            for tr, e in zip(tracks, exps):
                guess = tr[-1] * mpmath.power(mpmath.mpf(1) / 2, mpmath.mpf(e.numerator) / e.denominator)
                tr.append(_newton(co, guess, eps))
            last = [tr[-1] for tr in tracks]
            for a in range(len(last)):
                for b in range(a):
                    if abs(last[a] - last[b]) <= abs(last[a]) * mpmath.mpf(10) ** -20:
                        raise NumericError("two continued roots collided")
        groups: dict[int, list] = {}
        for tr, e, r in zip(tracks, exps, raw):
            c = _class_of(N, e)
            q = _local_ramification(N, c)
            ee = mpmath.mpf(e.numerator) / e.denominator
            ts = [s ** (mpmath.mpf(1) / q) for s in s_vals]
            kap = [u / s ** ee for u, s in zip(tr, s_vals)]
            coeff = complex(_neville0(ts, kap))
            step = [mpmath.log(abs(tr[j]) / abs(tr[j + 1])) / mpmath.log(2) for j in range(len(tr) - 1)]
            refined = float(_neville0(ts[:-1], step))
            if abs(refined - float(e)) > tol:
                raise NumericError(f"extrapolated exponent {refined:.6f} is not within {tol} of {e}")
            groups.setdefault(c, []).append((coeff, r, refined))
    out = []
    for c in sorted(groups):
        items = groups[c]
        e = Fraction(1) if (N == 4 and c == 2) else Fraction(c, N)
        coeffs = tuple(i[0] for i in items)
        ref = reference_coefficient(N, c)
        rep = min(coeffs, key=lambda z: abs(z - ref)) if ref is not None else coeffs[0]
        out.append(PuiseuxTerm(c, e, rep, len(items), coeffs,
                               tuple(i[1] for i in items), tuple(i[2] for i in items)))
    return out


# reference leading coefficients of x + 1, one representative per class
def reference_coefficient(N: int, c: int) -> complex | None:
    if not 2 <= N <= 9 or not 0 <= c <= N // 2:
        return None
    if c == 0:
        return 3 / math.sin(math.pi / N) ** 2
    if (N, c) == (2, 1):
        return -24.0
    if (N, c) == (4, 2):
        return -672.0
    if (N, c) == (6, 3):
        return -12.0
    if (N, c) == (8, 4):
        return -12 * math.sqrt(2)
    z = {(6, 2): -1, (8, 2): -1, (9, 3): cmath.exp(2j * math.pi / 3)}.get((N, c), 1)
    return -12 * cmath.exp(c / N * cmath.log(z))


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def _match_multisets(got, want) -> float:
    """Largest relative error of the optimal pairing between two equal-size lists."""
    if len(got) != len(want):
        return math.inf
    cost = np.array([[_rel(g, w) for w in want] for g in got])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max()) if len(got) else 0.0


def _expected_c0(N: int) -> list[complex]:
    return [3 / math.sin(a * math.pi / N) ** 2 for a in range(1, N // 2 + 1) if gcd(a, N) == 1]


def _expected_half(N: int) -> list[complex]:
    m = N // 2
    return [576 * math.cos(2 * math.pi * a / N) ** 2 for a in range(0, m + 1) if gcd(a, m) == 1]


def verify_observations(N: int, tol: float = TOL, s0=S0) -> dict:
    """Check each class: size, exponent, coefficient pattern, and the reference representative."""
    try:
        terms = dominant_terms(N, s0=s0, tol=tol)
    except NumericError as exc:
        return {"N": N, "s0": str(_check_args(N, s0)), "approximate": True,
                "classes": [], "error": str(exc), "pass": False}
    by_c = {t.c: t for t in terms}
    classes = []
    ok_all = set(by_c) == set(range(N // 2 + 1))
    for o in all_orbits(N):
        t = by_c.get(o.c)
        if t is None:
            classes.append({"c": o.c, "expected_n": o.n, "multiplicity": 0, "pass": False})
            continue
        checks = {"multiplicity": t.multiplicity == o.n,
                  "exponent": max(abs(r - float(t.exponent)) for r in t.refined_exponents) <= tol}
        if o.irregular:
            checks["pattern"] = _match_multisets(list(t.coefficients), [-672.0]) <= tol
        elif o.c == 0:
            checks["pattern"] = _match_multisets(list(t.coefficients), _expected_c0(N)) <= tol
        elif 2 * o.c == N:
            checks["pattern"] = _match_multisets([k * k for k in t.coefficients],
                                                 _expected_half(N)) <= tol
        else:
            d = gcd(o.c, N)
            e = N // d
            roots = [cmath.exp(2j * math.pi * a / d) for a in range(d) if gcd(a, d) == 1]
            want = [r for r in roots for _ in range(e)]
            checks["pattern"] = _match_multisets([(k / -12) ** e for k in t.coefficients], want) <= tol
        ref = reference_coefficient(N, o.c)
        checks["reference"] = min(_rel(k, ref) for k in t.coefficients) <= tol
        ok = all(checks.values())
        ok_all = ok_all and ok
        classes.append({
            "c": o.c,
            "exponent": fmt_rational(t.exponent),
            "multiplicity": t.multiplicity,
            "expected_n": o.n,
            "coefficient_samples": [[round(k.real, 6), round(k.imag, 6)] for k in t.coefficients],
            "checks": checks,
            "pass": ok,
        })
    return {"N": N, "s0": str(_check_args(N, s0)), "approximate": True, "classes": classes, "pass": ok_all}


def lucky_order(k: int, N: int, c: int, terms=None) -> Fraction:
    """Order of ``q_k`` at ``C_c(N)`` from measured exponents of the roots of ``q_k``."""
    if terms is None:
        terms = dominant_terms(k)
    t = Fraction(c, N)
    return orbit(N, c).e * sum((x.multiplicity * min(t, x.exponent) for x in terms), Fraction(0))


def lucky_check(pairs=((8, 3), (5, 7), (9, 4))) -> dict:
    rows = []
    for k, N in pairs:
        terms = dominant_terms(k)
        for c in range(N // 2 + 1):
            got, want = lucky_order(k, N, c, terms), q_order(k, N, c)
            rows.append({"k": k, "N": N, "c": c, "measured": str(got), "formula": str(want),
                         "pass": got == want})
    return {"rows": rows, "pass": all(r["pass"] for r in rows)}


def epsilon_series_check(s0=S0, tol: float = TOL) -> dict:
    """Solve ``256 (e^2 - e + 1)^3 / (e^2 (e - 1)^2) = 1/s0`` on the small positive branch."""
    s0 = Fraction(str(s0)) if isinstance(s0, float) else Fraction(s0)
    if not 0 < s0 <= Fraction(1, 10 ** 6):
        raise DomainError(f"s0 must lie in (0, 1e-6], got {float(s0)}")
    with mpmath.workdps(40):
        s = mpmath.mpf(s0.numerator) / s0.denominator

        def f(e):
            return 256 * (e * e - e + 1) ** 3 - e * e * (e - 1) ** 2 / s

        try:
            eps = mpmath.findroot(f, 16 * mpmath.sqrt(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise NumericError(f"no small root: {exc}") from None
        if abs(mpmath.im(eps)) > 0 or not 0 < mpmath.re(eps) < 0.5:
            raise NumericError("small root is not real and positive")
        ratio = float(eps / mpmath.sqrt(s))
    rel = abs(ratio / 16 - 1)
    return {"s0": str(s0), "epsilon": float(eps), "ratio": ratio, "rel_error": rel,
            "approximate": True, "pass": rel <= tol}
