"""Pure-Python hot kernels. ``_ckernels.pyx`` mirrors these signatures exactly.

Polynomials reach the kernels as ``{packed_monomial: int}`` dicts. A packed
monomial stores one exponent per 16-bit field, first variable in the most
significant field, so integer order on keys is lexicographic order on
exponent vectors and monomial multiplication is key addition.
"""
from __future__ import annotations

import heapq


class NotDivisible(ArithmeticError):
    pass


def mul(p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    get = out.get
    qitems = list(q.items())
    for k1, c1 in p.items():
        for k2, c2 in qitems:
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def divexact(p, d, guard):
    """Exact quotient ``p / d`` under lex order; raise :class:`NotDivisible` otherwise.

    ``guard`` has the top bit of every exponent field set; it detects a
    borrow when subtracting packed monomials.
    """
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = dict(p)
    lead = max(d)
    lc = d[lead]
    rest = [(k - lead, c) for k, c in d.items() if k != lead]
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quo = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        # drop duplicate heap entries for the same key
        while heap and -heap[0] == k:
            heapq.heappop(heap)
        shifted = (k | guard) - lead
        if shifted & guard != guard:
            raise NotDivisible("leading monomial of remainder not divisible")
        m = k - lead
        qc, r = divmod(c, lc)
        if r:
            raise NotDivisible("leading coefficient of remainder not divisible")
        quo[m] = qc
        for kk, cc in rest:
            key = m + lead + kk
            old = rem.get(key)
            if old is None:
                rem[key] = -qc * cc
                heapq.heappush(heap, -key)
            else:
                rem[key] = old - qc * cc
    return quo


def sample_scaled(bp_num, bp_den, slope, icept, n):
    """Return ``slope_i*c + icept_i*n`` for ``c = 0..n//2``.

    Segment ``i`` covers ``[bp_num[i]/bp_den[i], bp_num[i+1]/bp_den[i+1]]``
    and is used for every ``c/n`` in it (the left-most segment wins at a
    shared breakpoint; both agree there for continuous input).
    """
    out = []
    seg = 0
    last = len(slope) - 1
    for c in range(n // 2 + 1):
        while seg < last and c * bp_den[seg + 1] > bp_num[seg + 1] * n:
            seg += 1
        out.append(slope[seg] * c + icept[seg] * n)
    return out
