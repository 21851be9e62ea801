# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled versions of the kernels in ``_kernels_py``; identical semantics."""
from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue

from modunits._kernels_py import NotDivisible


def mul(dict p, dict q):
    if len(p) > len(q):
        p, q = q, p
    cdef Py_ssize_t np_ = len(p), nq = len(q), i, j, slot
    cdef vector[int64_t] pk, qk
    cdef list pc = [], qc = [], acc = []
    cdef list keys = []
    cdef unordered_map[int64_t, Py_ssize_t] index
    cdef unordered_map[int64_t, Py_ssize_t].iterator it
    cdef int64_t key
    cdef object c1
    pk.reserve(np_)
    qk.reserve(nq)
    for k, c in p.items():
        pk.push_back(k)
        pc.append(c)
    for k, c in q.items():
        qk.push_back(k)
        qc.append(c)
    index.reserve(<size_t>(2 * (np_ + nq) + 16))
    for i in range(np_):
        c1 = pc[i]
        for j in range(nq):
            key = pk[i] + qk[j]
            it = index.find(key)
            if it == index.end():
                index[key] = len(acc)
                acc.append(c1 * qc[j])
                keys.append(key)
            else:
                slot = index[key]
                acc[slot] = acc[slot] + c1 * qc[j]
    return {k: c for k, c in zip(keys, acc) if c}


def divexact(dict p, dict d, guard):
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    cdef dict rem = dict(p)
    cdef int64_t lead = max(d)
    cdef int64_t g = guard
    cdef int64_t k, m, key
    cdef object lc = d[lead]
    cdef vector[int64_t] rk
    cdef list rc = []
    cdef Py_ssize_t i, nr
    cdef priority_queue[int64_t] heap
    cdef dict quo = {}
    cdef object c, qc, r, old
    for kk, cc in d.items():
        if kk != lead:
            rk.push_back(<int64_t>kk - lead)
            rc.append(cc)
    nr = rk.size()
    for kk in rem:
        heap.push(kk)
    while not heap.empty():
        k = heap.top()
        heap.pop()
        c = rem.pop(k, 0)
        if not c:
            continue
        while not heap.empty() and heap.top() == k:
            heap.pop()
        if (((k | g) - lead) & g) != g:
            raise NotDivisible("leading monomial of remainder not divisible")
        m = k - lead
        qc, r = divmod(c, lc)
        if r:
            raise NotDivisible("leading coefficient of remainder not divisible")
        quo[m] = qc
        for i in range(nr):
            key = m + lead + rk[i]
            old = rem.get(key)
            if old is None:
                rem[key] = -qc * rc[i]
                heap.push(key)
            else:
                rem[key] = old - qc * rc[i]
    return quo


def sample_scaled(bp_num, bp_den, slope, icept, n):
    cdef Py_ssize_t seg = 0, last = len(slope) - 1, c, top = n // 2
    cdef vector[int64_t] bn, bd, sl, ic
    cdef int64_t nn = n
    cdef list out = []
    for v in bp_num:
        bn.push_back(v)
    for v in bp_den:
        bd.push_back(v)
    for v in slope:
        sl.push_back(v)
    for v in icept:
        ic.push_back(v)
    for c in range(top + 1):
        while seg < last and c * bd[seg + 1] > bn[seg + 1] * nn:
            seg += 1
        out.append(sl[seg] * c + ic[seg] * nn)
    return out
