# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels: coset enumeration and sparse rank over F_p.

Mirrors ``coxalt._kernels_py`` exactly (same algorithms, same results).
"""
import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector
from libc.stdint cimport int64_t

from coxalt._kernels_py import EnumerationOverflow

cnp.import_array()


cdef class _Enumerator:
    cdef int ngens
    cdef long max_cosets
    cdef vector[long] table
    cdef vector[long] parent
    cdef vector[long] queue

    def __cinit__(self, int ngens, long max_cosets):
        self.ngens = ngens
        self.max_cosets = max_cosets
        self.table.resize(ngens, -1)
        self.parent.push_back(0)

    cdef inline long ncosets(self):
        return self.parent.size()

    cdef long rep(self, long k):
        cdef long r = k, nxt
        while self.parent[r] != r:
            r = self.parent[r]
        while self.parent[k] != r:
            nxt = self.parent[k]
            self.parent[k] = r
            k = nxt
        return r

    cdef void merge(self, long k, long l):
        cdef long t
        k = self.rep(k)
        l = self.rep(l)
        if k == l:
            return
        if l < k:
            t = k; k = l; l = t
        self.parent[l] = k
        self.queue.push_back(l)

    cdef void coincidence(self, long a, long b):
        cdef size_t i = 0
        cdef long e, f, e1, f1, t1, t2
        cdef int x, n = self.ngens
        self.merge(a, b)
        while i < self.queue.size():
            e = self.queue[i]
            i += 1
            for x in range(n):
                f = self.table[e * n + x]
                if f < 0:
                    continue
                self.table[f * n + x] = -1
                self.table[e * n + x] = -1
                e1 = self.rep(e)
                f1 = self.rep(f)
                t1 = self.table[e1 * n + x]
                if t1 >= 0:
                    self.merge(f1, t1)
                    continue
                t2 = self.table[f1 * n + x]
                if t2 >= 0:
                    self.merge(e1, t2)
                    continue
                self.table[e1 * n + x] = f1
                self.table[f1 * n + x] = e1
        self.queue.clear()

    cdef int define(self, long c, int x) except -1:
        cdef long d = self.ncosets()
        cdef int k
        if d >= self.max_cosets:
            raise EnumerationOverflow(f"more than {self.max_cosets} cosets defined")
        for k in range(self.ngens):
            self.table.push_back(-1)
        self.parent.push_back(d)
        self.table[c * self.ngens + x] = d
        self.table[d * self.ngens + x] = c
        return 0

    cdef int scan_and_fill(self, long c, long[:] w) except -1:
        cdef long f = c, b = c
        cdef long i = 0, j = w.shape[0] - 1
        cdef int n = self.ngens
        while True:
            while i <= j and self.table[f * n + w[i]] >= 0:
                f = self.table[f * n + w[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return 0
            while j >= i and self.table[b * n + w[j]] >= 0:
                b = self.table[b * n + w[j]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return 0
            if i == j:
                self.table[f * n + w[i]] = b
                self.table[b * n + w[i]] = f
                return 0
            self.define(f, w[i])


def coset_enumerate(int ngens, relators, subgens, long max_cosets):
    """See ``coxalt._kernels_py.coset_enumerate``."""
    cdef _Enumerator en = _Enumerator(ngens, max_cosets)
    rels = [np.asarray(rw, dtype=np.int_) for rw in relators]
    subs = [np.asarray(sw, dtype=np.int_) for sw in subgens]
    cdef long c = 0
    cdef int x
    cdef long[:] w
    for sw in subs:
        w = sw
        en.scan_and_fill(0, w)
    while c < en.ncosets():
        for rw in rels:
            if en.parent[c] != c:
                break
            w = rw
            en.scan_and_fill(c, w)
        if en.parent[c] == c:
            for x in range(ngens):
                if en.table[c * ngens + x] < 0:
                    en.define(c, x)
        c += 1

    cdef long total = en.ncosets(), k, nlive = 0
    index = np.full(total, -1, dtype=np.int64)
    cdef int64_t[:] idx = index
    for k in range(total):
        if en.parent[k] == k:
            idx[k] = nlive
            nlive += 1
    out = np.empty((nlive, ngens), dtype=np.int64)
    cdef int64_t[:, :] o = out
    for k in range(total):
        if en.parent[k] == k:
            for x in range(ngens):
                o[idx[k], x] = idx[en.rep(en.table[k * ngens + x])]
    return out


cdef inline long _inv_mod(long a, long p):
    cdef long r = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


def sparse_rank_mod_p(indptr, indices, data, long ncols, long p):
    """See ``coxalt._kernels_py.sparse_rank_mod_p``."""
    cdef long[:] ip = np.ascontiguousarray(indptr, dtype=np.int_)
    cdef long[:] ix = np.ascontiguousarray(indices, dtype=np.int_)
    cdef long[:] dv = np.ascontiguousarray(np.asarray(data, dtype=np.int64) % p, dtype=np.int_)
    cdef long nrows = ip.shape[0] - 1
    cdef vector[vector[long]] pcols
    cdef vector[vector[long]] pvals
    cdef vector[long] slot
    cdef vector[long] cols, vals, oc, ov
    cdef long r, k, lo, hi, low, s, f, v, rank = 0
    cdef size_t i, j, na, nb
    slot.resize(ncols, -1)
    for r in range(nrows):
        lo = ip[r]
        hi = ip[r + 1]
        if lo == hi:
            continue
        order = np.argsort(np.asarray(ix[lo:hi]), kind="stable")
        cols.clear()
        vals.clear()
        for k in order:
            v = dv[lo + k]
            if cols.size() > 0 and cols.back() == ix[lo + k]:
                vals[vals.size() - 1] = (vals.back() + v) % p
            else:
                cols.push_back(ix[lo + k])
                vals.push_back(v)
        oc.clear()
        ov.clear()
        for i in range(cols.size()):
            if vals[i] != 0:
                oc.push_back(cols[i])
                ov.push_back(vals[i])
        cols.swap(oc)
        vals.swap(ov)
        while cols.size() > 0:
            low = cols.back()
            s = slot[low]
            if s < 0:
                break
            f = p - vals.back() * _inv_mod(pvals[s].back(), p) % p
            oc.clear()
            ov.clear()
            i = 0
            j = 0
            na = cols.size()
            nb = pcols[s].size()
            while i < na or j < nb:
                if j >= nb or (i < na and cols[i] < pcols[s][j]):
                    oc.push_back(cols[i])
                    ov.push_back(vals[i])
                    i += 1
                elif i >= na or pcols[s][j] < cols[i]:
                    oc.push_back(pcols[s][j])
                    ov.push_back(f * pvals[s][j] % p)
                    j += 1
                else:
                    v = (vals[i] + f * pvals[s][j]) % p
                    if v != 0:
                        oc.push_back(cols[i])
                        ov.push_back(v)
                    i += 1
                    j += 1
            cols.swap(oc)
            vals.swap(ov)
        if cols.size() > 0:
            slot[cols.back()] = pcols.size()
            pcols.push_back(cols)
            pvals.push_back(vals)
            rank += 1
    return rank
