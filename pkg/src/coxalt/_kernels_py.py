"""Pure-Python hot kernels.

Same signatures and results as the compiled ``_kernels`` extension; used when
the extension is unavailable or ``COXALT_PURE=1`` is set.
"""
from __future__ import annotations

import numpy as np


class EnumerationOverflow(RuntimeError):
    pass


def coset_enumerate(ngens, relators, subgens, max_cosets):
    """HLT coset enumeration for a group generated by involutions.

    ``relators`` and ``subgens`` are sequences of words (lists of generator
    indices); every generator is its own inverse.  Returns the coset table of
    the live cosets as an ``(index, ngens)`` int array, with coset 0 the
    subgroup and cosets numbered in order of definition.

    Raises EnumerationOverflow when more than ``max_cosets`` cosets would be
    defined.
    """
    table = [[-1] * ngens]
    parent = [0]
    queue = []

    def rep(k):
        r = k
        while parent[r] != r:
            r = parent[r]
        while parent[k] != r:
            parent[k], k = r, parent[k]
        return r

    def merge(k, l):
        k, l = rep(k), rep(l)
        if k == l:
            return
        if l < k:
            k, l = l, k
        parent[l] = k
        queue.append(l)

    def coincidence(a, b):
        merge(a, b)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            row = table[e]
            for x in range(ngens):
                f = row[x]
                if f < 0:
                    continue
                table[f][x] = -1
                row[x] = -1
                e1, f1 = rep(e), rep(f)
                t1 = table[e1][x]
                if t1 >= 0:
                    merge(f1, t1)
                    continue
                t2 = table[f1][x]
                if t2 >= 0:
                    merge(e1, t2)
                    continue
                table[e1][x] = f1
                table[f1][x] = e1
        del queue[:]

    def define(c, x):
        if len(table) >= max_cosets:
            raise EnumerationOverflow(f"more than {max_cosets} cosets defined")
        d = len(table)
        table.append([-1] * ngens)
        parent.append(d)
        table[c][x] = d
        table[d][x] = c

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    coincidence(f, c)
                return
            while j >= i and table[b][w[j]] >= 0:
                b = table[b][w[j]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i]] = f
                return
            define(f, w[i])

    for w in subgens:
        scan_and_fill(0, w)
    c = 0
    while c < len(table):
        for w in relators:
            if parent[c] != c:
                break
            scan_and_fill(c, w)
        if parent[c] == c:
            for x in range(ngens):
                if table[c][x] < 0:
                    define(c, x)
        c += 1

    live = [k for k in range(len(table)) if parent[k] == k]
    index = {k: i for i, k in enumerate(live)}
    out = np.empty((len(live), ngens), dtype=np.int64)
    for i, k in enumerate(live):
        for x in range(ngens):
            out[i, x] = index[rep(table[k][x])]
    return out


def sparse_rank_mod_p(indptr, indices, data, ncols, p):
    """Rank over F_p of a CSR matrix by row reduction on the largest column.

    Each row is reduced against stored pivot rows keyed by their last
    nonzero column; rows are kept as sorted (cols, vals) lists.
    """
    indptr = np.asarray(indptr)
    pivots = {}
    rank = 0
    for r in range(len(indptr) - 1):
        lo, hi = indptr[r], indptr[r + 1]
        if lo == hi:
            continue
        order = np.argsort(indices[lo:hi], kind="stable")
        cols = [int(c) for c in np.asarray(indices[lo:hi])[order]]
        vals = [int(v) % p for v in np.asarray(data[lo:hi])[order]]
        cols, vals = _compress(cols, vals)
        while cols:
            low = cols[-1]
            piv = pivots.get(low)
            if piv is None:
                break
            pc, pv = piv
            factor = vals[-1] * pow(pv[-1], p - 2, p) % p
            cols, vals = _axpy(cols, vals, pc, pv, p - factor, p)
        if cols:
            pivots[cols[-1]] = (cols, vals)
            rank += 1
    return rank


def _compress(cols, vals):
    oc, ov = [], []
    for c, v in zip(cols, vals):
        if oc and oc[-1] == c:
            ov[-1] = ov[-1] + v
        else:
            oc.append(c)
            ov.append(v)
    keep = [(c, v) for c, v in zip(oc, ov) if v]
    return [c for c, _ in keep], [v for _, v in keep]


def _axpy(ac, av, bc, bv, f, p):
    """Sorted sparse a + f*b mod p."""
    oc, ov = [], []
    i = j = 0
    na, nb = len(ac), len(bc)
    while i < na or j < nb:
        if j >= nb or (i < na and ac[i] < bc[j]):
            oc.append(ac[i])
            ov.append(av[i])
            i += 1
        elif i >= na or bc[j] < ac[i]:
            oc.append(bc[j])
            ov.append(f * bv[j] % p)
            j += 1
        else:
            v = (av[i] + f * bv[j]) % p
            if v:
                oc.append(ac[i])
                ov.append(v)
            i += 1
            j += 1
    return oc, ov
