"""Finite Coxeter groups as explicit permutation groups.

Numbering contract for every table produced here: breadth-first from the
identity (or the subgroup coset), generators applied in index order, so
elements are sorted by length and then by their lexicographically least
reduced word.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from coxalt import cache, kernels
from coxalt.coxeter import INF, CoxeterMatrix, components, is_valid, order

DEFAULT_CAP = 60_000


class CapExceeded(RuntimeError):
    """Enumeration did not finish within the cap.

    ``possibly_infinite`` is set when the matrix has an infinite label or an
    infinite catalog order.
    """

    def __init__(self, message: str, possibly_infinite: bool = False):
        if possibly_infinite:
            message += " / possibly infinite"
        super().__init__(message)
        self.possibly_infinite = possibly_infinite


def coxeter_relators(M: CoxeterMatrix) -> list:
    """Words ``(st)^m`` for finite off-diagonal labels; ``s^2`` is implicit."""
    rels = []
    for i in range(M.n):
        for j in range(i + 1, M.n):
            m = M.m(i, j)
            if m != INF:
                rels.append([i, j] * m)
    return rels


def _possibly_infinite(M: CoxeterMatrix) -> bool:
    return order(M) == INF


def standardize(action: np.ndarray, start: int = 0, return_map: bool = False):
    """Renumber a complete table breadth-first from ``start``.

    With ``return_map`` also returns ``new`` where ``new[old] = renumbered``.
    """
    k, n = action.shape
    new = np.full(k, -1, dtype=np.int64)
    new[start] = 0
    queue = [start]
    i = 0
    while i < len(queue):
        c = queue[i]
        i += 1
        for s in range(n):
            d = int(action[c, s])
            if new[d] < 0:
                new[d] = len(queue)
                queue.append(d)
    if len(queue) != k:
        raise ValueError("coset table is not connected")
    out = np.empty_like(action)
    out[new] = new[action]
    return (out, new) if return_map else out


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Right cosets ``W_T u`` with the right action of the Coxeter generators."""

    k: int
    action: np.ndarray  # (k, n): action[c, s] = coset of (coset c) * s
    subgroup_generators: tuple

    def apply_word(self, c: int, word: Sequence[int]) -> int:
        for s in word:
            c = int(self.action[c, s])
        return c


def coset_table(M: CoxeterMatrix, T: Sequence[int], cap: int = DEFAULT_CAP,
                cache_dir=None) -> CosetTable:
    """Todd-Coxeter enumeration of ``W / W_T`` with breadth-first numbering."""
    if not is_valid(M):
        raise ValueError("invalid Coxeter matrix")
    T = tuple(sorted(set(T)))
    if len(T) >= M.n and M.n > 0 and set(T) == set(range(M.n)):
        raise ValueError("T must be a proper subset of S")
    key = cache.make_key("coset", M.key(), T, cap)
    hit = cache.load(cache_dir, key)
    if hit is not None:
        return CosetTable(int(hit["action"].shape[0]), hit["action"], T)
    try:
        raw = kernels.coset_enumerate(M.n, coxeter_relators(M), [[t] for t in T],
                                      4 * cap + 64)
    except kernels.EnumerationOverflow:
        raise CapExceeded(f"coset enumeration exceeded cap {cap}",
                          _possibly_infinite(M)) from None
    if raw.shape[0] > cap:
        raise CapExceeded(f"index {raw.shape[0]} exceeds cap {cap}", _possibly_infinite(M))
    action = standardize(raw)
    cache.save(cache_dir, key, action=action)
    return CosetTable(action.shape[0], action, T)


# --------------------------------------------------------------------------
# regular realization

@dataclass(frozen=True, eq=False)
class GroupRealization:
    """Right regular permutation realization of a finite Coxeter group.

    ``gen_perm[s, a]`` is the index of ``a*s``; ``parent[a]``/``last[a]`` give
    the breadth-first reduced word ``word(parent[a]) + (last[a],)``.
    """

    matrix: CoxeterMatrix
    gen_perm: np.ndarray
    lengths: np.ndarray
    parent: np.ndarray
    last: np.ndarray
    identity: int = 0

    @property
    def size(self) -> int:
        return int(self.lengths.shape[0])

    @property
    def rank(self) -> int:
        return self.matrix.n

    def word(self, a: int) -> tuple:
        self._check(a)
        out = []
        while a != 0:
            out.append(int(self.last[a]))
            a = int(self.parent[a])
        return tuple(reversed(out))

    @property
    def words(self) -> list:
        return [self.word(a) for a in range(self.size)]

    @cached_property
    def levels(self) -> list:
        order_ = np.argsort(self.lengths, kind="stable")
        bounds = np.searchsorted(self.lengths[order_], np.arange(self.lengths.max() + 2))
        return [order_[bounds[l]:bounds[l + 1]] for l in range(1, len(bounds) - 1)]

    def _check(self, a) -> None:
        if not 0 <= a < self.size:
            raise IndexError(f"element {a} out of range")

    def from_word(self, word: Sequence[int]) -> int:
        a = 0
        for s in word:
            a = int(self.gen_perm[s, a])
        return a

    def multiply(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        for s in self.word(b):
            a = int(self.gen_perm[s, a])
        return a

    @cached_property
    def inverse(self) -> np.ndarray:
        lg = self.left_generator_perms
        inv = np.zeros(self.size, dtype=np.int64)
        for idx in self.levels:
            inv[idx] = lg[self.last[idx], inv[self.parent[idx]]]
        return inv

    def invert(self, a: int) -> int:
        self._check(a)
        return int(self.inverse[a])

    def element_order(self, a: int) -> int:
        self._check(a)
        w = self.word(a)
        x, e = a, 1
        while x != 0:
            for s in w:
                x = int(self.gen_perm[s, x])
            e += 1
        return e

    def sign(self, a: int) -> int:
        self._check(a)
        return -1 if self.lengths[a] % 2 else 1

    def right_mult_perm(self, g: int) -> np.ndarray:
        """Array ``R`` with ``R[a] = a*g``."""
        r = np.arange(self.size)
        for s in self.word(g):
            r = self.gen_perm[s][r]
        return r

    def left_mult_perm(self, g: int) -> np.ndarray:
        """Array ``L`` with ``L[a] = g*a``."""
        out = np.empty(self.size, dtype=np.int64)
        out[0] = g
        for idx in self.levels:
            out[idx] = self.gen_perm[self.last[idx], out[self.parent[idx]]]
        return out

    @cached_property
    def left_generator_perms(self) -> np.ndarray:
        out = np.empty((self.rank, self.size), dtype=np.int64)
        out[:, 0] = self.gen_perm[:, 0]
        for idx in self.levels:
            out[:, idx] = self.gen_perm[self.last[idx][None, :],
                                        out[:, self.parent[idx]]]
        return out

    def character(self, gen_values: Sequence[int]) -> np.ndarray:
        """Values of the homomorphism to {+1,-1} fixed by its generator values."""
        vals = np.asarray(gen_values, dtype=np.int64)
        out = np.ones(self.size, dtype=np.int64)
        for idx in self.levels:
            out[idx] = out[self.parent[idx]] * vals[self.last[idx]]
        return out

    @cached_property
    def signs(self) -> np.ndarray:
        return np.where(self.lengths % 2 == 0, 1, -1)


def _faithful_action(M: CoxeterMatrix, cap: int, cache_dir) -> np.ndarray:
    """Generator permutations of a faithful action of W, shape (n, degree).

    Each irreducible component acts on the cosets of a maximal parabolic
    subgroup of smallest index; the other generators fix those points.
    """
    blocks = []
    for comp in components(M):
        sub = comp.matrix
        if sub.n == 1:
            tab = np.array([[1], [0]])
        else:
            best = None
            total = order(sub)
            for s in range(sub.n):
                rest = [t for t in range(sub.n) if t != s]
                o = order(sub.restrict(rest))
                idx = INF if total == INF or o == INF else total // o
                if best is None or idx < best[0]:
                    best = (idx, rest)
            tab = coset_table(sub, best[1], cap, cache_dir).action
        blocks.append((comp.index_map, tab))
    degree = sum(t.shape[0] for _, t in blocks)
    perms = np.tile(np.arange(degree), (M.n, 1))
    base = 0
    for imap, tab in blocks:
        for k, s in enumerate(imap):
            perms[s, base:base + tab.shape[0]] = base + tab[:, k]
        base += tab.shape[0]
    return perms


def enumerate_group(M: CoxeterMatrix, cap: int = DEFAULT_CAP,
                    cache_dir=None) -> GroupRealization:
    """Regular realization of W(M) with breadth-first numbering."""
    if not is_valid(M):
        raise ValueError("invalid Coxeter matrix")
    if cap < 1:
        raise ValueError("cap must be positive")
    key = cache.make_key("group", M.key(), (), cap)
    hit = cache.load(cache_dir, key)
    if hit is not None:
        return GroupRealization(M, hit["gen_perm"], hit["lengths"], hit["parent"], hit["last"])
    o = order(M)
    if o != INF and o > cap:
        raise CapExceeded(f"|W| = {o} exceeds cap {cap}")
    perms = _faithful_action(M, cap, cache_dir)
    n, degree = perms.shape
    dtype = np.int16 if degree < 2 ** 15 else np.int32
    perms = perms.astype(dtype)
    ident = np.arange(degree, dtype=dtype)
    index = {ident.tobytes(): 0}
    elems = [ident]
    parent, last, lengths = [0], [-1], [0]
    gen_rows = [[] for _ in range(n)]
    a = 0
    while a < len(elems):
        pa = elems[a]
        la = lengths[a] + 1
        for s in range(n):
            b = perms[s][pa]
            key_b = b.tobytes()
            j = index.get(key_b)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise CapExceeded(f"group has more than {cap} elements",
                                      _possibly_infinite(M))
                index[key_b] = j
                elems.append(b)
                parent.append(a)
                last.append(s)
                lengths.append(la)
            gen_rows[s].append(j)
        a += 1
    gen_perm = np.array(gen_rows, dtype=np.int64).reshape(n, len(elems))
    G = GroupRealization(M, gen_perm, np.array(lengths, dtype=np.int64),
                         np.array(parent, dtype=np.int64), np.array(last, dtype=np.int64))
    cache.save(cache_dir, key, gen_perm=G.gen_perm, lengths=G.lengths,
               parent=G.parent, last=G.last)
    return G


def coset_table_from_group(G: GroupRealization, T: Sequence[int]) -> CosetTable:
    """The table of ``W / W_T`` read off the regular realization.

    Right cosets ``W_T u`` are the orbits of left multiplication by ``T``;
    the result is numbered exactly like :func:`coset_table`.
    """
    return coset_labels(G, T)[1]


def coset_labels(G: GroupRealization, T: Sequence[int]):
    """``(labels, table)`` with ``labels[u]`` the coset number of ``W_T u``."""
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    T = tuple(sorted(set(T)))
    size = G.size
    if T:
        lg = G.left_generator_perms[list(T)]
        rows = np.repeat(np.arange(size)[None, :], len(T), axis=0).ravel()
        graph = coo_matrix((np.ones(rows.size), (rows, lg.ravel())), shape=(size, size))
        _, labels = connected_components(graph, directed=False)
    else:
        labels = np.arange(size)
    k = int(labels.max()) + 1
    reps = np.full(k, size, dtype=np.int64)
    np.minimum.at(reps, labels, np.arange(size))
    action = labels[G.gen_perm[:, reps]].T.copy()
    action, new = standardize(action, int(labels[0]), return_map=True)
    return new[labels], CosetTable(k, action, T)


# --------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    parent: GroupRealization
    members: np.ndarray  # sorted element indices
    generator_words: Optional[tuple] = None
    label: str = ""

    @property
    def size(self) -> int:
        return int(self.members.shape[0])

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.size, dtype=bool)
        m[self.members] = True
        return m

    def __contains__(self, a) -> bool:
        return bool(self.mask[a])

    def same_as(self, other: "SubgroupHandle") -> bool:
        return np.array_equal(self.members, other.members)


def subgroup_generated(G: GroupRealization, elements: Sequence[int], label: str = "",
                       generator_words=None) -> SubgroupHandle:
    """Closure of ``elements`` under multiplication."""
    perms = [G.right_mult_perm(int(g)) for g in elements]
    seen = np.zeros(G.size, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size:
        nxt = []
        for r in perms:
            img = r[frontier]
            new = img[~seen[img]]
            if new.size:
                new = np.unique(new)
                seen[new] = True
                nxt.append(new)
        frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
    return SubgroupHandle(G, np.flatnonzero(seen), generator_words, label)


def whole_group(G: GroupRealization) -> SubgroupHandle:
    return SubgroupHandle(G, np.arange(G.size), tuple((s,) for s in range(G.rank)), "W")


def trivial_subgroup(G: GroupRealization) -> SubgroupHandle:
    return SubgroupHandle(G, np.array([0]), (), "1")


def alternating_subgroup(G: GroupRealization, s0: int = 0) -> SubgroupHandle:
    """Kernel of the sign character; generator words ``s0*s`` for ``s != s0``."""
    members = np.flatnonzero(G.lengths % 2 == 0)
    words = tuple((s0, s) for s in range(G.rank) if s != s0)
    return SubgroupHandle(G, members, words, "A_W")


def parabolic_subgroup(G: GroupRealization, T: Sequence[int]) -> SubgroupHandle:
    T = sorted(set(T))
    H = subgroup_generated(G, [int(G.gen_perm[t, 0]) for t in T])
    return SubgroupHandle(G, H.members, tuple((t,) for t in T), f"W_{tuple(t + 1 for t in T)}")


def conjugate_subgroup(G: GroupRealization, H: SubgroupHandle, w: int) -> SubgroupHandle:
    """``w H w^-1``."""
    G._check(w)
    lw = G.left_mult_perm(w)
    rw = G.right_mult_perm(G.invert(w))
    members = np.unique(rw[lw[H.members]])
    return SubgroupHandle(G, members, None, f"{H.label}^{w}")


def intersect(H: SubgroupHandle, K: SubgroupHandle) -> SubgroupHandle:
    return SubgroupHandle(H.parent, np.intersect1d(H.members, K.members), None,
                          f"{H.label}∩{K.label}")


def generating_set(H: SubgroupHandle) -> list:
    """Greedy small generating set: scan members in index order, keep non-redundant ones."""
    G = H.parent
    gens = []
    current = np.zeros(G.size, dtype=bool)
    current[0] = True
    count = 1
    for a in H.members:
        if count == H.size:
            break
        if current[a]:
            continue
        gens.append(int(a))
        sub = subgroup_generated(G, gens)
        current = sub.mask
        count = sub.size
    return gens


# --------------------------------------------------------------------------
# cyclic Sylow data

class NonCyclicSylow(ValueError):
    pass


@dataclass(frozen=True)
class TrivialSylow:
    """Marker: p does not divide |H|."""

    p: int


@dataclass(frozen=True)
class CyclicSylowData:
    p: int
    generator: int
    normalizer_order: int
    q: int
    twist_sign: int
    normalizer: np.ndarray = field(repr=False)
    exponents: np.ndarray = field(repr=False)  # n g n^-1 = g^exponents[i] for normalizer[i]


def sylow_cyclic(H: SubgroupHandle, p: int, chi: Optional[np.ndarray] = None):
    """Normalizer data for a Sylow p-subgroup of order p.

    ``chi`` is an optional array of character values on the parent group;
    ``twist_sign`` is its value at the chosen normalizer element.
    """
    size = H.size
    if size % p:
        return TrivialSylow(p)
    if size % (p * p) == 0:
        raise NonCyclicSylow(f"{p}^2 divides |H| = {size}; Sylow subgroup is not of order {p}")
    G = H.parent
    g = None
    for a in H.members[1:]:
        e = G.element_order(int(a))
        if e % p == 0:
            g = int(a)
            for _ in range(e // p - 1):
                g = G.multiply(g, int(a))
            break
    assert g is not None  # Cauchy
    powers = [0]
    for _ in range(p - 1):
        powers.append(G.multiply(powers[-1], g))
    rg = G.right_mult_perm(g)
    ng = rg[H.members]
    exps = np.zeros(H.size, dtype=np.int64)
    found = np.zeros(H.size, dtype=bool)
    for i in range(1, p):
        hit = G.left_mult_perm(powers[i])[H.members] == ng
        exps[hit & ~found] = i
        found |= hit
    normalizer = H.members[found]
    exps = exps[found]
    # pick the normalizer element whose exponent has the largest multiplicative order
    def mult_order(q):
        k, x = 1, q % p
        while x != 1:
            x = x * q % p
            k += 1
        return k

    orders = np.array([mult_order(int(q)) for q in exps])
    best = int(np.argmax(orders))
    n0 = int(normalizer[best])
    twist = 1 if chi is None else int(chi[n0])
    return CyclicSylowData(p, g, int(normalizer.size), int(exps[best]), twist, normalizer, exps)
