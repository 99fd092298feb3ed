"""The Coxeter complex of a finite Coxeter group and group actions on it.

A simplex is a pair ``(T, c)`` with ``T`` a proper generator subset and ``c``
a coset number in the table of ``W / W_T``.  Coset ``c`` is the right coset
``W_T u``; the simplex it names is the left coset ``u^-1 W_T``.  With this
identification left translation by ``s`` is the table action of ``s``.

Vertices of a simplex carry distinct types (the generator missing from their
``T``) and are oriented by global vertex id, which orders them by type.  The
group action preserves types, hence orientations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from coxalt.groups import (
    GroupRealization,
    SubgroupHandle,
    conjugate_subgroup,
    coset_labels,
    generating_set,
    intersect,
    parabolic_subgroup,
)

DEFAULT_SIMPLEX_CAP = 2_000_000


class ComplexTooLarge(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CoxeterComplex:
    """Simplices grouped by dimension.

    ``subsets[k]`` lists the ``T`` with ``|T| = rank - k - 1`` in
    lexicographic order; ``offsets[k][T]`` is the id of ``(T, 0)`` within
    dimension ``k``.  ``faces[k]`` (k >= 1) has shape ``(N_k, k+1)`` with the
    ids of the codimension-one faces in vertex order, ``face_signs`` the
    matching incidence numbers.
    """

    group: GroupRealization
    subsets: list
    offsets: list
    counts: list
    labels: dict = field(repr=False)  # T -> element -> coset number
    reps: dict = field(repr=False)  # T -> coset number -> smallest element of the coset
    faces: list = field(repr=False)
    face_signs: list = field(repr=False)
    vertices: list = field(repr=False)  # per dimension, (N_k, k+1) sorted vertex ids

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def dimension(self) -> int:
        return self.rank - 1

    def simplex(self, k: int, idx: int):
        """``(T, c)`` for the ``idx``-th ``k``-simplex."""
        for T in self.subsets[k]:
            off = self.offsets[k][T]
            if off <= idx < off + self.reps[T].shape[0]:
                return T, idx - off
        raise IndexError(idx)

    def simplex_id(self, T, c: int) -> tuple:
        T = tuple(sorted(T))
        k = self.rank - len(T) - 1
        return k, self.offsets[k][T] + c

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts))

    def element_set(self, k: int, idx: int) -> np.ndarray:
        """Elements of the left coset represented by a simplex."""
        T, c = self.simplex(k, idx)
        return np.sort(self.group.inverse[np.flatnonzero(self.labels[T] == c)])

    def action_perms(self, w: int) -> list:
        """Per dimension, the permutation of simplex ids induced by ``w``."""
        rinv = self.group.right_mult_perm(self.group.invert(w))
        out = []
        for k in range(self.rank):
            perm = np.empty(self.counts[k], dtype=np.int64)
            for T in self.subsets[k]:
                off = self.offsets[k][T]
                reps = self.reps[T]
                perm[off:off + reps.shape[0]] = off + self.labels[T][rinv[reps]]
            out.append(perm)
        return out

    def export_text(self) -> str:
        """One line per simplex: ``dim v0 v1 ...`` with global vertex ids."""
        lines = []
        for k in range(self.rank):
            for row in self.vertices[k]:
                lines.append(" ".join([str(k)] + [str(int(v)) for v in row]))
        return "\n".join(lines) + "\n"


def build_coxeter_complex(G: GroupRealization,
                          simplex_cap: int = DEFAULT_SIMPLEX_CAP) -> CoxeterComplex:
    n = G.rank
    labels, reps = {}, {}
    subsets, offsets, counts = [], [], []
    total = 0
    for k in range(n):
        size = n - k - 1
        Ts = list(itertools.combinations(range(n), size))
        subsets.append(Ts)
        off, cnt = {}, 0
        for T in Ts:
            lab, table = coset_labels(G, T)
            r = np.full(table.k, G.size, dtype=np.int64)
            np.minimum.at(r, lab, np.arange(G.size))
            labels[T], reps[T] = lab, r
            off[T] = cnt
            cnt += table.k
            total += table.k
            if total > simplex_cap:
                raise ComplexTooLarge(f"more than {simplex_cap} simplices")
        offsets.append(off)
        counts.append(cnt)

    faces, signs, verts = [None], [None], []
    # vertex ids: dimension 0, T = S - {s}
    vert_of_type = {}
    for T in subsets[0]:
        (s,) = set(range(n)) - set(T)
        vert_of_type[s] = T
    for k in range(n):
        fk = np.empty((counts[k], k + 1), dtype=np.int64)
        sk = np.empty((counts[k], k + 1), dtype=np.int64)
        vk = np.empty((counts[k], k + 1), dtype=np.int64)
        for T in subsets[k]:
            off = offsets[k][T]
            m = reps[T].shape[0]
            types = sorted(set(range(n)) - set(T), reverse=True)  # ascending vertex id
            for pos, s in enumerate(types):
                V = vert_of_type[s]
                vk[off:off + m, pos] = offsets[0][V] + labels[V][reps[T]]
                if k >= 1:
                    F = tuple(sorted(T + (s,)))
                    fk[off:off + m, pos] = offsets[k - 1][F] + labels[F][reps[T]]
                    sk[off:off + m, pos] = -1 if pos % 2 else 1
        verts.append(vk)
        if k >= 1:
            faces.append(fk)
            signs.append(sk)
    return CoxeterComplex(G, subsets, offsets, counts, labels, reps, faces, signs, verts)


def fundamental_domain(X: CoxeterComplex) -> list:
    """Ids ``(k, id)`` of the simplices ``W_T``, one per proper subset T."""
    return [(k, X.offsets[k][T]) for k in range(X.rank) for T in X.subsets[k]]


def act(X: CoxeterComplex, w: int, k: int, idx: int) -> int:
    """Id of ``w * sigma`` for the ``idx``-th ``k``-simplex."""
    T, c = X.simplex(k, idx)
    G = X.group
    u = int(X.reps[T][c])
    return X.offsets[k][T] + int(X.labels[T][G.multiply(u, G.invert(w))])


def stabilizer(X: CoxeterComplex, k: int, idx: int) -> SubgroupHandle:
    """``x W_T x^-1`` for the simplex ``x W_T``."""
    T, c = X.simplex(k, idx)
    G = X.group
    x = G.invert(int(X.reps[T][c]))
    return conjugate_subgroup(G, parabolic_subgroup(G, T), x)


def isotropy(X: CoxeterComplex, H: SubgroupHandle, k: int, idx: int) -> SubgroupHandle:
    """Isotropy subgroup of a simplex in ``H``."""
    return intersect(stabilizer(X, k, idx), H)


@dataclass(frozen=True, eq=False)
class OrbitDecomposition:
    """Orbits of ``H`` on each dimension.

    ``orbit_of[k][id]`` is the orbit number, ``reps[k]`` the smallest id in
    each orbit.  When a character was supplied, ``transport[k][id]`` is
    ``chi(h)`` for the element ``h`` found carrying the representative to
    ``id`` and ``chi_trivial[k][o]`` says whether ``chi`` is trivial on the
    representative's isotropy.
    """

    subgroup: SubgroupHandle
    reps: list
    orbit_of: list
    transport: list
    chi_trivial: list

    def isotropy(self, X: CoxeterComplex, k: int, o: int) -> SubgroupHandle:
        return isotropy(X, self.subgroup, k, int(self.reps[k][o]))

    def orbit_counts(self) -> list:
        return [len(r) for r in self.reps]


def orbit_decomposition(X: CoxeterComplex, H: SubgroupHandle,
                        chi: Optional[np.ndarray] = None) -> OrbitDecomposition:
    """Orbits of ``H`` on simplices; ``chi`` is an optional character of the parent group."""
    gens = generating_set(H)
    perms = [X.action_perms(g) for g in gens]
    gvals = [1 if chi is None else int(chi[g]) for g in gens]
    reps_all, orbit_all, trans_all, ok_all = [], [], [], []
    for k in range(X.rank):
        N = X.counts[k]
        orbit = np.full(N, -1, dtype=np.int64)
        trans = np.zeros(N, dtype=np.int64)
        reps, ok = [], []
        for start in range(N):
            if orbit[start] >= 0:
                continue
            o = len(reps)
            reps.append(start)
            good = True
            orbit[start] = o
            trans[start] = 1
            stack = [start]
            while stack:
                sig = stack.pop()
                v = trans[sig]
                for perm, gv in zip(perms, gvals):
                    tau = int(perm[k][sig])
                    if orbit[tau] < 0:
                        orbit[tau] = o
                        trans[tau] = gv * v
                        stack.append(tau)
                    elif trans[tau] != gv * v:
                        good = False
            ok.append(good)
        reps_all.append(np.array(reps, dtype=np.int64))
        orbit_all.append(orbit)
        trans_all.append(trans)
        ok_all.append(np.array(ok, dtype=bool))
    return OrbitDecomposition(H, reps_all, orbit_all, trans_all, ok_all)


def glued_quotient_cochains(rank: int):
    """Cellular coboundaries of two copies of a simplex glued along their boundary.

    This is the cell structure of ``X_W / A_W`` read off the fundamental
    domain: one cell per nonempty proper ``T`` and two top cells.  Returns
    ``(dims, mats)`` with dense integer coboundary matrices ``mats[k]`` of
    shape ``(dims[k+1], dims[k])``.
    """
    n = rank
    cells = []
    for k in range(n):
        size = n - k - 1
        Ts = [T for T in itertools.combinations(range(n), size) if T]
        cells.append(Ts if size else [(), ()])
    dims = [len(c) for c in cells]
    mats = []
    for k in range(n - 1):
        D = np.zeros((dims[k + 1], dims[k]), dtype=np.int64)
        index = {T: i for i, T in enumerate(cells[k])}
        for r, T in enumerate(cells[k + 1]):
            types = sorted(set(range(n)) - set(T), reverse=True)
            for pos, s in enumerate(types):
                F = tuple(sorted(T + (s,)))
                D[r, index[F]] += -1 if pos % 2 else 1
        mats.append(D)
    return dims, mats
