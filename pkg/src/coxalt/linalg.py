"""Linear algebra over F_p, cochain complexes and Betti profiles."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from coxalt import kernels
from coxalt.complex import CoxeterComplex, OrbitDecomposition, orbit_decomposition
from coxalt.groups import SubgroupHandle

# below this many columns (and a modest entry count) ranks are computed densely
DENSE_MAX_COLS = 400
DENSE_MAX_ENTRIES = 400_000


class IntegrityError(RuntimeError):
    """A computed complex violates d∘d = 0 or a cross-check failed."""


class FpMatrix:
    """Sparse matrix over F_p; stored values lie in 1..p-1."""

    def __init__(self, p: int, matrix):
        m = sp.csr_matrix(matrix, dtype=np.int64)
        m.data %= p
        m.eliminate_zeros()
        m.sort_indices()
        self.p = p
        self.csr = m

    @classmethod
    def from_triples(cls, p, rows, cols, vals, shape) -> "FpMatrix":
        return cls(p, sp.coo_matrix((np.asarray(vals, dtype=np.int64),
                                     (np.asarray(rows), np.asarray(cols))), shape=shape))

    @property
    def shape(self):
        return self.csr.shape

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    def toarray(self) -> np.ndarray:
        return self.csr.toarray()

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix(self.p, self.csr @ other.csr)

    def is_zero(self) -> bool:
        return self.nnz == 0

    def dump(self) -> str:
        """Header ``p rows cols`` then one ``row col value`` triple per line."""
        coo = self.csr.tocoo()
        lines = [f"{self.p} {self.shape[0]} {self.shape[1]}"]
        lines += [f"{r} {c} {v}" for r, c, v in zip(coo.row, coo.col, coo.data)]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "FpMatrix":
        lines = [ln.split() for ln in text.strip().splitlines()]
        p, r, c = map(int, lines[0])
        body = np.array([[int(x) for x in ln] for ln in lines[1:]], dtype=np.int64).reshape(-1, 3)
        return cls.from_triples(p, body[:, 0], body[:, 1], body[:, 2], (r, c))


# --------------------------------------------------------------------------
# dense helpers

def rref_mod_p(A: np.ndarray, p: int):
    """Reduced row echelon form over F_p; returns ``(R, pivot_columns)``."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] * pow(int(R[r, c]), p - 2, p) % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank_dense_mod_p(A: np.ndarray, p: int) -> int:
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` over F_p as rows."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = rref_mod_p(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, c in enumerate(piv):
            basis[i, c] = (-R[r, f]) % p
    return basis


def rank_fp(A, p: Optional[int] = None) -> int:
    """Rank over F_p; dense elimination for small inputs, sparse otherwise."""
    if not isinstance(A, FpMatrix):
        A = FpMatrix(p, A)
    rows, cols = A.shape
    if rows == 0 or cols == 0 or A.nnz == 0:
        return 0
    if cols <= DENSE_MAX_COLS and rows * cols <= DENSE_MAX_ENTRIES:
        return rank_dense_mod_p(A.toarray(), A.p)
    m = A.csr
    if rows < cols:
        # reduce along the shorter side
        m = m.T.tocsr()
        m.sort_indices()
    return int(kernels.sparse_rank_mod_p(m.indptr, m.indices, m.data, m.shape[1], A.p))


# --------------------------------------------------------------------------
# complexes

@dataclass(frozen=True, eq=False)
class ChainComplexFp:
    """Cochain complex: ``d[k]`` maps C^k -> C^{k+1}, shape ``(dims[k+1], dims[k])``."""

    p: int
    dims: tuple
    d: tuple

    def check(self) -> None:
        for k in range(len(self.d) - 1):
            if not (self.d[k + 1] @ self.d[k]).is_zero():
                raise IntegrityError(f"d∘d != 0 in degree {k}")


@dataclass(frozen=True)
class BettiProfile:
    betti: tuple
    dims: tuple

    def euler_ok(self) -> bool:
        return (sum((-1) ** k * d for k, d in enumerate(self.dims))
                == sum((-1) ** k * b for k, b in enumerate(self.betti)))

    def is_sphere(self) -> bool:
        b = self.betti
        if len(b) == 1:
            return b == (2,)
        return b[0] == 1 and b[-1] == 1 and all(x == 0 for x in b[1:-1])

    def label(self) -> str:
        return f"S^{len(self.betti) - 1}" if self.is_sphere() else "not a sphere"


def betti(C: ChainComplexFp) -> BettiProfile:
    C.check()
    ranks = [rank_fp(dk) for dk in C.d]
    out = []
    for k, dim in enumerate(C.dims):
        rk = ranks[k] if k < len(ranks) else 0
        rprev = ranks[k - 1] if k >= 1 else 0
        out.append(dim - rk - rprev)
    prof = BettiProfile(tuple(out), tuple(C.dims))
    if not prof.euler_ok():
        raise IntegrityError("Euler identity failed")
    return prof


def cochain_complex(X: CoxeterComplex, p: int) -> ChainComplexFp:
    mats = []
    for k in range(X.rank - 1):
        faces, signs = X.faces[k + 1], X.face_signs[k + 1]
        rows = np.repeat(np.arange(faces.shape[0]), faces.shape[1])
        mats.append(FpMatrix.from_triples(p, rows, faces.ravel(), signs.ravel(),
                                          (X.counts[k + 1], X.counts[k])))
    C = ChainComplexFp(p, tuple(X.counts), tuple(mats))
    C.check()
    return C


def invariant_cochain_complex(X: CoxeterComplex, H: SubgroupHandle, p: int,
                              chi: Optional[np.ndarray] = None,
                              orbits: Optional[OrbitDecomposition] = None) -> ChainComplexFp:
    """Cochains with ``f(h.sigma) = chi(h) f(sigma)`` for ``h`` in ``H``.

    The basis has one vector per orbit on whose isotropy ``chi`` is trivial,
    supported on that orbit and equal to 1 at its representative.
    """
    if orbits is None:
        orbits = orbit_decomposition(X, H, chi)
    basis = []  # per dimension: orbit -> basis index or -1
    for k in range(X.rank):
        ok = orbits.chi_trivial[k]
        idx = np.full(ok.size, -1, dtype=np.int64)
        idx[ok] = np.arange(int(ok.sum()))
        basis.append(idx)
    dims = tuple(int((b >= 0).sum()) for b in basis)
    mats = []
    for k in range(X.rank - 1):
        faces, signs = X.faces[k + 1], X.face_signs[k + 1]
        rows_, cols_, vals_ = [], [], []
        for o, tau in enumerate(orbits.reps[k + 1]):
            r = basis[k + 1][o]
            if r < 0:
                continue
            for sig, sgn in zip(faces[tau], signs[tau]):
                col = basis[k][orbits.orbit_of[k][sig]]
                if col < 0:
                    continue
                rows_.append(r)
                cols_.append(col)
                vals_.append(int(sgn) * int(orbits.transport[k][sig]))
        mats.append(FpMatrix.from_triples(p, rows_, cols_, vals_, (dims[k + 1], dims[k])))
    C = ChainComplexFp(p, dims, tuple(mats))
    C.check()
    return C


def dense_complex(p: int, dims: Sequence[int], mats: Sequence[np.ndarray]) -> ChainComplexFp:
    return ChainComplexFp(p, tuple(dims), tuple(FpMatrix(p, m) for m in mats))
