"""Coxeter matrices: parsing, validation, decomposition and classification.

Entries of a Coxeter matrix are positive integers or ``INF``.  ``INF`` is
``math.inf``: it compares correctly against integers and is never confused
with a large finite label.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

INF = math.inf


class GraphSyntaxError(ValueError):
    """Raised by :func:`parse_graph` on malformed input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ReducibleError(ValueError):
    pass


def _fmt(m) -> str:
    return "inf" if m == INF else str(m)


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix on generators ``0..n-1``.

    ``entries`` is the full row-major tuple of tuples.  Construction does not
    validate; call :func:`validate` for that.
    """

    entries: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "CoxeterMatrix":
        return cls(tuple(tuple(INF if x == INF else int(x) for x in r) for r in rows))

    @classmethod
    def from_edges(cls, n: int, edges: dict) -> "CoxeterMatrix":
        """Build from ``{(i, j): m}`` with 0-based indices; missing pairs are 2."""
        rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), m in edges.items():
            rows[i][j] = rows[j][i] = m
        return cls.from_rows(rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def m(self, i: int, j: int):
        return self.entries[i][j]

    def restrict(self, gens: Sequence[int]) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(tuple(self.entries[i][j] for j in gens) for i in gens))

    def relabel(self, perm: Sequence[int]) -> "CoxeterMatrix":
        """Matrix with generator ``k`` of the result equal to ``perm[k]`` here."""
        return self.restrict(perm)

    def edges(self):
        """Coxeter graph edges ``(i, j, m)`` with ``i < j`` and ``m >= 3``."""
        n = self.n
        return [(i, j, self.entries[i][j]) for i in range(n) for j in range(i + 1, n)
                if self.entries[i][j] != 2]

    def key(self) -> str:
        """Canonical text used for hashing and reports."""
        return ";".join(",".join(_fmt(x) for x in row) for row in self.entries)

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(_fmt(x) for x in row) for row in self.entries) + "]"


# --------------------------------------------------------------------------
# irreducible types and the catalog

@dataclass(frozen=True)
class IrreducibleType:
    family: str  # "A", "B", "D", "E", "F", "H", "I2", "Unknown"
    param: object = None  # rank for A/B/D/E/F/H, m for I2 (may be INF)

    @property
    def name(self) -> str:
        if self.family == "Unknown":
            return "Unknown"
        if self.family == "I2":
            return f"I2({_fmt(self.param)})"
        return f"{self.family}{self.param}"

    @property
    def rank(self):
        if self.family == "I2":
            return 2
        if self.family == "Unknown":
            return None
        return self.param

    def __str__(self) -> str:
        return self.name


UNKNOWN = IrreducibleType("Unknown")

_EXCEPTIONAL = {("E", 6), ("E", 7), ("E", 8), ("F", 4), ("H", 3), ("H", 4)}


def make_type(family: str, param) -> IrreducibleType:
    """Checked constructor for catalog types."""
    ok = (
        (family == "A" and isinstance(param, int) and param >= 1)
        or (family == "B" and isinstance(param, int) and param >= 2)
        or (family == "D" and isinstance(param, int) and param >= 4)
        or ((family, param) in _EXCEPTIONAL)
        or (family == "I2" and (param == INF or (isinstance(param, int) and param >= 3)))
    )
    if not ok:
        raise ValueError(f"no Coxeter type {family}{param}")
    return IrreducibleType(family, param)


def catalog_matrix(t: IrreducibleType) -> CoxeterMatrix:
    """The standard Coxeter graph for a catalog type.

    Labeling: A/B/F/H are paths (B carries its 4 on edge 1-2, F4 on 2-3,
    H on 1-2); D_n is the path 1..n-1 with n attached to n-2; E_n is the
    path 1..n-1 with n attached to 3.
    """
    f, k = t.family, t.param
    if f == "I2":
        return CoxeterMatrix.from_edges(2, {(0, 1): k})
    n = k
    e = {}
    if f in ("A", "B", "F", "H"):
        for i in range(n - 1):
            e[(i, i + 1)] = 3
        if f == "B":
            e[(0, 1)] = 4
        elif f == "F":
            e[(1, 2)] = 4
        elif f == "H":
            e[(0, 1)] = 5
    elif f == "D":
        for i in range(n - 2):
            e[(i, i + 1)] = 3
        e[(n - 3, n - 1)] = 3
    elif f == "E":
        for i in range(n - 2):
            e[(i, i + 1)] = 3
        e[(2, n - 1)] = 3
    else:
        raise ValueError(f"no matrix for {t}")
    return CoxeterMatrix.from_edges(n, e)


def type_order(t: IrreducibleType):
    f, k = t.family, t.param
    if f == "A":
        return math.factorial(k + 1)
    if f == "B":
        return 2 ** k * math.factorial(k)
    if f == "D":
        return 2 ** (k - 1) * math.factorial(k)
    if f == "I2":
        return INF if k == INF else 2 * k
    fixed = {
        ("E", 6): 2 ** 7 * 3 ** 4 * 5,
        ("E", 7): 2 ** 10 * 3 ** 4 * 5 * 7,
        ("E", 8): 2 ** 14 * 3 ** 5 * 5 ** 2 * 7,
        ("F", 4): 2 ** 7 * 3 ** 2,
        ("H", 3): 2 ** 3 * 3 * 5,
        ("H", 4): 2 ** 6 * 3 ** 2 * 5 ** 2,
    }
    return fixed.get((f, k), INF)


@dataclass(frozen=True)
class PFreeRule:
    """Which odd primes p make a type p-free.

    ``kind`` is "min" (all p >= bound) or "coprime" (p does not divide bound).
    """

    kind: str
    bound: object

    def holds(self, p: int) -> bool:
        if self.kind == "min":
            return p >= self.bound
        if self.bound == INF:
            return True
        return self.bound % p != 0

    def __str__(self) -> str:
        if self.kind == "min":
            return f"p>={self.bound}"
        return "p∤m" if self.bound is None else f"p∤{_fmt(self.bound)}"


@dataclass(frozen=True)
class CatalogEntry:
    type: IrreducibleType
    order: object
    p_free_rule: PFreeRule


def type_rule(t: IrreducibleType) -> PFreeRule:
    f, k = t.family, t.param
    if f == "A" and k == 1:
        return PFreeRule("min", 3)
    if f == "B" and k == 2:
        return PFreeRule("min", 3)
    if f == "H":
        return PFreeRule("min", 7)
    if f == "I2":
        return PFreeRule("coprime", k)
    return PFreeRule("min", 5)


def catalog_entry(t: IrreducibleType) -> CatalogEntry:
    return CatalogEntry(t, type_order(t), type_rule(t))


# (label, symbolic order, p-freeness) in the order of the published table
APPENDIX_ROWS = (
    ("A_1", "2", "p>=3"),
    ("A_n (n>=2)", "(n+1)!", "p>=5"),
    ("B_2", "8", "p>=3"),
    ("B_n (n>=3)", "2^n n!", "p>=5"),
    ("D_n (n>=4)", "2^(n-1) n!", "p>=5"),
    ("E_6", "2^7*3^4*5", "p>=5"),
    ("E_7", "2^10*3^4*5*7", "p>=5"),
    ("E_8", "2^14*3^5*5^2*7", "p>=5"),
    ("F_4", "2^7*3^2", "p>=5"),
    ("H_3", "2^3*3*5", "p>=7"),
    ("H_4", "2^6*3^2*5^2", "p>=7"),
    ("I_2(m) (m>=3)", "2m", "p∤m"),
)


def catalog_types(max_rank: int = 8, max_m: int = 12) -> list:
    """Every finite irreducible type with A/B/D rank <= max_rank and I2(m), m <= max_m."""
    out = [make_type("A", n) for n in range(1, max_rank + 1)]
    out += [make_type("B", n) for n in range(2, max_rank + 1)]
    out += [make_type("D", n) for n in range(4, max_rank + 1)]
    out += [make_type("E", n) for n in (6, 7, 8)]
    out += [make_type("F", 4), make_type("H", 3), make_type("H", 4)]
    out += [make_type("I2", m) for m in range(3, max_m + 1)]
    return out


# --------------------------------------------------------------------------
# DSL parser

_NAME_RE = re.compile(r"(Dinf|I2\((\d+|inf)\)|([ABDEFH])(\d+))")


def _parse_catalog_name(s: str, offset: int) -> CoxeterMatrix:
    m = _NAME_RE.fullmatch(s)
    if not m:
        raise GraphSyntaxError(f"unknown graph name {s!r}", offset)
    if s == "Dinf":
        t = make_type("I2", INF)
    elif s.startswith("I2"):
        lab = m.group(2)
        val = INF if lab == "inf" else int(lab)
        if val != INF and val < 3:
            raise GraphSyntaxError(f"I2 label must be >= 3, got {val}", offset)
        t = make_type("I2", val)
    else:
        try:
            t = make_type(m.group(3), int(m.group(4)))
        except ValueError as exc:
            raise GraphSyntaxError(str(exc), offset) from None
    return catalog_matrix(t)


def _parse_explicit(s: str, offset: int) -> CoxeterMatrix:
    parts = s.split(";")
    pos = offset
    head = parts[0]
    hm = re.fullmatch(r"n=(\d+)", head)
    if not hm:
        raise GraphSyntaxError("expected 'n=<rank>'", pos)
    n = int(hm.group(1))
    if n < 1:
        raise GraphSyntaxError("rank must be >= 1", pos + 2)
    pos += len(head) + 1
    edges = {}
    for part in parts[1:]:
        if part == "":
            pos += 1
            continue
        em = re.fullmatch(r"(\d+)-(\d+)(?::(\d+|inf))?", part)
        if not em:
            raise GraphSyntaxError(f"bad edge {part!r}", pos)
        i, j = int(em.group(1)), int(em.group(2))
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise GraphSyntaxError(f"bad edge endpoints {i}-{j}", pos)
        lab = em.group(3)
        val = 3 if lab is None else (INF if lab == "inf" else int(lab))
        if val != INF and val < 3:
            raise GraphSyntaxError(f"edge label must be >= 3 or inf, got {val}", pos)
        key = (min(i, j) - 1, max(i, j) - 1)
        if key in edges:
            raise GraphSyntaxError(f"duplicate edge {i}-{j}", pos)
        edges[key] = val
        pos += len(part) + 1
    return CoxeterMatrix.from_edges(n, edges)


def direct_sum(mats: Iterable[CoxeterMatrix]) -> CoxeterMatrix:
    mats = list(mats)
    n = sum(m.n for m in mats)
    rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    base = 0
    for mat in mats:
        for i in range(mat.n):
            for j in range(mat.n):
                rows[base + i][base + j] = mat.m(i, j)
        base += mat.n
    return CoxeterMatrix.from_rows(rows)


def parse_graph(text: str) -> CoxeterMatrix:
    """Parse the graph DSL: catalog names, ``n=..; i-j:label`` forms, and ``+`` unions.

    >>> parse_graph("A3").entries
    ((1, 3, 2), (3, 1, 3), (2, 3, 1))
    """
    # positions refer to the whitespace-stripped text
    s = "".join(text.split())
    if not s:
        raise GraphSyntaxError("empty graph", 0)
    mats = []
    pos = 0
    for piece in s.split("+"):
        if not piece:
            raise GraphSyntaxError("empty summand", pos)
        if piece.startswith("n="):
            mats.append(_parse_explicit(piece, pos))
        else:
            mats.append(_parse_catalog_name(piece, pos))
        pos += len(piece) + 1
    return mats[0] if len(mats) == 1 else direct_sum(mats)


def format_graph(M: CoxeterMatrix) -> str:
    """Explicit DSL form of ``M`` (round-trips through :func:`parse_graph`)."""
    parts = [f"n={M.n}"]
    for i, j, m in M.edges():
        parts.append(f"{i + 1}-{j + 1}" if m == 3 else f"{i + 1}-{j + 1}:{_fmt(m)}")
    return "; ".join(parts)


# --------------------------------------------------------------------------
# validation, components, classification

def validate(M: CoxeterMatrix) -> list:
    """Return invariant violations; an empty list means ``M`` is a Coxeter matrix."""
    out = []
    n = M.n
    if n < 1:
        out.append("rank < 1")
    for i in range(n):
        if len(M.entries[i]) != n:
            out.append(f"row {i + 1} has wrong length")
            return out
    for i in range(n):
        if M.m(i, i) != 1:
            out.append(f"diagonal: m({i + 1},{i + 1}) = {_fmt(M.m(i, i))}")
        for j in range(i + 1, n):
            a, b = M.m(i, j), M.m(j, i)
            if a != b:
                out.append(f"asymmetric: m({i + 1},{j + 1}) != m({j + 1},{i + 1})")
            if a != INF and (not isinstance(a, int) or a < 2):
                out.append(f"off-diagonal < 2: m({i + 1},{j + 1}) = {_fmt(a)}")
    return out


def is_valid(M: CoxeterMatrix) -> bool:
    return not validate(M)


@dataclass(frozen=True)
class Component:
    matrix: CoxeterMatrix
    index_map: tuple  # component generator k -> original generator


def components(M: CoxeterMatrix) -> list:
    """Connected components of the Coxeter graph, ordered by smallest generator."""
    n = M.n
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and w != v and M.m(v, w) != 2:
                    seen[w] = True
                    stack.append(w)
        comp.sort()
        out.append(Component(M.restrict(comp), tuple(comp)))
    return out


def _isomorphic(A: CoxeterMatrix, B: CoxeterMatrix) -> bool:
    n = A.n
    if n != B.n:
        return False

    def sig(M, v):
        return tuple(sorted(_fmt(M.m(v, w)) for w in range(n) if w != v and M.m(v, w) != 2))

    sa = [sig(A, v) for v in range(n)]
    sb = [sig(B, v) for v in range(n)]
    if sorted(sa) != sorted(sb):
        return False
    cand = [[w for w in range(n) if sb[w] == sa[v]] for v in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in cand[v]:
            if used[w]:
                continue
            if all(A.m(v, u) == B.m(w, image[u]) for u in range(v)):
                image[v], used[w] = w, True
                if extend(v + 1):
                    return True
                used[w] = False
        return False

    return extend(0)


def classify(M: CoxeterMatrix) -> IrreducibleType:
    """Identify an irreducible Coxeter matrix with a finite catalog type or I2(inf)."""
    if len(components(M)) != 1:
        raise ReducibleError("classify requires an irreducible matrix")
    n = M.n
    if n == 1:
        return make_type("A", 1)
    if n == 2:
        m = M.m(0, 1)
        if m == 3:
            return make_type("A", 2)
        if m == 4:
            return make_type("B", 2)
        return make_type("I2", m)
    cands = [("A", n), ("B", n)]
    if n >= 4:
        cands.append(("D", n))
    cands += [c for c in _EXCEPTIONAL if c[1] == n]
    for fam, k in cands:
        t = make_type(fam, k)
        if _isomorphic(M, catalog_matrix(t)):
            return t
    return UNKNOWN


def component_types(M: CoxeterMatrix) -> list:
    return [classify(c.matrix) for c in components(M)]


def order(M: CoxeterMatrix):
    """|W| as an int, or INF."""
    total = 1
    for t in component_types(M):
        o = type_order(t) if t != UNKNOWN else INF
        if o == INF:
            return INF
        total *= o
    return total


def is_finite(M: CoxeterMatrix) -> bool:
    return order(M) != INF


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def check_odd_prime(p) -> None:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"{p!r} is not an odd prime")


def is_p_free(M: CoxeterMatrix, p: int) -> bool:
    """True iff every finite off-diagonal entry is coprime to ``p``."""
    check_odd_prime(p)
    n = M.n
    return all(M.m(i, j) == INF or M.m(i, j) % p
               for i in range(n) for j in range(i + 1, n))


def name(M: CoxeterMatrix) -> str:
    """Human readable type, e.g. ``A2+I2(5)``; falls back to the explicit DSL."""
    parts = []
    for c in components(M):
        t = classify(c.matrix)
        if t == UNKNOWN:
            return format_graph(M)
        parts.append(t.name)
    # only claim a name if the catalog labeling reproduces M exactly
    if parse_graph("+".join(parts)) != M:
        return format_graph(M)
    return "+".join(parts)


@dataclass
class ScanReport:
    p: int
    rows: list = field(default_factory=list)  # (type name, rank, order, p_free, p_divides_order)
    excluded: list = field(default_factory=list)  # types of rank <= p-2 that are not p-free

    @property
    def ok(self) -> bool:
        return all(not div for _, _, _, _, div in self.rows)


def scan_low_rank_p_torsion(p: int) -> ScanReport:
    """Check that every finite irreducible p-free type of rank <= p-2 has order prime to p."""
    check_odd_prime(p)
    if p < 5:
        raise ValueError("the low-rank scan needs p >= 5")
    max_rank = p - 2
    types = [t for t in catalog_types(max_rank=max_rank, max_m=1)
             if t.rank <= max_rank]
    rep = ScanReport(p)
    for t in types:
        if not type_rule(t).holds(p):
            rep.excluded.append(t.name)
            continue
        o = type_order(t)
        rep.rows.append((t.name, t.rank, o, True, o % p == 0))
    # the dihedral family is unbounded in m; sample a window covering several multiples of p
    for m in range(3, 4 * p + 1):
        t = make_type("I2", m)
        if type_rule(t).holds(p):
            rep.rows.append((t.name, 2, 2 * m, True, (2 * m) % p == 0))
        else:
            rep.excluded.append(t.name)
    return rep
