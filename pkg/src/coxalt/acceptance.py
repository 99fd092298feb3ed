"""The twelve acceptance checks, shared by ``coxalt verify-all`` and the test suite."""
from __future__ import annotations

import math
import re
import time
from dataclasses import dataclass
from typing import Callable

from coxalt.coxeter import (
    APPENDIX_ROWS,
    catalog_matrix,
    catalog_types,
    is_p_free,
    make_type,
    parse_graph,
    scan_low_rank_p_torsion,
    type_order,
    type_rule,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title}: {self.detail}"


class Failed(AssertionError):
    pass


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise Failed(message)


# --------------------------------------------------------------------------
# shared fixtures

def sphere(rank: int) -> tuple:
    return (2,) if rank == 1 else (1,) + (0,) * (rank - 2) + (1,)


def complex_catalog() -> list:
    """Finite irreducible types of rank <= 4, plus A5, D5 and I2(m) for m <= 12."""
    names = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "H4", "A5", "D5"]
    return names + [f"I2({m})" for m in range(5, 13)]


def low_rank_catalog() -> list:
    return ["A1", "A2", "A3", "B2", "B3", "H3"] + [f"I2({m})" for m in range(5, 13)]


_cache: dict = {}


def _group_and_complex(name: str):
    if name not in _cache:
        from coxalt.complex import build_coxeter_complex
        from coxalt.groups import enumerate_group
        G = enumerate_group(parse_graph(name))
        _cache[name] = (G, build_coxeter_complex(G))
    return _cache[name]


# --------------------------------------------------------------------------
# 1

def _eval_symbolic(expr: str, n=None, m=None) -> int:
    """Evaluate the table's order notation, e.g. ``2^(n-1) n!`` or ``2m``."""
    s = expr.replace("^", "**")
    s = re.sub(r"(\d)([nm])", r"\1*\2", s)
    s = re.sub(r"\(([^()]*)\)!", r"math.factorial(\1)", s)
    s = re.sub(r"\b([nm])!", r"math.factorial(\1)", s)
    s = re.sub(r"\)\s+(\w)", r")*\1", s)
    s = re.sub(r"(\w)\s+(\w)", r"\1*\2", s)
    return int(eval(s, {"math": math}, {"n": n, "m": m}))  # noqa: S307 - fixed table strings


def _row_for(t) -> int:
    f, k = t.family, t.param
    if f == "A":
        return 0 if k == 1 else 1
    if f == "B":
        return 2 if k == 2 else 3
    if f == "D":
        return 4
    if f == "E":
        return {6: 5, 7: 6, 8: 7}[k]
    if f == "F":
        return 8
    if f == "H":
        return {3: 9, 4: 10}[k]
    return 11


def check_appendix() -> str:
    from coxalt.cli import catalog_rows
    rows = catalog_rows()
    _expect(len(rows) == 12, f"{len(rows)} rows")
    _expect([tuple(r) for r in rows] == [tuple(r) for r in APPENDIX_ROWS], "table differs")
    _expect(rows[10][1:] == ("2^6*3^2*5^2", "p>=7") and _eval_symbolic(rows[10][1]) == 14400,
            "H4 row")
    _expect(rows[0][1:] == ("2", "p>=3"), "A1 row")
    checked = 0
    for t in catalog_types(max_rank=8, max_m=12):
        label, sym, rule = APPENDIX_ROWS[_row_for(t)]
        want = _eval_symbolic(sym, n=t.param, m=t.param)
        _expect(type_order(t) == want, f"{t.name}: order {type_order(t)} != {want}")
        got_rule = str(type_rule(t))
        _expect(got_rule == rule or (t.family == "I2" and got_rule == f"p∤{t.param}"),
                f"{t.name}: rule {got_rule} != {rule}")
        checked += 1
    return f"12 rows exact; {checked} instantiated types agree"


# --------------------------------------------------------------------------
# 2, 3

def check_sphere() -> str:
    from coxalt.linalg import betti, cochain_complex
    n = 0
    for name in complex_catalog():
        G, X = _group_and_complex(name)
        for p in (3, 5, 7):
            b = betti(cochain_complex(X, p)).betti
            _expect(b == sphere(G.rank), f"{name} p={p}: {b}")
            n += 1
    return f"{n} (type, p) cases give the sphere profile"


def check_orbit_sphere() -> str:
    from coxalt.complex import glued_quotient_cochains
    from coxalt.groups import alternating_subgroup
    from coxalt.linalg import betti, dense_complex, invariant_cochain_complex
    n = 0
    for name in complex_catalog():
        G, X = _group_and_complex(name)
        A = alternating_subgroup(G)
        for p in (3, 5, 7):
            C = invariant_cochain_complex(X, A, p)
            b = betti(C).betti
            _expect(b == sphere(G.rank), f"{name} p={p}: {b}")
            dims, mats = glued_quotient_cochains(G.rank)
            _expect(tuple(C.dims) == tuple(dims), f"{name}: cell counts {C.dims} vs {dims}")
            if G.rank == 2:
                glued = betti(dense_complex(p, dims, mats)).betti
                _expect(glued == b, f"{name}: glued quotient {glued}")
            n += 1
    return f"{n} cases give the sphere profile; rank-2 glued quotient agrees"


# --------------------------------------------------------------------------
# 4 - 7

def check_main_p5() -> str:
    from coxalt.cohomology import (
        cohomology_cocycle,
        cohomology_cyclic_sylow,
        verify_main_theorem,
    )
    from coxalt.groups import alternating_subgroup
    G, _ = _group_and_complex("A4")
    A = alternating_subgroup(G)
    coc = cohomology_cocycle(A, 5, None, 2)
    syl = cohomology_cyclic_sylow(A, 5, None, 2)
    _expect(coc.dims[1] == coc.dims[2] == 0, f"A4 cocycle {coc.seq()}")
    _expect(coc.seq() == syl.seq(), f"A4 cocycle {coc.seq()} vs sylow {syl.seq()}")
    from coxalt.groups import enumerate_group
    A5 = alternating_subgroup(enumerate_group(parse_graph("A5")))
    s5 = cohomology_cyclic_sylow(A5, 5, None, 2)
    _expect(s5.dims[1] == s5.dims[2] == 0, f"A5 sylow {s5.seq()}")
    certified = []
    for name in low_rank_catalog():
        M = parse_graph(name)
        if not is_p_free(M, 5):
            continue
        rep = verify_main_theorem(M, 5)
        _expect(rep.ok and all(r.method == "order-argument" for r in rep.records),
                f"{name}: {[(r.degree, r.method, r.status) for r in rep.records]}")
        certified.append(name)
    return (f"A4 (cocycle = sylow) {coc.seq()}; A5 sylow {s5.seq()}; "
            f"order argument: {', '.join(certified)}")


def check_sharpness() -> str:
    from coxalt.cohomology import OneDimRep, cohomology_cocycle, cohomology_cyclic_sylow
    from coxalt.groups import alternating_subgroup, whole_group
    G, _ = _group_and_complex("A4")
    d3 = cohomology_cyclic_sylow(alternating_subgroup(G), 5, None, 3).dims[3]
    _expect(d3 == 1, f"dim H^3(A_5,F_5) = {d3}")
    S3, _ = _group_and_complex("A2")
    d1 = cohomology_cocycle(whole_group(S3), 3, OneDimRep.sign(2).on(S3), 1).dims[1]
    _expect(d1 == 1, f"dim H^1(S_3,F_3[-1]) = {d1}")
    return "dim H^3(A_5,F_5) = 1, dim H^1(S_3,F_3[-1]) = 1"


def check_twisted_p5() -> str:
    from coxalt.cohomology import (
        DEFAULT_MEMORY,
        OneDimRep,
        _estimate_bytes,
        cohomology_cocycle,
        cohomology_cyclic_sylow,
    )
    from coxalt.groups import generating_set, whole_group
    G, _ = _group_and_complex("A4")
    W = whole_group(G)
    chi = OneDimRep.sign(4).on(G)
    _expect(_estimate_bytes(W.size, 2, len(generating_set(W))) <= DEFAULT_MEMORY, "memory")
    coc = cohomology_cocycle(W, 5, chi, 2, character="sign")
    _expect(coc.seq() == (0, 0, 0), f"cocycle {coc.seq()}")
    syl = cohomology_cyclic_sylow(W, 5, chi, 3, character="sign")
    _expect(syl.seq() == (0, 0, 0, 1), f"sylow {syl.seq()}")
    return f"W(A4) sign: cocycle {coc.seq()} (|W| = {W.size}), degree 3 = {syl.dims[3]}"


def check_sign_split() -> str:
    from coxalt.cohomology import verify_sign_split
    out = []
    for name, p in (("A2", 3), ("I2(5)", 5), ("A4", 5)):
        rep = verify_sign_split(parse_graph(name), p, 2)
        _expect(rep.ok, f"{name}: {rep.notes}")
        dims = [r.dim for r in rep.records if r.group.startswith("A_W")]
        out.append(f"{name}/p={p} A_W {tuple(dims)}")
    return "; ".join(out)


# --------------------------------------------------------------------------
# 8 - 11

def check_bottom_row() -> str:
    from coxalt.cohomology import ss_bottom_row
    from coxalt.groups import alternating_subgroup
    names = ["A1", "A2", "A3", "B2", "B3", "H3"] + [f"I2({m})" for m in range(5, 8)]
    n = 0
    for name in names:
        G, X = _group_and_complex(name)
        A = alternating_subgroup(G)
        for p in (3, 5):
            row = ss_bottom_row(X, A, p)
            _expect(row.match, f"{name} p={p}: {row.e2_dims} vs {row.invariant_betti}")
            n += 1
    return f"E_2 bottom row = invariant-cochain Betti in {n} cases"


def check_isotropy() -> str:
    from coxalt.complex import isotropy
    from coxalt.groups import (
        alternating_subgroup,
        conjugate_subgroup,
        enumerate_group,
        intersect,
        parabolic_subgroup,
    )
    total = 0
    for name in low_rank_catalog():
        G, X = _group_and_complex(name)
        A = alternating_subgroup(G)
        sub_alt = {}
        for k in range(X.rank):
            for T in X.subsets[k]:
                WT = enumerate_group(G.matrix.restrict(T)) if T else None
                order_A_T = alternating_subgroup(WT).size if T else 1
                A_T = intersect(parabolic_subgroup(G, T), A)
                _expect(A_T.size == order_A_T, f"{name} T={T}: |A_T| {A_T.size} vs {order_A_T}")
                sub_alt[T] = A_T
                off = X.offsets[k][T]
                for c in range(X.reps[T].shape[0]):
                    iso = isotropy(X, A, k, off + c)
                    _expect(iso.size == order_A_T, f"{name}: isotropy order")
                    x = G.invert(int(X.reps[T][c]))
                    _expect(iso.same_as(conjugate_subgroup(G, A_T, x)), f"{name}: conjugacy")
                    total += 1
    return f"{total} simplices checked"


def check_dinf_h1() -> str:
    from coxalt.cohomology import alternating_presentation, h1_from_presentation
    M = parse_graph("I2(inf)")
    vals = [h1_from_presentation(alternating_presentation(M, 0), p) for p in (3, 5, 7)]
    _expect(vals == [1, 1, 1], f"{vals}")
    return "H^1(A_{D_inf}, F_p) = 1 for p = 3, 5, 7"


def check_scan() -> str:
    for p in (5, 7, 11):
        rep = scan_low_rank_p_torsion(p)
        _expect(rep.ok, f"p={p}: {[r for r in rep.rows if r[4]]}")
    _expect(not is_p_free(catalog_matrix(make_type("H", 3)), 5), "H3 should not be 5-free")
    for t in (make_type("F", 4), make_type("H", 3), make_type("H", 4)):
        _expect(type_order(t) % 7 != 0, f"{t.name} order divisible by 7")
    return "p = 5, 7, 11 clean; H3 not 5-free; F4/H3/H4 orders prime to 7"


# --------------------------------------------------------------------------
# 12

FIXTURES = (
    # (realization, subgroup, p, character on parent)
    ("A2", "A", 3, "trivial"),       # Z/3
    ("I2(5)", "A", 5, "trivial"),    # Z/5
    ("I2(15)", "A", 3, "trivial"),   # Z/15
    ("I2(15)", "A", 5, "trivial"),
    ("A2", "W", 3, "trivial"),       # Sigma_3
    ("A2", "W", 3, "sign"),
    ("I2(5)", "W", 5, "trivial"),    # dihedral of order 10
    ("I2(5)", "W", 5, "sign"),
    ("A4", "A", 5, "trivial"),       # A_5
)


def method_agreement() -> list:
    from coxalt.cohomology import OneDimRep, cohomology_cocycle, cohomology_cyclic_sylow
    from coxalt.groups import alternating_subgroup, enumerate_group, whole_group
    out = []
    for name, which, p, ch in FIXTURES:
        G = enumerate_group(parse_graph(name))
        H = alternating_subgroup(G) if which == "A" else whole_group(G)
        chi = OneDimRep.sign(G.rank).on(G) if ch == "sign" else None
        a = cohomology_cocycle(H, p, chi, 2).seq()
        b = cohomology_cyclic_sylow(H, p, chi, 2).seq()
        out.append((name, which, p, ch, a, b))
    return out


def check_properties() -> str:
    from coxalt.cohomology import verify_main_theorem
    from coxalt.linalg import betti, cochain_complex, invariant_cochain_complex
    from coxalt.groups import alternating_subgroup
    for name in complex_catalog():
        G, X = _group_and_complex(name)
        _expect(X.euler_characteristic() == 1 + (-1) ** (G.rank - 1), f"{name}: Euler char")
        C = cochain_complex(X, 5)  # checks d∘d = 0
        _expect(betti(C).euler_ok(), f"{name}: Euler identity")
        D = invariant_cochain_complex(X, alternating_subgroup(G), 5)
        _expect(betti(D).euler_ok(), f"{name}: Euler identity (orbits)")
    for row in method_agreement():
        _expect(row[4] == row[5], f"method disagreement {row}")
    r1 = verify_main_theorem(parse_graph("A4"), 5).render("json")
    r2 = verify_main_theorem(parse_graph("A4"), 5).render("json")
    _expect(r1 == r2, "report not deterministic")
    from coxalt.complex import build_coxeter_complex
    from coxalt.groups import enumerate_group
    e1 = build_coxeter_complex(enumerate_group(parse_graph("B3"))).export_text()
    e2 = build_coxeter_complex(enumerate_group(parse_graph("B3"))).export_text()
    _expect(e1 == e2, "complex export not deterministic")
    return (f"d∘d = 0, Euler identities on {len(complex_catalog())} complexes; "
            f"{len(FIXTURES)} fixtures agree; reports deterministic")


CRITERIA: tuple = (
    (1, "Appendix reproduction", check_appendix),
    (2, "Coxeter complex is a sphere", check_sphere),
    (3, "orbit space is a sphere", check_orbit_sphere),
    (4, "vanishing for A_W at p=5", check_main_p5),
    (5, "sharpness", check_sharpness),
    (6, "twisted vanishing at p=5", check_twisted_p5),
    (7, "sign split", check_sign_split),
    (8, "spectral sequence bottom row", check_bottom_row),
    (9, "isotropy identity", check_isotropy),
    (10, "D_inf presentation H^1", check_dinf_h1),
    (11, "low-rank p-torsion scan", check_scan),
    (12, "property suites", check_properties),
)


def run_criterion(number: int) -> CriterionResult:
    num, title, fn = CRITERIA[number - 1]
    t0 = time.perf_counter()
    try:
        detail, ok = fn(), True
    except Failed as e:
        detail, ok = str(e), False
    return CriterionResult(num, title, ok, detail, time.perf_counter() - t0)


def run_all(progress: Callable[[CriterionResult], None] | None = None) -> list:
    out = []
    for num, _, _ in CRITERIA:
        res = run_criterion(num)
        if progress:
            progress(res)
        out.append(res)
    return out
