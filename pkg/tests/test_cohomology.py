import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxalt.acceptance import method_agreement
from coxalt.cohomology import (
    FiniteGroup,
    Limits,
    OneDimRep,
    ResourceLimit,
    alternating_presentation,
    bar_complex_dims,
    cohomology_cocycle,
    cohomology_cyclic_sylow,
    cyclic_group,
    cyclic_sylow_formula,
    evaluate_relators,
    h1_from_presentation,
    ss_bottom_row,
    verify_h1,
    verify_main_theorem,
    verify_sign_split,
    verify_twisted_theorem,
)
from coxalt.coxeter import parse_graph
from coxalt.groups import alternating_subgroup, trivial_subgroup, whole_group
from coxalt.linalg import rank_dense_mod_p
from tests.support import cx, group


# --------------------------------------------------------------------------
# independent oracle: full (unnormalized) inhomogeneous cochains

def full_bar_dims(mul, chi, p, kmax):
    n = mul.shape[0]
    ranks = []
    for k in range(kmax + 1):
        D = np.zeros((n ** (k + 1), n ** k), dtype=np.int64)
        index = {t: i for i, t in enumerate(itertools.product(range(n), repeat=k))}
        for r, x in enumerate(itertools.product(range(n), repeat=k + 1)):
            D[r, index[x[1:]]] += chi[x[0]]
            for i in range(k):
                D[r, index[x[:i] + (int(mul[x[i], x[i + 1]]),) + x[i + 2:]]] += (-1) ** (i + 1)
            D[r, index[x[:k]]] += (-1) ** (k + 1)
        ranks.append(rank_dense_mod_p(D % p, p))
    return tuple(n ** k - ranks[k] - (ranks[k - 1] if k else 0) for k in range(kmax + 1))


def perm_group(gens):
    """Multiplication table of the permutation group generated by ``gens``."""
    ident = tuple(range(len(gens[0])))
    elems, frontier = [ident], [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = tuple(a[i] for i in g)
                if b not in elems:
                    elems.append(b)
                    new.append(b)
        frontier = new
    idx = {e: i for i, e in enumerate(elems)}
    mul = np.array([[idx[tuple(a[i] for i in b)] for b in elems] for a in elems])
    sign = np.array([round(np.linalg.det(np.eye(len(e))[list(e)])) for e in elems])
    return mul, sign


S3_MUL, S3_SIGN = perm_group([(1, 0, 2), (0, 2, 1)])
V4_MUL, _ = perm_group([(1, 0, 3, 2), (2, 3, 0, 1)])
Z6_MUL = cyclic_group(6).mul


SMALL = [
    ("Z3", cyclic_group(3).mul, np.ones(3, int), 3),
    ("Z4", cyclic_group(4).mul, np.ones(4, int), 3),
    ("Z5", cyclic_group(5).mul, np.ones(5, int), 5),
    ("S3", S3_MUL, np.ones(6, int), 3),
    ("S3-sign", S3_MUL, S3_SIGN, 3),
    ("S3-sign-p5", S3_MUL, S3_SIGN, 5),
    ("V4", V4_MUL, np.ones(4, int), 3),
    ("Z6-twist", Z6_MUL, np.array([(-1) ** i for i in range(6)]), 3),
]


@pytest.mark.parametrize("label,mul,chi,p", SMALL, ids=[s[0] for s in SMALL])
def test_cocycle_matches_full_bar_complex(label, mul, chi, p):
    kmax = 3 if mul.shape[0] <= 5 else 2
    want = full_bar_dims(mul, chi, p, kmax)
    F = FiniteGroup.from_table(mul, chi)
    assert cohomology_cocycle(F, p, kmax=kmax).seq() == want
    assert tuple(bar_complex_dims(F, p, kmax).values()) == want
    # a different generating set gives the same answer
    F2 = FiniteGroup.from_table(mul, chi, gens=list(range(mul.shape[0] - 1, 0, -1)))
    assert cohomology_cocycle(F2, p, kmax=kmax).seq() == want


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 9), st.sampled_from([3, 5, 7]), st.integers(1, 3))
def test_cyclic_groups(m, p, kmax):
    dims = cohomology_cocycle(cyclic_group(m), p, kmax=kmax).seq()
    want = (1,) + ((1,) * kmax if m % p == 0 else (0,) * kmax)
    assert dims == want


def test_spec_examples():
    assert cohomology_cocycle(cyclic_group(5), 5, kmax=3).seq() == (1, 1, 1, 1)
    assert cohomology_cocycle(cyclic_group(7), 5, kmax=3).seq() == (1, 0, 0, 0)
    G = group("A2")
    r = cohomology_cocycle(whole_group(G), 3, OneDimRep.sign(2).on(G), 1)
    assert r.dims[1] == 1 and r.dims[0] == 0


def test_one_dim_rep():
    M = parse_graph("A2")
    with pytest.raises(ValueError):
        OneDimRep((1, -1)).check(M)
    OneDimRep((1, -1)).check(parse_graph("B2"))
    G = group("B2")
    chi = OneDimRep((1, -1), "mixed").on(G)
    assert set(chi.tolist()) == {1, -1}
    r = cohomology_cocycle(whole_group(G), 3, chi, 2)
    assert r.dims[0] == 0


def test_caps():
    G = group("A4")
    with pytest.raises(ResourceLimit):
        cohomology_cocycle(whole_group(G), 5, None, 3)
    with pytest.raises(ResourceLimit):
        cohomology_cocycle(alternating_subgroup(G), 5, None, 2, memory=1000)


def test_cyclic_sylow_examples():
    A5 = alternating_subgroup(group("A4"))
    assert cohomology_cyclic_sylow(A5, 5, None, 4).seq() == (1, 0, 0, 1, 1)
    S5 = group("A4")
    r = cohomology_cyclic_sylow(whole_group(S5), 5, OneDimRep.sign(4).on(S5), 3)
    assert r.dims[3] == 1 and r.method == "cyclic-sylow"
    S3 = whole_group(group("A2"))
    assert cohomology_cyclic_sylow(S3, 3, None, 2).seq() == (1, 0, 0)
    assert cohomology_cocycle(S3, 3, None, 2).seq() == (1, 0, 0)
    assert cyclic_sylow_formula(4, 1, 5, 4) == {1: 0, 2: 0, 3: 1, 4: 1}


def test_cyclic_sylow_refuses_noncyclic():
    from coxalt.groups import NonCyclicSylow
    with pytest.raises(NonCyclicSylow):
        cohomology_cyclic_sylow(whole_group(group("A5")), 3)


def test_method_agreement_fixture_set():
    rows = method_agreement()
    assert len(rows) == 9
    for row in rows:
        assert row[4] == row[5], row


def test_cocycle_on_120_elements():
    G = group("A4")
    r = cohomology_cocycle(whole_group(G), 5, None, 2)
    assert r.seq() == (1, 0, 0)


# --------------------------------------------------------------------------
# presentations

def test_presentation_examples():
    P = alternating_presentation(parse_graph("I2(inf)"), 0)
    assert len(P.generators) == 1 and P.relators == ()
    assert h1_from_presentation(P, 3) == 1
    P = alternating_presentation(parse_graph("I2(6)"), 0)
    assert P.relators == ((1,) * 6,)
    assert h1_from_presentation(P, 3) == 1
    assert h1_from_presentation(P, 5) == 0
    assert alternating_presentation(parse_graph("A2"), 0).relators == ((1, 1, 1),)


@pytest.mark.parametrize("g", ["A1", "A2", "A3", "B2", "B3", "H3", "I2(5)", "I2(6)", "A1+A1",
                               "A1+A2"])
def test_presentation_agrees_with_realization(g):
    M = parse_graph(g)
    G = group(g)
    for s0 in range(M.n):
        P = alternating_presentation(M, s0)
        images = [G.from_word((s0, s)) for s in range(M.n) if s != s0]
        assert all(x == 0 for x in evaluate_relators(P, G, images))
    for p in (3, 5, 7):
        rep = verify_h1(M, p)
        assert rep.records[0].status == "pass"


def test_h1_independent_of_s0():
    M = parse_graph("n=3;1-2:inf;2-3:4")
    vals = {h1_from_presentation(alternating_presentation(M, s0), 3) for s0 in range(3)}
    assert len(vals) == 1


# --------------------------------------------------------------------------
# spectral sequence bottom row

@pytest.mark.parametrize("g,want", [("A2", (1, 1)), ("I2(7)", (1, 1)), ("B3", (1, 0, 1))])
def test_bottom_row_examples(g, want):
    X = cx(g)
    row = ss_bottom_row(X, alternating_subgroup(X.group), 5)
    assert row.e2_dims == want == row.invariant_betti
    assert row.e1_dims == row.orbit_counts
    for a, b in zip(row.d1, row.d1[1:]):
        assert not ((b @ a) % 5).any()


def test_bottom_row_trivial_subgroup():
    X = cx("A3")
    row = ss_bottom_row(X, trivial_subgroup(X.group), 3)
    assert row.e1_dims == tuple(X.counts)
    assert row.e2_dims == (1, 0, 1)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("g", ["A1", "A3", "B3", "H3", "I2(5)"])
def test_bottom_row_catalog(g, p):
    X = cx(g)
    assert ss_bottom_row(X, alternating_subgroup(X.group), p).match


# --------------------------------------------------------------------------
# theorem-level checks

def statuses(rep):
    return [(r.degree, r.dim, r.method, r.status) for r in rep.records]


def test_main_theorem_a4():
    rep = verify_main_theorem(parse_graph("A4"), 5)
    assert rep.ok
    recs = statuses(rep)
    assert (3, 1, "cyclic-sylow", "info") in recs
    assert (1, 0, "cocycle", "pass") in recs and (2, 0, "cocycle", "pass") in recs


def test_main_theorem_order_argument():
    rep = verify_main_theorem(parse_graph("B4"), 5)
    assert rep.ok and {r.method for r in rep.records} == {"order-argument"}


def test_main_theorem_refusal():
    rep = verify_main_theorem(parse_graph("I2(5)"), 5)
    assert rep.exit_code == 2 and rep.records[0].status == "refused"
    assert "5-free" in rep.notes[0]


def test_main_theorem_caps():
    rep = verify_main_theorem(parse_graph("A4"), 5, Limits(group_cap=50))
    assert rep.exit_code == 3
    assert "desk scale" in rep.notes[0]
    rep = verify_main_theorem(parse_graph("E8"), 5)
    assert rep.exit_code == 3


def test_noncyclic_sylow_falls_back_to_cocycle():
    rep = verify_main_theorem(parse_graph("A5"), 3)
    assert any("not cyclic" in n for n in rep.notes)
    assert [r.method for r in rep.records] == ["cocycle"]
    assert rep.records[0].dim == 0  # A_6 is perfect


def test_twisted_examples():
    rep = verify_twisted_theorem(parse_graph("A4"), 5)
    dims = {(r.degree, r.method): r.dim for r in rep.records}
    assert dims[(0, "invariants")] == 0 and dims[(3, "cyclic-sylow")] == 1
    assert dims[(1, "cocycle")] == dims[(2, "cocycle")] == 0
    rep = verify_twisted_theorem(parse_graph("A2"), 3)
    dims = {(r.degree, r.method): r.dim for r in rep.records}
    assert dims[(0, "invariants")] == 0 and dims[(1, "cocycle")] == 1
    assert rep.ok


@pytest.mark.parametrize("g,p,dims_a", [("A2", 3, (1, 1, 1)), ("I2(5)", 5, (1, 1, 1)),
                                        ("B3", 5, (1, 0, 0))])
def test_sign_split(g, p, dims_a):
    rep = verify_sign_split(parse_graph(g), p, 2)
    assert rep.ok
    got = tuple(r.dim for r in rep.records if r.group.startswith("A_W"))
    assert got == dims_a
    if g == "A2":
        triv = tuple(r.dim for r in rep.records if r.group.startswith("W") and r.character == "trivial")
        sign = tuple(r.dim for r in rep.records if r.character == "sign")
        assert triv == (1, 0, 0) and sign == (0, 1, 1)
