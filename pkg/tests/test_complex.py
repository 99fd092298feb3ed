import itertools

import numpy as np
import pytest

from coxalt.complex import (
    ComplexTooLarge,
    act,
    build_coxeter_complex,
    fundamental_domain,
    glued_quotient_cochains,
    isotropy,
    orbit_decomposition,
    stabilizer,
)
from coxalt.groups import alternating_subgroup, parabolic_subgroup, whole_group
from tests.support import cx, group

CATALOG = ["A1", "A2", "B2", "I2(5)", "A3", "B3", "H3", "A4", "B4", "D4", "F4", "A1+A2"]


@pytest.mark.parametrize("g", CATALOG)
def test_counts_and_euler(g):
    X = cx(g)
    G = X.group
    n = G.rank
    assert X.euler_characteristic() == 1 + (-1) ** (n - 1)
    for k in range(n):
        want = sum(G.size // (group_of(G, T)) for T in itertools.combinations(range(n), n - k - 1))
        assert X.counts[k] == want


def group_of(G, T):
    return parabolic_subgroup(G, T).size


def test_b3_top_count():
    assert cx("B3").counts[-1] == 48


def test_simplices_are_cosets():
    X = cx("A3")
    G = X.group
    for k in range(X.rank):
        for idx in range(0, X.counts[k], 7):
            T, c = X.simplex(k, idx)
            elems = X.element_set(k, idx)
            x = int(elems[0])
            P = parabolic_subgroup(G, T)
            want = np.sort([G.multiply(x, int(h)) for h in P.members])
            assert np.array_equal(elems, want)
            assert X.simplex_id(T, c) == (k, idx)


def test_faces_are_subsets_and_action_equivariant():
    X = cx("B3")
    G = X.group
    for k in range(1, X.rank):
        for idx in range(X.counts[k]):
            big = set(X.element_set(k, idx).tolist())
            for f in X.faces[k][idx]:
                assert big <= set(X.element_set(k - 1, int(f)).tolist())
    for w in (1, 5, 17):
        perms = X.action_perms(w)
        for k in range(1, X.rank):
            assert np.array_equal(perms[k - 1][X.faces[k]], X.faces[k][perms[k]])
        assert act(X, w, 2, 3) == perms[2][3]


def test_vertices_sorted_and_typed():
    X = cx("A3")
    for k in range(X.rank):
        v = X.vertices[k]
        assert np.all(np.diff(v, axis=1) > 0) if k else True
    lines = X.export_text().splitlines()
    assert len(lines) == sum(X.counts)
    assert lines[0].startswith("0 ")


def test_fundamental_domain_meets_every_orbit_once():
    X = cx("H3")
    G = X.group
    orbits = orbit_decomposition(X, whole_group(G))
    fd = fundamental_domain(X)
    assert len(fd) == 2 ** X.rank - 1
    seen = {(k, int(orbits.orbit_of[k][i])) for k, i in fd}
    assert len(seen) == len(fd) == sum(orbits.orbit_counts())


@pytest.mark.parametrize("g", ["A3", "B3", "H3", "A4", "F4"])
def test_orbit_counts_of_alternating_subgroup(g):
    X = cx(g)
    n = X.rank
    counts = orbit_decomposition(X, alternating_subgroup(X.group)).orbit_counts()
    for k in range(n - 1):
        assert counts[k] == len(list(itertools.combinations(range(n), n - k - 1)))
    assert counts[-1] == 2


def test_stabilizer_and_isotropy():
    X = cx("B3")
    G = X.group
    A = alternating_subgroup(G)
    for idx in range(X.counts[1]):
        S = stabilizer(X, 1, idx)
        perms = [X.action_perms(int(h)) for h in S.members]
        assert all(p[1][idx] == idx for p in perms)
        assert isotropy(X, A, 1, idx).size * 2 == S.size


def test_complex_cap():
    with pytest.raises(ComplexTooLarge):
        build_coxeter_complex(group("A4"), simplex_cap=100)


def test_glued_quotient_shapes():
    dims, mats = glued_quotient_cochains(3)
    assert dims == [3, 3, 2]
    assert all(m.shape == (dims[k + 1], dims[k]) for k, m in enumerate(mats))
    assert not (mats[1] @ mats[0]).any()
