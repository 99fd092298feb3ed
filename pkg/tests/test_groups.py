import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxalt.coxeter import order, parse_graph
from coxalt.groups import (
    CapExceeded,
    CyclicSylowData,
    NonCyclicSylow,
    TrivialSylow,
    alternating_subgroup,
    conjugate_subgroup,
    coset_labels,
    coset_table,
    enumerate_group,
    generating_set,
    intersect,
    parabolic_subgroup,
    subgroup_generated,
    sylow_cyclic,
    whole_group,
)
from tests.support import group


@pytest.mark.parametrize("g", ["A1", "A2", "A3", "B3", "H3", "A4", "F4", "D5", "H4", "A2+I2(5)",
                               "A1+A1"])
def test_realization_order(g):
    G = group(g)
    assert G.size == order(G.matrix)


def test_e6_order():
    assert enumerate_group(parse_graph("E6")).size == 51840


def test_bfs_numbering_and_words():
    G = group("A3")
    assert G.word(0) == ()
    lengths = [len(G.word(a)) for a in range(G.size)]
    assert lengths == sorted(lengths)
    words = [G.word(a) for a in range(G.size)]
    assert len(set(words)) == G.size
    # lexicographically least reduced words within each length
    for a in range(G.size):
        assert G.from_word(G.word(a)) == a
    assert G.from_word((0, 0)) == 0
    assert max(lengths) == 6


def test_arithmetic():
    G = group("B3")
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b, c = (int(x) for x in rng.integers(0, G.size, 3))
        assert G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c))
        assert G.multiply(a, G.invert(a)) == 0
        assert G.sign(G.multiply(a, b)) == G.sign(a) * G.sign(b)
    assert G.element_order(G.from_word((0, 1))) == 4
    assert G.element_order(G.from_word((1, 2))) == 3


def test_alternating_subgroup():
    assert alternating_subgroup(group("A2")).size == 3
    A = alternating_subgroup(group("I2(5)"))
    assert A.size == 5
    st_ = group("I2(5)").from_word((0, 1))
    assert subgroup_generated(group("I2(5)"), [st_]).same_as(A)
    for g in ["A3", "H3", "A1+A1"]:
        G = group(g)
        A = alternating_subgroup(G)
        assert 2 * A.size == G.size
        assert np.all(G.signs[A.members] == 1)


def test_cap_and_infinite():
    with pytest.raises(CapExceeded) as e:
        enumerate_group(parse_graph("I2(inf)"), cap=1000)
    assert e.value.possibly_infinite
    assert "possibly infinite" in str(e.value)
    with pytest.raises(CapExceeded):
        enumerate_group(parse_graph("H4"), cap=1000)


@pytest.mark.parametrize("g", ["A3", "B3", "H3", "A4", "D4"])
def test_todd_coxeter_matches_realization(g):
    G = group(g)
    n = G.rank
    for T in [(), (0,), (1, 2), tuple(range(n - 1))]:
        tc = coset_table(G.matrix, T)
        _, from_group = coset_labels(G, T)
        assert np.array_equal(tc.action, from_group.action), T
        WT = enumerate_group(G.matrix.restrict(T)).size if T else 1
        assert tc.k * WT == G.size


def test_coset_cache(tmp_path):
    M = parse_graph("B3")
    a = coset_table(M, (0,), cache_dir=tmp_path)
    b = coset_table(M, (0,), cache_dir=tmp_path)
    assert list(tmp_path.iterdir())
    assert np.array_equal(a.action, b.action)
    G1 = enumerate_group(M, cache_dir=tmp_path)
    G2 = enumerate_group(M, cache_dir=tmp_path)
    assert np.array_equal(G1.gen_perm, G2.gen_perm)


def test_conjugation_and_intersection():
    G = group("A3")
    P = parabolic_subgroup(G, (0, 1))
    assert P.size == 6
    w = G.from_word((2,))
    C = conjugate_subgroup(G, P, w)
    assert C.size == 6
    for h in P.members[:6]:
        assert G.multiply(G.multiply(w, int(h)), G.invert(w)) in C
    assert intersect(P, alternating_subgroup(G)).size == 3


def test_generating_set_generates():
    for g in ["A4", "H3", "B3"]:
        G = group(g)
        for H in (whole_group(G), alternating_subgroup(G)):
            gens = generating_set(H)
            assert subgroup_generated(G, gens).same_as(H)
            assert len(gens) <= G.rank


def test_sylow_a5_normalizer():
    # A_5 at p = 5: normalizer of a 5-cycle is dihedral of order 10, acting by inversion
    data = sylow_cyclic(alternating_subgroup(group("A4")), 5)
    assert isinstance(data, CyclicSylowData)
    assert data.normalizer_order == 10
    assert data.q % 5 == 4
    assert set(int(x) for x in data.exponents) == {1, 4}


def test_sylow_sym3_and_twist():
    G = group("A2")
    W = whole_group(G)
    data = sylow_cyclic(W, 3, G.signs)
    assert data.normalizer_order == 6
    assert data.q == 2 and data.twist_sign == -1
    I5 = group("I2(5)")
    assert sylow_cyclic(whole_group(I5), 5).normalizer_order == 10
    assert sylow_cyclic(whole_group(I5), 5).generator in alternating_subgroup(I5)


def test_sylow_edge_cases():
    assert isinstance(sylow_cyclic(whole_group(group("B3")), 5), TrivialSylow)
    with pytest.raises(NonCyclicSylow):
        sylow_cyclic(whole_group(group("A5")), 3)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["A3", "B3", "A2+A1", "I2(6)"]), st.data())
def test_left_right_actions_commute(g, data):
    G = group(g)
    a = data.draw(st.integers(0, G.size - 1))
    b = data.draw(st.integers(0, G.size - 1))
    L, R = G.left_mult_perm(a), G.right_mult_perm(b)
    assert np.array_equal(L[R], R[L])
    assert L[0] == a and R[0] == b
