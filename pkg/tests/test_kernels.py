import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from coxalt import _kernels_py, kernels
from coxalt.coxeter import parse_graph
from coxalt.groups import coxeter_relators
from coxalt.linalg import rank_dense_mod_p

compiled = pytest.importorskip("coxalt._kernels")
BACKENDS = [_kernels_py, compiled]


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("mod", BACKENDS, ids=["python", "compiled"])
@pytest.mark.parametrize("g,T,index", [("A3", [], 24), ("A3", [0, 1], 4), ("B3", [1, 2], 8), ("B3", [0, 1], 6),
                                       ("H3", [0], 60), ("A1", [], 2)])
def test_coset_enumeration_index(mod, g, T, index):
    M = parse_graph(g)
    table = mod.coset_enumerate(M.n, coxeter_relators(M), [[t] for t in T], 10000)
    assert table.shape == (index, M.n)
    # every generator acts as an involution
    for s in range(M.n):
        assert np.array_equal(table[table[:, s], s], np.arange(index))


@pytest.mark.parametrize("mod", BACKENDS, ids=["python", "compiled"])
def test_overflow(mod):
    M = parse_graph("I2(inf)")
    with pytest.raises(_kernels_py.EnumerationOverflow):
        mod.coset_enumerate(M.n, coxeter_relators(M), [], 50)


def test_backends_identical_tables():
    for g in ["A4", "D4", "F4", "B3+A1"]:
        M = parse_graph(g)
        a = _kernels_py.coset_enumerate(M.n, coxeter_relators(M), [[0]], 100000)
        b = compiled.coset_enumerate(M.n, coxeter_relators(M), [[0]], 100000)
        assert np.array_equal(a, b)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.sampled_from([2, 3, 5, 7]), st.integers(0, 2 ** 31))
def test_sparse_rank_agrees(rows, cols, p, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(rows, cols)) * (rng.random((rows, cols)) < 0.4)
    m = sp.csr_matrix(A)
    want = rank_dense_mod_p(A, p)
    for mod in BACKENDS:
        assert mod.sparse_rank_mod_p(m.indptr, m.indices, m.data, cols, p) == want


def test_sparse_rank_duplicates_and_unsorted():
    # (row, col) duplicates summing to zero mod p must cancel
    indptr = np.array([0, 3, 4])
    indices = np.array([2, 0, 2, 1])
    data = np.array([1, 1, 4, 3])
    for mod in BACKENDS:
        assert mod.sparse_rank_mod_p(indptr, indices, data, 3, 5) == 2
