import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxalt.coxeter import (
    APPENDIX_ROWS,
    INF,
    UNKNOWN,
    CoxeterMatrix,
    GraphSyntaxError,
    ReducibleError,
    catalog_matrix,
    catalog_types,
    classify,
    component_types,
    components,
    format_graph,
    is_finite,
    is_p_free,
    make_type,
    name,
    order,
    parse_graph,
    scan_low_rank_p_torsion,
    type_order,
    type_rule,
    validate,
)


def test_parse_catalog_names():
    assert parse_graph("A3").entries == ((1, 3, 2), (3, 1, 3), (2, 3, 1))
    assert parse_graph("I2(7)").m(0, 1) == 7
    assert parse_graph("Dinf") == parse_graph("I2(inf)")
    assert parse_graph("I2(inf)").m(0, 1) == INF


def test_parse_explicit_and_union():
    M = parse_graph(" n=3 ; 1-2:5 ; 2-3 ")
    assert classify(M).name == "H3"
    U = parse_graph("A2+I2(5)")
    assert U.n == 4 and [t.name for t in component_types(U)] == ["A2", "I2(5)"]
    assert order(U) == 6 * 10


@pytest.mark.parametrize("text", ["", "X5", "n=2;1-2:2", "n=2;1-2;1-2", "n=2;1-3", "A2+", "I2(2)",
                                  "n=2;1-2:x", "D3"])
def test_parse_errors(text):
    with pytest.raises(GraphSyntaxError) as e:
        parse_graph(text)
    assert e.value.position >= 0


def test_validate_reports_violations():
    bad = CoxeterMatrix.from_rows([[1, 1], [2, 1]])
    msgs = validate(bad)
    assert any("asymmetric" in m for m in msgs)
    assert any("off-diagonal" in m for m in msgs)
    assert validate(CoxeterMatrix.from_rows([[2, 3], [3, 1]]))[0].startswith("diagonal")
    assert validate(parse_graph("E8")) == []


@pytest.mark.parametrize("t", catalog_types(), ids=lambda t: t.name)
def test_classify_catalog_roundtrip(t):
    M = catalog_matrix(t)
    got = classify(M)
    if t.family == "I2" and t.param in (3, 4):
        assert got.name == {3: "A2", 4: "B2"}[t.param]
    else:
        assert got == t
    assert type_order(t) == order(M)


def test_classify_examples():
    assert classify(parse_graph("n=3;1-2:5;2-3")).name == "H3"
    assert classify(parse_graph("n=3;1-2;2-3;1-3")) == UNKNOWN  # affine A2
    assert not is_finite(parse_graph("n=3;1-2;2-3;1-3"))
    with pytest.raises(ReducibleError):
        classify(parse_graph("A1+A1"))


def test_orders_from_appendix():
    assert order(parse_graph("H3")) == 120
    assert order(parse_graph("E6")) == 51840
    assert order(parse_graph("H4")) == 14400
    assert order(parse_graph("B4")) == 2 ** 4 * math.factorial(4)
    assert order(parse_graph("D5")) == 2 ** 4 * math.factorial(5)
    assert order(parse_graph("I2(inf)")) == INF


def test_p_freeness():
    assert not is_p_free(parse_graph("H3"), 5)
    assert is_p_free(parse_graph("A4"), 5)
    assert not is_p_free(parse_graph("A2"), 3)
    assert is_p_free(parse_graph("B2"), 3)
    assert is_p_free(parse_graph("I2(inf)"), 3)
    with pytest.raises(ValueError):
        is_p_free(parse_graph("A2"), 2)


def test_appendix_rows_literal():
    # transcribed independently from the published table
    assert len(APPENDIX_ROWS) == 12
    assert APPENDIX_ROWS[0] == ("A_1", "2", "p>=3")
    assert APPENDIX_ROWS[9] == ("H_3", "2^3*3*5", "p>=7")
    assert APPENDIX_ROWS[10] == ("H_4", "2^6*3^2*5^2", "p>=7")
    assert APPENDIX_ROWS[11] == ("I_2(m) (m>=3)", "2m", "p∤m")
    assert str(type_rule(make_type("I2", 9))) == "p∤9"


def test_p_free_rule_matches_matrix():
    for t in catalog_types():
        M = catalog_matrix(t)
        for p in (3, 5, 7, 11, 13):
            assert type_rule(t).holds(p) == is_p_free(M, p), (t.name, p)


def test_scan():
    for p in (5, 7, 11):
        rep = scan_low_rank_p_torsion(p)
        assert rep.ok
    rep = scan_low_rank_p_torsion(5)
    assert "H3" in rep.excluded
    names11 = {r[0] for r in scan_low_rank_p_torsion(11).rows}
    assert {"E8", "F4", "H4"} <= names11
    with pytest.raises(ValueError):
        scan_low_rank_p_torsion(3)


def test_name_and_format_roundtrip():
    for g in ["A4", "B3", "A2+I2(5)", "n=3;1-2;2-3;1-3"]:
        M = parse_graph(g)
        assert parse_graph(format_graph(M)) == M
        assert parse_graph(name(M)) == M


@st.composite
def coxeter_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    labels = st.sampled_from([2, 2, 2, 3, 3, 4, 5, 6, INF])
    edges = {(i, j): draw(labels) for i in range(n) for j in range(i + 1, n)}
    return CoxeterMatrix.from_edges(n, {k: v for k, v in edges.items() if v != 2})


@settings(max_examples=60, deadline=None)
@given(coxeter_matrices(), st.data())
def test_relabeling_invariance(M, data):
    perm = data.draw(st.permutations(range(M.n)))
    R = M.relabel(perm)
    assert validate(R) == []
    assert sorted(t.name for t in component_types(R)) == sorted(t.name for t in component_types(M))
    assert order(R) == order(M)
    for p in (3, 5, 7):
        assert is_p_free(R, p) == is_p_free(M, p)
    assert parse_graph(format_graph(M)) == M
    assert sorted(len(c.index_map) for c in components(R)) == sorted(
        len(c.index_map) for c in components(M))
