import pytest
from hypothesis import given
from hypothesis import strategies as st

from istab.rootdata import (NotDominant, UnsupportedType, admissible_pair, build_datum,
                            check_pair_invariants, format_weight, integer_kernel, parse_weight,
                            theta_table)

PAIRS = [("AI", None), ("AII", None), ("AIII", None), ("AIV", 2), ("AIV", 3), ("BII", 2), ("BII", 3),
         ("CII", 3), ("CII", 4), ("DII", 4), ("DII", 5), ("FII", None)]
SERIES = [("A", 1), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("F4", 4), ("A1xA1", 2)]


def test_cartan_conventions():
    b3 = build_datum("B", 3)
    assert b3.sym == (2, 2, 1)          # short root at node n
    c3 = build_datum("C", 3)
    assert c3.sym == (1, 1, 2)          # long root at node n
    assert b3.a(2, 1) == -2 and c3.a(1, 2) == -2


@pytest.mark.parametrize("series,n,lam,dim", [
    ("A", 2, (1, 0), 3), ("A", 3, (0, 1, 0), 6), ("B", 2, (1, 0), 5), ("B", 2, (0, 1), 4),
    ("C", 3, (0, 1, 0), 14), ("D", 4, (1, 0, 0, 0), 8), ("F4", 4, (0, 0, 0, 1), 26),
    ("F4", 4, (1, 0, 0, 0), 52)])
def test_weyl_dimension_known_values(series, n, lam, dim):
    assert build_datum(series, n).weyl_dimension(lam) == dim


def test_longest_element_maps_to_negative_dual():
    d = build_datum("A", 2)
    w0 = d.longest_word()
    assert tuple(-x for x in d.act(w0, d.varpi(0))) == d.varpi(1)
    f = build_datum("F4")
    assert tuple(-x for x in f.act(f.longest_word(), f.varpi(3))) == f.varpi(3)
    assert len(f.longest_word()) == 24


@pytest.mark.parametrize("series,n", SERIES)
def test_reflections_are_involutions_and_braid(series, n):
    d = build_datum(series, n)
    lam = tuple(range(1, n + 1))
    for i in d.nodes:
        assert d.s(i, d.s(i, lam)) == lam
        for j in d.nodes:
            if i < j:
                m = {0: 2, 1: 3, 2: 4, 3: 6}[d.a(i, j) * d.a(j, i)]
                assert d.act(((i, j) * m)[:m], lam) == d.act(((j, i) * m)[:m], lam)


@pytest.mark.parametrize("kind,n", PAIRS)
def test_pair_invariants(kind, n):
    p = admissible_pair(kind, n)
    for name, ok, wit in check_pair_invariants(p):
        assert ok, (name, wit)
    assert all(k == 0 for k in p.kappa.values())
    d = p.datum
    for j in p.black:   # w_bullet squared fixes the black roots
        assert d.act(p.wbullet + p.wbullet, d.alpha(j)) == d.alpha(j)


def test_admissible_errors():
    with pytest.raises(UnsupportedType):
        admissible_pair("AIV", 1)
    with pytest.raises(UnsupportedType):
        admissible_pair("XY")
    with pytest.raises(NotDominant):
        admissible_pair("AI").theta_weight((-1,))


def test_y_imath_examples():
    p = admissible_pair("AIII")
    (h,) = p.y_imath_basis()
    assert h in ((1, -1), (-1, 1))
    p = admissible_pair("AII")
    Y = p.y_imath_basis()
    assert len(Y) == 2
    for h in Y:   # killed by h + w_bullet tau h
        assert p.datum.add(h, p.wtau_co(h)) == (0, 0, 0)


def test_theta_tables():
    assert theta_table(admissible_pair("AI")) == {1: 1}
    assert theta_table(admissible_pair("AII")) == {1: 1, 2: 2, 3: 1}
    t = theta_table(admissible_pair("BII", 3))
    assert t[1] == 2 and t[2] == 2


@pytest.mark.parametrize("kind,n", PAIRS)
@given(data=st.data())
def test_theta_sum_dominant(kind, n, data):
    p = admissible_pair(kind, n)
    nu = tuple(data.draw(st.integers(0, 4)) for _ in range(p.datum.rank))
    s = p.theta_sum(nu)
    assert p.datum.is_dominant(s)
    m = p.theta_weight(nu)
    assert p.datum.scale(m, p.varpi) == s


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_integer_kernel(rows):
    ker = integer_kernel(rows, 4)
    for v in ker:
        assert all(sum(r[k] * v[k] for k in range(4)) == 0 for r in rows)
    # the rank over Q matches
    import numpy as np
    assert len(ker) == 4 - np.linalg.matrix_rank(np.array(rows, dtype=float))


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_weight_text_roundtrip(lam):
    d = build_datum("D", 4)
    lam = tuple(lam)
    txt = format_weight(lam)
    if all(c >= 0 for c in lam):
        assert parse_weight(txt, d) == lam
