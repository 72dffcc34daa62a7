from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from istab.braid import algebra_T_i, braid_T_i, braid_T_w, check_intertwining, conjugated_E
from istab.gcb import based_irreducible
from istab.iqg import a_vec, c_vec, icontext, t_wbullet
from istab.rootdata import admissible_pair, build_datum
from istab.scalar import ONE

MODULES = [("A", 1, (2,)), ("A", 2, (1, 1)), ("A", 3, (0, 1, 0)), ("B", 2, (1, 1)), ("B", 3, (1, 0, 0)),
           ("C", 3, (0, 1, 0)), ("D", 4, (1, 0, 0, 0)), ("F4", 4, (0, 0, 0, 1))]


@lru_cache(maxsize=None)
def gmod(series, n, lam):
    return based_irreducible(build_datum(series, n), lam).gmod


def _braid_words(d, i, j):
    m = {0: 2, 1: 3, 2: 4, 3: 6}[d.a(i, j) * d.a(j, i)]
    return ((i, j) * m)[:m], ((j, i) * m)[:m]


@pytest.mark.parametrize("series,n,lam", MODULES)
def test_braid_relations(series, n, lam):
    M = gmod(series, n, lam)
    d = M.datum
    for i in d.nodes:
        for j in d.nodes:
            if i < j:
                w1, w2 = _braid_words(d, i, j)
                A, B = braid_T_w(M, w1), braid_T_w(M, w2)
                for b in range(M.dim):
                    assert A({b: ONE}) == B({b: ONE})


@given(st.sampled_from(MODULES[:7]), st.data())
def test_inverse_and_weight_transport(mod, data):
    M = gmod(*mod)
    d = M.datum
    i = data.draw(st.sampled_from(d.nodes))
    b = data.draw(st.integers(0, M.dim - 1))
    T, Ti = braid_T_i(M, i), braid_T_i(M, i, inverse=True)
    v = {b: ONE}
    assert Ti(T(v)) == v and T(Ti(v)) == v
    img = T(v)
    assert img
    assert {M.weights[k] for k in img} == {d.s(i, M.weights[b])}


@given(st.sampled_from(MODULES[:7]), st.data())
def test_intertwining_oracle(mod, data):
    M = gmod(*mod)
    i = data.draw(st.sampled_from(M.datum.nodes))
    b = data.draw(st.integers(0, M.dim - 1))
    assert check_intertwining(M, i, [{b: ONE}]) == []


def test_oracle_detects_wrong_convention():
    # T_i(E_i) = -F_i K_i; with the opposite sign the oracle must object
    M = gmod("A", 1, (2,))
    T = braid_T_i(M, 0)
    good = algebra_T_i(M, 0, "E", 0)
    lhs = T(M.e(0, {2: ONE}))
    assert lhs == good(T({2: ONE}))
    wrong = {k: -x for k, x in good(T({2: ONE})).items()}
    assert lhs != wrong


def test_conjugated_E_matches_definition():
    M = gmod("B", 2, (1, 0))
    w = (1,)
    mat = conjugated_E(M, w, 0)
    T, Tinv = braid_T_w(M, w), braid_T_w(M, w, inverse=True)
    for b in range(M.dim):
        assert mat[b] == T(M.e(0, Tinv({b: ONE})))


def test_anchor_aii():
    p = admissible_pair("AII")
    V = based_irreducible(p.datum, p.varpi)
    assert t_wbullet(icontext(p, V))(a_vec(V, 4, 2)) == a_vec(V, 3, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_anchor_bii(n):
    p = admissible_pair("BII", n)
    V = based_irreducible(p.datum, p.datum.varpi(0))
    assert t_wbullet(icontext(p, V))(c_vec(V, -2)) == c_vec(V, 2)
