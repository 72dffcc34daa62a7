from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from istab.linalg import modp_rank
from istab.rep import (SizeBoundExceeded, contravariant_form, irreducible, lowest_weight_module, pure_tensor,
                       set_size_bound, tensor, trivial_module)
from istab.rootdata import NotDominant, build_datum
from istab.scalar import ONE, qpow

SMALL = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("D", 4), ("A1xA1", 2)]


@lru_cache(maxsize=None)
def module(series, n, lam):
    return irreducible(build_datum(series, n), lam)


@lru_cache(maxsize=None)
def relation_failures(series, n, lam):
    return module(series, n, lam).check_relations()


@st.composite
def small_weight(draw, limit=40):
    series, n = draw(st.sampled_from(SMALL))
    d = build_datum(series, n)
    lam = tuple(draw(st.integers(0, 3)) for _ in range(d.rank))
    if d.weyl_dimension(lam) > limit:
        lam = tuple(min(x, 1) for x in lam)
    if d.weyl_dimension(lam) > limit:
        lam = d.zero()
    return series, n, lam


@given(small_weight())
def test_relations_hold(w):
    assert relation_failures(*w) == []


@given(small_weight())
def test_dimension_matches_weyl(w):
    series, n, lam = w
    assert module(*w).dim == build_datum(series, n).weyl_dimension(lam)


@given(small_weight())
def test_weight_multiplicities_weyl_invariant(w):
    series, n, lam = w
    d = build_datum(series, n)
    M = module(*w)
    for wt, idx in M.by_weight.items():
        for i in d.nodes:
            assert len(M.by_weight.get(d.s(i, wt), [])) == len(idx)


@given(small_weight(limit=30))
def test_contravariant_form_nondegenerate(w):
    M = module(*w)
    for wt, idx in M.by_weight.items():
        gram = [{t: contravariant_form(M, {a: ONE}, {b: ONE}) for t, b in enumerate(idx)} for a in idx]
        assert modp_rank(gram) == len(idx)


@pytest.mark.parametrize("series,n,l1,l2", [("A", 1, (1,), (2,)), ("A", 2, (1, 0), (0, 1)),
                                            ("B", 2, (1, 0), (0, 1)), ("A1xA1", 2, (1, 0), (0, 1))])
def test_tensor_relations(series, n, l1, l2):
    T = tensor(module(series, n, l1), module(series, n, l2))
    assert T.check_relations() == []


def test_trivial_and_lowest():
    d = build_datum("A", 2)
    assert trivial_module(d).dim == 1
    M, k = lowest_weight_module(d, d.varpi(0))
    assert M.weights[k] == (-1, 0)
    with pytest.raises(NotDominant):
        irreducible(d, (-1, 0))


def test_size_bound():
    d = build_datum("F4")
    old = set_size_bound(20)
    try:
        with pytest.raises(SizeBoundExceeded):
            irreducible(d, d.varpi(3))
    finally:
        set_size_bound(old)


def test_coproduct_convention():
    # E(v (x) w) = Ev (x) w + K v (x) E w on A1: V(1) (x) V(1)
    M = module("A", 1, (1,))
    T = tensor(M, M)
    lo = M.f(0, {M.top: ONE})
    low = next(iter(lo))
    v = pure_tensor(T, [{low: ONE}, {low: ONE}])
    got = T.e(0, v)
    want = pure_tensor(T, [{M.top: ONE}, {low: ONE}])
    for k, x in pure_tensor(T, [{low: ONE}, {M.top: ONE}]).items():
        want[k] = want.get(k, 0) + x * qpow(-1)
    assert got == want
