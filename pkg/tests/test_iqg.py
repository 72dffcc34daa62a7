from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import nonzero_laurent
from istab.gcb import based_irreducible, based_tensor, crystal_map_of
from istab.iqg import (IModuleContext, WrongDimension, _y_from_intertwining, check_context, cii_embedding,
                       cii_w0_prime, g_functional, generators, iact, icontext, identity_ihom,
                       is_based_ihom, k_isomorphism, trivial_context, trivial_submodule, w0_closed_form,
                       ximath_class)
from istab.rootdata import admissible_pair
from istab.scalar import ONE, RationalFn, qpow
from istab.stability import RANKS, _extremal_sub, small_fundamental

PAIRS = [admissible_pair(k, n) for k in RANKS for n in RANKS[k]]
MINIMAL = [admissible_pair(k, RANKS[k][0]) for k in RANKS]


@lru_cache(maxsize=None)
def contexts():
    out = []
    for p in PAIRS:
        out.append(icontext(p, based_irreducible(p.datum, p.varpi)))
    for k in ("AI", "AIII", "AIV", "BII"):
        p = admissible_pair(k, RANKS[k][0])
        w = small_fundamental(p)
        V = based_irreducible(p.datum, w)
        out.append(icontext(p, based_tensor(V, V)))
        out.append(icontext(p, _extremal_sub(p, V, V, w)))
    return tuple(out)


def test_context_paths_and_checks():
    for ctx in contexts():
        assert ctx.path in ("spanning", "linear", "restricted")
        assert check_context(ctx) == [], ctx.module.name


@st.composite
def ctx_and_vector(draw):
    ctx = draw(st.sampled_from(contexts()))
    keys = draw(st.lists(st.integers(0, ctx.dim - 1), min_size=1, max_size=4, unique=True))
    v = {k: RationalFn(draw(nonzero_laurent)) for k in keys}
    return ctx, v


@given(ctx_and_vector(), nonzero_laurent)
def test_ibar_involutive_and_antilinear(cv, c):
    ctx, v = cv
    c = RationalFn(c)
    assert ctx.ibar(ctx.ibar(v)) == v
    cv_ = {k: c * x for k, x in v.items()}
    assert ctx.ibar(cv_) == {k: c.bar() * x for k, x in ctx.ibar(v).items()}


@given(ctx_and_vector(), st.data())
def test_ibar_intertwines(cv, data):
    ctx, v = cv
    gen, i = data.draw(st.sampled_from(generators(ctx.pair)))
    assert ctx.ibar(iact(ctx, gen, i, v)) == iact(ctx, gen, i, ctx.ibar(v))


@pytest.mark.parametrize("kind", ["AI", "AII", "AIII", "AIV", "BII"])
def test_spanning_and_linear_routes_agree(kind):
    p = admissible_pair(kind, RANKS[kind][0])
    V = based_irreducible(p.datum, p.varpi)
    ctx = icontext(p, V)
    assert ctx.path == "spanning"
    fresh = IModuleContext(p, V, None, None, [{V.top: ONE}])
    assert _y_from_intertwining(fresh, [{V.top: ONE}]) == ctx.Y


@pytest.mark.parametrize("kind", ["AI", "AIV", "BII"])
def test_restricted_route_agrees(kind):
    p = admissible_pair(kind, RANKS[kind][0])
    w = small_fundamental(p)
    V = based_irreducible(p.datum, w)
    S = _extremal_sub(p, V, V, w)
    ctx = icontext(p, S)
    parent = icontext(p, S.parent)
    assert ctx.Y == [S.from_parent(parent.Y[b]) for b in S.embed]


def test_corrupted_ibar_is_caught():
    p = admissible_pair("AIV", 2)
    ctx = icontext(p, based_irreducible(p.datum, p.varpi))
    Y = [dict(col) for col in ctx.Y]
    k = next(b for b in range(len(Y)) if len(Y[b]) > 1)
    off = next(r for r in Y[k] if r != k)
    Y[k][off] = Y[k][off] + qpow(-1)
    bad = check_context(IModuleContext(p, ctx.module, Y, "tampered"))
    assert bad and {x[0] for x in bad} & {"icb", "involution", "intertwine"}


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.label())
@given(data=st.data())
def test_ximath_class_is_coset(pair, data):
    d = pair.datum
    wt = tuple(data.draw(st.integers(-3, 3)) for _ in d.nodes)
    k = data.draw(st.sampled_from(d.nodes))
    c = data.draw(st.integers(-2, 2))
    shift = d.scale(c, d.add(d.varpi(k), pair.wtau(d.varpi(k))))
    assert ximath_class(pair, wt) == ximath_class(pair, d.add(wt, shift))


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.label())
def test_w0_is_invariant(pair):
    V = based_irreducible(pair.datum, pair.varpi)
    ctx = icontext(pair, V)
    w0 = trivial_submodule(ctx)
    assert w0[V.top] == ONE
    for gen, i in generators(pair):
        if gen == "B" and i in pair.black:
            continue
        assert iact(ctx, gen, i, w0) == {}
    for j in pair.black:
        assert V.gmod.f(j, w0) == {}


def test_w0_closed_forms():
    for pair in PAIRS:
        if pair.kind in ("AI", "AIII", "AIV", "FII"):
            continue
        if pair.kind == "CII":
            V2, T, f = cii_embedding(pair)
            w0 = trivial_submodule(icontext(pair, V2))
            assert T.to_u(f(w0)) == w0_closed_form(pair)
            wp = cii_w0_prime(pair)
            assert all(not T.umod.act(g, j, wp) for g in "EF" for j in pair.black)
        else:
            ctx = icontext(pair, based_irreducible(pair.datum, pair.varpi))
            assert trivial_submodule(ctx) == w0_closed_form(pair)


def test_w0_fii_matches_with_zero_labels_interchanged():
    pair = admissible_pair("FII")
    w0 = trivial_submodule(icontext(pair, based_irreducible(pair.datum, pair.varpi)))
    assert w0 == w0_closed_form(pair, swap_zero_labels=True)


@pytest.mark.xfail(strict=True, reason="printed FII form does not survive E_3 with the stated zero-weight labels")
def test_w0_fii_literal_closed_form():
    pair = admissible_pair("FII")
    w0 = trivial_submodule(icontext(pair, based_irreducible(pair.datum, pair.varpi)))
    assert w0 == w0_closed_form(pair)


def test_fii_literal_form_not_invariant():
    pair = admissible_pair("FII")
    ctx = icontext(pair, based_irreducible(pair.datum, pair.varpi))
    lit = w0_closed_form(pair)
    assert ctx.module.gmod.e(2, lit) != {}


def test_wrong_dimension():
    p = admissible_pair("AI")
    ctx = icontext(p, based_irreducible(p.datum, (1,)))
    with pytest.raises(WrongDimension):
        trivial_submodule(ctx)


@pytest.mark.parametrize("pair", MINIMAL, ids=lambda p: p.label())
def test_g1_based(pair):
    g = g_functional(pair, 1)
    src = icontext(pair, g.source)
    assert g({g.source.top: ONE}) == {g.target.top: ONE}
    assert is_based_ihom(g, src, trivial_context(pair)).ok
    cm = crystal_map_of(g)
    assert [b for b, c in cm.items() if c is not None] == [g.source.top]


@pytest.mark.parametrize("kind,n", [("AI", None), ("AIII", None), ("AIV", 2), ("AIV", 3)])
def test_k_isomorphisms(kind, n):
    p = admissible_pair(kind, n)
    f, s, t = k_isomorphism(p)
    assert is_based_ihom(f, s, t).ok
    if s is t:
        for b in range(s.dim):
            assert f(f({b: ONE})) == {b: ONE}


def test_identity_is_based_ihom():
    p = admissible_pair("BII", 2)
    ctx = icontext(p, based_irreducible(p.datum, p.varpi))
    assert is_based_ihom(identity_ihom(ctx), ctx, ctx).ok


def test_scaled_identity_is_rejected():
    p = admissible_pair("BII", 2)
    ctx = icontext(p, based_irreducible(p.datum, p.varpi))
    f = identity_ihom(ctx)
    f.cols = {b: {b: qpow(1)} for b in f.cols}
    rep = is_based_ihom(f, ctx, ctx)
    assert not rep.ok and "lattice" in rep.failures()
