import pytest
from hypothesis import given
from hypothesis import strategies as st

from istab.crystal import (IllDefinedTransport, crystal_pure_index, epsilon_filter, highest_element,
                           is_isomorphic, parabolic_by_weight, parabolic_component, stability_morphism,
                           tensor_crystal, transport_maps)
from istab.gcb import based_irreducible
from istab.rootdata import admissible_pair, build_datum
from istab.stability import RANKS, small_fundamental

PAIRS = [admissible_pair(k, n) for k in RANKS for n in RANKS[k]]


def crystal(series, n, lam):
    return based_irreducible(build_datum(series, n), lam).crystal


VECTOR = [("A", 2, (1, 0)), ("B", 2, (1, 0)), ("C", 3, (1, 0, 0)), ("D", 4, (1, 0, 0, 0))]


@pytest.mark.parametrize("vec", VECTOR)
def test_tensor_associative(vec):
    B = crystal(*vec)
    L = tensor_crystal(tensor_crystal(B, B), B)
    R = tensor_crystal(B, tensor_crystal(B, B))
    assert len(L) == len(R) == len(B) ** 3
    for i in B.datum.nodes:
        assert L.farrows[i] == R.farrows[i]     # same index convention (a*n+b)*n+c
        for b in range(len(L)):
            assert L.eps(i, b) == R.eps(i, b) and L.phi(i, b) == R.phi(i, b)


@pytest.mark.parametrize("vec", VECTOR)
def test_tensor_seminormal(vec):
    B = crystal(*vec)
    T = tensor_crystal(B, tensor_crystal(B, B))
    assert T.check_invariants() == []
    for i in B.datum.nodes:   # the E~ rule is the inverse of the F~ rule
        assert T.rule_e[i] == T.earrows[i]


@pytest.mark.parametrize("mod", [("A", 3, (0, 1, 0)), ("B", 3, (1, 0, 0)), ("C", 3, (0, 1, 0)),
                                 ("F4", 4, (0, 0, 0, 1)), ("A1xA1", 2, (1, 1))])
def test_module_crystals_are_crystals(mod):
    B = crystal(*mod)
    assert B.check_invariants() == []
    assert len(B.hw_elements()) == 1


def test_isomorphism_detects_difference():
    A = crystal("A", 2, (1, 0))
    B = crystal("A", 2, (0, 1))
    assert is_isomorphic(A, A) is not None
    assert is_isomorphic(A, B) is None


def _lam_choices(pair):
    d = pair.datum
    w = small_fundamental(pair)
    return [w, d.scale(2, w), pair.varpi] + [d.varpi(i) for i in d.nodes if d.weyl_dimension(d.varpi(i)) <= 60]


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.label())
def test_parabolic_component_characterization(pair):
    """BFS along black arrows from b_lam equals the weight filter wt >= w_bullet lam."""
    d = pair.datum
    for lam in _lam_choices(pair):
        B = based_irreducible(d, lam).crystal
        top = highest_element(B, lam)
        assert parabolic_component(B, top, pair.black) == parabolic_by_weight(B, pair, lam)


def _alt_words(B, start, subset):
    """Raising words found by depth-first search, largest node first."""
    words = {start: ()}
    stack = [start]
    while stack:
        x = stack.pop()
        for j in sorted(subset):
            y = B.e(j, x)
            if y is not None and y not in words:
                words[y] = (j,) + words[x]
                stack.append(y)
    return words


def _transport_cases(pair):
    d = pair.datum
    w = small_fundamental(pair)
    out = []
    for lam in (d.zero(), w):
        for nu in (w, pair.varpi):
            big = d.add(lam, pair.tau_weight(nu))
            if d.weyl_dimension(big) <= 400:
                out.append((lam, nu, big))
    return out


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.label())
def test_transport_laws(pair):
    d = pair.datum
    for lam, nu, big in _transport_cases(pair):
        Bl = based_irreducible(d, lam).crystal
        Bb = based_irreducible(d, big).crystal
        iota, pi = transport_maps(pair, Bl, lam, Bb, big)
        lo = Bl.by_weight(d.act(pair.wbullet, lam))[0]
        lo_big = Bb.by_weight(d.act(pair.wbullet, big))[0]
        shift = pair.wtau(nu)
        assert iota[lo] == lo_big
        for b, c in iota.items():
            assert pi[c] == b                                    # pi o iota = id
            assert Bb.wt(c) == d.add(Bl.wt(b), shift)            # weight shift
            for j in pair.black:
                assert Bb.phi(j, c) == Bl.phi(j, b)
                assert Bb.eps(j, c) == Bl.eps(j, b) + nu[j]      # the epsilon shift
                e = Bl.e(j, b)
                if e is not None:
                    assert Bb.e(j, c) == iota[e]
        # a second, independently chosen family of raising words gives the same iota
        for b, w in _alt_words(Bl, lo, pair.black).items():
            assert Bb.apply_word(w, lo_big, raising=True) == iota[b]
        # epsilon-filter correspondence
        for mu in (d.zero(), small_fundamental(pair)):
            C = epsilon_filter(Bl, set(iota), mu)
            Cb = epsilon_filter(Bb, set(iota.values()), d.add(mu, nu))
            assert {iota[b] for b in C} == Cb


def test_transport_rejects_inconsistent_data():
    pair = admissible_pair("AII")
    d = pair.datum
    lam = d.varpi(0)
    Bl = based_irreducible(d, lam).crystal
    trivial = based_irreducible(d, d.zero()).crystal
    with pytest.raises(IllDefinedTransport):
        transport_maps(pair, Bl, lam, trivial, d.zero())


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.label())
def test_highest_weight_elements_of_extremal_part(pair):
    """hw elements of B(w lam, mu) are b (x) b_mu with b in the epsilon filter."""
    d = pair.datum
    w = small_fundamental(pair)
    lam = mu = w
    from istab.stability import _extremal_sub
    L, R = based_irreducible(d, lam), based_irreducible(d, mu)
    Bl, Bm = L.crystal, R.crystal
    top = highest_element(Bm, mu)
    S = _extremal_sub(pair, L, R, lam)
    hw = {S.embed[b] for b in S.crystal.hw_elements()}
    C = parabolic_component(Bl, highest_element(Bl, lam), pair.black)
    want = {b * len(Bm) + top for b in epsilon_filter(Bl, C, mu)}
    assert hw == want


@given(st.sampled_from(PAIRS), st.data())
def test_stability_morphism_top_and_count(pair, data):
    d = pair.datum
    w = small_fundamental(pair)
    lam = data.draw(st.sampled_from([d.zero(), w]))
    mu = data.draw(st.sampled_from([d.zero(), w]))
    nu = w
    if pair.kind == "FII":
        lam = mu = d.zero()
    big = d.add(lam, pair.tau_weight(nu))
    B = {x: based_irreducible(d, x).crystal for x in {big, d.add(mu, nu), pair.theta_sum(nu), lam, mu}}
    src = tensor_crystal(B[big], B[d.add(mu, nu)])
    tgt = tensor_crystal(tensor_crystal(B[pair.theta_sum(nu)], B[lam]), B[mu])
    phi, hws = stability_morphism(pair, lam, mu, nu, B[big], B[d.add(mu, nu)], src, B[pair.theta_sum(nu)],
                                  B[lam], B[mu], tgt)
    ttop = highest_element(B[d.add(mu, nu)], d.add(mu, nu))
    b0 = highest_element(B[big], d.act(pair.wbullet, big)) * len(B[d.add(mu, nu)]) + ttop
    assert phi[b0] == crystal_pure_index(tgt, (highest_element(B[pair.theta_sum(nu)], pair.theta_sum(nu)),
                                               highest_element(B[lam], d.act(pair.wbullet, lam)),
                                               highest_element(B[mu], mu)))
    C = parabolic_component(B[lam], highest_element(B[lam], lam), pair.black)
    assert sum(1 for h in hws if phi[h] is not None) == len(epsilon_filter(B[lam], C, mu))
    # phi is a strict crystal morphism where nonzero
    for b, c in phi.items():
        if c is None:
            continue
        assert tgt.wt(c) == src.wt(b)
        for i in d.nodes:
            f = src.f(i, b)
            if f is not None and phi.get(f) is not None:
                assert tgt.f(i, c) == phi[f]


def test_nu_zero_is_identity():
    pair = admissible_pair("AIV", 2)
    d = pair.datum
    lam = mu = d.varpi(0)
    z = d.zero()
    Bl = based_irreducible(d, lam).crystal
    Bz = based_irreducible(d, z).crystal
    Bm = based_irreducible(d, mu).crystal
    src = tensor_crystal(Bl, Bm)
    tgt = tensor_crystal(tensor_crystal(Bz, Bl), Bm)
    phi, _ = stability_morphism(pair, lam, mu, z, Bl, Bm, src, Bz, Bl, Bm, tgt)
    assert all(c == b for b, c in phi.items())
