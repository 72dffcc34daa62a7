"""The projection pi^i: V(w(lam + tau nu), mu + nu) -> V(w lam, mu) and its verification.

f is the based U-map lifting the crystal morphism
b (x) b_{mu+nu} -> b_theta (x) pi(b) (x) b_mu, and
pi^i = (g_m (x) id) o f with m the multiple of varpi in nu + w tau nu.
"""
import time
from concurrent.futures import ThreadPoolExecutor

from .crystal import highest_element, stability_morphism
from .gcb import (HypothesisFailed, ModuleMap, based_irreducible, based_tensor,
                  submodule_generated, suff_cond_lift)
from .iqg import g_functional, icontext, is_based_ihom
from .linalg import ModpEchelon
from .rep import SizeBoundExceeded, vadd
from .rootdata import KINDS, admissible_pair, format_weight
from .scalar import ONE, qpow


class StabilityInstance:
    def __init__(self, pair, lam, mu, nu):
        self.pair = pair
        self.lam, self.mu, self.nu = tuple(lam), tuple(mu), tuple(nu)
        self.source = None   # based submodule V(w(lam+tau nu), mu+nu)
        self.target = None   # based submodule V(w lam, mu)
        self.triple = None   # V(theta nu) (x) V(lam) (x) V(mu)
        self.f = None
        self.pi_i = None
        self.m = None

    @property
    def key(self):
        return "%s:%s|%s|%s" % (self.pair.label(), format_weight(self.lam), format_weight(self.mu),
                                format_weight(self.nu))


def _extremal_sub(pair, L, R, lam):
    """V(w lam, mu) inside L (x) R as the based submodule generated by G(b_{w lam} (x) b_mu)."""
    d = pair.datum
    T = based_tensor(L, R)
    low = highest_element(L.crystal, d.act(pair.wbullet, lam))
    b = low * R.dim + R.top
    S = submodule_generated(T, {b: ONE})
    S.top = S.pos[b]
    return S


def build_f(pair, lam, mu, nu, inst=None, corrupt_phi=False):
    """The based U-map f of the instance; verified on the whole source crystal."""
    d = pair.datum
    inst = inst or StabilityInstance(pair, lam, mu, nu)
    big = d.add(lam, pair.tau_weight(nu))
    P = based_irreducible(d, big)
    Q = based_irreducible(d, d.add(mu, nu))
    S = _extremal_sub(pair, P, Q, big)
    theta = pair.theta_sum(nu)
    Vt = based_irreducible(d, theta)
    Vl = based_irreducible(d, lam)
    Vm = based_irreducible(d, mu)
    T3 = based_tensor(based_tensor(Vt, Vl), Vm)
    phi, hws = stability_morphism(pair, lam, mu, nu, P.crystal, Q.crystal, S.parent.crystal,
                                  Vt.crystal, Vl.crystal, Vm.crystal, T3.crystal)
    if set(phi) != set(S.embed):
        raise HypothesisFailed(-1, None, "crystal component differs from the generated submodule")
    phi_s = {S.pos[b]: c for b, c in phi.items()}
    hw_s = {S.pos[h]: phi[h] for h in hws}
    if corrupt_phi:
        phi_s = corrupted_phi(phi_s, hw_s, T3.crystal)
    f = suff_cond_lift(S, T3, hw_s, phi_s)
    f.name = "f"
    inst.source, inst.triple, inst.f = S, T3, f
    return f


def _g_tensor_id(g, T3, v, Vl_dim, Vm_dim):
    """(g (x) id (x) id) v as pure-tensor coordinates of V(lam) (x) V(mu)."""
    out = {}
    u = T3.to_u(v)
    inner = T3.left
    for k, x in u.items():
        ab, c = divmod(k, Vm_dim)
        # ab indexes the G basis of V(theta) (x) V(lam); go to its pure tensors
        for k2, y in inner.C[ab].items():
            a, b = divmod(k2, Vl_dim)
            z = g({a: ONE}).get(g.target.top)
            if z:
                vadd(out, {b * Vm_dim + c: ONE}, x * y * z)
    return out


def build_pi_i(pair, lam, mu, nu, g=None, corrupt_phi=False):
    """Assemble pi^i = (g_m (x) id) o f and restrict it to V(w lam, mu)."""
    d = pair.datum
    inst = StabilityInstance(pair, lam, mu, nu)
    build_f(pair, lam, mu, nu, inst, corrupt_phi)
    m = pair.theta_weight(nu)
    inst.m = m
    g = g if g is not None else g_functional(pair, m)
    Vl = based_irreducible(d, lam)
    Vm = based_irreducible(d, mu)
    tgt = _extremal_sub(pair, Vl, Vm, lam)
    T2 = tgt.parent
    S, T3, f = inst.source, inst.triple, inst.f
    cols = {}
    for b in range(S.dim):
        img = f({b: ONE})
        if not img:
            continue
        u = _g_tensor_id(g, T3, img, Vl.dim, Vm.dim)
        w = tgt.from_parent(T2.from_u(u))
        if w:
            cols[b] = w
    inst.target = tgt
    inst.pi_i = ModuleMap(S, tgt, cols, name="pi_i")
    return inst


class InstanceReport:
    def __init__(self, key, status, bullets=None, witness=None, params=None, elapsed_ms=0, paths=None):
        self.key = key
        self.status = status
        self.bullets = bullets or {}
        self.witness = witness
        self.params = params or {}
        self.elapsed_ms = elapsed_ms
        self.paths = paths or {}

    def as_dict(self):
        return {"instance": self.key, "status": self.status, "bullets": self.bullets,
                "witness": self.witness, "params": self.params, "ibar_paths": self.paths,
                "elapsed_ms": self.elapsed_ms}


def check_instance(inst):
    """(a) iCB -> iCB or 0 injectively, (b) kernel iCB-spanned, (c) normalization; plus the criterion."""
    pair = inst.pair
    src = icontext(pair, inst.source)
    tgt = icontext(pair, inst.target)
    pi = inst.pi_i
    out = {}
    wit = None
    norm = pi({inst.source.top: ONE}) == {inst.target.top: ONE}
    out["normalization"] = norm
    images = {}
    ok_a = True
    for b in range(src.dim):
        img = tgt.to_icb(pi(src.icb[b]))
        if not img:
            continue
        if len(img) != 1 or next(iter(img.values())) != ONE:
            ok_a = False
            wit = wit or "G^i(%d) -> %s" % (b, {k: str(x) for k, x in img.items()})
            continue
        c = next(iter(img))
        if c in images:
            ok_a = False
            wit = wit or "G^i(%d), G^i(%d) -> G^i(%d)" % (images[c], b, c)
        images[c] = b
    out["icb-to-icb"] = ok_a
    zero = src.dim - len(images) if ok_a else None
    ech = ModpEchelon()
    for b in range(src.dim):
        ech.add(pi({b: ONE}))
    kernel_dim = src.dim - ech.rank
    out["kernel-spanned"] = ok_a and kernel_dim == zero
    rep = is_based_ihom(pi, src, tgt)
    for k, (ok, w) in rep.bullets.items():
        out["criterion:" + k] = ok
        if not ok and wit is None:
            wit = "%s: %s" % (k, w)
    paths = {"source": src.path, "target": tgt.path}
    return out, wit, paths


def run_instance(pair, lam, mu, nu, corrupt=None):
    """Report for one (lam, mu, nu); corrupt in {None, 'g1', 'phi'} for negative controls."""
    t0 = time.time()
    inst = StabilityInstance(pair, lam, mu, nu)
    params = {"type": pair.label(), "lambda": format_weight(lam), "mu": format_weight(mu),
              "nu": format_weight(nu)}
    key = inst.key + (":corrupt=%s" % corrupt if corrupt else "")
    try:
        g = None
        if corrupt == "g1":
            g = corrupted_g(pair, pair.theta_weight(nu))
        inst = build_pi_i(pair, lam, mu, nu, g=g, corrupt_phi=(corrupt == "phi"))
        bullets, wit, paths = check_instance(inst)
        status = "pass" if all(bullets.values()) else "fail"
        params["source_dim"] = inst.source.dim
        params["target_dim"] = inst.target.dim
        params["m"] = inst.m
    except SizeBoundExceeded as exc:
        return InstanceReport(key, "skipped", witness=str(exc), params=params,
                              elapsed_ms=int(1000 * (time.time() - t0)))
    except HypothesisFailed as exc:
        return InstanceReport(key, "fail", {"hypothesis": False}, str(exc), params,
                              int(1000 * (time.time() - t0)))
    return InstanceReport(key, status, bullets, wit, params, int(1000 * (time.time() - t0)), paths)


def corrupted_g(pair, m):
    """g_m rescaled by q: a U^i-map with the wrong normalization."""
    g = g_functional(pair, m)
    cols = {b: {k: x * qpow(1) for k, x in col.items()} for b, col in g.cols.items()}
    return ModuleMap(g.source, g.target, cols, name="g%d*q" % m)


def corrupted_phi(phi, hws, crystal):
    """phi with one non-hw image moved to another element of the same weight (or to 0)."""
    out = dict(phi)
    for b in sorted(phi):
        c = phi[b]
        if b in hws or c is None:
            continue
        alt = [x for x in crystal.by_weight(crystal.wt(c)) if x != c]
        out[b] = alt[0] if alt else None
        return out
    raise ValueError("nothing to corrupt")


# the instance registry ---------------------------------------------------------------

RANKS = {"AI": [None], "AII": [None], "AIII": [None], "AIV": [2, 3], "BII": [2, 3],
         "CII": [3, 4], "DII": [4], "FII": [None]}


def small_fundamental(pair):
    """The fundamental weight used for the instances of a pair."""
    k = pair.kind
    if k == "BII":
        return pair.datum.varpi(1 if pair.n == 2 else 0)
    if k == "FII":
        return pair.datum.varpi(3)
    return pair.datum.varpi(0)


def registry_instances(pair):
    d = pair.datum
    w = small_fundamental(pair)
    z = d.zero()
    if pair.kind == "FII":
        return [(z, z, w)]
    return [(z, z, w), (w, z, w), (z, w, w)]


def all_pairs():
    return [admissible_pair(k, n) for k in KINDS for n in RANKS[k]]


def verify_theorem(pair, instances=None, parallel=1):
    """Instance reports for the pair, sorted by instance key."""
    instances = registry_instances(pair) if instances is None else instances
    if parallel > 1:
        with ThreadPoolExecutor(parallel) as ex:
            reps = list(ex.map(lambda t: run_instance(pair, *t), instances))
    else:
        reps = [run_instance(pair, *t) for t in instances]
    return sorted(reps, key=lambda r: r.key)


def crystal_level_map(inst):
    """pi^i on crystal elements (b -> b' or None), from ev_inf of the G^i images."""
    from .gcb import crystal_map_of
    return crystal_map_of(inst.pi_i)


__all__ = ["StabilityInstance", "build_f", "build_pi_i", "check_instance", "run_instance", "verify_theorem",
           "registry_instances", "all_pairs", "small_fundamental", "corrupted_g", "InstanceReport"]
