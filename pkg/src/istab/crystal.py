"""Finite crystals: graphs, the tensor rule, parabolic components and transport.

Elements are integers 0..n-1 with labels.  Tensor products index the pair
(b1, b2) as b1 * len(B2) + b2, matching the basis order of tensor modules.
"""
from collections import deque


class IllDefinedTransport(RuntimeError):
    pass


class Crystal:
    def __init__(self, datum, labels, weights, farrows, eps=None, phi=None):
        """farrows[i] maps b -> F~_i b for the b where it is nonzero."""
        self.datum = datum
        self.labels = list(labels)
        self.weights = [tuple(w) for w in weights]
        n = datum.rank
        self.farrows = [dict(farrows[i]) for i in range(n)]
        self.earrows = [{c: b for b, c in self.farrows[i].items()} for i in range(n)]
        if eps is None:
            eps = [[self._walk(self.earrows[i], b) for b in range(len(self.labels))] for i in range(n)]
        if phi is None:
            phi = [[self._walk(self.farrows[i], b) for b in range(len(self.labels))] for i in range(n)]
        self.eps_ = eps
        self.phi_ = phi
        self._index = {lab: k for k, lab in enumerate(self.labels)}

    @staticmethod
    def _walk(arrows, b):
        k = 0
        while b in arrows:
            b = arrows[b]
            k += 1
        return k

    def __len__(self):
        return len(self.labels)

    def index(self, label):
        return self._index[label]

    def f(self, i, b):
        return self.farrows[i].get(b)

    def e(self, i, b):
        return self.earrows[i].get(b)

    def eps(self, i, b):
        return self.eps_[i][b]

    def phi(self, i, b):
        return self.phi_[i][b]

    def wt(self, b):
        return self.weights[b]

    def apply_word(self, word, b, raising=False):
        """Apply F~ (or E~) letters right to left; None if some step vanishes."""
        arrows = self.earrows if raising else self.farrows
        for i in reversed(word):
            if b is None:
                return None
            b = arrows[i].get(b)
        return b

    def check_invariants(self):
        bad = []
        d = self.datum
        for i in d.nodes:
            for b in range(len(self)):
                c = self.f(i, b)
                if c is not None and self.e(i, c) != b:
                    bad.append(("inverse", i, b))
                if self.phi(i, b) - self.eps(i, b) != self.wt(b)[i]:
                    bad.append(("phi-eps", i, b))
                if self.eps(i, b) != self._walk(self.earrows[i], b):
                    bad.append(("eps-seminormal", i, b))
                if self.phi(i, b) != self._walk(self.farrows[i], b):
                    bad.append(("phi-seminormal", i, b))
                if c is not None and self.wt(c) != d.sub(self.wt(b), d.alpha(i)):
                    bad.append(("weight", i, b))
        return bad

    def hw_elements(self):
        return [b for b in range(len(self)) if all(self.e(i, b) is None for i in self.datum.nodes)]

    def component(self, b, nodes=None):
        nodes = self.datum.nodes if nodes is None else nodes
        seen = {b}
        todo = [b]
        while todo:
            x = todo.pop()
            for i in nodes:
                for y in (self.f(i, x), self.e(i, x)):
                    if y is not None and y not in seen:
                        seen.add(y)
                        todo.append(y)
        return seen

    def components(self):
        out = []
        seen = set()
        for h in self.hw_elements():
            c = self.component(h)
            seen |= c
            out.append((h, c))
        assert len(seen) == len(self)
        return out

    def by_weight(self, wt):
        return [b for b in range(len(self)) if self.weights[b] == tuple(wt)]

    def to_dot(self):
        lines = ["digraph crystal {"]
        count = {}
        names = []
        for b in range(len(self)):
            w = self.weights[b]
            k = count.get(w, 0)
            count[w] = k + 1
            names.append("%s#%d" % (",".join(map(str, w)), k))
            lines.append('  n%d [label="%s"];' % (b, names[-1]))
        for i in self.datum.nodes:
            for b, c in sorted(self.farrows[i].items()):
                lines.append('  n%d -> n%d [label="%d"];' % (b, c, i + 1))
        lines.append("}")
        return "\n".join(lines)


def tensor_crystal(B1, B2):
    """B1 (x) B2 with the rule: F~ acts on the right factor iff eps(b1) < phi(b2)."""
    d = B1.datum
    n2 = len(B2)
    labels, weights = [], []
    f1 = getattr(B1, "factors", None)
    for a in range(len(B1)):
        for b in range(n2):
            la = B1.labels[a] if f1 else (B1.labels[a],)
            labels.append(la + (B2.labels[b],))
            weights.append(d.add(B1.wt(a), B2.wt(b)))
    farrows = []
    eps = []
    phi = []
    for i in d.nodes:
        fi = {}
        ei, pi = [], []
        for a in range(len(B1)):
            ea, pa = B1.eps(i, a), B1.phi(i, a)
            wa = B1.wt(a)[i]
            for b in range(n2):
                eb, pb = B2.eps(i, b), B2.phi(i, b)
                ei.append(max(ea - B2.wt(b)[i], eb))
                pi.append(max(pa, pb + wa))
                if ea < pb:
                    c = B2.f(i, b)
                    if c is not None:
                        fi[a * n2 + b] = a * n2 + c
                else:
                    c = B1.f(i, a)
                    if c is not None:
                        fi[a * n2 + b] = c * n2 + b
        farrows.append(fi)
        eps.append(ei)
        phi.append(pi)
    T = Crystal(d, labels, weights, farrows, eps, phi)
    T.factors = (list(f1) if f1 else [B1]) + [B2]
    T._left = B1
    # E~ from the rule, kept for comparison with the inverse of F~
    T.rule_e = []
    for i in d.nodes:
        ei = {}
        for a in range(len(B1)):
            for b in range(n2):
                if B1.eps(i, a) > B2.phi(i, b):
                    c = B1.e(i, a)
                    if c is not None:
                        ei[a * n2 + b] = c * n2 + b
                else:
                    c = B2.e(i, b)
                    if c is not None:
                        ei[a * n2 + b] = a * n2 + c
        T.rule_e.append(ei)
    return T


def crystal_factor_indices(T, k):
    out = []
    for fac in reversed(T.factors):
        out.append(k % len(fac))
        k //= len(fac)
    return tuple(reversed(out))


def crystal_pure_index(T, idx):
    k = 0
    for fac, i in zip(T.factors, idx):
        k = k * len(fac) + i
    return k


def hw_elements(B):
    return B.hw_elements()


def hw_by_lemma(T):
    """hw elements of B1 (x) B2 via: b2 highest and eps_i(b1) <= <h_i, wt b2>."""
    B2 = T.factors[-1]
    n2 = len(B2)
    d = T.datum
    out = []
    for k in range(len(T)):
        a, b = divmod(k, n2)
        if all(B2.e(i, b) is None for i in d.nodes):
            if all(_eps_left(T, a, i) <= B2.wt(b)[i] for i in d.nodes):
                out.append(k)
    return out


def _eps_left(T, a, i):
    return T._left.eps(i, a)


def is_isomorphic(B1, B2, mapping=None):
    """Find a weight- and arrow-preserving bijection B1 -> B2 (or None)."""
    if len(B1) != len(B2):
        return None
    h1 = sorted(B1.hw_elements(), key=lambda b: B1.wt(b))
    h2 = sorted(B2.hw_elements(), key=lambda b: B2.wt(b))
    if [B1.wt(b) for b in h1] != [B2.wt(b) for b in h2]:
        return None
    m = {}
    used = set()
    for a in h1:
        ok = False
        for c in h2:
            if c in used or B2.wt(c) != B1.wt(a):
                continue
            trial = _match_component(B1, a, B2, c)
            if trial is not None:
                m.update(trial)
                used.add(c)
                ok = True
                break
        if not ok:
            return None
    for i in B1.datum.nodes:
        for b, c in B1.farrows[i].items():
            if B2.f(i, m[b]) != m[c]:
                return None
    return m


def _match_component(B1, a, B2, c):
    m = {a: c}
    todo = [a]
    while todo:
        x = todo.pop()
        for i in B1.datum.nodes:
            for arrows1, get2 in ((B1.farrows[i], B2.f), (B1.earrows[i], B2.e)):
                y = arrows1.get(x)
                z = get2(i, m[x])
                if (y is None) != (z is None):
                    return None
                if y is None:
                    continue
                if y in m:
                    if m[y] != z:
                        return None
                else:
                    m[y] = z
                    todo.append(y)
    return m


# parabolic components ------------------------------------------------------


def highest_element(B, lam):
    (b,) = B.by_weight(lam)
    return b


def parabolic_component(B, b_top, subset):
    """{ F~_{j1} ... F~_{jr} b_top : j_k in subset }, by breadth-first search."""
    seen = {b_top}
    todo = deque([b_top])
    while todo:
        x = todo.popleft()
        for j in subset:
            y = B.f(j, x)
            if y is not None and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def parabolic_by_weight(B, pair, lam):
    """{ b : wt(b) >= w_bullet lam } in the root order."""
    d = pair.datum
    low = d.act(pair.wbullet, lam)
    return {b for b in range(len(B)) if d.geq(B.wt(b), low)}


def epsilon_filter(B, C, mu):
    d = B.datum
    return {b for b in C if all(B.eps(i, b) <= mu[i] for i in d.nodes)}


def raising_words(B, start, subset):
    """For each element reachable from `start` by E~_j (j in subset), a word
    w with b = E~_w start found by BFS (smallest j first)."""
    words = {start: ()}
    todo = deque([start])
    while todo:
        x = todo.popleft()
        for j in sorted(subset):
            y = B.e(j, x)
            if y is not None and y not in words:
                words[y] = (j,) + words[x]
                todo.append(y)
    return words


def transport_maps(pair, B_lam, lam, B_big, big):
    """The maps iota: C(b_lam) -> C(b_big) and pi back (None meaning 0).

    big = lam + tau nu.  Elements are written as E~-words on the I_bullet
    lowest element; the same word is applied on the other side.  The
    compatibility E~_j iota(b) = iota(E~_j b) is then checked on every arrow.
    """
    d = pair.datum
    black = pair.black
    lo = B_lam.by_weight(d.act(pair.wbullet, lam))[0]
    lo_big = B_big.by_weight(d.act(pair.wbullet, big))[0]
    words = raising_words(B_lam, lo, black)
    iota = {}
    for b, w in words.items():
        c = B_big.apply_word(w, lo_big, raising=True)
        if c is None:
            raise IllDefinedTransport("word %s dies on the larger component" % (w,))
        iota[b] = c
    for b in words:
        for j in black:
            y = B_lam.e(j, b)
            if y is not None and B_big.e(j, iota[b]) != iota[y]:
                raise IllDefinedTransport("E~_%d does not commute with iota at %s" % (j + 1, b))
    words_big = raising_words(B_big, lo_big, black)
    pi = {}
    for c, w in words_big.items():
        pi[c] = B_lam.apply_word(w, lo, raising=True)
    for c in words_big:
        for j in black:
            y = B_big.e(j, c)
            if y is None:
                continue
            img = pi[c]
            lhs = B_lam.e(j, img) if img is not None else None
            if pi[y] is not None and lhs != pi[y]:
                raise IllDefinedTransport("E~_%d does not commute with pi at %s" % (j + 1, c))
    return iota, pi


def transport_iota(pair, B_lam, lam, B_big, big, b):
    return transport_maps(pair, B_lam, lam, B_big, big)[0][b]


def transport_pi(pair, B_lam, lam, B_big, big, b):
    return transport_maps(pair, B_lam, lam, B_big, big)[1].get(b)


def stability_morphism(pair, lam, mu, nu, B_big, B_mu_nu, src, B_theta, B_lam, B_mu, tgt):
    """phi: B(w(lam+tau nu), mu+nu) -> B(theta nu) (x) B(lam) (x) B(mu), 0 as None.

    src: crystal B(lam+tau nu) (x) B(mu+nu), tgt: B(theta nu) (x) B(lam) (x) B(mu).
    On hw elements b (x) b_{mu+nu}: b_theta (x) pi(b) (x) b_mu; extended along
    F~ arrows.  Returns (phi dict on the source component set, hw list).
    """
    d = pair.datum
    big = d.add(lam, pair.tau_weight(nu))
    _, pi = transport_maps(pair, B_lam, lam, B_big, big)
    top_mn = highest_element(B_mu_nu, d.add(mu, nu))
    top_theta = highest_element(B_theta, pair.theta_sum(nu))
    top_mu = highest_element(B_mu, mu)
    n2 = len(B_mu_nu)
    phi = {}
    hws = []
    for h in src.hw_elements():
        b, c = divmod(h, n2)
        if c != top_mn or b not in pi:
            continue
        hws.append(h)
        img = pi[b]
        if img is None:
            tgt_h = None
        else:
            tgt_h = crystal_pure_index(tgt, (top_theta, img, top_mu))
        stack = [(h, tgt_h)]
        phi[h] = tgt_h
        while stack:
            x, y = stack.pop()
            for i in d.nodes:
                x2 = src.f(i, x)
                if x2 is None or x2 in phi:
                    continue
                y2 = tgt.f(i, y) if y is not None else None
                phi[x2] = y2
                stack.append((x2, y2))
    return phi, hws
