"""Integrable modules: irreducibles, tensor products, generator actions.

A module stores, for every node i, the matrices of E_i and F_i as lists of
sparse columns (dict row -> RationalFn).  K_h acts diagonally through the
weights.  Vectors are dicts basis index -> RationalFn; `Vec` wraps one with
its module for display.
"""
from .linalg import ModpEchelon, solve_exact
from .rootdata import NotDominant
from .scalar import ONE, ZERO, as_rf, inv_qfact, qint_rf, qpow, render


class SizeBoundExceeded(RuntimeError):
    pass


SIZE_BOUND = 20000


def set_size_bound(k):
    """Set the largest dimension any construction may reach; returns the old bound."""
    global SIZE_BOUND
    old = SIZE_BOUND
    SIZE_BOUND = int(k)
    return old


def _guard(dim, what):
    if dim > SIZE_BOUND:
        raise SizeBoundExceeded("%s has dimension %d > size bound %d" % (what, dim, SIZE_BOUND))


# sparse vectors ------------------------------------------------------------


def vadd(u, v, c=None):
    """u += c v in place (c defaults to 1); returns u."""
    for k, x in v.items():
        y = x if c is None else c * x
        if not y:
            continue
        z = u.get(k)
        if z is None:
            u[k] = y
        else:
            z = z + y
            if z:
                u[k] = z
            else:
                del u[k]
    return u


def vscale(c, v):
    c = as_rf(c)
    if not c:
        return {}
    if c == ONE:
        return dict(v)
    return {k: c * x for k, x in v.items()}


def vsub(u, v):
    return vadd(dict(u), v, -ONE)


def vbar(v):
    return {k: x.bar() for k, x in v.items()}


def apply(mat, v):
    out = {}
    for k, x in v.items():
        col = mat[k]
        if col:
            vadd(out, col, x)
    return out


class Vec:
    """A vector together with its module, for display and light arithmetic."""

    __slots__ = ("module", "c")

    def __init__(self, module, coeffs):
        self.module = module
        self.c = {k: as_rf(x) for k, x in coeffs.items() if x}

    def __add__(self, other):
        return Vec(self.module, vadd(dict(self.c), other.c))

    def __sub__(self, other):
        return Vec(self.module, vsub(self.c, other.c))

    def __rmul__(self, s):
        return Vec(self.module, vscale(s, self.c))

    def __eq__(self, other):
        if isinstance(other, Vec):
            return self.c == other.c
        return NotImplemented

    def render(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            parts.append("(%s)*%s" % (render(self.c[k]), self.module.label_text(k)))
        return " + ".join(parts)

    __repr__ = render


# modules -------------------------------------------------------------------


class Module:
    def __init__(self, datum, labels, weights, E, F, name=""):
        self.datum = datum
        self.labels = list(labels)
        self.weights = [tuple(w) for w in weights]
        self.E = E
        self.F = F
        self.name = name
        self.by_weight = {}
        for k, w in enumerate(self.weights):
            self.by_weight.setdefault(w, []).append(k)
        self._index = {lab: k for k, lab in enumerate(self.labels)}
        self._div = {}

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        return self._index[label]

    def label_text(self, k):
        lab = self.labels[k]
        return "b%s" % (lab,) if not isinstance(lab, str) else lab

    def basis_vec(self, k):
        return {k: ONE}

    def e(self, i, v):
        return apply(self.E[i], v)

    def f(self, i, v):
        return apply(self.F[i], v)

    def act(self, gen, i, v):
        return apply(self.E[i] if gen == "E" else self.F[i], v)

    def k(self, h, v):
        """K_h for a coweight h in simple-coroot coordinates."""
        out = {}
        for b, x in v.items():
            out[b] = qpow(self.datum.pair(h, self.weights[b])) * x
        return out

    def k_i(self, i, v, sign=1):
        d = self.datum.sym[i]
        return {b: qpow(sign * d * self.weights[b][i]) * x for b, x in v.items()}

    def divided(self, gen, i, a, v):
        """X^{(a)} v for X = E_i or F_i."""
        if a == 0:
            return dict(v)
        out = {}
        for b, x in v.items():
            key = (gen, i, a, b)
            col = self._div.get(key)
            if col is None:
                w = {b: ONE}
                mat = self.E[i] if gen == "E" else self.F[i]
                for _ in range(a):
                    w = apply(mat, w)
                    if not w:
                        break
                col = vscale(inv_qfact(a, self.datum.sym[i]), w) if w else {}
                self._div[key] = col
            if col:
                vadd(out, col, x)
        return out

    def weight_of(self, v):
        ws = {self.weights[k] for k in v}
        if len(ws) != 1:
            raise ValueError("vector is not weight-homogeneous")
        return ws.pop()

    def weight_components(self, v):
        out = {}
        for k, x in v.items():
            out.setdefault(self.weights[k], {})[k] = x
        return out

    def vec(self, v):
        return Vec(self, v)

    def check_relations(self, basis=None):
        """Defining relations of U on basis vectors; returns failures."""
        d = self.datum
        bad = []
        idx = range(self.dim) if basis is None else basis
        for b in idx:
            v = {b: ONE}
            wt = self.weights[b]
            for i in d.nodes:
                Ev = self.e(i, v)
                Fv = self.f(i, v)
                if Ev and self.weights[next(iter(Ev))] != d.add(wt, d.alpha(i)):
                    bad.append(("weight-E", i, b))
                if Fv and self.weights[next(iter(Fv))] != d.sub(wt, d.alpha(i)):
                    bad.append(("weight-F", i, b))
                for j in d.nodes:
                    lhs = vsub(self.e(i, self.f(j, v)), self.f(j, self.e(i, v)))
                    rhs = vscale(qint_rf(wt[i], d.sym[i]), v) if i == j else {}
                    if lhs != rhs:
                        bad.append(("commutator", i, j, b))
                    if i != j:
                        m = 1 - d.a(i, j)
                        for gen in ("E", "F"):
                            tot = {}
                            for r in range(m + 1):
                                w = self.divided(gen, i, m - r, v)
                                w = self.act(gen, j, w)
                                w = self.divided(gen, i, r, w)
                                vadd(tot, w, ONE if r % 2 == 0 else -ONE)
                            if tot:
                                bad.append(("serre-" + gen, i, j, b))
        return bad

    def dump(self):
        lines = []
        for k in range(self.dim):
            lines.append("basis idx=%d label=%s weight=%s" % (k, self.label_text(k), self.weights[k]))
        for gen, mats in (("E", self.E), ("F", self.F)):
            for i, mat in enumerate(mats):
                for col, entries in enumerate(mat):
                    for row in sorted(entries):
                        lines.append("gen=%s_%d row=%d col=%d val=%s" % (gen, i + 1, row, col,
                                                                         render(entries[row])))
        return "\n".join(lines)


# irreducible modules via the contravariant form ---------------------------------


def irreducible(datum, lam):
    """V(lam) in a basis of F-monomials applied to v_lam.

    The basis is grown weight by weight: each candidate F_j x (x a basis
    vector one step higher) is kept iff it raises the rank of the Gram matrix
    of the contravariant form; the F-action on the others is solved through
    that Gram matrix.  The result carries `top` (index of v_lam) and `gram`.
    """
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise NotDominant(str(lam))
    dim = datum.weyl_dimension(lam)
    _guard(dim, "V(%s)" % (lam,))
    n = datum.rank
    sym = datum.sym
    labels = [()]
    weights = [lam]
    Ecols = [[{}] for _ in range(n)]
    Fcols = [[None] for _ in range(n)]
    gram = {lam: ([0], [[ONE]])}
    pos = {0: 0}
    level = [lam]

    def pairing(x, w):
        """(basis vector x, vector w) with w of the same weight."""
        idx, G = gram[weights[x]]
        row = G[pos[x]]
        s = ZERO
        for k, c in w.items():
            g = row[pos[k]]
            if g:
                s = s + g * c
        return s

    while level:
        nxt = {}
        for mu in level:
            for j in datum.nodes:
                nu = datum.sub(mu, datum.alpha(j))
                nxt.setdefault(nu, [])
                for x in gram[mu][0]:
                    nxt[nu].append((j, x))
        new_level = []
        for nu in sorted(nxt, reverse=True):
            cands = nxt[nu]
            # E-images of each candidate F_j x
            eimg = []
            for j, x in cands:
                row = []
                for k in datum.nodes:
                    w = apply(Fcols[j], Ecols[k][x]) if Ecols[k][x] else {}
                    if k == j:
                        h = weights[x][j]
                        if h:
                            w = vadd(dict(w), {x: qint_rf(h, sym[j])})
                    row.append(w)
                eimg.append(row)

            def g(a, b):
                j, x = cands[a]
                w = eimg[b][j]
                if not w:
                    return ZERO
                return qpow(sym[j] * (1 - weights[x][j])) * pairing(x, w)

            ech = ModpEchelon()
            kept = []
            # rows of the candidate Gram matrix, evaluated lazily
            cache = {}

            def gc(a, b):
                key = (a, b) if a <= b else (b, a)
                v = cache.get(key)
                if v is None:
                    v = g(a, b)
                    cache[key] = v
                return v

            for a in range(len(cands)):
                row = {b: gc(a, b) for b in range(len(cands))}
                if ech.add(row):
                    kept.append(a)
            if not kept:
                for j, x in cands:
                    Fcols[j][x] = {}
                continue
            base = len(labels)
            pos_nu = {}
            for t, a in enumerate(kept):
                j, x = cands[a]
                labels.append((j,) + labels[x])
                weights.append(nu)
                for k in datum.nodes:
                    Ecols[k].append(eimg[a][k])
                    Fcols[k].append(None)
                pos[base + t] = t
                pos_nu[a] = base + t
            G = [[gc(a, b) for b in kept] for a in kept]
            gram[nu] = (list(range(base, base + len(kept))), G)
            rest = [a for a in range(len(cands)) if a not in pos_nu]
            if rest:
                rhs = [[gc(a, r) for r in rest] for a in kept]
                sol = solve_exact(G, rhs)
            for a, (j, x) in enumerate(cands):
                if a in pos_nu:
                    Fcols[j][x] = {pos_nu[a]: ONE}
                else:
                    c = rest.index(a)
                    Fcols[j][x] = {base + t: sol[t][c] for t in range(len(kept)) if sol[t][c]}
            new_level.append(nu)
            if len(labels) > dim:
                raise AssertionError("constructed more vectors than the Weyl dimension")
        level = new_level
    for k in datum.nodes:
        Fcols[k] = [c if c is not None else {} for c in Fcols[k]]
    if len(labels) != dim:
        raise AssertionError("dimension %d differs from Weyl dimension %d" % (len(labels), dim))
    M = Module(datum, labels, weights, Ecols, Fcols, name="V(%s)" % (",".join(map(str, lam)),))
    M.top = 0
    M.highest = lam
    M.gram = gram
    M._pos = pos
    return M


def contravariant_form(M, u, v):
    """(u, v) for the form with (x u, v) = (u, rho(x) v), (v_lam, v_lam) = 1."""
    s = ZERO
    for a, x in u.items():
        idx, G = M.gram[M.weights[a]]
        row = G[M._pos[a]]
        for b, y in v.items():
            if M.weights[b] != M.weights[a]:
                continue
            g = row[M._pos[b]]
            if g:
                s = s + x * y * g
    return s


def divided_power_act(M, gen, i, a, v):
    return M.divided(gen, i, a, v)


def lowest_weight_module(datum, lam):
    """V(-w0 lam) together with the index of its vector of weight -lam."""
    if not datum.is_dominant(lam):
        raise NotDominant(str(lam))
    star = tuple(-x for x in datum.act(datum.longest_word(), lam))
    M = irreducible(datum, star)
    low = tuple(-x for x in lam)
    (k,) = M.by_weight[low]
    return M, k


# tensor products -----------------------------------------------------------


def tensor(M, N, name=None):
    """M (x) N with E = E(x)1 + K(x)E and F = 1(x)F + F(x)K^-1."""
    d = M.datum
    _guard(M.dim * N.dim, "tensor product")
    nN = N.dim
    labels = []
    weights = []
    mf = getattr(M, "factors", None)
    for a in range(M.dim):
        for b in range(nN):
            la = M.labels[a] if mf else (M.labels[a],)
            labels.append(la + (N.labels[b],))
            weights.append(d.add(M.weights[a], N.weights[b]))
    E = []
    F = []
    for i in d.nodes:
        di = d.sym[i]
        Ei, Fi = [], []
        for a in range(M.dim):
            ka = qpow(di * M.weights[a][i])
            Ma_E = M.E[i][a]
            Ma_F = M.F[i][a]
            for b in range(nN):
                col = {}
                for r, x in Ma_E.items():
                    col[r * nN + b] = x
                for r, x in N.E[i][b].items():
                    col[a * nN + r] = ka * x
                Ei.append(col)
                col = {}
                for r, x in N.F[i][b].items():
                    col[a * nN + r] = x
                if Ma_F:
                    kb = qpow(-di * N.weights[b][i])
                    for r, x in Ma_F.items():
                        col[r * nN + b] = x * kb
                Fi.append(col)
        E.append(Ei)
        F.append(Fi)
    T = Module(d, labels, weights, E, F, name=name or "%s*%s" % (M.name, N.name))
    T.factors = (list(mf) if mf else [M]) + [N]
    return T


def factor_indices(T, k):
    """Tuple of factor basis indices of basis vector k of a tensor module."""
    out = []
    for fac in reversed(T.factors):
        out.append(k % fac.dim)
        k //= fac.dim
    return tuple(reversed(out))


def pure_index(T, idx):
    k = 0
    for fac, i in zip(T.factors, idx):
        k = k * fac.dim + i
    return k


def pure_tensor(T, vecs):
    """Coordinates of v_1 (x) ... (x) v_r in the product basis."""
    out = {(): ONE}
    for v in vecs:
        nxt = {}
        for key, x in out.items():
            for k, y in v.items():
                nxt[key + (k,)] = x * y
        out = nxt
    return {pure_index(T, key): x for key, x in out.items() if x}


def trivial_module(datum):
    n = datum.rank
    M = Module(datum, [()], [datum.zero()], [[{}] for _ in range(n)], [[{}] for _ in range(n)],
               name="V(0)")
    M.top = 0
    M.highest = datum.zero()
    M.gram = {datum.zero(): ([0], [[ONE]])}
    M._pos = {0: 0}
    return M
