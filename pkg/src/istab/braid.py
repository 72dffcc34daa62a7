"""Lusztig's braid operators T''_{i,1} on integrable modules.

On a vector of i-weight n,
    T_i v     = sum_{a-b+c=-n} (-1)^b q_i^(b-ac) E^(a) F^(b) E^(c) v,
    T_i^-1 v  = sum_{a-b+c=n}  (-1)^b q_i^(ac-b) F^(a) E^(b) F^(c) v.
T_w = T_{i1} ... T_{ir} for w = s_{i1} ... s_{ir}.
"""
import threading

from .rep import apply, vadd, vscale
from .scalar import ONE, qpow

_lock = threading.Lock()


def _t_column(M, i, v, inverse):
    d = M.datum.sym[i]
    n = M.weights[next(iter(v))][i]
    if not inverse:
        n = -n
    if inverse:
        X, Y = "F", "E"
    else:
        X, Y = "E", "F"
    out = {}
    c = 0
    while True:
        w0 = M.divided(X, i, c, v)
        if not w0:
            break
        b = 0
        while True:
            a = n + b - c
            if a >= 0:
                w1 = M.divided(Y, i, b, w0)
                if not w1:
                    break
                w2 = M.divided(X, i, a, w1)
                if w2:
                    e = b - a * c
                    if inverse:
                        e = -e
                    coef = qpow(d * e)
                    if b % 2:
                        coef = -coef
                    vadd(out, w2, coef)
            else:
                w1 = M.divided(Y, i, b, w0)
                if not w1:
                    break
            b += 1
        c += 1
    return out


class BraidOperator:
    """T_w on a module, materialized lazily as a list of columns."""

    def __init__(self, module, word, inverse=False):
        self.module = module
        self.word = tuple(word)
        self.inverse = inverse
        self._mat = None

    @property
    def mat(self):
        if self._mat is None:
            with _lock:
                if self._mat is None:
                    self._mat = self._build()
        return self._mat

    def _build(self):
        M = self.module
        cols = [{b: ONE} for b in range(M.dim)]
        # T_w v = T_i1(...(T_ir v)); T_w^-1 = T_ir^-1 ... T_i1^-1
        letters = list(reversed(self.word)) if not self.inverse else list(self.word)
        for i in letters:
            Ti = simple_matrix(M, i, self.inverse)
            cols = [apply(Ti, c) for c in cols]
        return cols

    def __call__(self, v):
        return apply(self.mat, v)


def simple_matrix(M, i, inverse=False):
    cache = M.__dict__.setdefault("_braid", {})
    key = (i, inverse)
    mat = cache.get(key)
    if mat is None:
        mat = [_t_column(M, i, {b: ONE}, inverse) for b in range(M.dim)]
        cache[key] = mat
    return mat


def braid_T_i(M, i, inverse=False):
    return BraidOperator(M, (i,), inverse)


def braid_T_w(M, word, inverse=False):
    cache = M.__dict__.setdefault("_braidw", {})
    key = (tuple(word), inverse)
    op = cache.get(key)
    if op is None:
        op = BraidOperator(M, word, inverse)
        cache[key] = op
    return op


def conjugated_E(M, word, j):
    """Columns of T_w E_j T_w^-1 on M."""
    cache = M.__dict__.setdefault("_conjE", {})
    key = (tuple(word), j)
    mat = cache.get(key)
    if mat is None:
        T = braid_T_w(M, word)
        Tinv = braid_T_w(M, word, inverse=True)
        mat = [T(M.e(j, Tinv({b: ONE}))) for b in range(M.dim)]
        cache[key] = mat
    return mat


# generator-level automorphism, used as an independent check -------------------------


def algebra_T_i(M, i, gen, j):
    """The operator T_i(X) on M for X = E_j, F_j (as a function on vectors).

    T_i(E_i) = -F_i K_i, T_i(F_i) = -K_i^-1 E_i and for j != i
    T_i(E_j) = sum_{r+s=-a_ij} (-1)^r q_i^-r E_i^(s) E_j E_i^(r),
    T_i(F_j) = sum_{r+s=-a_ij} (-1)^r q_i^r F_i^(r) F_j F_i^(s).
    """
    d = M.datum
    di = d.sym[i]
    if j == i:
        if gen == "E":
            return lambda v: vscale(-ONE, M.f(i, M.k_i(i, v, 1)))
        return lambda v: vscale(-ONE, M.k_i(i, M.e(i, v), -1))
    m = -d.a(i, j)

    def op(v):
        out = {}
        for r in range(m + 1):
            s = m - r
            sign = -ONE if r % 2 else ONE
            if gen == "E":
                w = M.divided("E", i, s, M.e(j, M.divided("E", i, r, v)))
                vadd(out, w, sign * qpow(-di * r))
            else:
                w = M.divided("F", i, r, M.f(j, M.divided("F", i, s, v)))
                vadd(out, w, sign * qpow(di * r))
        return out
    return op


def check_intertwining(M, i, vectors):
    """T_i(X v) = T_i(X) T_i(v) for X in {E_j, F_j}; returns failures."""
    T = braid_T_i(M, i)
    bad = []
    for v in vectors:
        for j in M.datum.nodes:
            for gen in ("E", "F"):
                lhs = T(M.act(gen, j, v))
                rhs = algebra_T_i(M, i, gen, j)(T(v))
                if lhs != rhs:
                    bad.append((gen, j, v))
    return bad
