"""Linear algebra over Q(q).

Exact Gauss-Jordan elimination works for small systems.  Larger systems whose
solution is known to have Laurent polynomial entries go through evaluation at
many points mod p, interpolation and an exact check of the result.  Basis
selection uses a random specialization of q mod p: a set found independent
there is independent over Q(q).
"""
from fractions import Fraction

import numpy as np

from . import _kernels
from .scalar import ONE, ZERO, LaurentPoly, RationalFn, as_rf

P = _kernels.PRIME
Q0 = 1234567891 % P  # fixed specialization used for rank decisions


class SingularSystem(ArithmeticError):
    pass


_inv_cache = {}


def _inv(a):
    a %= P
    r = _inv_cache.get(a)
    if r is None:
        r = pow(a, P - 2, P)
        if len(_inv_cache) < 100000:
            _inv_cache[a] = r
    return r


def _coef_modp(c):
    if isinstance(c, int):
        return c % P
    c = Fraction(c)
    return c.numerator * _inv(c.denominator) % P


def poly_modp(p, x):
    """Evaluate a LaurentPoly at x mod P."""
    s = 0
    xi = None
    for e, c in p.c.items():
        if e >= 0:
            t = pow(x, e, P)
        else:
            if xi is None:
                xi = _inv(x)
            t = pow(xi, -e, P)
        s += _coef_modp(c) * t
    return s % P


def ev_modp(x, q0=Q0):
    """Value of a RationalFn at q = q0 mod P (ZeroDivisionError on a pole)."""
    x = as_rf(x)
    n = poly_modp(x.num, q0)
    if x.den.c == {0: 1}:
        return n
    d = poly_modp(x.den, q0)
    if d == 0:
        raise ZeroDivisionError("pole at the specialization point")
    return n * _inv(d) % P


class ModpEchelon:
    """Incremental echelon form of sparse vectors specialized at q0."""

    def __init__(self, q0=Q0):
        self.q0 = q0
        self.rows = {}  # pivot index -> normalized reduced row (dict)

    def reduce(self, v):
        w = {}
        for k, x in v.items():
            y = ev_modp(x, self.q0)
            if y:
                w[k] = y
        rows = self.rows
        for k in sorted(w):
            if k not in w:
                continue
            r = rows.get(k)
            if r is None:
                continue
            f = w[k]
            for j, y in r.items():
                t = (w.get(j, 0) - f * y) % P
                if t:
                    w[j] = t
                else:
                    w.pop(j, None)
        return w

    def add(self, v):
        """Insert v; True iff it raised the rank."""
        w = self.reduce(v)
        if not w:
            return False
        k = min(w)
        inv = _inv(w[k])
        w = {j: y * inv % P for j, y in w.items()}
        # keep rows fully reduced against the new pivot
        for pk, r in self.rows.items():
            f = r.get(k)
            if f:
                for j, y in w.items():
                    t = (r.get(j, 0) - f * y) % P
                    if t:
                        r[j] = t
                    else:
                        r.pop(j, None)
        self.rows[k] = w
        return True

    @property
    def rank(self):
        return len(self.rows)


def modp_rank(rows, q0=Q0):
    e = ModpEchelon(q0)
    for r in rows:
        e.add(r)
    return e.rank


# exact elimination -------------------------------------------------------


def _cost(x):
    return len(x.num.c) + len(x.den.c)


def solve_exact(A, B):
    """X with A X = B; A square (lists of RationalFn), B n x m."""
    n = len(A)
    m = len(B[0]) if B else 0
    M = [[as_rf(v) for v in A[i]] + [as_rf(v) for v in B[i]] for i in range(n)]
    for c in range(n):
        cand = [r for r in range(c, n) if M[r][c]]
        if not cand:
            raise SingularSystem("singular at column %d" % c)
        k = min(cand, key=lambda r: _cost(M[r][c]))
        M[c], M[k] = M[k], M[c]
        inv = M[c][c].inverse()
        M[c] = [v * inv if v else v for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                row = M[c]
                M[r] = [x - f * y if y else x for x, y in zip(M[r], row)]
    return [M[i][n:n + m] for i in range(n)]


def nullspace_exact(A, ncols=None):
    """Basis of {x : A x = 0} over Q(q); A given as a list of rows."""
    rows = [[as_rf(v) for v in r] for r in A]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    piv = []
    r = 0
    for c in range(ncols):
        cand = [i for i in range(r, len(rows)) if rows[i][c]]
        if not cand:
            continue
        k = min(cand, key=lambda i: _cost(rows[i][c]))
        rows[r], rows[k] = rows[k], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv if v else v for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(piv):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def row_reduce_modp_rank(rows, ncols, q0=Q0):
    M = np.array([[ev_modp(v, q0) for v in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
    r, _ = _kernels.rref_modp(M, ncols)
    return r


# Laurent solutions by interpolation ------------------------------------------


def _entries_modp(mat, xs):
    """Evaluate a dense matrix of RationalFn at the points xs (mod P).

    Returns (values, ok) where ok[t] is False when some denominator vanishes
    at xs[t].
    """
    n = len(mat)
    m = len(mat[0]) if n else 0
    exps = set()
    for row in mat:
        for v in row:
            if v:
                exps.update(v.num.c)
                if v.den.c != {0: 1}:
                    exps.update(v.den.c)
    out = np.zeros((len(xs), n, m), dtype=np.int64)
    ok = np.ones(len(xs), dtype=bool)
    if not exps:
        return out, ok
    table = {}
    for e in exps:
        table[e] = np.array([pow(int(x), e, P) if e >= 0 else pow(_inv(int(x)), -e, P) for x in xs],
                            dtype=np.int64)

    def ev(p):
        acc = np.zeros(len(xs), dtype=np.int64)
        for e, c in p.c.items():
            acc = (acc + _coef_modp(c) * table[e] % P) % P
        return acc

    for i, row in enumerate(mat):
        for j, v in enumerate(row):
            if not v:
                continue
            num = ev(v.num)
            if v.den.c != {0: 1}:
                den = ev(v.den)
                ok &= den != 0
                inv = np.array([_inv(int(x)) if x else 0 for x in den], dtype=np.int64)
                num = num * inv % P
            out[:, i, j] = num
    return out, ok


def _solve_at(Av, Bv):
    n = Av.shape[0]
    M = np.concatenate([Av, Bv], axis=1).copy()
    r, piv = _kernels.rref_modp(M, n)
    if r < n:
        return None
    return M[:, n:]


def _vandermonde_inverse(xs):
    N = len(xs)
    V = np.array([[pow(int(x), k, P) for k in range(N)] for x in xs], dtype=np.int64)
    M = np.concatenate([V, np.eye(N, dtype=np.int64)], axis=1)
    r, _ = _kernels.rref_modp(M, N)
    assert r == N
    return M[:, N:]


def _mat_modp(A, v):
    """A @ v mod P for int64 arrays with entries < P, avoiding overflow."""
    lo = v & 0xFFFF
    hi = v >> 16
    a = (A @ lo) % P
    b = (A @ hi) % P
    return (a + b * 65536 % P) % P


def _lift(c):
    c = int(c)
    return c - P if c > P // 2 else c


def _mul_check(A, X, B):
    n = len(A)
    m = len(B[0]) if n else 0
    for j in range(m):
        col = [(k, X[k][j]) for k in range(len(X)) if X[k][j]]
        for i in range(n):
            s = ZERO
            row = A[i]
            for k, x in col:
                a = row[k]
                if a:
                    s = s + a * x
            if s != B[i][j]:
                return False
    return True


def solve_laurent(A, B, start=4, max_half=1024):
    """X with A X = B where X is expected to have integer Laurent entries.

    A and B may have arbitrary rational entries.  Falls back to exact
    elimination when interpolation does not produce a verified answer within
    the degree window.
    """
    n = len(A)
    if n == 0:
        return []
    m = len(B[0])
    if m == 0:
        return [[] for _ in range(n)]
    A = [[as_rf(v) for v in r] for r in A]
    B = [[as_rf(v) for v in r] for r in B]
    sols = {}
    next_x = 2
    K = start
    while K <= max_half:
        N = 2 * K + 1
        while len(sols) < N + 1:
            batch = []
            while len(batch) < N + 1 - len(sols):
                batch.append(next_x)
                next_x += 1
            Ab, oka = _entries_modp(A, batch)
            Bb, okb = _entries_modp(B, batch)
            for t, x in enumerate(batch):
                if not (oka[t] and okb[t]):
                    continue
                X = _solve_at(Ab[t], Bb[t])
                if X is not None:
                    sols[x] = X
        pts = sorted(sols)[:N]
        check = sorted(sols)[N]
        Vinv = _vandermonde_inverse(pts)
        vals = np.stack([sols[x] * pow(x, K, P) % P for x in pts])  # N x n x m
        flat = vals.reshape(N, n * m)
        coeffs = np.zeros_like(flat)
        for c in range(flat.shape[1]):
            if flat[:, c].any():
                coeffs[:, c] = _mat_modp(Vinv, flat[:, c])
        coeffs = coeffs.reshape(N, n, m)
        # cheap test at a fresh point before the exact check
        xc = check
        pw = np.array([pow(xc, k, P) for k in range(N)], dtype=np.int64)
        pred = np.zeros((n, m), dtype=np.int64)
        for k in range(N):
            pred = (pred + coeffs[k] * pw[k] % P) % P
        want = sols[xc] * pow(xc, K, P) % P
        if np.array_equal(pred, want):
            X = []
            for i in range(n):
                row = []
                for j in range(m):
                    d = {}
                    for k in range(N):
                        c = coeffs[k, i, j]
                        if c:
                            d[k - K] = _lift(c)
                    row.append(RationalFn._raw(LaurentPoly._raw(d), ONE.den) if d else ZERO)
                X.append(row)
            if _mul_check(A, X, B):
                return X
        K *= 2
    return solve_exact(A, B)


def _clear_rows(A, B):
    """Scale each row of [A | B] by a common denominator so all entries are Laurent."""
    A2, B2 = [], []
    for ra, rb in zip(A, B):
        dens = {}
        for v in list(ra) + list(rb):
            if v and not v.is_laurent():
                dens[v.den] = v.den
        s = ONE
        for d in dens.values():
            s = s * RationalFn._raw(d, ONE.den)
        if s != ONE:
            ra = [v * s if v else v for v in ra]
            rb = [v * s if v else v for v in rb]
        A2.append(ra)
        B2.append(rb)
    return A2, B2


def solve_rational(A, B, start=4, max_half=2048):
    """X with A X = B for square nonsingular A over Q(q).

    Rows are scaled to Laurent form, then det(A) and det(A) X (both Laurent)
    are interpolated from evaluations mod P and checked exactly.
    """
    n = len(A)
    if n == 0:
        return []
    m = len(B[0])
    if m == 0:
        return [[] for _ in range(n)]
    A = [[as_rf(v) for v in r] for r in A]
    B = [[as_rf(v) for v in r] for r in B]
    A, B = _clear_rows(A, B)
    vals = {}
    next_x = 2
    K = start
    while K <= max_half:
        N = 2 * K + 1
        while len(vals) < N + 1:
            batch = list(range(next_x, next_x + N + 1 - len(vals)))
            next_x += len(batch)
            Ab, _ = _entries_modp(A, batch)
            Bb, _ = _entries_modp(B, batch)
            for t, x in enumerate(batch):
                d = _kernels.det_modp(Ab[t].copy())
                if not d:
                    continue
                X = _solve_at(Ab[t], Bb[t])
                Y = np.concatenate([X * d % P, np.full((n, 1), d, dtype=np.int64)], axis=1)
                vals[x] = Y
        pts = sorted(vals)[:N]
        xc = sorted(vals)[N]
        coeffs = _interpolate(pts, [vals[x] for x in pts], K)
        if np.array_equal(_eval_coeffs(coeffs, xc, K), vals[xc]):
            polys = _to_laurent(coeffs, K)
            det = polys[0][m]
            Y = [row[:m] for row in polys]
            if det and _mul_check(A, Y, [[b * det for b in row] for row in B]):
                inv = det.inverse()
                return [[y * inv if y else ZERO for y in row] for row in Y]
        K *= 2
    return solve_exact(A, B)


def _interpolate(pts, values, K):
    """Coefficients (exponents -K..K) of Laurent polynomials through the data."""
    N = len(pts)
    shape = values[0].shape
    Vinv = _vandermonde_inverse(pts)
    flat = np.stack([v * pow(x, K, P) % P for x, v in zip(pts, values)]).reshape(N, -1)
    coeffs = np.zeros_like(flat)
    for c in range(flat.shape[1]):
        if flat[:, c].any():
            coeffs[:, c] = _mat_modp(Vinv, flat[:, c])
    return coeffs.reshape((N,) + shape)


def _eval_coeffs(coeffs, x, K):
    out = np.zeros(coeffs.shape[1:], dtype=np.int64)
    for k in range(coeffs.shape[0]):
        out = (out + coeffs[k] * pow(x, k, P) % P) % P
    return out * pow(_inv(x), K, P) % P


def _to_laurent(coeffs, K):
    N, n, m = coeffs.shape
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            d = {}
            for k in range(N):
                c = coeffs[k, i, j]
                if c:
                    d[k - K] = _lift(c)
            row.append(RationalFn._raw(LaurentPoly._raw(d), ONE.den) if d else ZERO)
        out.append(row)
    return out


def inverse_unitriangular(cols, order):
    """Invert a unitriangular sparse matrix.

    cols[j] is a dict row -> scalar with cols[j][j] = 1; `order` lists indices
    so that every off-diagonal entry cols[j][i] has i before j.  Returns the
    columns of the inverse in the same format.
    """
    pos = {k: t for t, k in enumerate(order)}
    inv = {}
    for j in order:
        # solve C x = e_j by back substitution (x supported on indices <= j)
        x = {j: ONE}
        for k in reversed(order[:pos[j] + 1]):
            xk = x.get(k)
            if not xk:
                continue
            for i, c in cols[k].items():
                if i == k or not c:
                    continue
                t = x.get(i, ZERO) - c * xk
                if t:
                    x[i] = t
                else:
                    x.pop(i, None)
        inv[j] = x
    return inv
