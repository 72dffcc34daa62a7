"""Cartan data, Weyl group actions and the real rank one admissible pairs.

Weights live in fundamental-weight coordinates (tuples of ints); coweights in
simple-coroot coordinates.  alpha_j is column j of the Cartan matrix.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .scalar import ONE, RationalFn, qpow


class UnsupportedType(ValueError):
    pass


class NotDominant(ValueError):
    pass


class NotMultipleOfVarpi(ValueError):
    pass


def _cartan(series, n):
    if series == "A1xA1":
        if n != 2:
            raise UnsupportedType("A1xA1 has rank 2")
        return [[2, 0], [0, 2]], [1, 1]
    mins = {"A": 1, "B": 2, "C": 3, "D": 4}
    if series == "F4":
        if n != 4:
            raise UnsupportedType("F4 has rank 4")
        # nodes 1,2 long, 3,4 short; {1,2,3} is of type B3
        a = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
        return a, [2, 2, 1, 1]
    if series not in mins or n < mins[series]:
        raise UnsupportedType("%s%s" % (series, n))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    d = [1] * n
    if series == "B":
        # short simple root at node n
        a[n - 1][n - 2] = -2
        d = [2] * (n - 1) + [1]
    elif series == "C":
        # long simple root at node n
        a[n - 2][n - 1] = -2
        d = [1] * (n - 1) + [2]
    elif series == "D":
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return a, d


def _solve_rational(m, b):
    """Solve m x = b over Q for square invertible integer m."""
    n = len(m)
    rows = [[Fraction(v) for v in m[i]] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        piv = rows[c][c]
        rows[c] = [v / piv for v in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [rows[i][n] for i in range(n)]


@dataclass(frozen=True)
class RootDatum:
    series: str
    rank: int
    cartan: tuple
    sym: tuple

    @property
    def nodes(self):
        return range(self.rank)

    def a(self, i, j):
        return self.cartan[i][j]

    def q_i(self, i):
        return qpow(self.sym[i])

    @cached_property
    def simple_roots(self):
        n = self.rank
        return tuple(tuple(self.cartan[i][j] for i in range(n)) for j in range(n))

    def alpha(self, j):
        return self.simple_roots[j]

    def varpi(self, i):
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def zero(self):
        return (0,) * self.rank

    def pair(self, h, lam):
        """<h, lam> for h in coroot coordinates."""
        return sum(h[i] * lam[i] for i in range(self.rank))

    def hpair(self, i, lam):
        return lam[i]

    def s(self, i, lam):
        c = lam[i]
        if c == 0:
            return tuple(lam)
        a = self.simple_roots[i]
        return tuple(x - c * y for x, y in zip(lam, a))

    def act(self, word, lam):
        """Apply s_{w_1} ... s_{w_r} to lam (rightmost letter first)."""
        for i in reversed(word):
            lam = self.s(i, lam)
        return tuple(lam)

    def s_co(self, i, h):
        # s_i(h) = h - <h, alpha_i> h_i
        c = sum(h[k] * self.cartan[k][i] for k in range(self.rank))
        if c == 0:
            return tuple(h)
        h = list(h)
        h[i] -= c
        return tuple(h)

    def act_co(self, word, h):
        for i in reversed(word):
            h = self.s_co(i, h)
        return tuple(h)

    def is_dominant(self, lam):
        return all(x >= 0 for x in lam)

    def root_coords(self, lam):
        """Coordinates of lam in the basis of simple roots (rationals)."""
        return tuple(_solve_rational([list(row) for row in self.cartan], lam))

    def geq(self, lam, mu):
        """lam >= mu in the root-lattice order."""
        c = self.root_coords(tuple(x - y for x, y in zip(lam, mu)))
        return all(v.denominator == 1 and v >= 0 for v in c)

    def height(self, lam):
        return sum(self.root_coords(lam))

    def add(self, lam, mu):
        return tuple(x + y for x, y in zip(lam, mu))

    def sub(self, lam, mu):
        return tuple(x - y for x, y in zip(lam, mu))

    def scale(self, k, lam):
        return tuple(k * x for x in lam)

    def inner(self, lam, mu):
        """Invariant form with (alpha_i, alpha_i) = 2 d_i, on weights."""
        # (varpi_i, alpha_j) = d_j delta_ij ; solve lam in root coords
        c = self.root_coords(lam)
        return sum(c[j] * self.sym[j] * mu[j] for j in range(self.rank))

    @cached_property
    def positive_roots(self):
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for r in frontier:
                for i in self.nodes:
                    t = self.s(i, r)
                    if t not in seen and self.geq(t, self.zero()):
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        return tuple(sorted(seen, key=lambda r: (self.height(r), r)))

    def weyl_dimension(self, lam):
        rho = tuple([1] * self.rank)
        num = Fraction(1)
        for r in self.positive_roots:
            num *= Fraction(self.inner(self.add(lam, rho), r), self.inner(rho, r))
        assert num.denominator == 1
        return int(num)

    def longest_word(self, subset=None):
        return longest_word(self, subset)

    def __repr__(self):
        return "RootDatum(%s%s)" % (self.series, "" if self.series in ("F4", "A1xA1") else self.rank)


def build_datum(series, n=None):
    if series in ("F4",) and n is None:
        n = 4
    if series == "A1xA1" and n is None:
        n = 2
    a, d = _cartan(series, n)
    return RootDatum(series, n, tuple(tuple(r) for r in a), tuple(d))


def longest_word(datum, subset=None):
    """Reduced word for the longest element of W_subset (0-based node indices)."""
    J = sorted(range(datum.rank) if subset is None else subset)
    if not J:
        return ()
    lam = tuple(1 if i in J else 0 for i in range(datum.rank))
    word = []
    while True:
        j = next((j for j in J if lam[j] > 0), None)
        if j is None:
            break
        lam = datum.s(j, lam)
        word.append(j)
    # s_{word[-1]} ... s_{word[0]} is the longest element; reverse to read left to right
    return tuple(reversed(word))


KINDS = ("AI", "AII", "AIII", "AIV", "BII", "CII", "DII", "FII")


@dataclass(frozen=True)
class AdmissiblePair:
    kind: str
    datum: RootDatum
    black: tuple
    tau: tuple
    varsigma: dict = field(hash=False, compare=False)
    varpi: tuple = ()
    n: int = 0

    @property
    def white(self):
        return tuple(i for i in self.datum.nodes if i not in self.black)

    @property
    def kappa(self):
        return {i: RationalFn(0) for i in self.white}

    @cached_property
    def wbullet(self):
        return longest_word(self.datum, self.black)

    def tau_weight(self, lam):
        out = [0] * self.datum.rank
        for i, c in enumerate(lam):
            out[self.tau[i]] = c
        return tuple(out)

    tau_co = tau_weight

    def wtau(self, lam):
        """w_bullet tau applied to a weight."""
        return self.datum.act(self.wbullet, self.tau_weight(lam))

    def wtau_co(self, h):
        return self.datum.act_co(self.wbullet, self.tau_co(h))

    def theta_sum(self, nu):
        return self.datum.add(nu, self.wtau(nu))

    def theta_weight(self, nu):
        return theta_weight(self, nu)

    def y_imath_basis(self):
        return y_imath_basis(self)

    def label(self):
        if self.kind in ("AIV", "BII", "CII", "DII"):
            return "%s:n=%d" % (self.kind, self.n)
        return self.kind

    def __repr__(self):
        return "AdmissiblePair(%s)" % self.label()


def _pair_data(kind, n):
    if kind == "AI":
        return ("A", 1), (), None, {0: qpow(-1)}, (2,)
    if kind == "AII":
        return ("A", 3), (0, 2), None, {1: qpow(1)}, (0, 1, 0)
    if kind == "AIII":
        return ("A1xA1", 2), (), (1, 0), {0: ONE, 1: ONE}, (1, 1)
    if kind == "AIV":
        if n is None or n < 2:
            raise UnsupportedType("AIV needs n >= 2")
        tau = tuple(n - 1 - i for i in range(n))
        vs = {0: ONE, n - 1: qpow(n - 1) * (-1) ** n}
        vp = tuple(1 if i in (0, n - 1) else 0 for i in range(n))
        return ("A", n), tuple(range(1, n - 1)), tau, vs, vp
    if kind == "BII":
        if n is None or n < 2:
            raise UnsupportedType("BII needs n >= 2")
        vp = tuple(1 if i == 0 else 0 for i in range(n))
        return ("B", n), tuple(range(1, n)), None, {0: qpow(2 * n - 3)}, vp
    if kind == "CII":
        if n is None or n < 3:
            raise UnsupportedType("CII needs n >= 3")
        vp = tuple(1 if i == 1 else 0 for i in range(n))
        return ("C", n), (0,) + tuple(range(2, n)), None, {1: qpow(n - 1)}, vp
    if kind == "DII":
        if n is None or n < 4:
            raise UnsupportedType("DII needs n >= 4")
        tau = list(range(n))
        if n % 2 == 0:
            tau[n - 2], tau[n - 1] = n - 1, n - 2
        vp = tuple(1 if i == 0 else 0 for i in range(n))
        return ("D", n), tuple(range(1, n)), tuple(tau), {0: qpow(n - 2)}, vp
    if kind == "FII":
        # the parameter sits on the unique white node 4
        return ("F4", 4), (0, 1, 2), None, {3: qpow(5)}, (0, 0, 0, 1)
    raise UnsupportedType(kind)


def admissible_pair(kind, n=None):
    (series, rank), black, tau, vs, vp = _pair_data(kind, n)
    datum = build_datum(series, rank)
    if tau is None:
        tau = tuple(range(rank))
    return AdmissiblePair(kind, datum, tuple(black), tuple(tau), vs, tuple(vp),
                          rank if kind in ("AIV", "BII", "CII", "DII") else 0)


def theta_weight(pair, nu):
    """m with nu + w_bullet tau nu = m varpi."""
    d = pair.datum
    if not d.is_dominant(nu):
        raise NotDominant(str(nu))
    s = pair.theta_sum(nu)
    vp = pair.varpi
    k = next(i for i, c in enumerate(vp) if c)
    if s[k] % vp[k]:
        raise NotMultipleOfVarpi(str(s))
    m = s[k] // vp[k]
    if d.scale(m, vp) != s or m < 0:
        raise NotMultipleOfVarpi(str(s))
    return m


def integer_kernel(rows, ncols):
    """Z-basis of {x in Z^ncols : rows x = 0} by unimodular column reduction."""
    m = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def colop(j, k, f):  # col_j -= f col_k
        for r in m:
            r[j] -= f * r[k]
        for r in u:
            r[j] -= f * r[k]

    def swap(j, k):
        for r in m:
            r[j], r[k] = r[k], r[j]
        for r in u:
            r[j], r[k] = r[k], r[j]

    piv = 0
    for r in range(len(m)):
        if piv >= ncols:
            break
        while True:
            nz = [j for j in range(piv, ncols) if m[r][j] != 0]
            if not nz:
                break
            k = min(nz, key=lambda j: abs(m[r][j]))
            swap(piv, k)
            done = True
            for j in range(piv + 1, ncols):
                if m[r][j]:
                    colop(j, piv, m[r][j] // m[r][piv])
                    if m[r][j]:
                        done = False
            if done:
                piv += 1
                break
    return [tuple(u[i][j] for i in range(ncols)) for j in range(piv, ncols)]


def y_imath_basis(pair):
    d = pair.datum
    n = d.rank
    cols = []
    for k in range(n):
        e = tuple(1 if i == k else 0 for i in range(n))
        cols.append(d.add(e, pair.wtau_co(e)))
    rows = [[cols[k][i] for k in range(n)] for i in range(n)]
    return integer_kernel(rows, n)


def rho_vee_bullet(pair):
    """rho^vee of the black subsystem, in coroot coordinates (rationals)."""
    d = pair.datum
    J = list(pair.black)
    if not J:
        return (Fraction(0),) * d.rank
    sub = [[d.cartan[k][j] for k in J] for j in J]
    c = _solve_rational(sub, [1] * len(J))
    out = [Fraction(0)] * d.rank
    for k, v in zip(J, c):
        out[k] = v
    return tuple(out)


def check_pair_invariants(pair):
    """Return a list of (name, ok, witness) for the registry invariants."""
    d = pair.datum
    out = []
    tau = pair.tau
    ok = all(tau[tau[i]] == i for i in d.nodes) and set(tau[j] for j in pair.black) == set(pair.black)
    ok = ok and all(d.cartan[tau[i]][tau[j]] == d.cartan[i][j] for i in d.nodes for j in d.nodes)
    out.append(("tau-involution", ok, None if ok else str(tau)))
    bad = []
    for j in pair.black:
        lhs = d.act(pair.wbullet, d.alpha(j))
        rhs = d.scale(-1, d.alpha(tau[j]))
        if lhs != rhs:
            bad.append(j)
    out.append(("wbullet-alpha", not bad, str(bad) if bad else None))
    rv = rho_vee_bullet(pair)
    bad = []
    for i in pair.white:
        if tau[i] == i:
            v = sum(rv[k] * d.cartan[k][i] for k in d.nodes)
            if Fraction(v).denominator != 1:
                bad.append(i)
    out.append(("rho-vee-integral", not bad, str(bad) if bad else None))
    bad = []
    for i in d.nodes:
        try:
            theta_weight(pair, d.varpi(i))
        except NotMultipleOfVarpi:
            bad.append(i)
    out.append(("theta-multiple-of-varpi", not bad, str(bad) if bad else None))
    return out


def theta_table(pair):
    d = pair.datum
    return {i + 1: theta_weight(pair, d.varpi(i)) for i in d.nodes}


def parse_weight(text, datum):
    """Parse 'w2', '2w1+w3', 'wn', '0' into a weight tuple (1-based labels)."""
    text = text.replace(" ", "")
    lam = [0] * datum.rank
    if text in ("0", ""):
        return tuple(lam)
    for term in text.split("+"):
        if "w" not in term:
            raise ValueError("bad weight term %r" % term)
        c, idx = term.split("w", 1)
        c = int(c) if c else 1
        if idx == "n":
            k = datum.rank
        else:
            k = int(idx)
        if not 1 <= k <= datum.rank:
            raise ValueError("node %d out of range" % k)
        lam[k - 1] += c
    return tuple(lam)


def format_weight(lam):
    parts = []
    for i, c in enumerate(lam):
        if c == 0:
            continue
        if c == 1:
            parts.append("w%d" % (i + 1))
        elif c == -1:
            parts.append("-w%d" % (i + 1))
        else:
            parts.append("%dw%d" % (c, i + 1))
    if not parts:
        return "0"
    s = parts[0]
    for p in parts[1:]:
        s += p if p.startswith("-") else "+" + p
    return s
