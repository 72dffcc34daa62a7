"""Exact arithmetic in Z[q, q^-1] and Q(q).

LaurentPoly is a finitely supported map exponent -> rational coefficient.
RationalFn is a quotient of integer Laurent polynomials kept in a canonical
form, so equality is structural.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd


class NotRegularAtInfinity(ValueError):
    pass


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    __slots__ = ("c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        elif isinstance(coeffs, dict):
            self.c = {e: _norm_coeff(v) for e, v in coeffs.items() if v != 0}
        else:
            # constant
            self.c = {0: _norm_coeff(coeffs)} if coeffs != 0 else {}
        self._hash = None

    @classmethod
    def _raw(cls, d):
        p = cls.__new__(cls)
        p.c = d
        p._hash = None
        return p

    @classmethod
    def monomial(cls, e, coeff=1):
        return cls._raw({e: coeff} if coeff != 0 else {})

    def is_zero(self):
        return not self.c

    def degree(self):
        return max(self.c) if self.c else None

    def low(self):
        return min(self.c) if self.c else None

    def is_monomial(self):
        return len(self.c) == 1

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly(other)
        if len(self.c) < len(other.c):
            a, b = other.c, self.c
        else:
            a, b = self.c, other.c
        d = dict(a)
        for e, v in b.items():
            w = d.get(e, 0) + v
            if w:
                d[e] = _norm_coeff(w)
            else:
                d.pop(e, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: _norm_coeff(v * other) for e, v in self.c.items()})
        a, b = self.c, other.c
        if not a or not b:
            return LaurentPoly._raw({})
        if len(b) == 1:
            (f, w), = b.items()
            return LaurentPoly._raw({e + f: _norm_coeff(v * w) for e, v in a.items()})
        if len(a) == 1:
            (f, w), = a.items()
            return LaurentPoly._raw({e + f: _norm_coeff(v * w) for e, v in b.items()})
        d = {}
        for e, v in a.items():
            for f, w in b.items():
                k = e + f
                d[k] = d.get(k, 0) + v * w
        return LaurentPoly._raw({k: _norm_coeff(v) for k, v in d.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, v), = self.c.items()
            return LaurentPoly._raw({e * n: _norm_coeff(Fraction(1) / Fraction(v) ** (-n))})
        out = LaurentPoly._raw({0: 1})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self.c.items()})

    def bar(self):
        return LaurentPoly._raw({-e: v for e, v in self.c.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.c == other.c
        if isinstance(other, RationalFn):
            return other == self
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.c
            return self.c == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.c.items()))
        return self._hash

    def is_integral(self):
        return all(isinstance(v, int) for v in self.c.values())

    def coeff(self, e):
        return self.c.get(e, 0)

    def evaluate(self, x):
        return sum(Fraction(v) * Fraction(x) ** e for e, v in self.c.items())

    def __repr__(self):
        return render_poly(self)


def render_poly(p):
    if not p.c:
        return "0"
    out = []
    for e in sorted(p.c, reverse=True):
        v = p.c[e]
        neg = v < 0
        a = -v if neg else v
        if e == 0:
            body = str(a)
        else:
            mon = "q" if e == 1 else "q^%d" % e
            if a == 1:
                body = mon
            elif isinstance(a, Fraction):
                body = "(%s)%s" % (a, mon)
            else:
                body = "%s%s" % (a, mon)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


# dense integer polynomial helpers (index = exponent)

def _to_dense(p, low):
    deg = max(p.c)
    out = [0] * (deg - low + 1)
    for e, v in p.c.items():
        out[e - low] = v
    return out


def _from_dense(a, low):
    return LaurentPoly._raw({i + low: v for i, v in enumerate(a) if v})


def _strip(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _content(a):
    g = 0
    for v in a:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _primitive(a):
    g = _content(a)
    if g in (0, 1):
        return a
    return [v // g for v in a]


def _prem(a, b):
    # pseudo remainder of a by b, both dense int lists with nonzero leads
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [v * lb for v in a]
        for i, bv in enumerate(b):
            a[i + shift] -= la * bv
        _strip(a)
    return a


def _poly_gcd(a, b):
    a = _primitive(_strip(list(a)))
    b = _primitive(_strip(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _prem(a, b)
        a, b = b, _primitive(r) if r else r
    if a[-1] < 0:
        a = [-v for v in a]
    return a


def _exact_div(a, b):
    # a / b over Z, assuming b divides a
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    while len(a) - 1 >= db and a:
        la = a[-1]
        c, rem = divmod(la, lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bv in enumerate(b):
            a[i + shift] -= c * bv
        _strip(a)
    if a:
        raise ArithmeticError("inexact polynomial division")
    return q


def _lcm(a, b):
    return a * b // gcd(a, b)


_ONE_POLY = LaurentPoly._raw({0: 1})


class RationalFn:
    """Element of Q(q) in canonical form.

    num and den have integer coefficients, den has lowest exponent 0 and a
    positive lowest coefficient, the pair is coprime and jointly primitive.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly(Fraction(num) if not isinstance(num, int) else num)
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly(Fraction(den) if not isinstance(den, int) else den)
        self.num, self.den = _canon(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        x = cls.__new__(cls)
        x.num = num
        x.den = den
        x._hash = None
        return x

    @classmethod
    def laurent(cls, p):
        """Wrap a Laurent polynomial (rational coefficients allowed)."""
        if p.is_integral():
            return cls._raw(p, _ONE_POLY)
        return cls(p)

    # predicates

    def is_zero(self):
        return not self.num.c

    def is_laurent(self):
        return self.den is _ONE_POLY or self.den.c == {0: 1}

    def is_in_A(self):
        return len(self.den.c) == 1

    def is_in_Ainf(self):
        if not self.num.c:
            return True
        return self.num.degree() <= self.den.degree()

    def valuation_inf(self):
        """deg num - deg den; q^-1 A_inf means < 0."""
        if not self.num.c:
            return None
        return self.num.degree() - self.den.degree()

    def as_laurent(self):
        if len(self.den.c) != 1:
            raise ValueError("not in A: %s" % self)
        d = self.den.c[0]
        if d == 1:
            return self.num
        return LaurentPoly({e: Fraction(v, d) for e, v in self.num.c.items()})

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, RationalFn):
            other = as_rf(other)
        if not self.num.c:
            return other
        if not other.num.c:
            return self
        if self.den is _ONE_POLY and other.den is _ONE_POLY:
            return RationalFn._raw(self.num + other.num, _ONE_POLY)
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFn):
            other = as_rf(other)
        return self + (-other)

    def __rsub__(self, other):
        return as_rf(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFn):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                if self.den is _ONE_POLY:
                    return RationalFn._raw(self.num * other, _ONE_POLY)
            other = as_rf(other)
        if not self.num.c or not other.num.c:
            return ZERO
        if self.den is _ONE_POLY and other.den is _ONE_POLY:
            return RationalFn._raw(self.num * other.num, _ONE_POLY)
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.c:
            raise ZeroDivisionError("inverse of 0 in Q(q)")
        return _make(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFn):
            other = as_rf(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_rf(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        if self.den is _ONE_POLY:
            return RationalFn._raw(self.num.bar(), _ONE_POLY)
        return _make(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return self.num.c == other.num.c and self.den.c == other.den.c
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self == as_rf(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num.c)

    def __repr__(self):
        return render(self)

    def ev_inf(self):
        return ev_inf(self)


def _canon(num, den):
    if not den.c:
        raise ZeroDivisionError("zero denominator")
    if not num.c:
        return LaurentPoly._raw({}), _ONE_POLY
    # clear rational coefficients
    m = 1
    for v in num.c.values():
        if isinstance(v, Fraction):
            m = _lcm(m, v.denominator)
    for v in den.c.values():
        if isinstance(v, Fraction):
            m = _lcm(m, v.denominator)
    if m != 1:
        num = LaurentPoly._raw({e: int(v * m) for e, v in num.c.items()})
        den = LaurentPoly._raw({e: int(v * m) for e, v in den.c.items()})
    lo = den.low()
    if len(den.c) == 1:
        d = den.c[lo]
        num = num.shift(-lo) if lo else num
        g = d
        for v in num.c.values():
            g = gcd(g, v)
            if g == 1:
                break
        if d < 0:
            g = -g
        if g != 1:
            num = LaurentPoly._raw({e: v // g for e, v in num.c.items()})
            d //= g
        if d == 1:
            return num, _ONE_POLY
        return num, LaurentPoly._raw({0: d})
    nlo = num.low()
    a = _to_dense(num, nlo)
    b = _to_dense(den, lo)
    g = _poly_gcd(a, b)
    if len(g) > 1:
        a = _exact_div(a, g)
        b = _exact_div(b, g)
    c = gcd(_content(a), _content(b))
    if b[0] < 0:
        c = -c
    if c != 1:
        a = [v // c for v in a]
        b = [v // c for v in b]
    if len(b) == 1 and b[0] == 1:
        return _from_dense(a, nlo - lo), _ONE_POLY
    return _from_dense(a, nlo - lo), _from_dense(b, 0)


def _make(num, den):
    x = RationalFn.__new__(RationalFn)
    x.num, x.den = _canon(num, den)
    if x.den.c == {0: 1}:
        x.den = _ONE_POLY
    x._hash = None
    return x


def as_rf(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFn.laurent(x)
    if isinstance(x, int):
        if x == 0:
            return ZERO
        if x == 1:
            return ONE
        return RationalFn._raw(LaurentPoly._raw({0: x}), _ONE_POLY)
    if isinstance(x, Fraction):
        return RationalFn(x)
    raise TypeError("cannot coerce %r to RationalFn" % (x,))


ZERO = RationalFn._raw(LaurentPoly._raw({}), _ONE_POLY)
ONE = RationalFn._raw(LaurentPoly._raw({0: 1}), _ONE_POLY)


@lru_cache(maxsize=None)
def qpow(k):
    return RationalFn._raw(LaurentPoly._raw({k: 1}), _ONE_POLY)


Q = qpow(1)


def bar(x):
    if isinstance(x, LaurentPoly):
        return x.bar()
    return as_rf(x).bar()


@lru_cache(maxsize=None)
def qint(n, d=1):
    """[n]_i with q_i = q^d as a Laurent polynomial; [-n] = -[n]."""
    if n == 0:
        return LaurentPoly._raw({})
    if n < 0:
        return -qint(-n, d)
    return LaurentPoly._raw({d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(m, d=1):
    out = _ONE_POLY
    for n in range(1, m + 1):
        out = out * qint(n, d)
    return out


@lru_cache(maxsize=None)
def qbinom(n, k, d=1):
    """Quantum binomial [n choose k]_i for n >= 0, as a Laurent polynomial."""
    if k < 0 or k > n:
        return LaurentPoly._raw({})
    num = RationalFn.laurent(qfact(n, d))
    den = RationalFn.laurent(qfact(k, d) * qfact(n - k, d))
    return (num / den).as_laurent()


@lru_cache(maxsize=None)
def qint_rf(n, d=1):
    return RationalFn.laurent(qint(n, d))


@lru_cache(maxsize=None)
def inv_qfact(m, d=1):
    return RationalFn.laurent(qfact(m, d)).inverse()


def is_in_A(x):
    return as_rf(x).is_in_A()


def is_in_Ainf(x):
    return as_rf(x).is_in_Ainf()


def ev_inf(x):
    """Value at q = infinity of an element of A_inf."""
    x = as_rf(x)
    if not x.num.c:
        return 0
    dn, dd = x.num.degree(), x.den.degree()
    if dn > dd:
        raise NotRegularAtInfinity(render(x))
    if dn < dd:
        return 0
    return _norm_coeff(Fraction(x.num.c[dn], x.den.c[dd]))


def expand_at_inf(x, lowest):
    """Coefficients c_k (k >= lowest) of the expansion of x in powers of q^-1.

    Returns a dict exponent -> Fraction covering every exponent from the top
    of the expansion down to `lowest`.
    """
    x = as_rf(x)
    if not x.num.c:
        return {}
    num = {e: Fraction(v) for e, v in x.num.c.items()}
    den = x.den.c
    dd = max(den)
    lead = Fraction(den[dd])
    out = {}
    k = max(num) - dd
    while k >= lowest:
        top = k + dd
        v = num.pop(top, 0)
        if v:
            c = v / lead
            out[k] = c
            for e, w in den.items():
                t = e + k
                if t == top:
                    continue
                nv = num.get(t, 0) - c * w
                if nv:
                    num[t] = nv
                else:
                    num.pop(t, None)
        if not num:
            break
        k -= 1
    return out


def render(x):
    """Text form such as (q^2+1+q^-2)/(q+q^-1), exponents decreasing."""
    if isinstance(x, LaurentPoly):
        return render_poly(x)
    x = as_rf(x)
    if x.den is _ONE_POLY or x.den.c == {0: 1}:
        return render_poly(x.num)
    d = x.den.degree()
    s = d // 2
    num = x.num.shift(-s)
    den = x.den.shift(-s)
    if len(den.c) == 1 and den.c.get(0) is not None:
        return "(%s)/%s" % (render_poly(num), render_poly(den))
    return "(%s)/(%s)" % (render_poly(num), render_poly(den))


def parse(text):
    """Inverse of render for the forms it produces (used by tests and CLI)."""
    text = text.strip()
    if text.startswith("(") and ")/" in text:
        depth = 0
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    break
        num = _parse_poly(text[1:i])
        rest = text[i + 2:]
        if rest.startswith("("):
            rest = rest[1:-1]
        return as_rf(num) / as_rf(_parse_poly(rest))
    return as_rf(_parse_poly(text))


def _parse_poly(s):
    s = s.replace(" ", "")
    if s == "0":
        return LaurentPoly()
    terms = []
    i = 0
    cur = ""
    while i < len(s):
        ch = s[i]
        if ch in "+-" and cur and not cur.endswith("^"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
        i += 1
    if cur:
        terms.append(cur)
    d = {}
    for t in terms:
        sign = 1
        if t[0] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
        if "q" in t:
            cpart, epart = t.split("q", 1)
            if cpart.startswith("(") and cpart.endswith(")"):
                cpart = cpart[1:-1]
            c = Fraction(cpart) if cpart else Fraction(1)
            e = int(epart[1:]) if epart.startswith("^") else 1
        else:
            c, e = Fraction(t), 0
        d[e] = d.get(e, 0) + sign * c
    return LaurentPoly(d)
