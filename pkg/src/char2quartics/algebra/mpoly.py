"""Sparse multivariate polynomials over GF(2^m).

Terms are stored as ``{exponent tuple: int coefficient}`` with zero
coefficients never stored.  Monomial order is lexicographic on the exponent
tuples, first variable most significant.  Values are treated as immutable.
"""
from __future__ import annotations

from .gf2m import GF2m, field


class MPoly:
    __slots__ = ("F", "nvars", "terms", "_hash")

    def __init__(self, F: GF2m, nvars: int, terms=None):
        self.F = F
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, F, nvars, c):
        return cls(F, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, F, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(F, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, F, exps, c=1):
        return cls(F, len(exps), {tuple(exps): c})

    def zero(self):
        return MPoly(self.F, self.nvars)

    def one(self):
        return MPoly.const(self.F, self.nvars, 1)

    def _wrap(self, terms):
        p = MPoly.__new__(MPoly)
        p.F, p.nvars, p.terms, p._hash = self.F, self.nvars, terms, None
        return p

    # predicates -------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def const_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_const() and self.const_value() == other
        return (isinstance(other, MPoly) and self.nvars == other.nvars
                and self.F == other.F and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.F.m, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def key(self):
        return tuple(sorted(self.terms.items()))

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(self.F, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) ^ c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._wrap(t)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mul = self.F.mul
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) ^ mul(c1, c2)
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return self._wrap(t)

    __rmul__ = __mul__

    def scale(self, c):
        if c == 0:
            return self.zero()
        mul = self.F.mul
        return self._wrap({e: mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = self.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.frobenius()
        return result

    def frobenius(self, k=1):
        """p^(2^k), computed termwise (characteristic 2)."""
        F, s = self.F, 1 << k
        return self._wrap({tuple(a * s for a in e): F.frob(c, k) for e, c in self.terms.items()})

    # structure --------------------------------------------------------------
    def degree(self, i=None):
        if not self.terms:
            return -1
        if i is None:
            return max(sum(e) for e in self.terms)
        return max(e[i] for e in self.terms)

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        return self if c == 1 else self.scale(self.F.inv(c))

    def derivative(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i] & 1:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c
        return self._wrap(t)

    def evaluate(self, point, F=None):
        """Evaluate at a tuple of field elements (ints) of ``F`` (default own field).

        When ``F`` is an extension, coefficients are lifted into it first.
        """
        from .gf2m import lift
        F = F or self.F
        mul, pw = F.mul, F.pow
        acc = 0
        for e, c in self.terms.items():
            if F is not self.F:
                c = lift(c, self.F.m, F.m)
            v = c
            for x, k in zip(point, e):
                if k:
                    v = mul(v, pw(x, k))
                    if not v:
                        break
            acc ^= v
        return acc

    def substitute(self, images):
        """Compose with polynomials: variable i -> images[i] (MPoly, common ring)."""
        target = next(im for im in images if isinstance(im, MPoly))
        result = target.zero()
        cache = {}
        for e, c in self.terms.items():
            term = MPoly.const(target.F, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def max_divisor_power(self, i):
        """Largest k with x_i^k dividing the polynomial."""
        if not self.terms:
            return 0
        return min(e[i] for e in self.terms)

    def shift_down(self, i, k):
        t = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] -= k
            if ne[i] < 0:
                raise ValueError("not divisible")
            t[tuple(ne)] = c
        return self._wrap(t)

    def homogeneous_part(self, d):
        return self._wrap({e: c for e, c in self.terms.items() if sum(e) == d})

    def low_degree(self):
        return min(sum(e) for e in self.terms) if self.terms else None

    def __repr__(self):
        return self.fmt()

    def fmt(self, names=None):
        if not self.terms:
            return "0"
        names = names or ([f"x{i}" for i in range(self.nvars)] if self.nvars > 2
                          else ["t", "s"][: self.nvars])
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = self.F.fmt(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    # division ---------------------------------------------------------------
    def divmod_univariate(self, other):
        a, b = to_dense(self), to_dense(other)
        q, r = dense_divmod(self.F, a, b)
        return from_dense(self.F, q), from_dense(self.F, r)


# dense univariate helpers (list of coefficients, low degree first) ------------
def to_dense(p: MPoly):
    if p.nvars != 1:
        raise ValueError("univariate polynomial expected")
    if not p.terms:
        return []
    d = max(e[0] for e in p.terms)
    out = [0] * (d + 1)
    for e, c in p.terms.items():
        out[e[0]] = c
    return out


def from_dense(F, coeffs, nvars=1, index=0):
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * nvars
            e[index] = k
            terms[tuple(e)] = c
    p = MPoly.__new__(MPoly)
    p.F, p.nvars, p.terms, p._hash = F, nvars, terms, None
    return p


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def dense_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return trim(out)


def dense_mul(F, a, b):
    if not a or not b:
        return []
    mul = F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] ^= mul(x, y)
    return trim(out)


def dense_scale(F, a, c):
    mul = F.mul
    return trim([mul(x, c) for x in a])


def dense_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    mul = F.mul
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = mul(c, inv)
            q[i - db] = f
            for j in range(db + 1):
                if b[j]:
                    a[i - db + j] ^= mul(f, b[j])
    return trim(q), trim(a[:db])


def dense_gcd(F, a, b):
    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = dense_divmod(F, a, b)
        a, b = b, r
    if not a:
        return []
    return dense_scale(F, a, F.inv(a[-1]))


# bivariate gcd via primitive remainder sequences over F[x0][x1] --------------
def _to_nested(p: MPoly):
    """Coefficient lists in x0 indexed by the power of x1."""
    d1 = max(e[1] for e in p.terms)
    rows = [[] for _ in range(d1 + 1)]
    dense = [dict() for _ in range(d1 + 1)]
    for (e0, e1), c in p.terms.items():
        dense[e1][e0] = c
    for k, row in enumerate(dense):
        if row:
            out = [0] * (max(row) + 1)
            for e0, c in row.items():
                out[e0] = c
            rows[k] = out
    return rows


def _from_nested(F, rows):
    terms = {}
    for k, row in enumerate(rows):
        for e0, c in enumerate(row):
            if c:
                terms[(e0, k)] = c
    p = MPoly.__new__(MPoly)
    p.F, p.nvars, p.terms, p._hash = F, 2, terms, None
    return p


def _content(F, rows):
    g = []
    for row in rows:
        if row:
            g = dense_gcd(F, g, row) if g else dense_scale(F, row, F.inv(row[-1]))
            if len(g) == 1:
                break
    return g


def _nested_trim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _prim(F, rows):
    c = _content(F, rows)
    if not c:
        return rows, c
    return [dense_divmod(F, r, c)[0] if r else [] for r in rows], c


def _pseudo_rem(F, a, b):
    """Pseudo-remainder of a by b as polynomials in x1 over F[x0]."""
    a = [list(r) for r in a]
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [dense_mul(F, r, lb) for r in a]
        for j in range(db + 1):
            if b[j]:
                a[j + shift] = dense_add(a[j + shift], dense_mul(F, la, b[j]))
        _nested_trim(a)
    return a


def gcd(p: MPoly, q: MPoly) -> MPoly:
    """Monic gcd (lex order) for polynomials in at most two variables."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    F = p.F
    if p.nvars == 0:
        return p.one()
    if p.nvars == 1:
        return from_dense(F, dense_gcd(F, to_dense(p), to_dense(q)))
    if p.nvars != 2:
        raise NotImplementedError("gcd is implemented for at most two variables")
    if p.is_const() or q.is_const():
        return p.one()
    a, b = _to_nested(p), _to_nested(q)
    a, ca = _prim(F, a)
    b, cb = _prim(F, b)
    cg = dense_gcd(F, ca, cb)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _pseudo_rem(F, a, b)
        if not r:
            break
        a, b = b, _prim(F, r)[0]
    g = b if len(b) > 1 else [[1]]
    g = [dense_mul(F, row, cg) for row in g]
    return _from_nested(F, g).monic()


def exact_div(p: MPoly, q: MPoly) -> MPoly:
    """p / q assuming divisibility (multivariate, lex leading terms)."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    F = p.F
    if p.nvars == 1:
        qq, r = dense_divmod(F, to_dense(p), to_dense(q))
        if r:
            raise ValueError("inexact division")
        return from_dense(F, qq)
    lq, cq = q.leading()
    inv = F.inv(cq)
    rem = p
    out = {}
    while rem.terms:
        le, lc = rem.leading()
        de = tuple(a - b for a, b in zip(le, lq))
        if min(de) < 0:
            raise ValueError("inexact division")
        c = F.mul(lc, inv)
        out[de] = c
        rem = rem + q * MPoly(F, p.nvars, {de: c})
    return MPoly(F, p.nvars, out)


def ring(m: int, nvars: int):
    """Convenience: (field, generator polynomials)."""
    F = field(m)
    return F, [MPoly.var(F, nvars, i) for i in range(nvars)]
