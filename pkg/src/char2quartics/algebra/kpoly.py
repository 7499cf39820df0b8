"""Polynomials over K in named function-field variables, reduced by triangular relations.

A :class:`Relations` object holds rules ``v^k -> R`` where R is monic-free of
``v^k`` and only involves ``v`` to lower powers and earlier variables.  Reducing
modulo such a triangular system gives a unique normal form, which is how every
symbolic identity in the function-field layer is verified.
"""
from __future__ import annotations

from .ratfunc import BaseField, RatFunc


class KPoly:
    __slots__ = ("K", "names", "terms")

    def __init__(self, K: BaseField, names, terms=None):
        self.K = K
        self.names = tuple(names)
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def var(cls, K, names, name, power=1):
        e = [0] * len(names)
        e[list(names).index(name)] = power
        return cls(K, names, {tuple(e): K.one()})

    @classmethod
    def const(cls, K, names, c):
        c = K(c)
        return cls(K, names, {(0,) * len(names): c})

    def gens(self):
        return [KPoly.var(self.K, self.names, n) for n in self.names]

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, KPoly):
            return other
        return KPoly.const(self.K, self.names, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return KPoly(self.K, self.names, t)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                t[e] = t[e] + p if e in t else p
        return KPoly(self.K, self.names, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = KPoly.const(self.K, self.names, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base.frobenius()
        return out

    def frobenius(self, k=1):
        q = 1 << k
        return KPoly(self.K, self.names,
                     {tuple(a * q for a in e): c.frobenius(k) for e, c in self.terms.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return self.fmt()

    def fmt(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                cs = f"({cs})" if len(c.num.terms) > 1 or not c.den.is_const() else cs
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def monomial_key(self, e):
        return "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k) or "1"


class Relations:
    """Triangular rewrite system ``var^power = replacement``."""

    def __init__(self, K: BaseField, names, rules=()):
        self.K = K
        self.names = tuple(names)
        self.rules = []  # (index, power, replacement)
        for name, power, repl in rules:
            self.add(name, power, repl)

    def add(self, name, power, repl: KPoly):
        self.rules.append((self.names.index(name), power, repl))

    def reduce(self, p: KPoly, max_steps: int = 100000) -> KPoly:
        """Normal form of p modulo the rules."""
        work = dict(p.terms)
        out = {}
        steps = 0
        while work:
            e = max(work)
            c = work.pop(e)
            if c.is_zero():
                continue
            for idx, power, repl in self.rules:
                if e[idx] >= power:
                    rest = list(e)
                    rest[idx] -= power
                    for re_, rc in repl.terms.items():
                        ne = tuple(a + b for a, b in zip(rest, re_))
                        v = rc * c
                        if ne in work:
                            s = work[ne] + v
                            if s.is_zero():
                                del work[ne]
                            else:
                                work[ne] = s
                        else:
                            work[ne] = v
                    break
            else:
                out[e] = out[e] + c if e in out else c
            steps += 1
            if steps > max_steps:
                raise RuntimeError("rewriting did not terminate")
        return KPoly(self.K, self.names, out)

    def is_zero(self, p: KPoly) -> bool:
        return self.reduce(p).is_zero()


def solve_in_span(target: KPoly, basis, relations: Relations | None = None):
    """Coefficients c (list of RatFunc) with target = sum c_i basis_i, or None.

    Vectors are compared in the monomial coordinates of the normal forms.
    """
    if relations is not None:
        target = relations.reduce(target)
        basis = [relations.reduce(b) for b in basis]
    K = target.K
    monos = sorted({e for b in basis for e in b.terms} | set(target.terms))
    col = {e: i for i, e in enumerate(monos)}
    n = len(basis)
    # augmented rows: one per monomial
    rows = [[K.zero()] * (n + 1) for _ in monos]
    for j, b in enumerate(basis):
        for e, c in b.terms.items():
            rows[col[e]][j] = c
    for e, c in target.terms.items():
        rows[col[e]][n] = c
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, len(rows)) if not rows[i][j].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][j].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][j].is_zero():
                f = rows[i][j]
                rows[i] = [a + f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    if any(not rows[i][n].is_zero() for i in range(r, len(rows))):
        return None
    coeffs = [K.zero()] * n
    for i, j in enumerate(pivots):
        coeffs[j] = rows[i][n]
    return coeffs


def rank(vectors, relations: Relations | None = None) -> int:
    """K-rank of a list of KPolys (after normal forms)."""
    if relations is not None:
        vectors = [relations.reduce(v) for v in vectors]
    if not vectors:
        return 0
    K = vectors[0].K
    monos = sorted({e for v in vectors for e in v.terms})
    rows = [[v.terms.get(e, K.zero()) for e in monos] for v in vectors]
    rk = 0
    ncol = len(monos)
    for j in range(ncol):
        piv = next((i for i in range(rk, len(rows)) if not rows[i][j].is_zero()), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = rows[rk][j].inverse()
        rows[rk] = [x * inv for x in rows[rk]]
        for i in range(rk + 1, len(rows)):
            if not rows[i][j].is_zero():
                f = rows[i][j]
                rows[i] = [a + f * b for a, b in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def substitute(p: KPoly, images: dict, target_names, K=None) -> KPoly:
    """Replace each variable of p by a KPoly over ``target_names``."""
    K = K or p.K
    out = KPoly(K, target_names)
    cache = {}
    for e, c in p.terms.items():
        term = KPoly.const(K, target_names, c)
        for name, k in zip(p.names, e):
            if k:
                if (name, k) not in cache:
                    cache[(name, k)] = images[name] ** k
                term = term * cache[(name, k)]
        out = out + term
    return out
