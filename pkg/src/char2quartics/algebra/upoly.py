"""Dense univariate polynomials over GF(2^m): roots and factorization.

Polynomials are lists of field elements, lowest degree first, without
trailing zeros.  Factorization is the textbook pipeline: squarefree
decomposition (characteristic 2 aware), distinct-degree, then equal-degree
splitting with trace maps.
"""
from __future__ import annotations

import random

from .gf2m import GF2m, lift
from .mpoly import dense_add, dense_divmod, dense_gcd, dense_mul, dense_scale, trim


def monic(F: GF2m, f):
    if not f:
        return f
    return dense_scale(F, f, F.inv(f[-1])) if f[-1] != 1 else list(f)


def derivative(f):
    return trim([f[i] if i % 2 else 0 for i in range(1, len(f))])


def poly_sqrt(F: GF2m, f):
    """g with g^2 = f, for f whose odd coefficients vanish."""
    return trim([F.sqrt(f[i]) for i in range(0, len(f), 2)])


def mulmod(F, a, b, m):
    return dense_divmod(F, dense_mul(F, a, b), m)[1]


def powmod_frob(F, a, k, m):
    """a^(2^k) mod m."""
    for _ in range(k):
        a = mulmod(F, a, a, m)
    return a


def evaluate(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.mul(acc, x) ^ c
    return acc


def squarefree(F: GF2m, f):
    """[(g, e)] with f = lc * prod g^e, g squarefree, monic and pairwise coprime."""
    f = monic(F, f)
    out = []
    if len(f) <= 1:
        return out

    def rec(f, mult):
        if len(f) <= 1:
            return
        d = derivative(f)
        if not d:
            rec(poly_sqrt(F, f), 2 * mult)
            return
        c = dense_gcd(F, f, d)
        w = dense_divmod(F, f, c)[0]
        i = 1
        while len(w) > 1:
            y = dense_gcd(F, w, c)
            z = dense_divmod(F, w, y)[0]
            if len(z) > 1:
                out.append((monic(F, z), i * mult))
            i += 1
            w = y
            c = dense_divmod(F, c, y)[0]
        if len(c) > 1:
            rec(poly_sqrt(F, c), 2 * mult)

    rec(f, 1)
    return out


def ddf(F: GF2m, f):
    """Distinct-degree factorization of a squarefree monic f: [(g, k)]."""
    out = []
    m = F.m
    h = [0, 1]
    k = 0
    f = list(f)
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = powmod_frob(F, h, m, f)
        g = dense_gcd(F, f, dense_add(h, [0, 1]))
        if len(g) > 1:
            out.append((g, k))
            f = dense_divmod(F, f, g)[0]
            h = dense_divmod(F, h, f)[1] if len(f) > 1 else h
    if len(f) > 1:
        out.append((monic(F, f), len(f) - 1))
    return out


def edf(F: GF2m, f, k, rng=None):
    """Split a monic product of distinct degree-k irreducibles."""
    n = len(f) - 1
    if n == k:
        return [f]
    rng = rng or random.Random(0x2C4)
    m = F.m
    q = 1 << m
    while True:
        a = trim([rng.randrange(q) for _ in range(n)])
        if len(a) <= 1:
            continue
        # absolute trace of a over F_{2^(mk)}
        t, acc = a, a
        for _ in range(m * k - 1):
            t = mulmod(F, t, t, f)
            acc = dense_add(acc, t)
        g = dense_gcd(F, f, acc)
        if 1 < len(g) < len(f):
            h = dense_divmod(F, f, g)[0]
            return edf(F, g, k, rng) + edf(F, monic(F, h), k, rng)


def factor(F: GF2m, f):
    """[(irreducible monic, multiplicity)] sorted by (degree, coefficients)."""
    out = []
    for g, e in squarefree(F, f):
        for h, k in ddf(F, g):
            for p in edf(F, h, k):
                out.append((p, e))
    out.sort(key=lambda pe: (len(pe[0]), pe[0], pe[1]))
    return out


def roots(F: GF2m, f):
    """[(root, multiplicity)] of f in F, sorted by root."""
    out = []
    for p, e in factor(F, f):
        if len(p) == 2:
            out.append((p[0], e))
    out.sort()
    return out


def lift_poly(f, d: int, M: int):
    return [lift(c, d, M) for c in f] if d != M else list(f)
