"""Polynomials and ideals over GF(2) in three affine chart coordinates.

Thin layer over sympy's Groebner bases (``modulus=2``) plus evaluation and
root finding over GF(2^k) with the package's own field arithmetic.
"""
from __future__ import annotations

import itertools
from functools import reduce
from math import gcd as igcd

import sympy as sp

from ..algebra import field, lift
from ..algebra.gf2m import MAX_DEGREE
from ..algebra.upoly import factor
from ..errors import Unsupported
from ..plane_geometry.analysis import field_roots

GENS = sp.symbols("x1 x2 x3")
_SAT = sp.Symbol("s_")


def P(expr) -> sp.Poly:
    return sp.Poly(expr, *GENS, modulus=2)


def var(i) -> sp.Poly:
    return P(GENS[i])


def const(c) -> sp.Poly:
    return P(sp.Integer(c % 2))


def is_zero(p: sp.Poly) -> bool:
    return p.is_zero


def low_degree(p: sp.Poly) -> int:
    return min(sum(m) for m in p.monoms())


def homogeneous_part(p: sp.Poly, d: int) -> sp.Poly:
    return P(sum((sp.Mul(*(g ** e for g, e in zip(GENS, m))) for m in p.monoms() if sum(m) == d),
                 sp.Integer(0)))


def compose(p: sp.Poly, images) -> sp.Poly:
    """p(images[0], images[1], images[2]) with images Polys in the same gens."""
    out = const(0)
    powers = [dict() for _ in range(3)]

    def pw(i, e):
        if e not in powers[i]:
            powers[i][e] = images[i] ** e
        return powers[i][e]

    for m, c in p.terms():
        if int(c) % 2:
            term = const(1)
            for i, e in enumerate(m):
                if e:
                    term = term * pw(i, e)
            out = out + term
    return out


def divide_power(p: sp.Poly, i: int):
    """(p / x_i^r, r) with r maximal."""
    r = min(m[i] for m in p.monoms())
    if r == 0:
        return p, 0
    q, rem = sp.div(p, var(i) ** r)
    assert rem.is_zero
    return q, r


def terms(p: sp.Poly):
    return [(m, 1) for m, c in p.terms() if int(c) % 2]


def evaluate(p: sp.Poly, point, M: int = 1) -> int:
    """Value at a point of GF(2^M)^3 (coefficients are 0/1)."""
    F = field(M)
    acc = 0
    for m, _ in terms(p):
        v = 1
        for x, e in zip(point, m):
            if e:
                v = F.mul(v, F.pow(x, e))
                if not v:
                    break
        acc ^= v
    return acc


def diff(p: sp.Poly, i: int) -> sp.Poly:
    return p.diff(GENS[i])


def groebner(polys, order="lex", gens=GENS):
    polys = [q.as_expr() if isinstance(q, sp.Poly) else q for q in polys]
    polys = [q for q in polys if q != 0]
    if not polys:
        return []
    return list(sp.groebner(polys, *gens, modulus=2, order=order).exprs)


def is_unit(polys) -> bool:
    G = groebner(polys, order="grevlex")
    return len(G) == 1 and G[0] == 1


def saturate(polys, i: int):
    """Generators of (I : x_i^oo), via elimination of an auxiliary variable."""
    gens = (_SAT,) + tuple(GENS)
    G = groebner(list(polys) + [1 + _SAT * GENS[i]], order="lex", gens=gens)
    return [P(g) for g in G if _SAT not in g.free_symbols]


def univariate_roots(p_expr, gen_index: int):
    """Distinct roots (field degree, value) of a univariate GF(2) polynomial in x_i."""
    g = GENS[gen_index]
    up = sp.Poly(p_expr, g, modulus=2)
    coeffs = [int(c) % 2 for c in reversed(up.all_coeffs())]
    F2 = field(1)
    out = []
    for fac, _ in factor(F2, coeffs):
        k = len(fac) - 1
        if k > MAX_DEGREE:
            raise Unsupported(f"root field degree {k} is beyond GF(2^{MAX_DEGREE})")
        Fk = field(k)
        for r in field_roots(Fk, [lift(c, 1, k) for c in fac]):
            out.append((k, r))
    return out


def zero_dim_points(polys):
    """All points of a zero-dimensional ideal as (field degree M, coords in GF(2^M)).

    Each coordinate's eliminant is factored; candidate tuples from the root
    sets are checked against the generators.
    """
    G = groebner(polys, order="lex")
    if G == [1]:
        return []
    roots = []
    for i in range(3):
        order = [GENS[j] for j in range(3) if j != i] + [GENS[i]]
        Gi = list(sp.groebner([P(q).as_expr() for q in G], *order, modulus=2, order="lex").exprs)
        uni = [q for q in Gi if q.free_symbols <= {GENS[i]}]
        if not uni:
            raise Unsupported("ideal is not zero-dimensional")
        roots.append(univariate_roots(uni[0], i))
    degs = [k for rs in roots for k, _ in rs]
    M = reduce(lambda a, b: a * b // igcd(a, b), degs, 1)
    if M > MAX_DEGREE:
        raise Unsupported(f"points need GF(2^{M})")
    lifted = [sorted({lift(r, k, M) for k, r in rs}) for rs in roots]
    gens = [P(q) for q in G]
    pts = []
    for cand in itertools.product(*lifted):
        if all(evaluate(q, cand, M) == 0 for q in gens):
            pts.append((M, cand))
    return pts


def fmt(p: sp.Poly, names=None) -> str:
    expr = p.as_expr()
    if names:
        expr = expr.subs(dict(zip(GENS, sp.symbols(names))), simultaneous=True)
    return str(expr).replace("**", "^")


def factor_form(form: sp.Poly):
    """Components of a ternary form over GF(2): [(factor, multiplicity)].

    Linear factors are split off by trial division over the seven GF(2)
    lines; what remains is returned as one component.  A remaining conic
    that is singular would be a pair of conjugate lines and is rejected.
    """
    out = []
    rest = form
    for coeffs in itertools.product((0, 1), repeat=3):
        if not any(coeffs):
            continue
        lin = P(sum(c * g for c, g in zip(coeffs, GENS)))
        e = 0
        while rest.total_degree() > 0:
            q, r = sp.div(rest, lin)
            if not r.is_zero:
                break
            rest, e = q, e + 1
        if e:
            out.append((lin, e))
    if rest.total_degree() > 0:
        if rest.total_degree() == 2 and _conic_singular(rest):
            raise Unsupported(f"{fmt(rest)} splits into conjugate lines over GF(4)")
        out.append((rest, 1))
    return out


def _conic_singular(q: sp.Poly) -> bool:
    """A ternary quadratic form over GF(2) with a singular point over some GF(2^k)."""
    for M in (1, 2):
        F = field(M)
        for p in itertools.product(range(1 << M), repeat=3):
            if any(p) and evaluate(q, p, M) == 0 and \
                    all(evaluate(diff(q, i), p, M) == 0 for i in range(3)):
                return True
    return False


def has_zero_outside(polys, centers) -> bool:
    """Whether V(polys) has a point (over the algebraic closure) not among ``centers``.

    A point q differs from each center c in some coordinate; for every choice
    of such coordinates, q survives the saturation by the product of
    (x_i - c_i), which is tested with an auxiliary variable.
    """
    polys = [q.as_expr() if isinstance(q, sp.Poly) else q for q in polys]
    if not centers:
        return not is_unit(polys)
    gens = (_SAT,) + tuple(GENS)
    for choice in itertools.product(range(3), repeat=len(centers)):
        g = sp.Integer(1)
        for c, i in zip(centers, choice):
            g *= GENS[i] + c[i]
        G = groebner(polys + [1 + _SAT * g], order="grevlex", gens=gens)
        if not (len(G) == 1 and G[0] == 1):
            return True
    return False
