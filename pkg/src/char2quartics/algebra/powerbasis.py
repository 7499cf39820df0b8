"""Power-basis decomposition of K over K^(2^k) and the membership tests built on it.

For K = F_q(t_1..t_r) the monomials t^e with 0 <= e_i < 2^k form a basis of K
over K^(2^k).  Every "is a square", "is in K^2 + K^2 a" test reduces to reading
off components in that basis.
"""
from __future__ import annotations

from ..errors import DegenerateSpan
from .mpoly import MPoly
from .ratfunc import RatFunc


def decompose_by_power_basis(f: RatFunc, k: int) -> dict:
    """Return ``{e: g_e}`` with ``f = sum_e t^e * g_e^(2^k)``; zero components omitted.

    Keys are exponent tuples of length r.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    K = f.K
    F = K.F
    q = 1 << k
    if f.is_zero():
        return {}
    n, d = f.num, f.den
    # f = n d^(q-1) / d^q, and d^q is already a 2^k-th power
    N = n * d ** (q - 1) if not d.is_const() else n
    parts: dict = {}
    for e, c in N.terms.items():
        cls = tuple(x % q for x in e)
        root_exp = tuple(x // q for x in e)
        parts.setdefault(cls, {})[root_exp] = F.root2k(c, k)
    out = {}
    for cls, terms in parts.items():
        g = MPoly(F, K.r, terms)
        if d.is_const():
            out[cls] = RatFunc(K, g.scale(F.root2k(F.inv(d.const_value()), k)),
                               MPoly.const(F, K.r, 1), _canon=False)
        else:
            out[cls] = RatFunc(K, g, d)
    return dict(sorted(out.items()))


def reassemble(parts: dict, K, k: int) -> RatFunc:
    """Inverse of :func:`decompose_by_power_basis`."""
    total = K.zero()
    for e, g in parts.items():
        mono = K.one()
        for i, x in enumerate(e):
            if x:
                mono = mono * K.gen(i) ** x
        total = total + mono * g.frobenius(k)
    return total


def power_membership(f: RatFunc, k: int):
    """Return g with g^(2^k) == f, or None when f is not a 2^k-th power."""
    parts = decompose_by_power_basis(f, k)
    zero = (0,) * f.K.r
    if any(e != zero for e in parts):
        return None
    return parts.get(zero, f.K.zero())


def span_membership(f: RatFunc, a: RatFunc, k: int):
    """Solve f = u^(2^k) + v^(2^k) * a over K; return (u, v) or None.

    Raises DegenerateSpan when a is itself a 2^k-th power.
    """
    K = f.K
    zero = (0,) * K.r
    A = decompose_by_power_basis(a, k)
    nonconst = [e for e in A if e != zero]
    if not nonconst:
        raise DegenerateSpan(f"{a} is a {1 << k}-th power; the span K^q + K^q*a degenerates")
    Fp = decompose_by_power_basis(f, k)
    estar = nonconst[0]
    v = Fp.get(estar, K.zero()) / A[estar]
    for e in set(A) | set(Fp):
        if e == zero:
            continue
        if Fp.get(e, K.zero()) != v * A.get(e, K.zero()):
            return None
    u = Fp.get(zero, K.zero()) + v * A.get(zero, K.zero())
    return u, v


def is_power(f: RatFunc, k: int = 1) -> bool:
    return power_membership(f, k) is not None
