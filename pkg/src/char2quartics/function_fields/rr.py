"""Monomial bases of the Riemann-Roch spaces H^0(p_n^m) and their closure check."""
from __future__ import annotations

from ..algebra import KPoly, rank, solve_in_span
from ..errors import Unsupported
from .model import FunctionFieldModel, ring
from .validate import unified_is_inertial, validate


def _mono(**powers):
    return powers


def _xs(n, **extra):
    return [dict(x=i, **extra) for i in range(n + 1)] if n >= 0 else []


def _table(model: FunctionFieldModel, level: int, m: int):
    v = model.variant
    if m < 0:
        raise Unsupported(f"negative exponent m={m}")
    if v == "QE-i":
        if level == 0:
            return _xs(m) + _xs(m - 2, z=1)
        if level == 1:
            return _xs(m)
    elif v in ("QE-ii", "QE-iii", "QE-unified"):
        if level == 2:
            return _xs(m)
        if level == 1:
            return _xs(m) + _xs(m - 1, w=1)
        if level == 0:
            e = 1 if unified_is_inertial(model) else 2
            if m % e == 0:
                n = m // e
                return _xs(n) + _xs(n - 1, w=1) + _xs(n - 1, z=1) + _xs(n - 2, w=1, z=1)
            if v == "QE-iii":
                n = (m - 1) // 2
                return _xs(n) + _xs(n, z=1) + _xs(n - 1, w=1) + _xs(n - 1, w=1, z=1)
    elif v == "G3-i":
        if level == 0:
            return [dict(x=i, y=j) for j in range(min(m, 3) + 1) for i in range(m - j + 1)]
        if level == 1:
            return _xs(m) + _xs(m - 2, y=2)
        if level == 2:
            return _xs(m)
    elif v in ("G3-ii", "Hyperelliptic-G3ii"):
        if level == 0 and (v == "G3-ii" and not model["c1"].is_zero() or m <= 1):
            return [dict(z=i, y=j) for j in range(min(m, 3) + 1) for i in range(m - j + 1)]
        if level == 1:
            n = m // 2
            if m % 2 == 0:
                return _xs(n) + _xs(n - 1, z=2) + _xs(n - 1, z=1) + _xs(n - 2, z=3)
            return _xs(n) + _xs(n, z=1) + _xs(n - 1, z=2) + _xs(n - 1, z=3)
        if level == 2:
            return _xs(m) + _xs(m - 1, z=2)
        if level == 3:
            return _xs(m)
    raise Unsupported(f"no tabulated basis for {v} at level {level}, exponent {m}")


def rr_basis(model: FunctionFieldModel, level: int, m: int):
    """Basis of H^0(p_level^m) as a list of KPoly monomials in the model's variables."""
    validate(model)
    names, _ = ring(model)
    out = []
    for powers in _table(model, level, m):
        e = tuple(powers.get(n, 0) for n in names)
        out.append(KPoly(model.K, names, {e: model.K.one()}))
    return out


def rr_basis_text(basis):
    return [b.monomial_key(next(iter(b.terms))) for b in basis]


def check_closure(model: FunctionFieldModel, level: int, m: int) -> dict:
    """Products of basis elements of H^0(p^m) lie in H^0(p^(2m)); the basis is independent."""
    _, rel = ring(model)
    small = rr_basis(model, level, m)
    big = rr_basis(model, level, 2 * m)
    independent = rank(small, rel) == len(small)
    failures = []
    for i, f in enumerate(small):
        for g in small[i:]:
            if solve_in_span(f * g, big, rel) is None:
                failures.append((f, g))
    return {"independent": independent, "closed": not failures, "failures": failures}


def tabulated_cases(model: FunctionFieldModel, max_power: int = 3):
    """(level, exponent) pairs with a tabulated basis, exponents 1..max_power."""
    out = []
    for level in range(4):
        for m in range(1, max_power + 1):
            try:
                _table(model, level, m)
            except Unsupported:
                continue
            out.append((level, m))
    return out
