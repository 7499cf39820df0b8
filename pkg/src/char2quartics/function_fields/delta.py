"""Singularity degrees of the prime at infinity via the breve-variable recipes.

Everything is expanded in the local parameter x̆ = 1/x.  A power t^(2^n) of a
breve function that generates the residue extension is a polynomial in x̆; the
degree is then delta(p) = 2 delta(p1) + v(d t^(2^n)) / 2.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import INF, LaurentSeries, differential_valuation, series_expand, span_membership
from ..errors import BranchUnresolvable, InternalInconsistency
from .model import FunctionFieldModel, q4i_as_g3i, q4ii_as_g3ii, unified_view
from .validate import validate


@dataclass(frozen=True)
class DeltaReport:
    delta_p: int
    delta_p1: int
    delta_p2: int
    branch: str
    expansion: LaurentSeries | None = None

    def text(self):
        return (f"delta_p={self.delta_p} delta_p1={self.delta_p1} "
                f"delta_p2={self.delta_p2} branch={self.branch}")

    def to_dict(self):
        d = {"delta_p": self.delta_p, "delta_p1": self.delta_p1,
             "delta_p2": self.delta_p2, "branch": self.branch}
        if self.expansion is not None:
            d["expansion"] = {str(n): str(c) for n, c in self.expansion.items()}
        return d


def _half(v):
    if v == INF or v % 2:
        raise InternalInconsistency(f"differential order {v} is not a finite even number")
    return v // 2


def _poly(K, *coeffs):
    return LaurentSeries.from_poly(K, list(coeffs))


def _delta_qe_i(model):
    a0, a2, a4 = model.values
    K = model.K
    zb2 = _poly(K, a4, 0, a2, 1, a0)          # z̆^2 with z̆ = z / x^2
    return DeltaReport(_half(differential_valuation(zb2)), 0, 0, "inertial", zb2)


def _delta_qe_unified(model):
    a0, a2, b0, b1, b2 = unified_view(model)
    K = model.K
    # w̆ = w/x, z̆ = z/x: w̆^2 = a2 + x̆ + a0 x̆^2, z̆^2 = b2 + b1 x̆ + b0 x̆^2 + x̆ w̆
    wb4 = _poly(K, a2 ** 2, 0, 1, 0, a0 ** 2)
    zb4 = _poly(K, b2 ** 2, 0, b1 ** 2 + a2, 1, b0 ** 2 + a0)
    sol = span_membership(zb4.coeff(0), a2 ** 2, 2)
    if sol is None:
        if model.variant == "QE-iii":
            raise BranchUnresolvable("QE-iii must be ramified over F1")
        t4, branch = zb4, "inertial"
    else:
        u, v = sol
        t4 = zb4 + _poly(K, u ** 4) + wb4.scale(v ** 4)   # t = z̆ + u + v w̆
        if not t4.coeff(0).is_zero():
            raise BranchUnresolvable("the killing combination leaves a nonzero residue")
        branch = "ramified"
    d = _half(differential_valuation(t4))
    rep = DeltaReport(d, 0, 0, branch, t4)
    if branch == "ramified" and not lemma_holds(rep, 2):
        raise InternalInconsistency("ramified branch violates delta(p) >= 2 delta(p1) + deg(p)/2")
    return rep


def _delta_g3_i(model):
    a0, a2, a4 = model.values
    K = model.K
    p1 = _delta_qe_i(model)
    # y̆ = y/x: y̆^4 = a4 + a2 x̆^2 + x̆^3 + a0 x̆^4, residue y̆(p) = a4^(1/4)
    yb4 = _poly(K, a4, 0, a2, 1, a0)
    if span_membership(yb4.coeff(0), a4 ** 2, 2) is not None:
        raise BranchUnresolvable("a4^(1/4) lies in K(a4^(1/2)); a4 cannot be a non-square")
    d = 2 * p1.delta_p + _half(differential_valuation(yb4))
    return DeltaReport(d, p1.delta_p, 0, "inertial", yb4)


def r8_series(model, N=16):
    """(y̆/z̆)^8 for a G3-ii model as a series in x̆ (used by the recipe and tests)."""
    a0, a2, c0, c1, c2 = model.values
    K = model.K
    zb4 = _poly(K, 0, 0, a2, 1, a0)                      # z̆ = z/x
    # y̆^2 = c1 x̆ + c0 x̆^2 + c2 z̆^2 + x̆ z̆, so y̆^8 = c1^4 x̆^4 + c0^4 x̆^8 + c2^4 z̆^8 + x̆^4 z̆^4
    zb8 = zb4.frobenius()
    yb8 = _poly(K, 0, 0, 0, 0, c1 ** 4, 0, 0, 0, c0 ** 4) + zb8.scale(c2 ** 4) + zb4.shift(4)
    # divide numerator and denominator by x̆^4 to get a unit denominator
    num = yb8.shift(-4)
    den = zb8.shift(-4)
    return series_expand(num, den, N)


def _delta_g3_ii(model, N=16):
    a0, a2, c0, c1, c2 = model.values
    K = model.K
    sub = FunctionFieldModel.make("QE-iii", K, a0=a0, a2=a2)
    p1 = _delta_qe_unified(sub)
    r8 = r8_series(model, N)
    sol = span_membership(r8.coeff(0), a2 ** 4, 3)
    if sol is None:
        t8, branch = r8, "inertial"
    else:
        u, v = sol
        # t = r + u + v z̆^2/x̆, (z̆^2/x̆)^8 = a2^4 + x̆^4 + a0^4 x̆^8
        t8 = r8 + _poly(K, u ** 8) + _poly(K, a2 ** 4, 0, 0, 0, 1, 0, 0, 0, a0 ** 4).scale(v ** 8)
        if not t8.coeff(0).is_zero():
            raise BranchUnresolvable("the killing combination leaves a nonzero residue")
        branch = "ramified"
    d = 2 * p1.delta_p + _half(differential_valuation(t8))
    rep = DeltaReport(d, p1.delta_p, 0, branch, r8)
    if branch == "ramified" and not lemma_holds(rep, 4):
        raise InternalInconsistency("ramified branch violates delta(p) >= 2 delta(p1) + deg(p)/2")
    return rep


def lemma_holds(rep: DeltaReport, deg_p: int) -> bool:
    return rep.delta_p >= 2 * rep.delta_p1 + deg_p / 2


def delta(model: FunctionFieldModel, N: int = 16) -> DeltaReport:
    """delta(p), delta(p1), delta(p2) and the branch (inertial/ramified) of p over F1."""
    validate(model)
    v = model.variant
    if v == "QE-i":
        return _delta_qe_i(model)
    if v in ("QE-ii", "QE-iii", "QE-unified"):
        return _delta_qe_unified(model)
    if v == "G3-i":
        return _delta_g3_i(model)
    if v == "Q4-i":
        return _delta_g3_i(q4i_as_g3i(model))
    if v in ("G3-ii", "Hyperelliptic-G3ii"):
        return _delta_g3_ii(model, N)
    if v == "Q4-ii":
        return _delta_g3_ii(q4ii_as_g3ii(model), N)
    raise ValueError(v)  # pragma: no cover
