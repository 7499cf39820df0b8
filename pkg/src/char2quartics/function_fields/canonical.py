"""Canonical plane quartic models of the genus-3 normal forms."""
from __future__ import annotations

from ..algebra import KPoly
from ..errors import Hyperelliptic, InternalInconsistency
from .model import FunctionFieldModel, forward_bijection, normalize_c0, ring
from .validate import validate


def quartic_form(model: FunctionFieldModel, names):
    """The Q4 relation as a KPoly in the given variable names (must contain y and z or x)."""
    K = model.K
    V = {n: KPoly.var(K, names, n) for n in names}
    if model.variant == "Q4-i":
        a, b, c = model.values
        x, y = V["x"], V["y"]
        return y ** 4 + a + x + b * x ** 2 + c * x ** 4
    a, b, c, d = model.values
    y, z = V["y"], V["z"]
    return y ** 4 + a * z ** 4 + b * y ** 2 + c * z ** 2 + b * z + d


def to_canonical_quartic(model: FunctionFieldModel) -> FunctionFieldModel:
    """G3-i -> Q4-i by renaming; G3-ii -> Q4-ii through the canonical map (1 : z : y)."""
    validate(model)
    K = model.K
    if model.variant == "G3-i":
        a0, a2, a4 = model.values
        out = FunctionFieldModel.make("Q4-i", K, a=a0, b=a2, c=a4)
    elif model.variant in ("G3-ii", "Hyperelliptic-G3ii"):
        p = model.params
        if p["c1"].is_zero():
            rel = f"y^2 + {_paren(p['c2'])}*z^2 + z + {_paren(p['c0'])} = 0"
            raise Hyperelliptic(rel)
        norm = normalize_c0(model)
        a0, a2, _, c1, c2 = norm.values
        a, b, c, d = forward_bijection(a2, c1, a0, c2)
        out = FunctionFieldModel.make("Q4-ii", K, a=a, b=b, c=c, d=d)
    else:
        raise ValueError(f"{model.variant} is not a genus-3 normal form")
    names, rel = ring(model)
    if not rel.is_zero(quartic_form(out, names)):
        raise InternalInconsistency("the canonical quartic does not vanish on the source curve")
    validate(out)
    return out


def _paren(f):
    s = str(f)
    return f"({s})" if " " in s else s
