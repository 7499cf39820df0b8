"""Quasi-elliptic curves as intersections of two quadrics in P^3."""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import KPoly
from ..algebra.kpoly import substitute
from ..errors import InternalInconsistency
from .model import FunctionFieldModel, ring, unified_view
from .validate import validate

P3 = ("x0", "x1", "x2", "x3")


@dataclass
class Quadric:
    lhs: KPoly
    rhs: KPoly

    def form(self) -> KPoly:
        return self.lhs + self.rhs

    def text(self):
        return f"{self.lhs.fmt()} = {self.rhs.fmt()}"


def embed_quadrics(model: FunctionFieldModel, verify: bool = True):
    """Two quadrics cutting out the curve embedded by H^0(p^2) (QE-i) or H^0(p^e).

    The substitution x0=1, x1=x, x2=x^2 (QE-i) or x2=w (unified), x3=z is
    checked against the defining relations.
    """
    validate(model)
    K = model.K
    x0, x1, x2, x3 = (KPoly.var(K, P3, n) for n in P3)
    names, rel = ring(model)
    V = {n: KPoly.var(K, names, n) for n in names}
    one = KPoly.const(K, names, 1)
    if model.variant == "QE-i":
        a0, a2, a4 = model.values
        quads = [Quadric(x1 ** 2, x0 * x2),
                 Quadric(x3 ** 2, a0 * x0 ** 2 + x0 * x1 + a2 * x0 * x2 + a4 * x2 ** 2)]
        images = {"x0": one, "x1": V["x"], "x2": V["x"] ** 2, "x3": V["z"]}
    elif model.variant in ("QE-ii", "QE-iii", "QE-unified"):
        a0, a2, b0, b1, b2 = unified_view(model)
        quads = [Quadric(x2 ** 2, a0 * x0 ** 2 + x0 * x1 + a2 * x1 ** 2),
                 Quadric(x3 ** 2, b0 * x0 ** 2 + b1 * x0 * x1 + b2 * x1 ** 2 + x0 * x2)]
        images = {"x0": one, "x1": V["x"], "x2": V["w"], "x3": V["z"]}
    else:
        raise ValueError("quadric embeddings exist for quasi-elliptic models only")
    if verify:
        for q in quads:
            if not rel.is_zero(substitute(q.form(), images, names, K)):
                raise InternalInconsistency(f"quadric {q.text()} does not vanish on the curve")
    return quads
