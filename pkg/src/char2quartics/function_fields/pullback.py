"""Presentations of the iterated Frobenius pullbacks F1, F2, ... down to a rational field."""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import KPoly
from ..algebra.kpoly import substitute
from .model import FunctionFieldModel, ring, unified_view
from .validate import validate


@dataclass
class PullbackLevel:
    name: str                 # "F1", "F2", ...
    generators: dict          # generator name -> expression in the top variables
    relation: str | None      # None for a rational function field
    verified: bool

    def text(self):
        gens = ", ".join(self.generators)
        defs = "; ".join(f"{g} = {e}" for g, e in self.generators.items() if e != g)
        s = f"{self.name} = K({gens})"
        if defs:
            s += f" with {defs}"
        s += f": {self.relation}" if self.relation else " (rational)"
        return s

    def to_dict(self):
        return {"name": self.name, "generators": dict(self.generators),
                "relation": self.relation, "verified": self.verified}


def _level(K, top_names, top_rel, name, gens, relation=None, checks=(), display=None):
    """gens: {name: KPoly over top}; relation: KPoly over gens names that must vanish."""
    ok = True
    gnames = tuple(gens)
    if relation is not None:
        image = substitute(relation, gens, top_names, K)
        ok = top_rel.is_zero(image)
    for c in checks:
        ok = ok and top_rel.is_zero(c)
    rel_text = f"{relation.fmt()} = 0" if relation is not None else None
    shown = {g: gens[g].fmt() for g in gnames}
    shown.update(display or {})
    return PullbackLevel(name, shown, rel_text, ok)


def pullback_chain(model: FunctionFieldModel):
    validate(model)
    K, v, p = model.K, model.variant, model.params
    names, rel = ring(model)
    V = {n: KPoly.var(K, names, n) for n in names}
    x = V.get("x")
    levels = []

    def lv(name, gens, relation=None, checks=(), display=None):
        levels.append(_level(K, names, rel, name, gens, relation, checks, display))

    def quad(gnames, lhs_name, rhs):
        """relation lhs^2 + rhs(x) over variables gnames."""
        X = KPoly.var(K, gnames, "x")
        return KPoly.var(K, gnames, lhs_name, 2) + rhs(X)

    if v == "QE-i":
        lv("F1", {"x": x})
    elif v in ("QE-ii", "QE-iii", "QE-unified"):
        a0, a2, b0, b1, b2 = unified_view(model)
        display, checks = None, ()
        if v != "QE-unified":
            # w is the auxiliary z^2 + b2 x^2
            display = {"w": (V["z"] ** 2 + b2 * x ** 2).fmt()}
            checks = [V["z"] ** 2 + b2 * x ** 2 + V["w"]]
        lv("F1", {"x": x, "w": V["w"]},
           quad(("x", "w"), "w", lambda X: a0 + X + a2 * X ** 2), checks, display)
        lv("F2", {"x": x})
    elif v in ("G3-i", "Q4-i"):
        a0, a2, a4 = model.values
        lv("F1", {"x": x, "u": V["y"] ** 2},
           quad(("x", "u"), "u", lambda X: a0 + X + a2 * X ** 2 + a4 * X ** 4))
        lv("F2", {"x": x})
    elif v in ("G3-ii", "Hyperelliptic-G3ii"):
        a0, a2 = p["a0"], p["a2"]
        g = ("x", "z")
        Z = KPoly.var(K, g, "z")
        X = KPoly.var(K, g, "x")
        lv("F1", {"x": x, "z": V["z"]}, Z ** 4 + a0 + X + a2 * X ** 2,
           checks=[V["y"] ** 2 + p["c0"] + p["c1"] * x + V["z"] + p["c2"] * V["z"] ** 2])
        lv("F2", {"x": x, "v": V["z"] ** 2},
           quad(("x", "v"), "v", lambda X: a0 + X + a2 * X ** 2))
        lv("F3", {"x": x})
    elif v == "Q4-ii":
        a, b, c, d = model.values
        y, z = V["y"], V["z"]
        g1 = ("z", "u")
        U, Z = KPoly.var(K, g1, "u"), KPoly.var(K, g1, "z")
        lv("F1", {"z": z, "u": y ** 2}, U ** 2 + b * U + a * Z ** 4 + c * Z ** 2 + b * Z + d)
        g2 = ("v", "s")
        S, Vv = KPoly.var(K, g2, "s"), KPoly.var(K, g2, "v")
        s_expr = y ** 2 + z
        lv("F2", {"v": z ** 2, "s": s_expr}, S ** 2 + b * S + a * Vv ** 2 + (c + 1) * Vv + d)
        # F3 = K(l): s^2 and v^2 are rational in l because ab^2 + (c+1)^2 != 0
        ell = b * s_expr + (c + 1) * z ** 2
        D = a * b ** 2 + (c + 1) ** 2
        v2 = z ** 4
        lv("F3", {"l": ell}, None,
           checks=[v2 * D + b ** 2 * (ell + d) + ell ** 2,
                   s_expr ** 2 + ell + d + a * v2])
    return levels
