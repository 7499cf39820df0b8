"""Precondition checks and the prime data (degrees, residue fields, ramification)."""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import is_power, span_membership
from ..errors import PreconditionViolated
from .model import FunctionFieldModel, unified_view


@dataclass(frozen=True)
class PrimeData:
    """Data of the singular prime p and its restrictions p1, p2, ...

    ``residue_fields[n]`` lists (generator, root exponent) pairs: ``[(a, 4)]``
    stands for K(a^(1/4)); an empty list is K itself.  ``ramification[n]`` is
    the index of p_n over p_(n+1).
    """

    variant: str
    degrees: tuple
    residue_fields: tuple
    ramification: tuple
    deltas: tuple

    def residue_text(self, n):
        adj = self.residue_fields[n]
        if not adj:
            return "K"
        return "K(" + ", ".join(f"({g})^(1/{k})" for g, k in adj) + ")"

    def to_dict(self):
        return {
            "variant": self.variant,
            "degrees": list(self.degrees),
            "residue_fields": [[{"generator": str(g), "root": k} for g, k in adj]
                               for adj in self.residue_fields],
            "ramification": list(self.ramification),
            "deltas": list(self.deltas),
        }


def _not_square(f, name):
    if is_power(f, 1):
        raise PreconditionViolated(f"{name} in K^2", f"{name} = {f} must not be a square")


def _b2_condition(b2, a2):
    return span_membership(b2, a2, 1) is None


def unified_is_inertial(model: FunctionFieldModel) -> bool:
    """For the unified quasi-elliptic form: b2 outside K^2 + K^2 a2 (e = 1)."""
    _, a2, _, _, b2 = unified_view(model)
    return _b2_condition(b2, a2)


def validate(model: FunctionFieldModel) -> PrimeData:
    v, p, K = model.variant, model.params, model.K
    one = K.one()
    if v == "QE-i":
        _not_square(p["a4"], "a4")
        return PrimeData(v, (2, 1), ((( p["a4"], 2),), ()), (1,), (1, 0))
    if v in ("QE-ii", "QE-iii", "QE-unified"):
        _not_square(p["a2"], "a2")
        a0, a2, b0, b1, b2 = unified_view(model)
        inertial = _b2_condition(b2, a2)
        if v == "QE-ii" and not inertial:
            raise PreconditionViolated("b2 in K^2 + K^2*a2", f"b2 = {b2} must lie outside K^2(a2)")
        if inertial:
            return PrimeData(v, (4, 2, 1), (((a2, 2), (b2, 2)), ((a2, 2),), ()), (1, 1), (1, 0, 0))
        return PrimeData(v, (2, 2, 1), (((a2, 2),), ((a2, 2),), ()), (2, 1), (1, 0, 0))
    if v in ("G3-i", "Q4-i"):
        a4 = p["a4"] if v == "G3-i" else p["c"]
        _not_square(a4, "a4" if v == "G3-i" else "c")
        return PrimeData(v, (4, 2, 1), (((a4, 4),), ((a4, 2),), ()), (1, 1), (3, 1, 0))
    if v in ("G3-ii", "Hyperelliptic-G3ii"):
        a2, c1, c2 = p["a2"], p["c1"], p["c2"]
        _not_square(a2, "a2")
        if c1.is_zero() and span_membership(c2, a2, 1) is not None:
            raise PreconditionViolated("c1 = 0 and c2 in K^2 + K^2*a2",
                                       "p would be ramified over F1")
        if v == "Hyperelliptic-G3ii" and not c1.is_zero():
            raise PreconditionViolated("c1 != 0", "the hyperelliptic tag requires c1 = 0")
        gamma = c2 ** 2 + c1 ** 2 / a2
        return PrimeData(v, (4, 2, 2, 1), (((a2, 2), (gamma, 4)), ((a2, 2),), ((a2, 2),), ()),
                         (1, 2, 1), (3, 1, 0))
    if v == "Q4-ii":
        a, b = p["a"], p["b"]
        _not_square(a, "a")
        if b.is_zero():
            raise PreconditionViolated("b = 0", "the quartic degenerates to the square of a conic")
        return PrimeData(v, (4, 2, 2, 1), (((a, 4),), ((a, 2),), ((a, 2),), ()), (1, 2, 1), (3, 1, 0))
    raise ValueError(v)  # pragma: no cover


def check_prime_data(pd: PrimeData):
    """Internal consistency: deg(p_n) * e_n = 2 deg(p_(n+1)), deltas obey the drop bound."""
    for n, e in enumerate(pd.ramification):
        if pd.degrees[n] * e != 2 * pd.degrees[n + 1]:
            return False
    d = list(pd.deltas) + [0]
    if len(d) >= 3 and 2 * (d[1] - d[2]) > d[0] - d[1]:
        return False
    return True
