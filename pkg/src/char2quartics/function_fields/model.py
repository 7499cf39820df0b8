"""Normal-form models and their text serialization."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..algebra import BaseField, KPoly, RatFunc, Relations
from ..errors import PreconditionViolated

VARIANTS = {
    "QE-i": ("a0", "a2", "a4"),
    "QE-ii": ("a0", "a2", "b2"),
    "QE-iii": ("a0", "a2"),
    "QE-unified": ("a0", "a2", "b0", "b1", "b2"),
    "G3-i": ("a0", "a2", "a4"),
    "G3-ii": ("a0", "a2", "c0", "c1", "c2"),
    "Q4-i": ("a", "b", "c"),
    "Q4-ii": ("a", "b", "c", "d"),
    "Hyperelliptic-G3ii": ("a0", "a2", "c0", "c1", "c2"),
}

QE_VARIANTS = ("QE-i", "QE-ii", "QE-iii", "QE-unified")
G3_VARIANTS = ("G3-i", "G3-ii")
Q4_VARIANTS = ("Q4-i", "Q4-ii")

# human-readable defining equations, used in reports
EQUATIONS = {
    "QE-i": "z^2 = a0 + x + a2*x^2 + a4*x^4",
    "QE-ii": "z^4 = a0 + x + a2*x^2 + b2^2*x^4",
    "QE-iii": "z^4 = a0 + x + a2*x^2",
    "QE-unified": "w^2 = a0 + x + a2*x^2, z^2 = b0 + b1*x + b2*x^2 + w",
    "G3-i": "y^4 = a0 + x + a2*x^2 + a4*x^4",
    "G3-ii": "z^4 = a0 + x + a2*x^2, y^2 = c0 + c1*x + z + c2*z^2",
    "Q4-i": "y^4 + a + x + b*x^2 + c*x^4 = 0",
    "Q4-ii": "y^4 + a*z^4 + b*y^2 + c*z^2 + b*z + d = 0",
    "Hyperelliptic-G3ii": "z^4 = a0 + x + a2*x^2, y^2 = c0 + z + c2*z^2",
}


@dataclass(frozen=True)
class FunctionFieldModel:
    variant: str
    K: BaseField
    values: tuple = field(default=())

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; choose from {', '.join(VARIANTS)}")
        if len(self.values) != len(VARIANTS[self.variant]):
            raise ValueError(f"{self.variant} takes parameters {VARIANTS[self.variant]}")

    @classmethod
    def make(cls, variant, K, **params):
        names = VARIANTS.get(variant)
        if names is None:
            raise ValueError(f"unknown variant {variant!r}")
        extra = set(params) - set(names)
        if extra:
            raise ValueError(f"unexpected parameters for {variant}: {sorted(extra)}")
        missing = [n for n in names if n not in params]
        if missing:
            raise ValueError(f"missing parameters for {variant}: {missing}")
        return cls(variant, K, tuple(K(params[n]) for n in names))

    @property
    def names(self):
        return VARIANTS[self.variant]

    @property
    def params(self) -> dict:
        return dict(zip(self.names, self.values))

    def __getitem__(self, name) -> RatFunc:
        return self.values[self.names.index(name)]

    def replace(self, **changes):
        p = self.params
        p.update(changes)
        return FunctionFieldModel.make(self.variant, self.K, **p)

    def to_text(self) -> str:
        body = " ".join(f"{n}={str(v).replace(' ', '')}" for n, v in self.params.items())
        return f"{self.variant} {body} K={self.K}"

    def __str__(self):
        return self.to_text()

    def to_dict(self):
        return {"variant": self.variant, "K": str(self.K),
                "params": {n: str(v) for n, v in self.params.items()}}

    @classmethod
    def from_text(cls, text: str, base: str | BaseField | None = None) -> "FunctionFieldModel":
        """Parse ``Q4-ii a=1/t b=1/t c=1 d=0 K=F2(t)``.

        ``base`` supplies K when the line has no ``K=`` field (default F2(t)).
        QE-unified also accepts the un-normalized coefficients ``a1`` (of x in
        the w-equation), ``cw`` (of w) and ``cxw`` (of x*w); they are
        normalized away automatically.
        """
        parts = text.split()
        if not parts:
            raise ValueError("empty model description")
        variant, rest = parts[0], parts[1:]
        kv = _split_pairs(" ".join(rest))
        if rest and not kv:
            raise ValueError(f"expected name=value pairs after the variant, got {' '.join(rest)!r}")
        K = kv.pop("K", None)
        if K is not None:
            K = BaseField.parse(K)
        elif isinstance(base, BaseField):
            K = base
        else:
            K = BaseField.parse(base or "F2(t)")
        if variant == "QE-unified" and {"a1", "cw", "cxw"} & set(kv):
            return normalize_unified(K, **{k: K(v) for k, v in kv.items()})
        return cls.make(variant, K, **{k: K(v) for k, v in kv.items()})


def _split_pairs(text):
    out = {}
    for m in re.finditer(r"(\w+)\s*=\s*(.*?)(?=\s+\w+\s*=|$)", text):
        out[m.group(1)] = m.group(2).strip()
    return out


def normalize_unified(K, a0, a2, b0, b1, b2, a1=None, cw=None, cxw=None):
    """Bring w^2 = a0 + a1 x + a2 x^2, z^2 = b0 + b1 x + b2 x^2 + cw w + cxw x w to the unified form.

    Requires cxw = 0 and cw, a1 nonzero (otherwise the singular prime does not
    have singularity degree one).
    """
    one = K.one()
    a1 = one if a1 is None else a1
    cw = one if cw is None else cw
    cxw = K.zero() if cxw is None else cxw
    if not cxw.is_zero():
        raise PreconditionViolated("cxw != 0", "the coefficient of x*w must vanish for delta(p) = 1")
    if cw.is_zero():
        raise PreconditionViolated("cw = 0", "z^2 would lie in K(x)")
    if a1.is_zero():
        raise PreconditionViolated("a1 = 0", "x must be separable over K(w)")
    # x -> x / a1
    a2, b1, b2 = a2 / a1 ** 2, b1 / a1, b2 / a1 ** 2
    # x -> cw^-2 x, w -> cw^-1 w
    a0, a2 = a0 * cw ** 2, a2 / cw ** 2
    b1, b2 = b1 / cw ** 2, b2 / cw ** 4
    return FunctionFieldModel.make("QE-unified", K, a0=a0, a2=a2, b0=b0, b1=b1, b2=b2)


def unified_view(model: FunctionFieldModel):
    """(a0, a2, b0, b1, b2) for QE-ii, QE-iii and QE-unified (w = z^2 + b2 x^2 for QE-ii)."""
    K = model.K
    z = K.zero()
    p = model.params
    if model.variant == "QE-unified":
        return p["a0"], p["a2"], p["b0"], p["b1"], p["b2"]
    if model.variant == "QE-ii":
        return p["a0"], p["a2"], z, z, p["b2"]
    if model.variant == "QE-iii":
        return p["a0"], p["a2"], z, z, z
    raise ValueError(f"{model.variant} has no unified quasi-elliptic view")


def ring(model: FunctionFieldModel):
    """Variable names and defining relations of the model's function field."""
    K, p, v = model.K, model.params, model.variant
    if v == "QE-i":
        names = ("x", "z")
        x = KPoly.var(K, names, "x")
        rel = Relations(K, names, [("z", 2, p["a0"] + x + p["a2"] * x ** 2 + p["a4"] * x ** 4)])
    elif v in ("QE-ii", "QE-iii", "QE-unified"):
        a0, a2, b0, b1, b2 = unified_view(model)
        names = ("x", "w", "z")
        x, w, _ = (KPoly.var(K, names, n) for n in names)
        rel = Relations(K, names, [
            ("z", 2, b0 + b1 * x + b2 * x ** 2 + w),
            ("w", 2, a0 + x + a2 * x ** 2),
        ])
    elif v in ("G3-i", "Q4-i"):
        a0, a2, a4 = model.values
        names = ("x", "y")
        x = KPoly.var(K, names, "x")
        rel = Relations(K, names, [("y", 4, a0 + x + a2 * x ** 2 + a4 * x ** 4)])
    elif v in ("G3-ii", "Hyperelliptic-G3ii"):
        names = ("x", "z", "y")
        x, z, _ = (KPoly.var(K, names, n) for n in names)
        rel = Relations(K, names, [
            ("y", 2, p["c0"] + p["c1"] * x + z + p["c2"] * z ** 2),
            ("z", 4, p["a0"] + x + p["a2"] * x ** 2),
        ])
    elif v == "Q4-ii":
        names = ("y", "z")
        z = KPoly.var(K, names, "z")
        y = KPoly.var(K, names, "y")
        rel = Relations(K, names, [
            ("y", 4, p["a"] * z ** 4 + p["b"] * y ** 2 + p["c"] * z ** 2 + p["b"] * z + p["d"]),
        ])
    else:  # pragma: no cover
        raise ValueError(v)
    return names, rel


# G3-ii <-> Q4-ii parameter maps (c0 normalized to 0) ---------------------------
def forward_bijection(a2, c1, a0, c2):
    """(a2, c1, a0, c2) -> (a, b, c, d)."""
    inv = a2.inverse()
    return (inv * (c1 ** 2 + a2 * c2 ** 2), inv * c1, inv * (a2 + c1 * c2), inv * c1 ** 2 * a0)


def inverse_bijection(a, b, c, d):
    """(a, b, c, d) -> (a2, c1, a0, c2); requires b != 0 and a not a square."""
    c2 = (c + 1) / b
    a2 = (a + c2 ** 2) / b ** 2
    c1 = b * a2
    a0 = d / (b ** 2 * a2)
    return a2, c1, a0, c2


def normalize_c0(model: FunctionFieldModel) -> FunctionFieldModel:
    """G3-ii: substitute x -> x + c0/c1 so that c0 = 0."""
    if model.variant != "G3-ii":
        raise ValueError("c0 normalization applies to G3-ii models")
    p = model.params
    if p["c0"].is_zero():
        return model
    if p["c1"].is_zero():
        raise PreconditionViolated("c1 = 0", "c0 cannot be normalized away in the hyperelliptic case")
    s = p["c0"] / p["c1"]
    a0 = p["a0"] + s + p["a2"] * s ** 2
    return model.replace(a0=a0, c0=model.K.zero())


def q4ii_as_g3ii(model: FunctionFieldModel) -> FunctionFieldModel:
    a2, c1, a0, c2 = inverse_bijection(*model.values)
    return FunctionFieldModel.make("G3-ii", model.K, a0=a0, a2=a2, c0=0, c1=c1, c2=c2)


def q4i_as_g3i(model: FunctionFieldModel) -> FunctionFieldModel:
    a, b, c = model.values
    return FunctionFieldModel.make("G3-i", model.K, a0=a, a2=b, a4=c)
