"""Transformation groups between normal forms, invariants, and bounded isomorphism search."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import BaseField, MPoly, RatFunc, power_membership
from .errors import InvariantViolation, PreconditionViolated
from .function_fields import FunctionFieldModel, forward_bijection, inverse_bijection, validate

TRANSFORM_VARIANTS = ("G3-i", "G3-ii", "Q4-i", "Q4-ii")


@dataclass(frozen=True)
class Transform:
    variant: str
    eps: RatFunc
    gamma: RatFunc
    eta: RatFunc
    beta: RatFunc | None = None   # free for G3 variants, derived for Q4-ii
    tau: RatFunc | None = None    # absent for G3-i / Q4-i

    def __post_init__(self):
        if self.eps.is_zero():
            raise ValueError("eps must be nonzero")

    @classmethod
    def identity(cls, variant, K):
        z, o = K.zero(), K.one()
        return cls(variant, o, z, z,
                   None if variant == "Q4-ii" else z,
                   None if variant in ("G3-i", "Q4-i") else z)

    def derived_beta(self, model) -> RatFunc:
        """The x-shift of a Q4-ii transform (recomputed from the model each time)."""
        if self.variant != "Q4-ii":
            return self.beta
        a, b, c, _ = model.values
        den = a * b ** 2 + c ** 2 + 1
        if den.is_zero():
            raise InvariantViolation("ab^2 + c^2 + 1 = 0: the x-shift of the transform is undefined")
        g, e, t = self.gamma, self.eta, self.tau
        return b ** 2 / den * (g ** 2 * (t ** 2 * b + c + 1) + (g + e ** 2) * b)

    def text(self, model=None):
        parts = [f"eps={self.eps}"]
        beta = self.beta if self.variant != "Q4-ii" or model is None else self.derived_beta(model)
        if beta is not None:
            parts.append(f"beta={beta}")
        parts += [f"gamma={self.gamma}", f"eta={self.eta}"]
        if self.tau is not None:
            parts.append(f"tau={self.tau}")
        return " ".join(p.replace(" ", "") for p in parts)

    def to_dict(self, model=None):
        d = {"variant": self.variant, "eps": str(self.eps), "gamma": str(self.gamma),
             "eta": str(self.eta)}
        beta = self.beta if self.variant != "Q4-ii" or model is None else self.derived_beta(model)
        if beta is not None:
            d["beta"] = str(beta)
        if self.tau is not None:
            d["tau"] = str(self.tau)
        return d

    @classmethod
    def from_text(cls, variant, text, K):
        kv = dict(item.split("=", 1) for item in text.split())
        z = K.zero()
        get = lambda k: K(kv[k]) if k in kv else z  # noqa: E731
        eps = K(kv.get("eps", "1"))
        beta = None if variant == "Q4-ii" else get("beta")
        tau = None if variant in ("G3-i", "Q4-i") else get("tau")
        return cls(variant, eps, get("gamma"), get("eta"), beta, tau)


def _check(model, tr):
    if tr.variant != model.variant:
        raise ValueError(f"transform for {tr.variant} applied to a {model.variant} model")
    if model.variant not in TRANSFORM_VARIANTS:
        raise ValueError(f"no transformation group for {model.variant}")


def apply_transform(model: FunctionFieldModel, tr: Transform, revalidate=True) -> FunctionFieldModel:
    """Parameters of the model F' for which tr defines an isomorphism F' -> F."""
    _check(model, tr)
    e, g, h = tr.eps, tr.gamma, tr.eta
    v = model.variant
    if v in ("G3-i", "Q4-i"):
        a0, a2, a4 = model.values
        b = tr.beta
        new = (e ** 4 * (a0 + b ** 2 * a2 + b ** 4 * a4 + h ** 4 + g ** 4 * b ** 4 + b),
               a2 / e ** 4, (a4 + g ** 4) / e ** 12)
    elif v == "G3-ii":
        a0, a2, c0, c1, c2 = model.values
        b, t = tr.beta, tr.tau
        new = (e ** 8 * (a0 + b ** 2 * a2 + b + g ** 4), a2 / e ** 8,
               e ** 2 * (c0 + b * c1 + g ** 2 * (c2 + t ** 2) + g + h ** 2),
               c1 / e ** 6, (c2 + t ** 2) / e ** 2)
    else:  # Q4-ii
        a, b, c, d = model.values
        t = tr.tau
        tr.derived_beta(model)  # raises on the degenerate locus
        new = ((a + t ** 4) / e ** 4, e ** 2 * b, c + t ** 2 * b,
               e ** 4 * (d + g ** 4 * (t ** 4 + a) + g ** 2 * c + h ** 4
                         + (g ** 2 * t ** 2 + g + h ** 2) * b))
    out = FunctionFieldModel(v, model.K, tuple(new))
    if revalidate:
        validate(out)
    return out


def compose(tr1: Transform, tr2: Transform) -> Transform:
    """Single transform equal to applying tr1 and then tr2."""
    if tr1.variant != tr2.variant:
        raise ValueError("cannot compose transforms of different variants")
    e1, e2 = tr1.eps, tr2.eps
    if tr1.variant in ("G3-i", "Q4-i"):
        return Transform(tr1.variant, e1 * e2,
                         tr1.gamma + tr2.gamma * e1 ** 3,
                         tr1.eta + tr2.gamma * e1 ** 3 * tr1.beta + tr2.eta / e1,
                         tr1.beta + tr2.beta / e1 ** 4, None)
    gamma = tr1.gamma + tr2.gamma / e1 ** 2
    tau = tr1.tau + tr2.tau * e1
    eta = tr1.eta + tr2.eta / e1 + tr2.tau * e1 * tr1.gamma
    beta = None if tr1.variant == "Q4-ii" else tr1.beta + tr2.beta / e1 ** 8
    return Transform(tr1.variant, e1 * e2, gamma, eta, beta, tau)


def invariant_of(model: FunctionFieldModel) -> RatFunc:
    if model.variant == "G3-ii":
        return model["c1"] ** 4 / model["a2"] ** 3
    if model.variant == "Q4-ii":
        a, b, c, _ = model.values
        return a * b ** 2 + c ** 2
    raise ValueError(f"no invariant is defined for {model.variant}")


def param_bijection(direction: str, values):
    """G3-ii (a2, c1, a0, c2) <-> Q4-ii (a, b, c, d), with preconditions re-checked."""
    values = tuple(values)
    K = values[0].K
    if direction == "forward":
        a2, c1, a0, c2 = values
        if power_membership(a2, 1) is not None:
            raise PreconditionViolated("a2 in K^2")
        if c1.is_zero():
            raise PreconditionViolated("c1 = 0")
        out = forward_bijection(a2, c1, a0, c2)
        validate(FunctionFieldModel("Q4-ii", K, out))
        return out
    if direction == "inverse":
        a, b, c, d = values
        validate(FunctionFieldModel("Q4-ii", K, values))
        out = inverse_bijection(a, b, c, d)
        a2, c1, a0, c2 = out
        validate(FunctionFieldModel.make("G3-ii", K, a0=a0, a2=a2, c0=0, c1=c1, c2=c2))
        return out
    raise ValueError("direction must be 'forward' or 'inverse'")


# bounded search ----------------------------------------------------------------
def coefficient_bounds(K: BaseField, degree: int = 0):
    """All elements of F_q, then every reduced n/d with deg n, deg d <= degree (d monic)."""
    F = K.F
    consts = [K.const(c) for c in range(1 << F.m)]
    if degree <= 0 or K.r == 0:
        return consts
    monos = [e for e in itertools.product(range(degree + 1), repeat=K.r) if sum(e) <= degree]
    monos.sort(key=lambda e: (sum(e), e))
    polys = []
    for coeffs in itertools.product(range(1 << F.m), repeat=len(monos)):
        terms = {e: c for e, c in zip(monos, coeffs) if c}
        polys.append(MPoly(F, K.r, terms))
    seen = set(consts)
    out = list(consts)
    one = MPoly.const(F, K.r, 1)
    dens = [p for p in polys if not p.is_zero() and p.monic() == p]
    dens.sort(key=lambda p: (p.degree(), p.key()))
    for den in dens:
        for num in polys:
            if num.is_zero():
                continue
            f = RatFunc(K, num, den if den != one else one)
            if f not in seen:
                seen.add(f)
                out.append(f)
    return out


@dataclass
class SearchResult:
    transform: Transform | None
    candidates: int
    reason: str = ""

    def to_dict(self, model=None):
        return {"found": self.transform is not None,
                "transform": self.transform.to_dict(model) if self.transform else None,
                "candidates": self.candidates, "reason": self.reason}


def _root(f: RatFunc, k: int):
    """Unique 2^k-th root in K or None."""
    return power_membership(f, k)


def search_transform(m1: FunctionFieldModel, m2: FunctionFieldModel, bounds) -> SearchResult:
    """Find tr with apply_transform(m1, tr) == m2.

    Coefficients forced by the constraint displays are solved exactly by
    extracting roots; the remaining free coefficients run over ``bounds`` in
    order, so the first hit is deterministic.
    """
    if m1.variant != m2.variant:
        raise ValueError("isomorphism search needs two models of the same variant")
    v, K = m1.variant, m1.K
    validate(m1)
    validate(m2)
    if v in ("G3-ii", "Q4-ii") and invariant_of(m1) != invariant_of(m2):
        return SearchResult(None, 0, "invariants differ")
    count = 0
    zero = K.zero()
    if v in ("G3-i", "Q4-i"):
        a0, a2, a4 = m1.values
        b0, b2, b4 = m2.values
        if a2.is_zero() != b2.is_zero():
            return SearchResult(None, 0, "a2 vanishes on one side only")
        eps_cands = bounds if a2.is_zero() else [_root(a2 / b2, 2)]
        for e in eps_cands:
            if e is None or e.is_zero():
                continue
            g = _root(e ** 12 * b4 + a4, 2)
            if g is None:
                continue
            for beta in bounds:
                count += 1
                rhs = b0 / e ** 4 + a0 + beta ** 2 * a2 + beta ** 4 * (a4 + g ** 4) + beta
                h = _root(rhs, 2)
                if h is None:
                    continue
                tr = Transform(v, e, g, h, beta, None)
                if apply_transform(m1, tr, revalidate=False) == m2:
                    return SearchResult(tr, count)
        return SearchResult(None, count, "no transform within bounds")
    if v == "G3-ii":
        a0, a2, c0, c1, c2 = m1.values
        b0_, b2_, d0, d1, d2 = m2.values
        e = _root(a2 / b2_, 3)
        if e is None:
            return SearchResult(None, 0, "a2/a2' has no 8th root")
        t = _root(e ** 2 * d2 + c2, 1)
        if t is None or d1 != c1 / e ** 6:
            return SearchResult(None, 0, "c1 or c2 incompatible")
        for beta in bounds:
            count += 1
            g = _root(b0_ / e ** 8 + a0 + beta ** 2 * a2 + beta, 2)
            if g is None:
                continue
            h = _root(d0 / e ** 2 + c0 + beta * c1 + g ** 2 * (c2 + t ** 2) + g, 1)
            if h is None:
                continue
            tr = Transform(v, e, g, h, beta, t)
            if apply_transform(m1, tr, revalidate=False) == m2:
                return SearchResult(tr, count)
        return SearchResult(None, count, "no transform within bounds")
    if v == "Q4-ii":
        a, b, c, d = m1.values
        a_, b_, c_, d_ = m2.values
        e = _root(b_ / b, 1)
        if e is None:
            return SearchResult(None, 0, "b'/b is not a square")
        t = _root(e ** 4 * a_ + a, 2)
        if t is None or c_ != c + t ** 2 * b:
            return SearchResult(None, 0, "a or c incompatible")
        for g in bounds:
            for h in bounds:
                count += 1
                tr = Transform(v, e, g, h, None, t)
                if apply_transform(m1, tr, revalidate=False) == m2:
                    return SearchResult(tr, count)
        return SearchResult(None, count, "no transform within bounds")
    raise ValueError(f"no transformation group for {v}")


def automorphisms(model: FunctionFieldModel, bounds):
    """All automorphisms with free coefficients in ``bounds`` (identity included)."""
    validate(model)
    v, K = model.variant, model.K
    zero, one = K.zero(), K.one()
    bset = set(bounds)
    out = []
    if v in ("G3-i", "Q4-i"):
        a0, a2, a4 = model.values
        for e in bounds:
            if e.is_zero() or e ** 3 != one or not ((e + 1) * a2).is_zero():
                continue
            for beta in bounds:
                rhs = (e ** 2 + 1) * a0 + beta ** 2 * a2 + beta ** 4 * a4 + beta
                h = _root(rhs, 2)
                if h is not None and h in bset:
                    out.append(Transform(v, e, zero, h, beta, None))
    elif v == "G3-ii":
        a0, a2, c0, c1, c2 = model.values
        for beta in bounds:
            for g in bounds:
                if g ** 4 != beta + beta ** 2 * a2:
                    continue
                h = _root(beta * c1 + g + g ** 2 * c2, 1)
                if h is not None and h in bset:
                    out.append(Transform(v, one, g, h, beta, zero))
    elif v == "Q4-ii":
        a, b, c, d = model.values
        for g in bounds:
            for h in bounds:
                if (g ** 4 * a + g ** 2 * c + h ** 4 + (g + h ** 2) * b).is_zero():
                    out.append(Transform(v, one, g, h, None, zero))
    else:
        raise ValueError(f"no transformation group for {v}")
    for tr in out:
        if apply_transform(model, tr, revalidate=False) != model:
            raise AssertionError("automorphism constraint and transformation law disagree")
    return out
