import random

import pytest
from hypothesis import given, strategies as st

from char2quartics.algebra import BaseField
from char2quartics.errors import InvariantViolation, PreconditionViolated
from char2quartics.function_fields import FunctionFieldModel, random_model, validate
from char2quartics.isomorphism import (Transform, apply_transform, automorphisms,
                                       coefficient_bounds, compose, invariant_of,
                                       param_bijection, search_transform)

from .conftest import random_transform

F2t = BaseField.parse("F2(t)")
F4t = BaseField.parse("F4(t)")
t = F2t["t"]


def model(text, K=F2t):
    return FunctionFieldModel.from_text(text, K)


def tr(variant, text, K=F2t):
    return Transform.from_text(variant, text, K)


def test_q4_ii_example_transform():
    out = apply_transform(model("Q4-ii a=t b=1 c=0 d=0"), tr("Q4-ii", "eps=1 gamma=0 eta=0 tau=1"))
    assert out == model("Q4-ii a=t+1 b=1 c=1 d=0")


@pytest.mark.parametrize("text", ["Q4-ii a=t b=1 c=0 d=0", "G3-i a0=1 a2=t a4=t^3",
                                  "G3-ii a0=0 a2=t c0=0 c1=1 c2=0"])
def test_identity_transform(text):
    m = model(text)
    assert apply_transform(m, Transform.identity(m.variant, F2t)) == m


def test_g3_i_transformation_law():
    m = model("G3-i a0=1 a2=t a4=t^3")
    eps, gamma = F2t["t"], F2t("t+1")
    out = apply_transform(m, Transform("G3-i", eps, gamma, F2t.zero(), F2t.one(), None))
    assert out["a2"] == m["a2"] / eps ** 4
    assert out["a4"] == (m["a4"] + gamma ** 4) / eps ** 12


def test_invariant_examples():
    assert invariant_of(model("Q4-ii a=t b=1 c=0 d=0")) == t
    assert invariant_of(model("Q4-ii a=t+1 b=1 c=1 d=0")) == t
    assert invariant_of(model("G3-ii a0=0 a2=t c0=0 c1=1 c2=0")) == t ** -3


def test_degenerate_beta_locus():
    # a b^2 + c^2 = 1 makes the derived x-shift undefined; valid models never reach it
    m = model("Q4-ii a=t^2 b=1 c=t+1 d=0")
    with pytest.raises(InvariantViolation):
        tr("Q4-ii", "eps=1 gamma=1 eta=0 tau=0").derived_beta(m)


@pytest.mark.parametrize("variant", ["G3-ii", "Q4-ii"])
@given(seed=st.integers(0, 10 ** 6))
def test_invariant_is_preserved(variant, seed):
    rng = random.Random(seed)
    m = random_model(variant, F4t, rng)
    try:
        out = apply_transform(m, random_transform(variant, F4t, rng))
    except InvariantViolation:
        return
    validate(out)
    assert invariant_of(out) == invariant_of(m)


@pytest.mark.parametrize("variant", ["G3-i", "G3-ii", "Q4-ii"])
@given(seed=st.integers(0, 10 ** 6))
def test_composition_matches_successive_application(variant, seed):
    rng = random.Random(seed)
    m = random_model(variant, F2t, rng)
    tr1, tr2 = (random_transform(variant, F2t, rng) for _ in range(2))
    try:
        step = apply_transform(apply_transform(m, tr1, False), tr2, False)
        once = apply_transform(m, compose(tr1, tr2), False)
    except InvariantViolation:
        return
    assert step == once


# -- search ------------------------------------------------------------------------

@pytest.mark.parametrize("variant", ["G3-i", "G3-ii", "Q4-ii"])
@given(seed=st.integers(0, 10 ** 6))
def test_search_recovers_constant_transforms(variant, seed):
    rng = random.Random(seed)
    m = random_model(variant, F4t, rng, degree=2)
    bounds = coefficient_bounds(F4t, 0)
    t0 = random_transform(variant, F4t, rng, degree=0)
    try:
        target = apply_transform(m, t0)
    except InvariantViolation:
        return
    res = search_transform(m, target, bounds)
    assert res.transform is not None
    assert apply_transform(m, res.transform) == target


def test_search_finds_identity():
    m = model("Q4-ii a=t b=1 c=0 d=0")
    res = search_transform(m, m, coefficient_bounds(F2t, 0))
    assert apply_transform(m, res.transform) == m


def test_search_is_complete_on_constant_bounds():
    # every hit of an exhaustive run over F2-constant coefficients is found by the search
    m = model("G3-i a0=1 a2=t a4=t^3")
    bounds = coefficient_bounds(F2t, 0)
    for e in bounds[1:]:
        for g in bounds:
            for h in bounds:
                for b in bounds:
                    target = apply_transform(m, Transform("G3-i", e, g, h, b, None), False)
                    try:
                        validate(target)
                    except PreconditionViolated:
                        continue
                    assert search_transform(m, target, bounds).transform is not None


def test_different_invariants_mean_no_transform():
    m1, m2 = model("Q4-ii a=t b=1 c=0 d=0"), model("Q4-ii a=t b=1 c=1 d=0")
    assert invariant_of(m1) != invariant_of(m2)
    assert search_transform(m1, m2, coefficient_bounds(F2t, 1)).transform is None


# -- automorphisms ------------------------------------------------------------------------

def test_q4_ii_automorphisms_over_f2_constants():
    m = model("Q4-ii a=t b=1 c=0 d=0")
    auts = automorphisms(m, coefficient_bounds(F2t, 0))
    assert {(a.gamma, a.eta) for a in auts} == {(F2t.zero(), F2t.zero()), (F2t.zero(), F2t.one())}


def test_g3_i_automorphisms_use_cube_roots_of_unity():
    K = BaseField.parse("F4(t)")
    m = model("G3-i a0=0 a2=0 a4=t", K)
    auts = automorphisms(m, coefficient_bounds(K, 0))
    assert {a.eps for a in auts} == {K.const(1), K.const(2), K.const(3)}
    assert all(a.eps ** 3 == K.one() for a in auts)


@given(seed=st.integers(0, 10 ** 6))
def test_automorphisms_contain_identity(seed):
    m = random_model("Q4-ii", F2t, random.Random(seed))
    ids = [a for a in automorphisms(m, coefficient_bounds(F2t, 0))
           if a.gamma.is_zero() and a.eta.is_zero() and a.eps == F2t.one()]
    assert ids


# -- the parameter bijection ---------------------------------------------------------------

def test_forward_bijection_example():
    assert param_bijection("forward", (t, F2t.one(), F2t.zero(), F2t.zero())) == \
        (1 / t, 1 / t, F2t.one(), F2t.zero())


def test_inverse_bijection_example():
    assert param_bijection("inverse", (1 / t, 1 / t, F2t.one(), F2t.zero())) == \
        (t, F2t.one(), F2t.zero(), F2t.zero())


@given(seed=st.integers(0, 10 ** 6))
def test_bijection_round_trip(seed):
    rng = random.Random(seed)
    m = random_model("G3-ii", F4t, rng)
    while m["c1"].is_zero():
        m = random_model("G3-ii", F4t, rng)
    vals = (m["a2"], m["c1"], m["a0"], m["c2"])
    out = param_bijection("forward", vals)
    assert param_bijection("inverse", out) == vals
    a, b, c, _ = out
    a2, c1 = vals[0], vals[1]
    assert a * b ** 2 + c ** 2 == c1 ** 4 / a2 ** 3 + 1


def test_bijection_preconditions():
    with pytest.raises(PreconditionViolated):
        param_bijection("forward", (t ** 2, F2t.one(), F2t.zero(), F2t.zero()))
    with pytest.raises(PreconditionViolated):
        param_bijection("forward", (t, F2t.zero(), F2t.zero(), F2t.zero()))
