import random

import pytest
from hypothesis import given, strategies as st

from char2quartics.algebra import BaseField
from char2quartics.errors import Hyperelliptic, PreconditionViolated
from char2quartics.function_fields import (FunctionFieldModel, check_closure, delta,
                                           embed_quadrics, lemma_holds, pullback_chain,
                                           random_model, rr_basis, rr_basis_text,
                                           tabulated_cases, to_canonical_quartic, validate)
from char2quartics.isomorphism import invariant_of

F2t = BaseField.parse("F2(t)")
F2ts = BaseField.parse("F2(t,s)")


def model(text, K=F2t):
    return FunctionFieldModel.from_text(text, K)


# -- serialization ------------------------------------------------------------------------

def test_text_round_trip():
    m = model("Q4-ii a=1/t b=1/t c=1 d=0 K=F2(t)")
    assert model(m.to_text()) == m
    assert m.to_text() == "Q4-ii a=1/t b=1/t c=1 d=0 K=F2(t)"


def test_unknown_parameter_is_rejected():
    with pytest.raises(ValueError):
        model("QE-i a0=0 a2=0 a5=t")


def test_unified_input_is_normalized():
    m = model("QE-unified a0=1 a2=t b0=0 b1=0 b2=t a1=1 cw=1 cxw=0")
    assert m.variant == "QE-unified"
    validate(m)


# -- validation ------------------------------------------------------------------------------

def test_qe_i_prime_data():
    pd = validate(model("QE-i a0=0 a2=0 a4=t"))
    assert pd.degrees == (2, 1)
    assert pd.residue_text(0) == "K((t)^(1/2))"
    assert pd.residue_text(1) == "K"


def test_q4_ii_prime_data():
    pd = validate(model("Q4-ii a=t b=1 c=0 d=0"))
    assert pd.degrees == (4, 2, 2, 1)
    assert pd.residue_text(0) == "K((t)^(1/4))"


@pytest.mark.parametrize("text, condition", [
    ("G3-ii a0=0 a2=t^2 c0=0 c1=1 c2=0", "a2"),
    ("QE-i a0=0 a2=0 a4=t^2+1", "a4"),
    ("Q4-ii a=t b=0 c=0 d=0", "b = 0"),
    ("Q4-i a=0 b=0 c=t^4", "c"),
    ("G3-ii a0=0 a2=t c0=0 c1=0 c2=1", "c1 = 0"),
])
def test_preconditions(text, condition):
    with pytest.raises(PreconditionViolated, match=condition):
        validate(model(text))


def test_qe_ii_needs_two_base_variables():
    with pytest.raises(PreconditionViolated):
        validate(model("QE-ii a0=0 a2=t b2=1"))
    validate(model("QE-ii a0=0 a2=t b2=s", F2ts))


# -- Frobenius pullbacks ----------------------------------------------------------------------------

def test_qe_ii_first_pullback():
    (f1, f2) = pullback_chain(model("QE-ii a0=0 a2=t b2=s", F2ts))
    assert f1.generators["w"] == "s*x^2 + z^2"
    assert f1.relation == "t*x^2 + x + w^2 = 0"
    assert f2.relation is None


def test_g3_i_second_pullback_is_rational():
    chain = pullback_chain(model("G3-i a0=0 a2=0 a4=t"))
    assert [lv.name for lv in chain] == ["F1", "F2"]
    assert chain[-1].relation is None
    assert all(lv.verified for lv in chain)


@pytest.mark.parametrize("text, length", [("Q4-i a=0 b=0 c=t", 2), ("Q4-ii a=t b=1 c=0 d=0", 3),
                                          ("G3-ii a0=0 a2=t c0=0 c1=1 c2=0", 3)])
def test_chain_lengths(text, length):
    chain = pullback_chain(model(text))
    assert len(chain) == length
    assert chain[-1].relation is None


# -- Riemann-Roch ------------------------------------------------------------------------------------

@pytest.mark.parametrize("text, level, m, basis", [
    ("QE-i a0=0 a2=0 a4=t", 0, 2, ["1", "x", "x^2", "z"]),
    ("QE-iii a0=1 a2=t", 0, 1, ["1", "z"]),
    ("G3-ii a0=0 a2=t c0=0 c1=1 c2=0", 0, 1, ["1", "z", "y"]),
])
def test_rr_bases(text, level, m, basis):
    assert rr_basis_text(rr_basis(model(text), level, m)) == basis


@pytest.mark.parametrize("text, K", [
    ("QE-i a0=1 a2=t a4=t", F2t),
    ("QE-ii a0=0 a2=t b2=s", F2ts),
    ("QE-iii a0=1 a2=t", F2t),
    ("QE-unified a0=1 a2=t b0=t b1=1 b2=t", F2t),
    ("QE-unified a0=1 a2=t b0=t b1=1 b2=s", F2ts),
    ("G3-i a0=1 a2=t a4=t", F2t),
    ("G3-ii a0=1 a2=t c0=1 c1=1 c2=t", F2t),
])
def test_rr_closure_on_every_tabulated_case(text, K):
    m = model(text, K)
    cases = tabulated_cases(m)
    assert cases
    for level, k in cases:
        res = check_closure(m, level, k)
        assert res["independent"] and res["closed"], (level, k, res["failures"])


# -- singularity degrees -------------------------------------------------------------------------------

def test_delta_g3_i():
    rep = delta(model("G3-i a0=0 a2=0 a4=t"))
    assert (rep.delta_p, rep.delta_p1, rep.delta_p2, rep.branch) == (3, 1, 0, "inertial")


def test_delta_qe_i():
    assert delta(model("QE-i a0=0 a2=0 a4=t")).delta_p == 1


def test_delta_g3_ii_example():
    rep = delta(model("G3-ii a0=0 a2=t c0=0 c1=1 c2=0"))
    assert (rep.delta_p, rep.delta_p1, rep.delta_p2) == (3, 1, 0)


@pytest.mark.parametrize("variant", ["QE-i", "QE-iii", "QE-unified", "G3-i", "G3-ii", "Q4-i",
                                     "Q4-ii"])
@given(seed=st.integers(0, 10 ** 6), m=st.sampled_from([1, 2, 4]))
def test_delta_on_random_models(variant, seed, m):
    K = BaseField.parse(f"F{1 << m}(t)")
    mdl = random_model(variant, K, random.Random(seed))
    rep = delta(mdl)
    expected = (1, 0, 0) if variant.startswith("QE") else (3, 1, 0)
    assert (rep.delta_p, rep.delta_p1, rep.delta_p2) == expected
    if rep.branch == "ramified":
        assert lemma_holds(rep, validate(mdl).degrees[0])


# -- embeddings and canonical quartics ----------------------------------------------------------------------

def test_qe_i_quadrics():
    q1, q2 = embed_quadrics(model("QE-i a0=0 a2=0 a4=t"))
    assert q1.text() == "x1^2 = x0*x2"
    assert q2.text() == "x3^2 = x0*x1 + t*x2^2"


def test_unified_quadrics():
    q1, q2 = embed_quadrics(model("QE-unified a0=1 a2=t b0=0 b1=1 b2=t"))
    assert q1.text() == "x2^2 = x0^2 + x0*x1 + t*x1^2"
    assert q2.text() == "x3^2 = x0*x1 + x0*x2 + t*x1^2"


def test_embedding_is_for_quasi_elliptic_models_only():
    with pytest.raises(ValueError):
        embed_quadrics(model("G3-i a0=0 a2=0 a4=t"))


def test_canonical_quartic_of_g3_ii():
    q4 = to_canonical_quartic(model("G3-ii a0=0 a2=t c0=0 c1=1 c2=0"))
    assert q4 == model("Q4-ii a=1/t b=1/t c=1 d=0")
    t = F2t["t"]
    assert invariant_of(q4) == t ** -3 + 1


def test_canonical_quartic_of_g3_i_is_a_renaming():
    assert to_canonical_quartic(model("G3-i a0=1 a2=t a4=t^3")) == model("Q4-i a=1 b=t c=t^3")


def test_hyperelliptic_case_reports_the_conic():
    # c2 outside K^2 + K^2*a2 needs a second base variable
    m = FunctionFieldModel.make("Hyperelliptic-G3ii", F2ts, a0=0, a2="t", c0=1, c1=0, c2="s")
    with pytest.raises(Hyperelliptic, match=r"y\^2 \+ s\*z\^2 \+ z \+ 1 = 0"):
        to_canonical_quartic(m)
