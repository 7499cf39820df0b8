import pytest
from hypothesis import given, strategies as st

from char2quartics.algebra import (INF, BaseField, LaurentSeries, conway_modulus,
                                   decompose_by_power_basis, differential_valuation, field,
                                   parse_element, power_membership, reassemble, series_expand,
                                   span_membership)
from char2quartics.errors import DegenerateSpan, PrecisionExhausted

from .conftest import polys, ratfuncs

F2t = BaseField.parse("F2(t)")
F4t = BaseField.parse("F4(t)")
F2ts = BaseField.parse("F2(t,s)")
F16t = BaseField.parse("F16(t)")


# -- GF(2^m) ----------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4, 8, 16])
def test_field_modulus_is_irreducible_of_degree_m(m):
    assert conway_modulus(m).bit_length() == m + 1


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 8])
def test_every_element_has_a_square_root(m):
    F = field(m)
    for a in range(1 << m):
        assert F.mul(F.sqrt(a), F.sqrt(a)) == a


@given(st.integers(1, 255), st.integers(1, 255), st.integers(0, 255))
def test_gf256_group_laws(a, b, c):
    F = field(8)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
    assert F.mul(a, F.inv(a)) == 1
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_fourth_root_in_F16_is_the_fourth_power():
    F = field(4)
    g = 2
    assert F.root2k(g, 2) == F.pow(g, 4)


# -- rational functions -------------------------------------------------------------------

@given(ratfuncs(F4t))
def test_characteristic_two_addition(f):
    assert (f + f).is_zero()


@given(ratfuncs(F2ts), ratfuncs(F2ts))
def test_canonical_form_makes_equal_elements_identical(f, g):
    h = f * g
    if not g.is_zero():
        assert h / g == f
        assert str(h / g) == str(f)


def test_parse_and_format_round_trip():
    for text in ["t^3+g2*t", "1/(t+1)", "(g*t^2+1)/(t+g2)"]:
        f = parse_element(text, F4t)
        assert parse_element(str(f), F4t) == f


# -- power-basis decomposition -------------------------------------------------------------

def test_decompose_t_cubed():
    t = F2t["t"]
    assert decompose_by_power_basis(t ** 3, 1) == {(1,): t}


def test_decompose_sum_of_squares_two_variables():
    t, s = F2ts["t"], F2ts["s"]
    assert decompose_by_power_basis(t ** 2 + s ** 2, 1) == {(0, 0): t + s}


def test_decompose_t_eighth_root_class():
    t = F2t["t"]
    assert decompose_by_power_basis(t, 3) == {(1,): F2t.one()}


@given(ratfuncs(F4t), st.integers(1, 3))
def test_reassemble_inverts_decomposition(f, k):
    assert reassemble(decompose_by_power_basis(f, k), F4t, k) == f


@given(ratfuncs(F2ts), st.integers(1, 2))
def test_powers_are_recognized(g, k):
    w = power_membership(g.frobenius(k), k)
    assert w == g
    assert w.frobenius(k) == g.frobenius(k)


def test_power_membership_examples():
    t, s = F2ts["t"], F2ts["s"]
    assert power_membership(F2t["t"] ** 2, 1) == F2t["t"]
    assert power_membership(F2t["t"], 1) is None
    assert power_membership(t ** 4 + s ** 4, 2) == t + s


def test_span_membership_examples():
    t, s = F2ts["t"], F2ts["s"]
    assert span_membership(t, s, 1) is None
    assert span_membership(s + t ** 2, s, 1) == (t, F2ts.one())


def test_span_membership_degenerate():
    with pytest.raises(DegenerateSpan):
        span_membership(F2t["t"], F2t["t"] ** 2, 1)


@given(ratfuncs(F2t), ratfuncs(F2t))
def test_span_membership_recovers_members(u, v):
    a = F2t["t"]
    f = u.frobenius(3) + v.frobenius(3) * a.frobenius(2)
    got = span_membership(f, a.frobenius(2), 3)
    assert got is not None
    gu, gv = got
    assert gu.frobenius(3) + gv.frobenius(3) * a.frobenius(2) == f


# -- Laurent series ------------------------------------------------------------------------------

def test_series_of_a_polynomial_is_itself():
    t = F2t["t"]
    coeffs = [t, 0, t + 1, 1, t ** 2]
    s = series_expand(coeffs, N=8, K=F2t)
    assert s.valuation() == 0
    assert [s.coeff(n) for n in range(5)] == [F2t(c) for c in coeffs]


def test_geometric_series():
    s = series_expand([1], [1, 1], N=4, K=F2t)
    assert [s.coeff(n) for n in range(4)] == [F2t.one()] * 4


def test_differential_valuation_of_the_quartic_expansion():
    t = F2t["t"]
    s = LaurentSeries.from_poly(F2t, [t, 0, t + 1, 1, t ** 3])
    assert differential_valuation(s) == 2


def test_constants_and_squares_have_no_differential():
    assert differential_valuation(LaurentSeries.from_poly(F2t, [F2t["t"]])) == INF


@given(st.lists(st.integers(0, 3), min_size=1, max_size=6))
def test_squares_have_infinite_differential_valuation(cs):
    s = series_expand([F4t(c) for c in cs], [1, 1], N=12, K=F4t)
    assert differential_valuation(s.frobenius(1)) == INF


def test_unresolved_valuation_needs_more_precision():
    s = series_expand([1], [1, 0, 1], N=6, K=F2t)
    with pytest.raises(PrecisionExhausted):
        differential_valuation(s)
