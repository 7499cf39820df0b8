import pytest

from char2quartics.algebra import field
from char2quartics.errors import PreconditionViolated
from char2quartics.fibrations import (BAD_FIBRE_MULT3, BAD_FIBRE_MULT4, GENERIC_MULT2,
                                      NON_REDUCED_DOUBLE_QUADRIC, QUADRUPLE_LINE, SPECIAL_MULT3,
                                      STRANGE_CENTER, TWO_DOUBLE_LINES, base_points, classify_fiber,
                                      cover_check, cover_identity, cover_map, decide, fiber_at,
                                      generic_fiber_from_base_map, get_family, parse_filter, scan)
from char2quartics.plane_geometry import ALL_BITANGENT, ALL_INFLECTIONAL, PlaneCurveFq, Point

g = 2


def test_pencil_fiber_form():
    assert fiber_at("S", (1, g), 4).poly == PlaneCurveFq.parse("Y^4 + X*Z^3 + g*X^4", 4).poly


def test_bad_fiber_is_quadruple_line():
    assert fiber_at("S", (0, 1), 1).poly == PlaneCurveFq.parse("X^4", 1).poly


def test_z_fiber_over_origin_of_b():
    assert fiber_at("Z", (1, 0, 0, 0), 1).poly == PlaneCurveFq.parse("(Y + Z)^4", 1).poly


def test_family_aliases():
    assert get_family("S'") is get_family("Sprime")
    with pytest.raises(ValueError):
        get_family("W")


def test_projective_base_points_are_normalized():
    pts = base_points("S", 2)
    assert len(pts) == 5
    assert all(next(v for v in p if v) == 1 for p in pts)


def test_generic_z_fiber_report():
    rep = classify_fiber("Z", (g, 1, 0, 0), 2)
    assert rep.classification == GENERIC_MULT2
    assert rep.strange_center == STRANGE_CENTER
    assert rep.tangency.kind == ALL_BITANGENT
    assert rep.singularity.multiplicity == 2
    assert rep.mismatches == []


@pytest.mark.parametrize("d", [0, 1])
def test_special_z_fiber(d):
    rep = classify_fiber("Z", (1, 1, 1, d), 1)
    assert rep.classification == SPECIAL_MULT3
    assert rep.singularity.multiplicity == 3


@pytest.mark.parametrize("point,cls", [((1, 0, 1, 0), NON_REDUCED_DOUBLE_QUADRIC),
                                       ((1, 0, 0, 1), QUADRUPLE_LINE)])
def test_non_reduced_z_fibers(point, cls):
    rep = classify_fiber("Z", point, 1)
    assert rep.classification == cls
    assert rep.power in (2, 4)


def test_decide_matches_classify():
    for p in base_points("Z", 1):
        assert decide("Z", p, 1) == classify_fiber("Z", p, 1, geometry=False).classification


def test_pencil_classes():
    assert decide("S", (0, 1), 2) == BAD_FIBRE_MULT4
    assert decide("Sprime", (0, 1), 2) == BAD_FIBRE_MULT3


# -- scans ------------------------------------------------------------------------

def test_z_scan_over_f2():
    rep = scan("Z", 1)
    assert rep.counts == {GENERIC_MULT2: 4, NON_REDUCED_DOUBLE_QUADRIC: 4,
                          QUADRUPLE_LINE: 4, SPECIAL_MULT3: 4}
    assert rep.mismatches == []
    for r in rep.reports:
        if r.classification in (GENERIC_MULT2, SPECIAL_MULT3):
            assert r.strange_center == STRANGE_CENTER
            assert r.tangency.kind == ALL_BITANGENT


def test_v_scan_over_f2():
    rep = scan("V", 1)
    assert rep.mismatches == []
    assert rep.counts == {GENERIC_MULT2: 4, SPECIAL_MULT3: 4}
    assert all(r.tangency.kind == ALL_INFLECTIONAL for r in rep.reports)


def test_v_boundary():
    rep = scan("Vbar", 2)
    assert set(rep.counts) == {QUADRUPLE_LINE, TWO_DOUBLE_LINES}
    assert rep.mismatches == []


def test_pencil_scans():
    assert scan("S", 2).counts == {BAD_FIBRE_MULT4: 1, SPECIAL_MULT3: 4}
    assert scan("Sprime", 2).counts == {BAD_FIBRE_MULT3: 1, GENERIC_MULT2: 4}


def test_scan_filter():
    rep = scan("Z", 1, parse_filter("b!=0,a=1"))
    assert len(rep.reports) == 4
    assert all(r.base_point[0] == 1 and r.base_point[1] for r in rep.reports)


def test_bad_filter():
    with pytest.raises(ValueError):
        parse_filter("b>0")


def test_parallel_scan_is_deterministic():
    a, b = scan("V", 1), scan("V", 1, workers=2)
    assert [r.to_dict() for r in a.reports] == [r.to_dict() for r in b.reports]


# -- the cover ------------------------------------------------------------------------

def test_cover_identity():
    assert cover_identity()


@pytest.mark.parametrize("c", range(1, 16))
def test_cover_is_bijective_on_points(c):
    rec = cover_check(c, 4)
    assert rec.injective and rec.onto and rec.ok()


def test_singular_point_maps_to_cusp():
    F = field(4)
    rec = cover_check(g, 4)
    P, Q, R = rec.singular_image
    assert P == Point.make((1, F.pow(g, 4), 0), 4)
    assert Q == R == Point.make((1, F.pow(g, 8), 0), 4)


def test_cover_map_at_undefined_point():
    # (0:0:1) lies on every pencil fiber and goes to (0:1:0) of the cubic
    assert cover_map(Point.make((0, 0, 1), 1), 1, 1) == Point.make((0, 1, 0), 1)


# -- generic fibers ------------------------------------------------------------------------

def test_generic_fiber_of_referenced_pencil():
    model, data = generic_fiber_from_base_map("Z", ["s", "s", "1", "0"])
    assert model.variant == "Q4-ii"


def test_generic_fiber_of_v_pencil():
    model, _ = generic_fiber_from_base_map("V", {"a0": "0", "a2": "0", "a4": "s"})
    assert model.variant == "Q4-i"


def test_generic_fiber_inseparable():
    with pytest.raises(PreconditionViolated):
        generic_fiber_from_base_map("Z", ["s^2", "s", "1", "0"])


def test_generic_fiber_b_zero():
    with pytest.raises(PreconditionViolated):
        generic_fiber_from_base_map("Z", ["s", "0", "1", "0"])
