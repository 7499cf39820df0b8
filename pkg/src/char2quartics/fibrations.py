"""The universal fibrations Z -> A^4 and V -> A^3, the pencil S and its companion S'.

Fibers are plane curves over GF(2^m) obtained by substituting a base point
into the family's bihomogeneous form.  ``classify_fiber`` applies the
decision tree on the base coordinates and then recomputes the geometry
(singular points, strangeness, tangency) to confirm it.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .algebra import MPoly, field, lift
from .algebra.ratfunc import BaseField
from .errors import IdentityFailed, NonReduced, QuarticsError
from .function_fields import FunctionFieldModel, validate
from .plane_geometry import (ALL_BITANGENT, ALL_INFLECTIONAL, PlaneCurveFq, Point,
                             is_strange, line_profile, points_over, singular_points,
                             tangency_class)
from .plane_geometry.curve import lcm

NON_REDUCED_DOUBLE_QUADRIC = "NonReducedDoubleQuadric"
QUADRUPLE_LINE = "QuadrupleLine"
TWO_DOUBLE_LINES = "TwoDoubleLines"
GENERIC_MULT2 = "GenericMult2"
SPECIAL_MULT3 = "SpecialMult3"
BAD_FIBRE_MULT4 = "BadFibreMult4"
BAD_FIBRE_MULT3 = "BadFibreMult3"   # the triple line U^3 of S'
CLASSES = (NON_REDUCED_DOUBLE_QUADRIC, QUADRUPLE_LINE, TWO_DOUBLE_LINES, GENERIC_MULT2,
           SPECIAL_MULT3, BAD_FIBRE_MULT4, BAD_FIBRE_MULT3)

STRANGE_CENTER = Point(1, (0, 1, 0))


@dataclass(frozen=True)
class FibrationSpec:
    """A family of plane curves over an affine or projective base.

    Forms are written in X, Y, Z (fiber coordinates) with the base
    coordinates as coefficients; ``projective`` bases are points of P^n.
    """

    family: str
    coords: tuple
    projective: bool
    degree: int
    form_text: str

    def form(self, point, m) -> PlaneCurveFq:
        return fiber_at(self, point, m)


FAMILIES = {
    "Z": FibrationSpec("Z", ("a", "b", "c", "d"), False, 4,
                       "Y^4 + a*Z^4 + b*X^2*Y^2 + c*X^2*Z^2 + b*X^3*Z + d*X^4"),
    "V": FibrationSpec("V", ("a0", "a2", "a4"), False, 4,
                       "Y^4 + a0*Z^4 + X*Z^3 + a2*X^2*Z^2 + a4*X^4"),
    # the closure of V over the boundary s = 0 of P^3
    "Vbar": FibrationSpec("Vbar", ("a0", "a2", "a4", "s"), True, 4,
                          "s*Y^4 + a0*Z^4 + s*X*Z^3 + a2*X^2*Z^2 + a4*X^4"),
    "S": FibrationSpec("S", ("t0", "t1"), True, 4, "t0*(Y^4 + X*Z^3) + t1*X^4"),
    "Sprime": FibrationSpec("Sprime", ("t0", "t1"), True, 3, "t0*(U*V^2 + W^3) + t1*U^3"),
}


def get_family(family) -> FibrationSpec:
    if isinstance(family, FibrationSpec):
        return family
    try:
        return FAMILIES[family.replace("'", "prime").replace("S′", "Sprime")]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}") \
            from None


def fiber_at(spec, point, m: int) -> PlaneCurveFq:
    """Substitute the base point (field elements of GF(2^m)) into the family's form."""
    spec = get_family(spec)
    if len(point) != len(spec.coords):
        raise ValueError(f"{spec.family} expects {len(spec.coords)} base coordinates")
    F = field(m)
    vals = dict(zip(spec.coords, point))  # S' uses (U, V, W) = (X, Y, Z)
    terms = {}

    def add(c, e):
        if c:
            terms[e] = terms.get(e, 0) ^ c

    # exponents in (X, Y, Z); for S' read (U, V, W)
    if spec.family == "Z":
        a, b, c, d = point
        add(1, (0, 4, 0)); add(a, (0, 0, 4)); add(b, (2, 2, 0))
        add(c, (2, 0, 2)); add(b, (3, 0, 1)); add(d, (4, 0, 0))
    elif spec.family in ("V", "Vbar"):
        s = vals.get("s", 1)
        add(s, (0, 4, 0)); add(vals["a0"], (0, 0, 4)); add(s, (1, 0, 3))
        add(vals["a2"], (2, 0, 2)); add(vals["a4"], (4, 0, 0))
    elif spec.family == "S":
        t0, t1 = point
        add(t0, (0, 4, 0)); add(t0, (1, 0, 3)); add(t1, (4, 0, 0))
    elif spec.family == "Sprime":
        t0, t1 = point
        add(t0, (1, 2, 0)); add(t0, (0, 0, 3)); add(t1, (3, 0, 0))
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        raise ValueError(f"the form of {spec.family} vanishes at {point}")
    return PlaneCurveFq(MPoly(F, 3, terms), spec.degree, name=f"{spec.family}{point_text(spec, point, m)}")


def point_text(spec, point, m):
    spec = get_family(spec)
    F = field(m)
    if spec.projective:
        return "(" + ":".join(F.fmt(v) for v in point) + ")"
    return " ".join(f"{n}={F.fmt(v)}" for n, v in zip(spec.coords, point))


def base_points(spec, m: int):
    """All base points over GF(2^m) in a fixed order (projective points normalized)."""
    spec = get_family(spec)
    q = 1 << m
    n = len(spec.coords)
    if not spec.projective:
        return [tuple(p) for p in itertools.product(range(q), repeat=n)]
    out = []
    for p in itertools.product(range(q), repeat=n):
        nz = next((v for v in p if v), 0)
        if nz == 1:
            out.append(tuple(p))
    if spec.family == "Vbar":
        out = [p for p in out if p[3] == 0]   # boundary only; s = 1 is the affine V
    return out


@dataclass
class FiberReport:
    family: str
    base_point: tuple
    m: int
    classification: str
    curve: PlaneCurveFq
    singularity: object = None          # SingularityReport
    singular_count: int | None = None
    strange_center: Point | None = None
    tangency: object = None             # TangencyClass
    support: PlaneCurveFq | None = None
    power: int | None = None
    tangent_isolated: bool | None = None
    mismatches: list = dc_field(default_factory=list)

    @property
    def base_text(self):
        return point_text(self.family, self.base_point, self.m)

    def text(self):
        lines = [f"family={self.family} base={self.base_text} class={self.classification}",
                 f"  fiber: {self.curve.text()}"]
        if self.support is not None:
            lines.append(f"  support: ({self.support.text()})^{self.power}")
        if self.singularity is not None:
            lines.append(f"  singular: {self.singularity.text()}")
        if self.strange_center is not None:
            lines.append(f"  strange center: {self.strange_center.text()}")
        if self.tangency is not None:
            lines.append(f"  tangency: {self.tangency.text()}")
        if self.tangent_isolated is not None:
            lines.append(f"  singular tangent meets curve elsewhere: {not self.tangent_isolated}")
        lines.append("  mismatches: " + ("; ".join(self.mismatches) if self.mismatches else "none"))
        return "\n".join(lines)

    def to_dict(self):
        s = self.singularity
        return {
            "family": self.family, "base_point": self.base_text, "m": self.m,
            "classification": self.classification, "fiber": self.curve.text(),
            "support": self.support.text() if self.support is not None else None,
            "power": self.power,
            "singularity": s.to_dict() if s is not None else None,
            "singular_count": self.singular_count,
            "strange_center": self.strange_center.text() if self.strange_center else None,
            "tangency": self.tangency.to_dict() if self.tangency is not None else None,
            "tangent_isolated": self.tangent_isolated,
            "mismatches": list(self.mismatches),
        }

    def csv_row(self):
        s = self.singularity
        return {
            "base_point": self.base_text,
            "classification": self.classification,
            "singular_point": s.point.text() if s is not None else "",
            "multiplicity": s.multiplicity if s is not None else "",
            "strange_center": self.strange_center.text() if self.strange_center else "",
            "tangency": self.tangency.kind if self.tangency is not None else "",
            "mismatch": "; ".join(self.mismatches),
        }


def decide(spec, point, m: int) -> str:
    """The decision tree on base coordinates alone."""
    spec = get_family(spec)
    F = field(m)
    if spec.family == "Z":
        a, b, c, d = point
        if b == 0:
            return NON_REDUCED_DOUBLE_QUADRIC if c else QUADRUPLE_LINE
        return GENERIC_MULT2 if F.mul(a, F.mul(b, b)) ^ F.mul(c, c) else SPECIAL_MULT3
    if spec.family in ("V", "Vbar"):
        if spec.family == "Vbar" and point[3] == 0:
            return TWO_DOUBLE_LINES if point[1] else QUADRUPLE_LINE
        return GENERIC_MULT2 if point[1] else SPECIAL_MULT3
    if spec.family == "S":
        # (1:c) is the V fiber (0, 0, c): multiplicity 3
        return BAD_FIBRE_MULT4 if point[0] == 0 else SPECIAL_MULT3
    if spec.family == "Sprime":
        return BAD_FIBRE_MULT3 if point[0] == 0 else GENERIC_MULT2
    raise ValueError(spec.family)  # pragma: no cover


_EXPECTED_TANGENCY = {"Z": ALL_BITANGENT, "V": ALL_INFLECTIONAL, "Vbar": ALL_INFLECTIONAL,
                      "S": ALL_INFLECTIONAL}


def classify_fiber(spec, point, m: int, max_ext: int = 4, geometry: bool = True) -> FiberReport:
    """Decision tree plus recomputed evidence; disagreements go into ``mismatches``."""
    spec = get_family(spec)
    point = tuple(point)
    curve = fiber_at(spec, point, m)
    label = decide(spec, point, m)
    rep = FiberReport(spec.family, point, m, label, curve)
    if not geometry:
        return rep
    mism = rep.mismatches
    try:
        sings = singular_points(curve, max_ext)
    except NonReduced as exc:
        rep.support, rep.power = exc.support, exc.power
        _check_non_reduced(rep, label, exc, max_ext)
        return rep
    if label in (NON_REDUCED_DOUBLE_QUADRIC, QUADRUPLE_LINE, TWO_DOUBLE_LINES,
                 BAD_FIBRE_MULT4, BAD_FIBRE_MULT3):
        mism.append(f"expected a non-reduced fiber, found {len(sings)} isolated singular points")
        return rep
    rep.singular_count = len(sings)
    if len(sings) != 1:
        mism.append(f"expected one singular point, found {len(sings)}")
        if not sings:
            return rep
    rep.singularity = s = sings[0]
    want = 2 if label == GENERIC_MULT2 else 3
    if s.multiplicity != want:
        mism.append(f"multiplicity {s.multiplicity}, decision tree says {want}")
    if s.unibranch_cone:
        L = s.tangent_cone[0][0]
        prof = line_profile(curve, L, max_ext, field_hint=s.point.d)
        rep.tangent_isolated = len(prof.intersections) == 1 and not prof.leftovers
        if spec.family in ("Z", "V") and not rep.tangent_isolated:
            mism.append(f"tangent at the singular point meets the curve again: {prof.text()}")
    elif spec.family in ("Z", "V"):
        mism.append("tangent cone at the singular point is not a single line")
    try:
        rep.strange_center = is_strange(curve, max_ext)
    except QuarticsError as exc:
        mism.append(f"strangeness test failed: {exc}")
    if spec.family != "Sprime" and rep.strange_center != STRANGE_CENTER:
        mism.append(f"strange center {rep.strange_center} is not (0:1:0)")
    if spec.degree == 4:
        rep.tangency = tangency_class(curve, max_ext)
        want_t = _EXPECTED_TANGENCY.get(spec.family)
        if want_t and rep.tangency.kind != want_t:
            mism.append(f"tangency {rep.tangency.kind}, expected {want_t}")
    return rep


def _check_non_reduced(rep, label, exc, max_ext):
    mism = rep.mismatches
    want_power = {NON_REDUCED_DOUBLE_QUADRIC: 2, TWO_DOUBLE_LINES: 2, QUADRUPLE_LINE: 4,
                  BAD_FIBRE_MULT4: 4, BAD_FIBRE_MULT3: None}.get(label)
    if label not in (NON_REDUCED_DOUBLE_QUADRIC, QUADRUPLE_LINE, TWO_DOUBLE_LINES,
                     BAD_FIBRE_MULT4, BAD_FIBRE_MULT3):
        mism.append(f"decision tree says {label} but the fiber is non-reduced ({exc})")
        return
    if want_power is not None and exc.power != want_power:
        mism.append(f"fiber is a power {exc.power}, expected {want_power}")
        return
    if exc.support is None:
        if label != BAD_FIBRE_MULT3:
            mism.append("non-reduced fiber is not a proper power")
        return
    if label == NON_REDUCED_DOUBLE_QUADRIC:
        # the support must be a smooth conic
        try:
            if singular_points(exc.support, max_ext):
                mism.append("square root conic is singular")
        except NonReduced:
            mism.append("square root conic is itself a square")
    elif label == TWO_DOUBLE_LINES:
        try:
            n = len(singular_points(exc.support, max_ext))
        except NonReduced:
            n = None
        if n != 1:
            mism.append("square root is not a pair of distinct lines")


@dataclass
class ScanReport:
    family: str
    m: int
    counts: dict
    mismatches: list            # [(base text, [messages])]
    reports: list

    def text(self):
        head = f"scan {self.family} over GF(2^{self.m}): {len(self.reports)} fibers"
        body = [f"  {k}: {v}" for k, v in self.counts.items()]
        tail = [f"mismatches: {len(self.mismatches)}"]
        tail += [f"  {b}: {'; '.join(ms)}" for b, ms in self.mismatches]
        return "\n".join([head] + body + tail)

    def to_dict(self):
        return {"family": self.family, "m": self.m, "fibers": len(self.reports),
                "counts": dict(self.counts),
                "mismatches": [{"base_point": b, "messages": ms} for b, ms in self.mismatches]}


def _scan_chunk(args):
    family, points, m, max_ext = args
    return [classify_fiber(family, p, m, max_ext) for p in points]


def scan(spec, m: int, filter_predicate=None, max_ext: int = 4, workers: int = 1) -> ScanReport:
    """Classify every base point over GF(2^m); results keep the base-point order."""
    spec = get_family(spec)
    pts = [p for p in base_points(spec, m)
           if filter_predicate is None or filter_predicate(dict(zip(spec.coords, p)))]
    if workers > 1 and len(pts) > 1:
        size = max(1, len(pts) // (workers * 4))
        chunks = [(spec.family, pts[i:i + size], m, max_ext) for i in range(0, len(pts), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = [r for chunk in pool.map(_scan_chunk, chunks) for r in chunk]
    else:
        reports = _scan_chunk((spec.family, pts, m, max_ext))
    counts = {}
    for r in reports:
        counts[r.classification] = counts.get(r.classification, 0) + 1
    mism = [(r.base_text, r.mismatches) for r in reports if r.mismatches]
    return ScanReport(spec.family, m, dict(sorted(counts.items())), mism, reports)


def parse_filter(text: str | None):
    """``"b!=0,a=1"`` -> predicate on a dict of base coordinates (field-element ints)."""
    if not text:
        return None
    conds = []
    for part in text.split(","):
        part = part.strip()
        if "!=" in part:
            name, val = part.split("!=")
            conds.append((name.strip(), int(val, 0), False))
        elif "=" in part:
            name, val = part.split("=")
            conds.append((name.strip(), int(val, 0), True))
        else:
            raise ValueError(f"cannot parse filter condition {part!r}")

    def pred(vals):
        return all((vals[n] == v) == eq for n, v, eq in conds)
    return pred


# -- the inseparable covering S -> S' ------------------------------------------

@dataclass
class CoverRecord:
    c: int
    m: int
    identity_holds: bool
    quartic_points: int
    cubic_points: int
    injective: bool
    onto: bool
    singular_image: tuple | None      # (quartic singular point, image, cubic singular point)

    def ok(self):
        return self.identity_holds and self.injective and self.onto and \
            (self.singular_image is None or self.singular_image[1] == self.singular_image[2])

    def text(self):
        F = field(self.m)
        lines = [f"cover check c={F.fmt(self.c)} over GF(2^{self.m})",
                 f"  identity x^2*(y^4 + x*z^3 + c*x^4) = u*v^2 + w^3 + c*u^3: {self.identity_holds}",
                 f"  points: quartic {self.quartic_points}, cubic {self.cubic_points}",
                 f"  injective: {self.injective}  onto: {self.onto}"]
        if self.singular_image:
            P, Q, R = self.singular_image
            lines.append(f"  singular point {P.text()} -> {Q.text()} (cusp {R.text()})")
        return "\n".join(lines)

    def to_dict(self):
        si = self.singular_image
        return {"c": field(self.m).fmt(self.c), "m": self.m,
                "identity_holds": self.identity_holds,
                "quartic_points": self.quartic_points, "cubic_points": self.cubic_points,
                "injective": self.injective, "onto": self.onto,
                "singular_image": None if si is None else
                {"point": si[0].text(), "image": si[1].text(), "cusp": si[2].text()},
                "ok": self.ok()}


def cover_identity() -> bool:
    """x^2 (y^4 + x z^3 + c x^4) = u v^2 + w^3 + c u^3 with (u, v, w) = (x^2, y^2, x z), c free."""
    F2 = field(1)
    x, y, z, c = (MPoly.var(F2, 4, i) for i in range(4))
    lhs = x * x * (y ** 4 + x * z ** 3 + c * x ** 4)
    u, v, w = x * x, y * y, x * z
    rhs = u * v * v + w ** 3 + c * u ** 3
    return (lhs + rhs).is_zero()


def cover_map(P: Point, c: int, m: int) -> Point:
    """(x:y:z) -> (x^2 : y^2 : x z), extended to (0:0:1) via (x y^2 : z^3 + c x^3 : z y^2)."""
    M = lcm(m, P.d)
    F = field(M)
    cc = lift(c, m, M)
    x, y, z = P.in_field(M)
    img = (F.mul(x, x), F.mul(y, y), F.mul(x, z))
    if not any(img):
        y2 = F.mul(y, y)
        img = (F.mul(x, y2), F.pow(z, 3) ^ F.mul(cc, F.pow(x, 3)), F.mul(z, y2))
    return Point.make(img, M)


def cover_check(c: int, m: int) -> CoverRecord:
    ident = cover_identity()
    if not ident:
        raise IdentityFailed("the covering identity does not hold")
    quartic = fiber_at("S", (1, c), m)
    cubic = fiber_at("Sprime", (1, c), m)
    qpts = points_over(quartic, m)
    cpts = set(points_over(cubic, m))
    images = [cover_map(P, c, m) for P in qpts]
    if not all(Q in cpts for Q in images):
        raise IdentityFailed("a quartic point maps off the cubic fiber")
    injective = len(set(images)) == len(images)
    onto = set(images) == cpts
    sing = None
    try:
        qs, cs = singular_points(quartic, 1), singular_points(cubic, 1)
        if len(qs) == 1 and len(cs) == 1:
            sing = (qs[0].point, cover_map(qs[0].point, c, m), cs[0].point)
    except QuarticsError:
        pass
    return CoverRecord(c, m, ident, len(qpts), len(cpts), injective, onto, sing)


# -- generic fibers over function-field bases ------------------------------------

def generic_fiber_from_base_map(family, maps, base: str | BaseField = "F2(s)"):
    """Build the Q4 model of the generic fiber over K = F_q(s...) and validate it.

    ``maps`` gives each base coordinate as an element of K (string or RatFunc).
    Returns ``(model, prime_data)``; invalid maps raise PreconditionViolated.
    """
    spec = get_family(family)
    K = base if isinstance(base, BaseField) else BaseField.parse(base)
    if isinstance(maps, (list, tuple)):
        maps = dict(zip(spec.coords, maps))
    vals = {n: K(maps[n]) for n in spec.coords}
    if spec.family == "Z":
        model = FunctionFieldModel.make("Q4-ii", K, **vals)
    elif spec.family == "V":
        model = FunctionFieldModel.make("Q4-i", K, a=vals["a0"], b=vals["a2"], c=vals["a4"])
    else:
        raise ValueError(f"family {spec.family} has no function-field model here")
    return model, validate(model)
