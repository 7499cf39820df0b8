"""Singularities, tangents, line intersections and the strange/tangency tests.

Everything is exhaustive over the finite fields GF(2^(m*k)), k <= max_ext.
Points are found along the vertical lines through (0:1:0): on each line the
form restricts to a univariate polynomial in Y whose roots in the field are
extracted with a gcd against Y^q - Y.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..algebra import field, lift
from ..algebra.gf2m import MAX_DEGREE
from ..algebra.mpoly import dense_add, dense_divmod, dense_gcd, dense_mul, trim
from ..algebra.upoly import edf, factor, monic, powmod_frob
from ..errors import (LineIsComponent, NonReduced, PointNotOnCurve, SingularPoint,
                      TooFewSmoothPoints)
from .curve import Line, PlaneCurveFq, Point, extension_degrees, lcm, meet

DEFAULT_MAX_EXT = 6

ALL_INFLECTIONAL = "AllInflectional"
ALL_BITANGENT = "AllBitangent"
MIXED = "Mixed"


# -- low level helpers -------------------------------------------------------

def lifted_terms(poly, M):
    """[(i, j, k, c)] with coefficients lifted into GF(2^M)."""
    d = poly.F.m
    return [(e[0], e[1], e[2], lift(c, d, M)) for e, c in poly.terms.items()]


def field_roots(F, f):
    """Distinct roots of the dense polynomial f lying in F itself, sorted."""
    f = trim(list(f))
    if len(f) <= 1:
        return []
    f = monic(F, f)
    out = []
    if f[0] == 0:
        out.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) > 1:
        h = powmod_frob(F, [0, 1], F.m, f)
        g = dense_gcd(F, f, dense_add(h, [0, 1]))
        if len(g) > 1:
            out.extend(p[0] for p in edf(F, g, 1))
    return sorted(set(out))


def _restrict_vertical(F, terms, x, at_infinity=False):
    """Restriction to the line through (0:1:0) and (x:0:1), or to Z = 0."""
    deg = max((t[1] for t in terms), default=0)
    f = [0] * (deg + 1)
    mul, pw = F.mul, F.pow
    for i, j, k, c in terms:
        if at_infinity:
            if k == 0:
                f[j] ^= c
        else:
            f[j] ^= mul(c, pw(x, i)) if i else c
    return trim(f)


def _vertical_lines(M):
    """Parameters of the vertical lines through (0:1:0) over GF(2^M)."""
    return [(x, False) for x in range(1 << M)] + [(0, True)]


def _line_point(x, infinity, y):
    return (1, y, 0) if infinity else (x, y, 1)


# -- point enumeration -------------------------------------------------------

def points_over(curve: PlaneCurveFq, M: int):
    """All points of the curve over GF(2^M) (M a multiple of curve.m), sorted."""
    if M % curve.m:
        raise ValueError(f"GF(2^{curve.m}) is not a subfield of GF(2^{M})")
    F = field(M)
    terms = lifted_terms(curve.poly, M)
    pts = set()
    for x, inf in _vertical_lines(M):
        f = _restrict_vertical(F, terms, x, inf)
        ys = range(1 << M) if not f else field_roots(F, f)
        for y in ys:
            pts.add(Point.make(_line_point(x, inf, y), M))
    if not any(c for i, j, k, c in terms if i == 0 and k == 0):
        pts.add(Point.make((0, 1, 0), M))
    return sorted(pts)


def enumerate_points(curve: PlaneCurveFq, max_ext: int = DEFAULT_MAX_EXT):
    """Points over every GF(2^(m*k)), k <= max_ext, each listed once in its minimal field."""
    pts = set()
    for M in extension_degrees(curve.m, max_ext):
        pts.update(points_over(curve, M))
    return sorted(pts)


def smooth_points(curve: PlaneCurveFq, max_ext: int = DEFAULT_MAX_EXT):
    return [P for P in enumerate_points(curve, max_ext) if any(curve.gradient(P)[0])]


# -- singularities -----------------------------------------------------------

@dataclass(frozen=True)
class SingularityReport:
    point: Point
    multiplicity: int
    tangent_cone: tuple = ()      # ((Line, multiplicity), ...)
    unsplit: tuple = ()           # ((factor degree, multiplicity), ...) beyond GF(2^16)

    @property
    def unibranch_cone(self):
        """Single tangent direction (the cone is a power of one line)."""
        return len(self.tangent_cone) == 1 and not self.unsplit

    def text(self):
        cone = " * ".join(f"({L.text()[:-4]})^{e}" for L, e in self.tangent_cone)
        extra = "".join(f" * [deg {k}]^{e}" for k, e in self.unsplit)
        return f"point={self.point.text()} multiplicity={self.multiplicity} cone={cone}{extra}"

    def to_dict(self):
        return {"point": self.point.to_dict(), "point_text": self.point.text(),
                "multiplicity": self.multiplicity,
                "tangent_cone": [{"line": L.text(), "coeffs": L.to_dict(), "multiplicity": e}
                                 for L, e in self.tangent_cone],
                "unsplit": [{"degree": k, "multiplicity": e} for k, e in self.unsplit],
                "unibranch": self.unibranch_cone}


def _proper_power_support(curve: PlaneCurveFq):
    power, support = 1, curve
    while support.is_square():
        support, power = support.sqrt(), power * 2
    return support, power


def singular_points(curve: PlaneCurveFq, max_ext: int = DEFAULT_MAX_EXT):
    """Common zeros of F and its partials over GF(2^(m*k)), k <= max_ext."""
    if curve.is_square():
        support, power = _proper_power_support(curve)
        raise NonReduced(support=support, power=power,
                         detail=f"form is the {power}-th power of {support.text()}")
    polys = (curve.poly,) + tuple(p for p in curve.partials() if p.terms)
    found = set()
    for M in extension_degrees(curve.m, max_ext):
        F = field(M)
        tl = [lifted_terms(p, M) for p in polys]
        for x, inf in _vertical_lines(M):
            g = []
            for terms in tl:
                g = dense_gcd(F, g, _restrict_vertical(F, terms, x, inf))
            if not g:
                raise NonReduced(detail="singular along a whole line: multiple component")
            for y in field_roots(F, g):
                found.add(Point.make(_line_point(x, inf, y), M))
        top = Point.make((0, 1, 0), M)
        if all(p.evaluate(top.in_field(M), F) == 0 for p in polys):
            found.add(top)
    bound = curve.degree * (curve.degree - 1) // 2
    if len(found) > bound:
        raise NonReduced(detail=f"{len(found)} singular points exceed the bound {bound} "
                                "for reduced curves of this degree")
    return [multiplicity_and_cone(curve, P) for P in sorted(found)]


def _binom_odd(n, r):
    return (r & n) == r


def _local_expansion(curve: PlaneCurveFq, P: Point):
    """Affine chart at P: (dict {(a, b): c} in local coords, chart indices, field degree)."""
    M = lcm(curve.m, P.d)
    F = field(M)
    p = P.in_field(M)
    w = 2 if p[2] else (0 if p[0] else 1)
    a, b = [i for i in range(3) if i != w]
    pa, pb = p[a], p[b]
    out = {}
    mul, pw = F.mul, F.pow
    for e0, e1, e2, c in lifted_terms(curve.poly, M):
        e = (e0, e1, e2)
        ea, eb = e[a], e[b]
        for ra in range(ea + 1):
            if not _binom_odd(ea, ra):
                continue
            ca = mul(c, pw(pa, ea - ra)) if ea - ra else c
            if not ca:
                continue
            for rb in range(eb + 1):
                if not _binom_odd(eb, rb):
                    continue
                cb = mul(ca, pw(pb, eb - rb)) if eb - rb else ca
                if cb:
                    out[(ra, rb)] = out.get((ra, rb), 0) ^ cb
    return {k: v for k, v in out.items() if v}, (a, b, w, pa, pb), M


def _chart_line(F, chart, lam, mu, M):
    a, b, w, pa, pb = chart
    coeffs = [0, 0, 0]
    coeffs[a], coeffs[b] = lam, mu
    coeffs[w] = F.mul(lam, pa) ^ F.mul(mu, pb)
    return Line.make(tuple(coeffs), M)


def multiplicity_and_cone(curve: PlaneCurveFq, P: Point) -> SingularityReport:
    """Multiplicity at P and the factored lowest-degree form (the tangent cone)."""
    loc, chart, M = _local_expansion(curve, P)
    if not loc:
        raise LineIsComponent("the form vanishes identically")
    r = min(i + j for i, j in loc)
    if r == 0:
        raise PointNotOnCurve(f"{P.text()} is not on {curve.text()}")
    F = field(M)
    # cone(u, v) = sum c_i u^i v^(r-i); dehomogenize at v = 1
    h = trim([loc.get((i, r - i), 0) for i in range(r + 1)])
    lines, unsplit = {}, []
    v_power = r - (len(h) - 1)
    if v_power:
        L = _chart_line(F, chart, 0, 1, M)
        lines[L] = lines.get(L, 0) + v_power
    for fac, e in factor(F, h):
        k = len(fac) - 1
        if M * k > MAX_DEGREE:
            unsplit.append((k, e))
            continue
        E = M * k
        FE = field(E)
        big = [lift(c, M, E) for c in fac]
        sub = (chart[0], chart[1], chart[2],
               lift(chart[3], M, E), lift(chart[4], M, E))
        for alpha in field_roots(FE, big):
            L = _chart_line(FE, sub, 1, alpha, E)
            lines[L] = lines.get(L, 0) + e
    cone = tuple(sorted(lines.items(), key=lambda le: (le[0].d, le[0].coeffs)))
    return SingularityReport(P, r, cone, tuple(sorted(unsplit)))


def tangent_line(curve: PlaneCurveFq, P: Point) -> Line:
    if not curve.contains(P):
        raise PointNotOnCurve(f"{P.text()} is not on {curve.text()}")
    grad, M = curve.gradient(P)
    if not any(grad):
        raise SingularPoint(f"{P.text()} is a singular point")
    return Line.make(grad, M)


# -- line intersections ------------------------------------------------------

@dataclass(frozen=True)
class LineProfile:
    line: Line
    intersections: tuple          # ((Point, multiplicity), ...)
    leftovers: tuple = ()         # ((factor degree, multiplicity), ...) not split

    def total(self):
        return sum(e for _, e in self.intersections) + sum(k * e for k, e in self.leftovers)

    def text(self):
        parts = [f"{P.text()}^{e}" for P, e in self.intersections]
        parts += [f"[deg {k}]^{e}" for k, e in self.leftovers]
        return f"{self.line.text()}: " + " ".join(parts)

    def to_dict(self):
        return {"line": self.line.text(),
                "intersections": [{"point": P.text(), "multiplicity": e}
                                  for P, e in self.intersections],
                "leftovers": [{"degree": k, "multiplicity": e} for k, e in self.leftovers]}


def _spanning_points(F, l):
    l0, l1, l2 = l
    if l2:
        return (l2, 0, l0), (0, l2, l1)
    return (0, 0, 1), (l1, l0, 0)


def _restrict_to_line(F, terms, P, Q, deg):
    """Dense coefficients of F(lam*P + Q) in lam (index = power of lam)."""
    pows = []
    for coord in range(3):
        lin = trim([Q[coord], P[coord]])
        row = [[1]]
        for _ in range(deg):
            row.append(dense_mul(F, row[-1], lin) if lin else [])
        pows.append(row)
    out = [0] * (deg + 1)
    for i, j, k, c in terms:
        prod = dense_mul(F, dense_mul(F, pows[0][i], pows[1][j]), pows[2][k])
        for n, v in enumerate(prod):
            if v:
                out[n] ^= F.mul(c, v)
    return out


def line_profile(curve: PlaneCurveFq, line: Line, max_ext: int = DEFAULT_MAX_EXT,
                 field_hint: int = 1) -> LineProfile:
    """Intersection points of line and curve with multiplicities.

    The restricted binary form is factored over GF(2^E), E = lcm(m, line field,
    field_hint); factors of degree k are split over GF(2^(E*k)) when
    k <= max_ext and E*k <= 16, and otherwise reported as leftovers.
    """
    E = lcm(lcm(curve.m, line.d), field_hint)
    F = field(E)
    P, Q = _spanning_points(F, line.in_field(E))
    terms = lifted_terms(curve.poly, E)
    deg = curve.degree
    full = _restrict_to_line(F, terms, P, Q, deg)
    h = trim(full)
    if not h:
        raise LineIsComponent(f"{line.text()} is a component of {curve.text()}")
    result = {}
    at_p = deg - (len(h) - 1)
    if at_p:
        result[Point.make(P, E)] = at_p
    leftovers = []
    for fac, e in factor(F, h):
        k = len(fac) - 1
        if k > max_ext or E * k > MAX_DEGREE:
            leftovers.append((k, e))
            continue
        D = E * k
        FD = field(D)
        Pl = tuple(lift(c, E, D) for c in P)
        Ql = tuple(lift(c, E, D) for c in Q)
        for r in field_roots(FD, [lift(c, E, D) for c in fac]):
            pt = tuple(FD.mul(r, p) ^ q for p, q in zip(Pl, Ql))
            R = Point.make(pt, D)
            result[R] = result.get(R, 0) + e
    return LineProfile(line, tuple(sorted(result.items())), tuple(sorted(leftovers)))


# -- strangeness and tangency --------------------------------------------------

def _points_and_tangents(curve, max_ext, sample=None):
    out = []
    for P in enumerate_points(curve, max_ext):
        grad, M = curve.gradient(P)
        if any(grad):
            out.append((P, Line.make(grad, M)))
            if sample is not None and len(out) >= sample:
                break
    return out


def is_strange(curve: PlaneCurveFq, max_ext: int = DEFAULT_MAX_EXT, sample: int | None = None):
    """Common point of all tangent lines at smooth points, or None."""
    pairs = _points_and_tangents(curve, max_ext, sample)
    lines = sorted({L for _, L in pairs}, key=lambda L: (L.d, L.coeffs))
    if len(lines) < 2:
        raise TooFewSmoothPoints(f"only {len(lines)} distinct tangent line(s) found; widen max_ext")
    center = meet(lines[0], lines[1])
    return center if all(L.contains(center) for L in lines) else None


@dataclass(frozen=True)
class TangencyClass:
    kind: str
    witnesses: tuple = dc_field(default=())   # ((Point, LineProfile), ...)
    checked: int = 0

    def text(self):
        if self.kind != MIXED:
            return f"{self.kind} ({self.checked} smooth points)"
        return f"Mixed ({len(self.witnesses)} witnesses of {self.checked}): " + \
            "; ".join(f"{P.text()} -> {prof.text()}" for P, prof in self.witnesses[:5])

    def to_dict(self):
        return {"kind": self.kind, "checked": self.checked,
                "witnesses": [{"point": P.text(), "profile": prof.to_dict()}
                              for P, prof in self.witnesses]}


def point_tangency(curve, P, L, max_ext=DEFAULT_MAX_EXT):
    """('inflectional' | 'bitangent' | 'other', profile) for a smooth point P with tangent L."""
    prof = line_profile(curve, L, max(max_ext, 4), field_hint=P.d)
    pts = prof.intersections
    if prof.leftovers:
        return "other", prof
    if len(pts) == 1 and pts[0] == (P, curve.degree):
        return "inflectional", prof
    if len(pts) == 2 and all(e == 2 for _, e in pts) and any(Q == P for Q, _ in pts):
        return "bitangent", prof
    return "other", prof


def tangency_class(curve: PlaneCurveFq, max_ext: int = DEFAULT_MAX_EXT) -> TangencyClass:
    pairs = _points_and_tangents(curve, max_ext)
    if len(pairs) < 2:
        raise TooFewSmoothPoints(f"only {len(pairs)} smooth point(s) found; widen max_ext")
    kinds = {}
    for P, L in pairs:
        kind, prof = point_tangency(curve, P, L, max_ext)
        kinds.setdefault(kind, []).append((P, prof))
    if set(kinds) == {"inflectional"}:
        return TangencyClass(ALL_INFLECTIONAL, (), len(pairs))
    if set(kinds) == {"bitangent"}:
        return TangencyClass(ALL_BITANGENT, (), len(pairs))
    # witnesses are the points outside the majority behaviour
    major = max(kinds, key=lambda k: (len(kinds[k]), k != "other"))
    wit = tuple(w for k, ws in sorted(kinds.items()) if k != major for w in ws)
    return TangencyClass(MIXED, wit, len(pairs))

