"""Point blow-ups of surfaces in affine 3-space charts.

A chart carries the strict transform of the surface, the expression of the
root chart's coordinates in its own coordinates, and the centers that were
later blown up inside it.  Curves are tracked through every chart by
saturated ideals; each curve also keeps a ``home`` representation of the
form {x_i = 0, g = 0} that is used to find points on it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import sympy as sp

from ..algebra import field
from ..errors import CenterOffSurface, InternalInconsistency, StepLimitExceeded
from . import ideals as I

DEFAULT_MAX_ROUNDS = 12


@dataclass
class ChartSurface:
    id: str
    poly: sp.Poly
    to_root: tuple                   # root coordinates as Polys in this chart
    parent: str | None = None
    center: tuple | None = None      # center in the parent chart
    axis: int | None = None          # exceptional coordinate x_(axis+1)
    exponent: int | None = None      # power of the exceptional coordinate divided out
    round: int = 0
    # points of this chart that were blown up, whether the blow-up was computed
    # in this chart or in an overlapping one
    centers: list = dc_field(default_factory=list)

    def text(self):
        return f"{self.id}: {I.fmt(self.poly)} = 0"

    def to_dict(self):
        return {"id": self.id, "equation": I.fmt(self.poly), "parent": self.parent,
                "center": list(self.center) if self.center is not None else None,
                "axis": self.axis, "exponent": self.exponent, "round": self.round,
                "to_root": [I.fmt(q) for q in self.to_root]}


@dataclass
class ExcCurve:
    key: str                          # stable internal name
    birth: int                        # round of birth (0 for curves of the original surface)
    kind: str                         # "exceptional" | "fiber" | "horizontal"
    home: tuple                       # (chart id, axis i, g): the curve {x_i = 0, g = 0}
    reps: dict = dc_field(default_factory=dict)   # chart id -> list of Polys
    label: str = ""

    def to_dict(self):
        return {"label": self.label or self.key, "birth": self.birth, "kind": self.kind,
                "home_chart": self.home[0],
                "representations": {cid: [I.fmt(q) for q in rep] for cid, rep in self.reps.items()}}


@dataclass
class BlowupResult:
    children: list                    # three ChartSurfaces
    exponent: int
    cone: sp.Poly
    new_curves: list                  # ExcCurves born here (unlabeled)
    transforms: dict                  # curve key -> {child id: rep}


def _translate(poly, center):
    return I.compose(poly, [I.var(j) + I.const(c) for j, c in enumerate(center)])


def blowup_step(chart: ChartSurface, center, curves=(), round_no=None) -> BlowupResult:
    """Blow up the ambient A^3 at a GF(2)-rational center on the surface."""
    center = tuple(int(c) for c in center)
    if I.evaluate(chart.poly, center) != 0:
        raise CenterOffSurface(f"{center} is not on {chart.text()}")
    round_no = chart.round + 1 if round_no is None else round_no
    g = _translate(chart.poly, center)
    r = I.low_degree(g)
    cone = I.homogeneous_part(g, r)
    children = []
    charts_images = []
    for i in range(3):
        images = [I.var(i) if j == i else I.var(j) * I.var(i) for j in range(3)]
        h, e = I.divide_power(I.compose(g, images), i)
        if e != r:
            raise InternalInconsistency(f"division exponent {e} differs from multiplicity {r}")
        parent_coords = [images[j] + I.const(center[j]) for j in range(3)]
        to_root = tuple(I.compose(q, parent_coords) for q in chart.to_root)
        children.append(ChartSurface(f"{chart.id}.{i + 1}", h, to_root, chart.id, center, i, r,
                                     round_no))
        charts_images.append(parent_coords)
    if center not in chart.centers:
        chart.centers.append(center)

    new_curves = []
    for n, (fac, _mult) in enumerate(I.factor_form(cone)):
        reps, home = {}, None
        for i, child in enumerate(children):
            dehom = I.compose(fac, [I.const(1) if j == i else I.var(j) for j in range(3)])
            if dehom.total_degree() == 0:
                continue            # the component misses this chart
            reps[child.id] = [I.var(i), dehom]
            if home is None:
                home = (child.id, i, dehom)
        new_curves.append(ExcCurve(f"{chart.id}#{n}", round_no, "exceptional", home, reps))

    transforms = {}
    for cv in curves:
        rep = cv.reps.get(chart.id)
        if rep is None:
            continue
        out = {}
        for i, child in enumerate(children):
            sub = [I.compose(q, charts_images[i]) for q in rep]
            sat = I.saturate(sub, i)
            if sat and not I.is_unit(sat):
                out[child.id] = sat
        transforms[cv.key] = out
    return BlowupResult(children, r, cone, new_curves, transforms)


def singular_points(chart: ChartSurface):
    """Jacobian criterion: GF(2)-rational singular points of the chart surface.

    Non-rational singular points raise Unsupported (centers must be rational).
    """
    f = chart.poly
    jac = [f] + [I.diff(f, i) for i in range(3)]
    pts = I.zero_dim_points([q for q in jac if not q.is_zero])
    out = []
    for M, p in pts:
        if any(field(M).minimal_degree(v) > 1 for v in p if v):
            from ..errors import Unsupported
            raise Unsupported(f"singular point of {chart.id} is not GF(2)-rational")
        out.append(tuple(int(v) for v in p))
    return sorted(out)


def _direction_key(chart: ChartSurface, p):
    """Point of the parent's exceptional P^2 seen from this chart (first nonzero = 1)."""
    d = [1 if j == chart.axis else p[j] for j in range(3)]
    return (chart.parent, tuple(chart.center), tuple(d))


@dataclass
class BlowupTree:
    family: str
    names: tuple
    charts: dict                      # id -> ChartSurface
    curves: list                      # ExcCurve (including fiber and horizontal curves)
    rounds: int
    trace: list                       # [{round, chart, center, exponent}]
    fiber_index: int

    def exceptional(self):
        return [c for c in self.curves if c.kind == "exceptional"]

    def curve(self, label):
        return next(c for c in self.curves if c.label == label or c.key == label)

    def leaves(self):
        return [c for c in self.charts.values() if not c.centers]


def run_blowups(family, root_poly, names, fiber_index, start_curves,
                max_rounds: int = DEFAULT_MAX_ROUNDS) -> BlowupTree:
    """Blow up singular points until every chart is smooth."""
    root = ChartSurface("root", root_poly, tuple(I.var(i) for i in range(3)))
    charts = {"root": root}
    curves = list(start_curves)
    pending = [root]
    trace = []
    rounds = 0
    while True:
        centers, seen = [], set()
        for ch in pending:
            for p in singular_points(ch):
                if ch.parent is None:
                    key = ("root", p)
                else:
                    if p[ch.axis] != 0:
                        raise InternalInconsistency(
                            f"singular point {p} of {ch.id} lies off the new exceptional curve")
                    key = _direction_key(ch, p)
                if p not in ch.centers:
                    ch.centers.append(p)
                if key not in seen:
                    seen.add(key)
                    centers.append((ch, p))
        if not centers:
            break
        rounds += 1
        if rounds > max_rounds:
            raise StepLimitExceeded(f"still singular after {max_rounds} rounds")
        pending = []
        for ch, p in centers:
            res = blowup_step(ch, p, curves, rounds)
            for child in res.children:
                charts[child.id] = child
            for cv in curves:
                cv.reps.update(res.transforms.get(cv.key, {}))
            curves.extend(res.new_curves)
            trace.append({"round": rounds, "chart": ch.id, "center": list(p),
                          "exponent": res.exponent})
            pending.extend(res.children)
    return BlowupTree(family, names, charts, curves, rounds, trace, fiber_index)


# -- vanishing orders along curves (generic point + transverse arc) -------------

def _smul(F, a, b, N):
    out = [0] * N
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), N - i)):
                y = b[j]
                if y:
                    out[i + j] ^= F.mul(x, y)
    return out


def _seval(F, poly_terms, arc, N):
    powers = [{0: [1] + [0] * (N - 1)} for _ in range(3)]

    def pw(i, e):
        d = powers[i]
        if e not in d:
            k = max(k for k in d if k < e)
            cur = d[k]
            for n in range(k + 1, e + 1):
                cur = _smul(F, cur, arc[i], N)
                d[n] = cur
        return d[e]

    out = [0] * N
    for m, _ in poly_terms:
        term = [1] + [0] * (N - 1)
        for i, e in enumerate(m):
            if e:
                term = _smul(F, term, pw(i, e), N)
        out = [x ^ y for x, y in zip(out, term)]
    return out


def _sinv(F, a, N):
    inv0 = F.inv(a[0])
    out = [inv0] + [0] * (N - 1)
    for n in range(1, N):
        acc = 0
        for k in range(1, n + 1):
            if k < len(a) and a[k]:
                acc ^= F.mul(a[k], out[n - k])
        out[n] = F.mul(acc, inv0)
    return out


def surface_arc(f: sp.Poly, point, M: int, direction: int, N: int = 24):
    """Power-series arc on {f = 0} through a smooth point.

    The arc solves f = 0 for a coordinate with nonzero partial and moves the
    remaining two coordinates linearly: direction 0 moves the first of them,
    direction 1 the second.  Returns three coefficient lists of length N.
    """
    F = field(M)
    grads = [I.evaluate(I.diff(f, i), point, M) for i in range(3)]
    a = next(i for i in range(3) if grads[i])
    b, c = [i for i in range(3) if i != a]
    arc = [None, None, None]
    for k, idx in enumerate((b, c)):
        arc[idx] = [point[idx], 1 if k == direction else 0] + [0] * (N - 2)
    arc[a] = [point[a]] + [0] * (N - 1)
    ft = I.terms(f)
    fa = I.terms(I.diff(f, a))
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        val = _seval(F, ft, arc, N)
        der = _seval(F, fa, arc, N)
        corr = _smul(F, val, _sinv(F, der, N), N)
        arc[a] = [x ^ y for x, y in zip(arc[a], corr)]
    if any(_seval(F, ft, arc, N)):
        raise InternalInconsistency("arc does not lie on the surface")
    return arc


def series_order(v):
    return next((n for n, x in enumerate(v) if x), None)


def arc_order(f: sp.Poly, t: sp.Poly, point, M: int, direction: int, N: int = 24):
    """Order in s of t along ``surface_arc``; None if t vanishes to order >= N."""
    arc = surface_arc(f, point, M, direction, N)
    return series_order(_seval(field(M), I.terms(t), arc, N))


def _curve_points(curve: ExcCurve, M: int):
    """Points of {x_i = 0, g = 0} over GF(2^M) in the home chart."""
    _, i, g = curve.home
    b, c = [j for j in range(3) if j != i]
    q = 1 << M
    for vb, vc in itertools.product(range(q), repeat=2):
        p = [0, 0, 0]
        p[b], p[c] = vb, vc
        if I.evaluate(g, p, M) == 0:
            yield tuple(p)


def vanishing_order(tree: BlowupTree, curve: ExcCurve, max_field: int = 6) -> int:
    """Order of the fiber coordinate along the curve, at a generic point of it."""
    cid = curve.home[0]
    chart = tree.charts[cid]
    f = chart.poly
    t = chart.to_root[tree.fiber_index]
    others = [c.reps[cid] for c in tree.curves if c is not curve and cid in c.reps]
    for M in range(1, max_field + 1):
        for p in _curve_points(curve, M):
            if not any(I.evaluate(I.diff(f, i), p, M) for i in range(3)):
                continue
            if any(all(I.evaluate(q, p, M) == 0 for q in rep) for rep in others):
                continue
            if any(tuple(p) == tuple(c) for c in chart.centers):
                continue
            # an arc running inside the curve gives t = 0 identically; the other
            # direction is then transverse
            orders = [o for o in (arc_order(f, t, p, M, d, 64) for d in (0, 1)) if o is not None]
            if not orders:
                raise InternalInconsistency("fiber coordinate vanishes along both arcs")
            return min(orders)
    raise InternalInconsistency(f"no generic point found on {curve.label or curve.key}")
