"""The purely inseparable cover of resolved surfaces S~ -> S'~.

On S the map is (X:Y:Z) -> (X^2 : Y^2 : XZ), fiberwise over the pencil
coordinate t.  Points of S~ are pushed to S' along power-series arcs and the
image arc is lifted through the blow-up tree of S' to find the image point.
The smooth point Q = ((0:1:0), (0:1)) of S is blown up once more (curve L)
so that the bad fibre's strict transform E lands on a curve of S'~.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..algebra import field
from ..errors import InternalInconsistency
from . import ideals as I
from .engine import (BlowupTree, ChartSurface, ExcCurve, _curve_points, _seval, _sinv, _smul,
                     blowup_step, series_order, surface_arc, vanishing_order)
from .pencil import Resolution, resolve

ARC_LENGTH = 96
SAMPLE_FIELD = 4


# -- series helpers ---------------------------------------------------------------

def _sdiv(F, a, b):
    """a / b for series with ord(a) >= ord(b); result is truncated by ord(b)."""
    o = series_order(b)
    N = len(b) - o
    unit = b[o:]
    return _smul(F, a[o:o + N], _sinv(F, unit, N), N)


def _ssub_const(a, c):
    return [a[0] ^ c] + a[1:]


def _push(F, polys, arc):
    N = len(arc[0])
    return [_seval(F, I.terms(q), arc, N) for q in polys]


# -- lifting an arc through a blow-up tree ----------------------------------------

def lift_arc(tree: BlowupTree, arc, M: int):
    """Chart id and point of the tree where the arc's limit lands.

    At each blown-up center the arc moves to the chart whose exceptional
    coordinate has the smallest order.  Returns None when the arc is too
    short or constant in a center.
    """
    F = field(M)
    chart = tree.charts["root"]
    while True:
        p = tuple(a[0] for a in arc)
        if p not in [tuple(c) for c in chart.centers]:
            return chart.id, p
        d = [_ssub_const(a, c) for a, c in zip(arc, p)]
        orders = [series_order(x) for x in d]
        if all(o is None for o in orders):
            return None
        i = min((o, j) for j, o in enumerate(orders) if o is not None)[1]
        arc = [d[i][:len(d[i]) - orders[i]] if j == i else _sdiv(F, d[j], d[i])
               for j in range(3)]
        arc = [a[:min(len(x) for x in arc)] for a in arc]
        if len(arc[0]) < 2:
            return None
        chart = tree.charts[f"{chart.id}.{i + 1}"]


def curves_through(tree: BlowupTree, chart_id, point, M: int):
    if chart_id == "P2":
        return []       # away from the resolved chart of S'
    return [c.label or c.key for c in tree.curves
            if chart_id in c.reps and all(I.evaluate(q, point, M) == 0 for q in c.reps[chart_id])]


# -- the map on arcs ----------------------------------------------------------------

def _to_vchart(F, U, V, W, t):
    """Arc of S' in the chart V = 1 (coordinates u, w, t).

    When V is not dominant the image lies off the resolved chart and the
    limit point ("P2", (U, V, W, t)) is returned instead.
    """
    orders = [series_order(x) for x in (U, V, W)]
    o = min(x for x in orders if x is not None)
    if orders[1] != o:
        k = next(i for i, x in enumerate(orders) if x == o)
        lead = [(U, V, W)[i][o] if orders[i] is not None else 0 for i in range(3)]
        inv = F.inv(lead[k])
        return ("P2", tuple(F.mul(inv, v) for v in lead) + (t[0],))
    N = min(len(x) for x in (U, V, W, t)) - o
    return [_sdiv(F, U, V)[:N], _sdiv(F, W, V)[:N], t[:N]]


def image_arc_zchart(F, arc):
    """S in the chart Z = 1, coordinates (x, y, t)."""
    x, y, t = arc
    return _to_vchart(F, _smul(F, x, x, len(x)), _smul(F, y, y, len(y)), x, t)


def image_arc_ychart(F, arc):
    """S in the chart Y = 1, coordinates (x, z, t)."""
    x, z, t = arc
    one = [1] + [0] * (len(x) - 1)
    return _to_vchart(F, _smul(F, x, x, len(x)), one, _smul(F, x, z, len(x)), t)


# -- the extra blow-up at Q ---------------------------------------------------------

def q_refinement() -> BlowupTree:
    """S in the chart Y = 1, T1 = 1 (coordinates x, z, t) blown up at Q = origin."""
    x, z, t = (I.var(i) for i in range(3))
    root = ChartSurface("root", t * (x * z ** 3 + 1) + x ** 4, (x, z, t))
    fib = ExcCurve("E", 0, "fiber", ("root", 0, t), {"root": [x, t]}, "E")
    res = blowup_step(root, (0, 0, 0), [fib], 1)
    if len(res.new_curves) != 1 or res.exponent != 1:
        raise InternalInconsistency("Q is expected to be a smooth point of S")
    fib.reps.update(res.transforms["E"])
    L = res.new_curves[0]
    L.label = "L"
    charts = {"root": root, **{c.id: c for c in res.children}}
    return BlowupTree("S/Q", ("x", "z", "t"), charts, [fib, L], 1,
                      [{"round": 1, "chart": "root", "center": [0, 0, 0], "exponent": 1}], 2)


# -- sampling images of a curve ---------------------------------------------------

def _generic_points(tree, curve, M):
    cid = curve.home[0]
    chart = tree.charts[cid]
    f = chart.poly
    others = [c.reps[cid] for c in tree.curves if c is not curve and cid in c.reps]
    centers = [tuple(c) for c in chart.centers]
    for p in _curve_points(curve, M):
        if p in centers or not any(I.evaluate(I.diff(f, i), p, M) for i in range(3)):
            continue
        if any(all(I.evaluate(q, p, M) == 0 for q in rep) for rep in others):
            continue
        yield p


def sample_images(src: BlowupTree, curve: ExcCurve, image_fn, target: BlowupTree,
                  M: int = SAMPLE_FIELD, limit: int = 12):
    """[(source point, (target chart, target point))] for generic points of the curve."""
    F = field(M)
    chart = src.charts[curve.home[0]]
    out = []
    for p in _generic_points(src, curve, M):
        for d in (0, 1):
            arc = surface_arc(chart.poly, p, M, d, ARC_LENGTH)
            img = image_fn(F, _push(F, chart.to_root, arc))
            res = img if isinstance(img, tuple) else lift_arc(target, img, M)
            if res is not None:
                out.append((p, res))
                break
        if len(out) >= limit:
            break
    return out


# -- degree of a map between rational curves ------------------------------------------

def _nullspace(F, rows, n):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                c = rows[k][col]
                rows[k] = [v ^ F.mul(c, w) for v, w in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for k, pc in enumerate(pivots):
            v[pc] = rows[k][fc]
        basis.append(v)
    return basis


def moebius_degree(F, pairs, max_e: int = 2):
    """Smallest 2^e with y = (a p^(2^e) + b) / (c p^(2^e) + d) on all pairs, else None."""
    if len(pairs) < 6:
        return None
    for e in range(max_e + 1):
        rows = []
        for p, y in pairs:
            s = F.pow(p, 1 << e)
            rows.append([s, 1, F.mul(y, s), y])
        ns = _nullspace(F, rows, 4)
        if len(ns) == 1:
            a, b, c, d = ns[0]
            if F.mul(a, d) ^ F.mul(b, c):
                return 1 << e
    return None


def _varying(points):
    return max(range(3), key=lambda i: len({p[i] for p in points}))


@dataclass
class CurveImage:
    source: str
    target: str | None           # curve of S'~, or None when the curve is contracted
    point: tuple | None          # (chart, point, curves through it) for contracted curves
    degree: int | None
    injective: bool
    samples: int
    m_source: int | None = None
    m_target: int | None = None

    @property
    def multiplicity_ok(self):
        """Pullback of the fibre: m * deg = 2 * m' (the cover has degree 2)."""
        if self.target is None or self.m_source is None or self.m_target is None:
            return None
        return self.degree is not None and self.m_source * self.degree == 2 * self.m_target

    def text(self):
        if self.target is None:
            where = "+".join(self.point[2])
            if not where:
                return f"{self.source} -> point {self.point[1]} of S' off the resolved chart"
            return f"{self.source} -> point on {where}"
        s = f"{self.source} -> {self.target} degree {self.degree}"
        if self.m_source is not None:
            s += f" (m={self.m_source}, m'={self.m_target}, check={'ok' if self.multiplicity_ok else 'FAIL'})"
        return s

    def to_dict(self):
        return {"source": self.source, "target": self.target, "degree": self.degree,
                "injective": self.injective, "samples": self.samples,
                "contracted_to": list(self.point[2]) if self.point else None,
                "m_source": self.m_source, "m_target": self.m_target,
                "multiplicity_ok": self.multiplicity_ok}


def curve_image(src, curve, image_fn, target, M: int = SAMPLE_FIELD) -> CurveImage:
    F = field(M)
    samples = sample_images(src, curve, image_fn, target, M)
    label = curve.label or curve.key
    if not samples:
        raise InternalInconsistency(f"no image points for {label}")
    images = {res for _, res in samples}
    if len(images) == 1:
        cid, q = next(iter(images))
        return CurveImage(label, None, (cid, q, curves_through(target, cid, q, M)), None,
                          False, len(samples))
    common = None
    for cid, q in images:
        labs = set(curves_through(target, cid, q, M))
        common = labs if common is None else common & labs
    if not common or len(common) != 1:
        raise InternalInconsistency(f"images of {label} do not lie on one curve: {common}")
    tgt = common.pop()
    # degree from a Moebius fit in the chart holding most images
    cid = Counter(c for _, (c, _q) in samples).most_common(1)[0][0]
    pts = [(p, q) for p, (c, q) in samples if c == cid]
    si = _varying([p for p, _ in pts])
    ti = _varying([q for _, q in pts])
    deg = moebius_degree(F, [(p[si], q[ti]) for p, q in pts])
    injective = len(images) == len(samples)
    return CurveImage(label, tgt, None, deg, injective, len(samples))


@dataclass
class CoverTable:
    rows: list
    source: Resolution
    target: Resolution

    def row(self, label):
        return next(r for r in self.rows if r.source == label)

    def mapping(self):
        return {r.source: r.target for r in self.rows}

    def ok(self):
        return all(r.multiplicity_ok is not False for r in self.rows)

    def text(self):
        return "\n".join(r.text() for r in self.rows)

    def to_dict(self):
        return {"rows": [r.to_dict() for r in self.rows], "ok": self.ok()}


def cover_table(src: Resolution | None = None, tgt: Resolution | None = None,
                M: int = SAMPLE_FIELD) -> CoverTable:
    """Image of every fibre component of S~ (and of H) in S'~."""
    src = src or resolve("S")
    tgt = tgt or resolve("Sprime")
    mt = tgt.multiplicities()
    ms = src.multiplicities()
    rows = []
    for c in sorted(src.tree.curves, key=lambda c: src.graph.order.index(c.label)):
        rows.append(curve_image(src.tree, c, image_arc_zchart, tgt.tree, M))
    qt = q_refinement()
    L = qt.curve("L")
    rows.append(curve_image(qt, L, image_arc_ychart, tgt.tree, M))
    ms = dict(ms, L=vanishing_order(qt, L))
    for r in rows:
        r.m_source = ms.get(r.source)
        r.m_target = mt.get(r.target) if r.target else None
    return CoverTable(rows, src, tgt)
