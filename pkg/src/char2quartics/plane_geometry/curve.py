"""Plane curves over GF(2^m) and projective points over finite extensions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd as igcd

from ..algebra import MPoly, field, lift, restriction
from ..algebra.gf2m import MAX_DEGREE

VARS = ("X", "Y", "Z")


def lcm(a, b):
    return a * b // igcd(a, b)


def minimal_degree(values, d):
    """Smallest subfield degree of GF(2^d) containing all values."""
    F = field(d)
    return reduce(lcm, (F.minimal_degree(v) for v in values if v), 1)


@dataclass(frozen=True, order=True)
class Point:
    """Projective point stored in its minimal field GF(2^d).

    Normalization: Z = 1 if Z != 0, else X = 1 if X != 0, else Y = 1.
    """

    d: int
    coords: tuple

    @classmethod
    def make(cls, coords, d):
        F = field(d)
        X, Y, Z = coords
        pivot = Z if Z else (X if X else Y)
        if not pivot:
            raise ValueError("(0:0:0) is not a projective point")
        inv = F.inv(pivot)
        c = tuple(F.mul(v, inv) for v in coords)
        md = minimal_degree(c, d)
        if md != d:
            table = restriction(md, d)
            c = tuple(table[v] for v in c)
        return cls(md, c)

    def in_field(self, M):
        """Coordinates lifted into GF(2^M) (d must divide M)."""
        if M % self.d:
            raise ValueError(f"GF(2^{self.d}) is not a subfield of GF(2^{M})")
        return tuple(lift(v, self.d, M) for v in self.coords)

    def text(self):
        F = field(self.d)
        return "(" + ":".join(F.fmt(v) for v in self.coords) + ")"

    def to_dict(self):
        return {"field_degree": self.d, "coords": [field(self.d).fmt(v) for v in self.coords]}

    __str__ = text


@dataclass(frozen=True)
class Line:
    """l0 X + l1 Y + l2 Z = 0 over GF(2^d), first nonzero coefficient 1."""

    d: int
    coeffs: tuple

    @classmethod
    def make(cls, coeffs, d):
        F = field(d)
        pivot = next((c for c in coeffs if c), 0)
        if not pivot:
            raise ValueError("zero line")
        inv = F.inv(pivot)
        c = tuple(F.mul(v, inv) for v in coeffs)
        md = minimal_degree(c, d)
        if md != d:
            table = restriction(md, d)
            c = tuple(table[v] for v in c)
        return cls(md, c)

    def in_field(self, M):
        return tuple(lift(v, self.d, M) for v in self.coeffs)

    def contains(self, P: Point):
        M = lcm(self.d, P.d)
        F = field(M)
        l, p = self.in_field(M), P.in_field(M)
        return (F.mul(l[0], p[0]) ^ F.mul(l[1], p[1]) ^ F.mul(l[2], p[2])) == 0

    def text(self):
        F = field(self.d)
        terms = []
        for c, n in zip(self.coeffs, VARS):
            if c:
                terms.append(n if c == 1 else f"{F.fmt(c)}*{n}")
        return " + ".join(terms) + " = 0"

    def to_dict(self):
        return {"field_degree": self.d, "coeffs": [field(self.d).fmt(v) for v in self.coeffs]}

    __str__ = text


def join(P: Point, Q: Point) -> Line:
    M = lcm(P.d, Q.d)
    F = field(M)
    p, q = P.in_field(M), Q.in_field(M)
    m = F.mul
    return Line.make((m(p[1], q[2]) ^ m(p[2], q[1]), m(p[2], q[0]) ^ m(p[0], q[2]),
                      m(p[0], q[1]) ^ m(p[1], q[0])), M)


def meet(L1: Line, L2: Line) -> Point:
    M = lcm(L1.d, L2.d)
    F = field(M)
    p, q = L1.in_field(M), L2.in_field(M)
    m = F.mul
    return Point.make((m(p[1], q[2]) ^ m(p[2], q[1]), m(p[2], q[0]) ^ m(p[0], q[2]),
                       m(p[0], q[1]) ^ m(p[1], q[0])), M)


class PlaneCurveFq:
    """Homogeneous form F(X, Y, Z) of degree 3 or 4 over GF(2^m).

    Serialized as a coefficient vector over the monomials X^i Y^j Z^k,
    i + j + k = degree, ordered by decreasing (i, j).
    """

    def __init__(self, poly: MPoly, degree: int | None = None, name: str = ""):
        if poly.nvars != 3:
            raise ValueError("plane curves need three homogeneous variables")
        if poly.is_zero():
            raise ValueError("the zero form does not define a curve")
        degs = {sum(e) for e in poly.terms}
        if len(degs) != 1:
            raise ValueError("form is not homogeneous")
        self.poly = poly
        self.degree = degs.pop() if degree is None else degree
        self.m = poly.F.m
        self.name = name
        self._partials = None

    @property
    def F(self):
        return self.poly.F

    @staticmethod
    def monomials(degree):
        return [(i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)]

    def to_vector(self):
        return [self.poly.terms.get(e, 0) for e in self.monomials(self.degree)]

    @classmethod
    def from_vector(cls, vec, m, degree):
        mons = cls.monomials(degree)
        if len(vec) != len(mons):
            raise ValueError(f"expected {len(mons)} coefficients for degree {degree}")
        return cls(MPoly(field(m), 3, {e: c for e, c in zip(mons, vec) if c}), degree)

    @classmethod
    def parse(cls, text, m):
        """Parse a form such as ``Y^4 + X*Z^3 + g*X^4`` over GF(2^m)."""
        from ..algebra.ratfunc import parse_element
        return cls(parse_element(text.replace("x", "X").replace("y", "Y").replace("z", "Z"),
                                 _FormRing(m)))

    def partials(self):
        if self._partials is None:
            self._partials = tuple(self.poly.derivative(i) for i in range(3))
        return self._partials

    def evaluate(self, P: Point):
        M = lcm(self.m, P.d)
        return self.poly.evaluate(P.in_field(M), field(M))

    def contains(self, P: Point) -> bool:
        return self.evaluate(P) == 0

    def gradient(self, P: Point):
        M = lcm(self.m, P.d)
        F = field(M)
        pt = P.in_field(M)
        return tuple(d.evaluate(pt, F) if d.terms else 0 for d in self.partials()), M

    def is_square(self):
        return all(all(k % 2 == 0 for k in e) for e in self.poly.terms)

    def sqrt(self) -> "PlaneCurveFq":
        F = self.F
        return PlaneCurveFq(MPoly(F, 3, {tuple(k // 2 for k in e): F.sqrt(c)
                                         for e, c in self.poly.terms.items()}))

    def text(self):
        return self.poly.fmt(list(VARS))

    def to_dict(self):
        return {"m": self.m, "degree": self.degree, "form": self.text(),
                "vector": [self.F.fmt(c) for c in self.to_vector()]}

    def __repr__(self):
        return f"PlaneCurveFq({self.text()} over GF(2^{self.m}))"


def extension_degrees(m: int, max_ext: int):
    """Maximal field degrees m*k (k <= max_ext, m*k <= 16); smaller ones are subfields."""
    ds = [m * k for k in range(1, max_ext + 1) if m * k <= MAX_DEGREE]
    if not ds:
        raise ValueError(f"GF(2^{m}) admits no extension within degree {MAX_DEGREE}")
    return [d for d in ds if not any(e != d and e % d == 0 for e in ds)]


class _FormRing:
    """Duck-typed stand-in for BaseField so the element parser builds MPolys in X, Y, Z."""

    names = VARS

    def __init__(self, m):
        self.F = field(m)
        self.q = 1 << m

    def const(self, c):
        return MPoly.const(self.F, 3, c)

    def __getitem__(self, name):
        return MPoly.var(self.F, 3, VARS.index(name))
