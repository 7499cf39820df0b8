"""Truncated Laurent series in the local parameter x̆ = 1/x with coefficients in K."""
from __future__ import annotations

import math

from ..errors import PrecisionExhausted
from .ratfunc import BaseField, RatFunc

INF = math.inf
DEFAULT_PRECISION = 16


class LaurentSeries:
    """sum_{i >= start} coeffs[i - start] x̆^i, known modulo x̆^prec.

    ``exact`` marks a finite series (a Laurent polynomial) whose unseen tail is
    genuinely zero; ``even_only`` marks series known to contain only even
    exponents (images of Frobenius), so their differential vanishes.
    """

    __slots__ = ("K", "start", "coeffs", "prec", "exact", "even_only")

    def __init__(self, K: BaseField, start: int, coeffs, prec: int, exact=False, even_only=False):
        self.K = K
        coeffs = list(coeffs)[: max(prec - start, 0)]
        # strip leading zeros so the first stored coefficient is nonzero
        i = 0
        while i < len(coeffs) and coeffs[i].is_zero():
            i += 1
        self.start = start + i
        self.coeffs = coeffs[i:]
        while self.coeffs and self.coeffs[-1].is_zero():
            self.coeffs.pop()
        self.prec = prec
        self.exact = exact
        self.even_only = even_only

    @classmethod
    def from_poly(cls, K, coeffs, prec=DEFAULT_PRECISION, start=0):
        """Exact series from a (Laurent) polynomial: coeffs[i] multiplies x̆^(start+i)."""
        coeffs = [K(c) for c in coeffs]
        top = start + len(coeffs)
        return cls(K, start, coeffs, max(prec, top), exact=True)

    @classmethod
    def monomial(cls, K, c, n, prec=DEFAULT_PRECISION):
        return cls(K, n, [K(c)], max(prec, n + 1), exact=True)

    # basic queries ------------------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        """Order of the series; INF for an exact zero, PrecisionExhausted otherwise."""
        if self.coeffs:
            return self.start
        if self.exact:
            return INF
        raise PrecisionExhausted(f"series vanishes to precision {self.prec}")

    def coeff(self, n: int) -> RatFunc:
        if n >= self.prec and not self.exact:
            raise PrecisionExhausted(f"coefficient of x̆^{n} beyond precision {self.prec}")
        i = n - self.start
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.K.zero()

    def items(self):
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                yield self.start + i, c

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        p = min(self.prec, other.prec)
        return dict((n, c) for n, c in self.items() if n < p) == dict(
            (n, c) for n, c in other.items() if n < p)

    def __repr__(self):
        terms = [f"({c})*x̆^{n}" for n, c in self.items()]
        tail = "" if self.exact else f" + O(x̆^{self.prec})"
        return " + ".join(terms or ["0"]) + tail

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries.from_poly(self.K, [self.K(other)], self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if self.exact and other.exact:
            prec = max(self.prec, other.prec)
        elif self.exact:
            prec = other.prec
        elif other.exact:
            prec = self.prec
        else:
            prec = min(self.prec, other.prec)
        lo = min(self.start, other.start)
        hi = max(self.start + len(self.coeffs), other.start + len(other.coeffs), lo)
        zero = self.K.zero()
        out = [zero] * (hi - lo)
        for n, c in self.items():
            out[n - lo] = out[n - lo] + c
        for n, c in other.items():
            out[n - lo] = out[n - lo] + c
        return LaurentSeries(self.K, lo, out, prec, self.exact and other.exact,
                             self.even_only and other.even_only)

    __radd__ = __add__
    __sub__ = __add__

    def _relative_prec(self):
        return INF if self.exact else self.prec - self.start

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() and self.exact or other.is_zero() and other.exact:
            return LaurentSeries(self.K, 0, [], max(self.prec, other.prec), exact=True)
        if self.is_zero() or other.is_zero():
            raise PrecisionExhausted("product with a series of unknown valuation")
        start = self.start + other.start
        rel = min(self._relative_prec(), other._relative_prec())
        exact = rel == INF
        prec = start + len(self.coeffs) + len(other.coeffs) if exact else start + rel
        n = prec - start
        zero = self.K.zero()
        out = [zero] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if i >= n or a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return LaurentSeries(self.K, start, out, prec, exact,
                             self.even_only and other.even_only)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.K(c)
        return LaurentSeries(self.K, self.start, [x * c for x in self.coeffs], self.prec,
                             self.exact, self.even_only)

    def shift(self, k: int):
        """Multiply by x̆^k."""
        return LaurentSeries(self.K, self.start + k, self.coeffs, self.prec + k, self.exact,
                             self.even_only and k % 2 == 0)

    def frobenius(self, k: int = 1):
        """The series raised to the power 2^k (exact termwise in characteristic 2)."""
        q = 1 << k
        zero = self.K.zero()
        start = self.start * q
        length = (len(self.coeffs) - 1) * q + 1 if self.coeffs else 0
        out = [zero] * length
        for i, c in enumerate(self.coeffs):
            out[i * q] = c.frobenius(k)
        if self.exact:
            prec = max(start + length, self.prec * q)
        else:
            # known modulo x̆^(start + q * relative precision)
            prec = start + q * (self.prec - self.start)
        return LaurentSeries(self.K, start, out, prec, self.exact, True)

    def inverse(self, prec=None):
        """1/s via the geometric-series recursion on the unit part."""
        if self.is_zero():
            if self.exact:
                raise ZeroDivisionError("inverse of zero series")
            raise PrecisionExhausted("cannot certify the valuation of the denominator")
        v = self.start
        target = prec if prec is not None else max(self.prec - 2 * v, DEFAULT_PRECISION)
        n = target + v
        if not self.exact:
            n = min(n, self.prec - v)
        n = max(n, 1)
        c0inv = self.coeffs[0].inverse()
        zero = self.K.zero()
        out = [zero] * n
        out[0] = c0inv
        a = self.coeffs
        for i in range(1, n):
            acc = zero
            for j in range(1, min(i, len(a) - 1) + 1):
                if not a[j].is_zero() and not out[i - j].is_zero():
                    acc = acc + a[j] * out[i - j]
            out[i] = acc * c0inv
        exact = len([c for c in a if not c.is_zero()]) == 1
        res = LaurentSeries(self.K, -v, out, -v + n, exact=exact, even_only=self.even_only)
        return res

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse(prec=self.prec if not self.exact else None)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries.from_poly(self.K, [1], self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.frobenius()
        return result

    def truncate(self, prec: int):
        return LaurentSeries(self.K, self.start, self.coeffs, min(self.prec, prec) if not self.exact else prec,
                             exact=False, even_only=self.even_only)


def series_expand(num, den=None, N: int = DEFAULT_PRECISION, K: BaseField | None = None) -> LaurentSeries:
    """Expand num/den as a Laurent series in x̆ with coefficients exact below x̆^N.

    ``num`` and ``den`` are coefficient lists (index = power of x̆) or series.
    """
    if K is None:
        pool = [num] + ([den] if den is not None else [])
        found = [p.K for p in pool if isinstance(p, LaurentSeries)]
        found += [c.K for p in pool if not isinstance(p, LaurentSeries) for c in p
                  if isinstance(c, RatFunc)]
        K = found[0] if found else BaseField()

    def as_series(p):
        if isinstance(p, LaurentSeries):
            return p
        return LaurentSeries.from_poly(K, p, N)

    s = as_series(num)
    if den is None:
        out = s
    else:
        d = as_series(den)
        if d.is_zero():
            if d.exact:
                raise ZeroDivisionError("zero denominator")
            raise PrecisionExhausted("denominator vanishes to working precision")
        if d.valuation() >= N:
            raise PrecisionExhausted(f"denominator valuation {d.valuation()} not below {N}")
        if d.exact and len(list(d.items())) == 1:
            inv = d.inverse()
        else:
            inv = d.inverse(prec=N - s.valuation() if not s.is_zero() else N)
        out = s * inv
    if out.exact:
        return out
    return LaurentSeries(out.K, out.start, out.coeffs, min(out.prec, N) if out.prec > N else out.prec,
                         exact=False, even_only=out.even_only)


def differential_valuation(s: LaurentSeries):
    """Order of ds/dx̆: the smallest odd exponent n with a nonzero coefficient, minus one.

    Returns INF when the differential vanishes identically (squares, constants).
    """
    for n, c in s.items():
        if n % 2:
            return n - 1
    if s.exact or s.even_only:
        return INF
    raise PrecisionExhausted(f"no odd-order term below precision {s.prec}")
