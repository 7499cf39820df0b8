"""Rational functions over GF(2^m) in at most two variables, canonically normalized.

Canonical form: ``gcd(num, den) = 1`` and ``den`` monic for the lexicographic
order.  Two equal field elements therefore have identical ``num``/``den`` terms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .gf2m import GF2m, field
from .mpoly import MPoly, exact_div, gcd

DEFAULT_NAMES = ("t", "s")


@dataclass(frozen=True)
class BaseField:
    """K = F_{2^m}(names...).  ``names`` may be empty (the finite field itself)."""

    m: int = 1
    names: tuple = ("t",)

    def __post_init__(self):
        if not 1 <= self.m <= 16:
            raise ValueError(f"field exponent must be in 1..16, got {self.m}")
        if len(self.names) > 2:
            raise ValueError("at most two transcendental variables are supported")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def F(self) -> GF2m:
        return field(self.m)

    @property
    def r(self) -> int:
        return len(self.names)

    @property
    def q(self) -> int:
        return 1 << self.m

    def __str__(self):
        inner = f"({','.join(self.names)})" if self.names else ""
        return f"F{self.q}{inner}"

    @classmethod
    def parse(cls, text: str) -> "BaseField":
        m_ = re.fullmatch(r"\s*(?:F|GF)\(?(\d+)\)?\s*(?:\(([^)]*)\))?\s*", text)
        if not m_:
            raise ValueError(f"cannot parse base field {text!r}; expected e.g. F2(t), F4(t,s), F16")
        q = int(m_.group(1))
        if q < 2 or q & (q - 1):
            raise ValueError(f"field size must be a power of 2, got {q}")
        names = tuple(n.strip() for n in m_.group(2).split(",")) if m_.group(2) else ()
        return cls(q.bit_length() - 1, names)

    # element constructors ---------------------------------------------------
    def zero(self) -> "RatFunc":
        return RatFunc(self, MPoly(self.F, self.r), MPoly.const(self.F, self.r, 1), _canon=False)

    def one(self) -> "RatFunc":
        return self.const(1)

    def const(self, c: int) -> "RatFunc":
        return RatFunc(self, MPoly.const(self.F, self.r, c), MPoly.const(self.F, self.r, 1), _canon=False)

    def gen(self, i: int = 0) -> "RatFunc":
        return RatFunc(self, MPoly.var(self.F, self.r, i), MPoly.const(self.F, self.r, 1), _canon=False)

    def __getitem__(self, name: str) -> "RatFunc":
        return self.gen(self.names.index(name))

    def poly(self, p: MPoly) -> "RatFunc":
        return RatFunc(self, p, MPoly.const(self.F, self.r, 1), _canon=False)

    def __call__(self, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, int):
            return self.const(value)
        if isinstance(value, str):
            return parse_element(value, self)
        raise TypeError(f"cannot convert {value!r} into {self}")


class RatFunc:
    __slots__ = ("K", "num", "den", "_hash")

    def __init__(self, K: BaseField, num: MPoly, den: MPoly, _canon=True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.K = K
        self._hash = None
        if _canon:
            num, den = _canonical(num, den)
        self.num, self.den = num, den

    # predicates -------------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num.const_value()

    def is_poly(self):
        return self.den.is_const()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_const() and self.num.const_value() == other
        return (isinstance(other, RatFunc) and self.K == other.K
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return self.K.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.K, self.num + other.num, self.den, _canon=not self.den.is_const())
        return RatFunc(self.K, self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return self.K.zero()
        if self.den.is_const() and other.den.is_const():
            return RatFunc(self.K, self.num * other.num, self.den, _canon=False)
        # cross-cancel to keep the gcd work small
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        n = exact_div(self.num, g1) * exact_div(other.num, g2)
        d = exact_div(self.den, g2) * exact_div(other.den, g1)
        return RatFunc(self.K, n, d, _canon=False)._normalize_lc()

    __rmul__ = __mul__

    def _normalize_lc(self):
        _, c = self.den.leading()
        if c != 1:
            inv = self.K.F.inv(c)
            self.num, self.den = self.num.scale(inv), self.den.scale(inv)
        return self

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.K, self.den, self.num, _canon=False)._normalize_lc()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.K.one()
        # num/den already coprime, so powers stay canonical
        r = RatFunc.__new__(RatFunc)
        r.K, r._hash = self.K, None
        r.num, r.den = self.num ** n, self.den ** n
        return r

    def frobenius(self, k: int = 1):
        r = RatFunc.__new__(RatFunc)
        r.K, r._hash = self.K, None
        r.num, r.den = self.num.frobenius(k), self.den.frobenius(k)
        return r

    def sqrt(self):
        from .powerbasis import power_membership
        g = power_membership(self, 1)
        if g is None:
            raise ValueError(f"{self} is not a square in {self.K}")
        return g

    def evaluate(self, point, F=None):
        """Specialize the variables at field elements; raises ZeroDivisionError at poles."""
        F = F or self.K.F
        d = self.den.evaluate(point, F)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return F.div(self.num.evaluate(point, F), d)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_element(self)


def _canonical(num: MPoly, den: MPoly):
    if num.is_zero():
        return num, MPoly.const(num.F, num.nvars, 1)
    if not den.is_const():
        g = gcd(num, den)
        if not g.is_const():
            num, den = exact_div(num, g), exact_div(den, g)
    _, c = den.leading()
    if c != 1:
        inv = num.F.inv(c)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


# text format ----------------------------------------------------------------
def format_element(f: RatFunc) -> str:
    names = list(f.K.names)
    n = f.num.fmt(names)
    if f.den.is_const():
        return n
    d = f.den.fmt(names)
    if len(f.num.terms) > 1:
        n = f"({n})"
    if len(f.den.terms) > 1 or any(sum(e) > 1 or c != 1 for e, c in f.den.terms.items()):
        d = f"({d})"
    return f"{n}/{d}"


_TOKEN = re.compile(r"\s*(?:(0x[0-9a-fA-F]+|\d+)|([A-Za-z_]\w*)|(\S))")


def parse_element(text: str, K: BaseField) -> RatFunc:
    """Parse ``t^3 + g2*t``, ``1/(t+1)``, ``0x3*s^2`` ... into an element of K.

    Grammar::

        expr   := term (('+' | '-') term)*
        term   := factor (('*' | '/') factor)*   |  factor factor (implicit product)
        factor := atom ('^' int)?
        atom   := int | hex | 'g' int? | name | '(' expr ')'

    Integer and hex literals are GF(2^m) elements in the polynomial basis
    (bit i is the coefficient of g^i); ``gN`` is the generator to the N-th power.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            break
        pos = mt.end()
        num, name, op = mt.groups()
        if num is not None:
            tokens.append(("num", int(num, 0)))
        elif name is not None and re.fullmatch(r"g\d*", name) and name not in K.names:
            tokens.append(("gen", int(name[1:]) if len(name) > 1 else 1))
        elif name is not None:
            tokens.append(("name", name))
        elif op is not None:
            tokens.append(("op", op))
    tokens.append(("end", None))
    parser = _Parser(tokens, K, text)
    value = parser.expr()
    if parser.peek()[0] != "end":
        parser.fail("unexpected trailing input")
    return value


class _Parser:
    def __init__(self, tokens, K, text):
        self.toks, self.i, self.K, self.text = tokens, 0, K, text

    def fail(self, msg):
        raise ValueError(f"{msg} in {self.text!r}")

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            self.take()
            value = value + self.term()
        return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                value = value * self.factor()
            elif tok == ("op", "/"):
                self.take()
                d = self.factor()
                if d.is_zero():
                    self.fail("division by zero")
                value = value / d
            elif tok[0] in ("num", "gen", "name") or tok == ("op", "("):
                value = value * self.factor()
            else:
                return value

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, e = self.take()
            if kind != "num":
                self.fail("integer exponent expected")
            return base ** (sign * e)
        return base

    def atom(self):
        kind, val = self.take()
        K = self.K
        if kind == "num":
            if val >= K.q:
                self.fail(f"coefficient {val} is not an element of GF({K.q})")
            return K.const(val)
        if kind == "gen":
            return K.const(K.F.gen_pow(val))
        if kind == "name":
            if val not in K.names:
                self.fail(f"unknown variable {val!r} (base field {K})")
            return K[val]
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return v
        self.fail(f"unexpected token {val!r}")
