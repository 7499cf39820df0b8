"""Binary extension fields GF(2^m) with log/antilog tables.

Elements are plain ``int`` bit vectors in the polynomial basis of a fixed
Conway polynomial, so they hash, compare and serialize trivially.  A field
object carries the tables and does the arithmetic.
"""
from __future__ import annotations

from functools import lru_cache

# Conway polynomials over F_2, listed by exponents with nonzero coefficient.
CONWAY_EXPONENTS = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 4, 3, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 6, 5, 3, 2, 1, 0),
    11: (11, 2, 0),
    12: (12, 7, 6, 5, 3, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 7, 5, 3, 0),
    15: (15, 5, 4, 2, 0),
    16: (16, 5, 3, 2, 0),
}

MAX_DEGREE = 16


def conway_modulus(m: int) -> int:
    out = 0
    for e in CONWAY_EXPONENTS[m]:
        out |= 1 << e
    return out


class GF2m:
    """The field with 2^m elements."""

    def __init__(self, m: int):
        if not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"field exponent must be in 1..{MAX_DEGREE}, got {m}")
        self.m = m
        self.order = 1 << m
        self.modulus = conway_modulus(m)
        n = self.order - 1
        exp = [0] * (2 * n + 2)
        log = [0] * self.order
        # m = 1 has modulus x + 1, so the generator is 1
        gen = 2 if m > 1 else 1
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        for i in range(n, 2 * n + 2):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        self.generator = gen

    def _slow_mul(self, a: int, b: int) -> int:
        r = 0
        m, mod = self.m, self.modulus
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if (a >> m) & 1:
                a ^= mod
        return r

    def __repr__(self):
        return f"GF(2^{self.m})"

    def __eq__(self, other):
        return isinstance(other, GF2m) and other.m == self.m

    def __hash__(self):
        return hash(("GF2m", self.m))

    def __reduce__(self):
        return (field, (self.m,))

    def elements(self):
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^m)")
        n = self.order - 1
        return self._exp[(n - self._log[a]) % n]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0 in GF(2^m)")
        if a == 0:
            return 0
        n = self.order - 1
        return self._exp[(self._log[a] - self._log[b]) % n]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        n = self.order - 1
        return self._exp[(self._log[a] * e) % n]

    def gen_pow(self, e: int) -> int:
        return self._exp[e % (self.order - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of 0")
        return self._log[a]

    def sqrt(self, a: int) -> int:
        # Frobenius is a bijection; sqrt(a) = a^(2^(m-1))
        return self.root2k(a, 1)

    def root2k(self, a: int, k: int) -> int:
        """The unique b with b^(2^k) = a."""
        if a == 0:
            return 0
        n = self.order - 1
        # b = a^(2^(-k)) and 2 has inverse 2^(m-1) modulo n
        e = pow(2, (self.m - (k % self.m)) % self.m, n) if n > 1 else 1
        return self._exp[(self._log[a] * e) % n]

    def frob(self, a: int, k: int = 1) -> int:
        return self.pow(a, 1 << k) if k >= 0 else self.root2k(a, -k)

    def trace(self, a: int) -> int:
        t, x = 0, a
        for _ in range(self.m):
            t ^= x
            x = self.mul(x, x)
        return t

    def minimal_degree(self, a: int) -> int:
        """Degree of the smallest subfield containing ``a``."""
        for d in range(1, self.m + 1):
            if self.m % d == 0 and self.frob(a, d) == a:
                return d
        return self.m

    def fmt(self, a: int) -> str:
        if a in (0, 1):
            return str(a)
        return "g" if self._log[a] == 1 else f"g{self._log[a]}"


@lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    return GF2m(m)


@lru_cache(maxsize=None)
def embedding(d: int, M: int) -> tuple:
    """Table sending each element of GF(2^d) to its image in GF(2^M), d | M.

    Conway compatibility makes the image of the generator a fixed power of the
    big generator; this is checked, with a root search as fallback.
    """
    if M % d:
        raise ValueError(f"GF(2^{d}) is not a subfield of GF(2^{M})")
    small, big = field(d), field(M)
    if d == M:
        return tuple(range(small.order))
    if d == 1:
        return (0, 1)
    image = big.gen_pow((big.order - 1) // (small.order - 1))
    if _eval_modulus(big, small.modulus, d, image) != 0:
        image = next(z for z in range(2, big.order)
                     if _eval_modulus(big, small.modulus, d, z) == 0
                     and big.minimal_degree(z) == d)
    table = [0] * small.order
    for a in range(1, small.order):
        table[a] = big.pow(image, small.log(a))
    return tuple(table)


@lru_cache(maxsize=None)
def restriction(d: int, M: int) -> dict:
    """Inverse of :func:`embedding` on its image."""
    return {v: k for k, v in enumerate(embedding(d, M))}


def _eval_modulus(F: GF2m, modulus: int, deg: int, z: int) -> int:
    acc = 0
    for e in range(deg, -1, -1):
        acc = F.mul(acc, z)
        if (modulus >> e) & 1:
            acc ^= 1
    return acc


def lift(a: int, d: int, M: int) -> int:
    return embedding(d, M)[a]
