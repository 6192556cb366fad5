"""Elements of cyclotomic rings Z[y]/Phi_r(y).

Coefficients are stored as :class:`fractions.Fraction` so that the ring sits
inside the field Q(zeta_r); integrality is a property (:meth:`Cyclo.is_integral`)
rather than a type.  Polynomials over these coefficients therefore have
exact division by any nonzero constant.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Any

__all__ = ["Cyclo", "phi_coeffs"]


@lru_cache(maxsize=None)
def phi_coeffs(r: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_r, lowest degree first.

    Computed by dividing y^r - 1 by Phi_d for every proper divisor d of r.
    """
    if r < 1:
        raise ValueError("r must be positive")
    num = [-1] + [0] * (r - 1) + [1]
    for d in range(1, r):
        if r % d == 0:
            num = _divide_monic(num, list(phi_coeffs(d)))
    return tuple(num)


def _divide_monic(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        q[k - db] = c
        if c:
            for i, bc in enumerate(b):
                a[k - db + i] -= c * bc
    if any(a[:db]):
        raise ArithmeticError("inexact cyclotomic division")
    return q


def _reduce_int(c: list[int], r: int) -> list[int]:
    phi = phi_coeffs(r)
    n = len(phi) - 1
    for k in range(len(c) - 1, n - 1, -1):
        top = c[k]
        if top:
            for i in range(n):
                c[k - n + i] -= top * phi[i]
            c[k] = 0
    return c[:n] + [0] * (n - len(c))


def _int_mul(a: tuple, b: tuple) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a = _trim(a)
    return q, a


class Cyclo:
    """An element of Q(zeta_r) written in the power basis 1, y, ..., y^(phi(r)-1).

    Stored as integer numerators over one positive common denominator.
    """

    __slots__ = ("r", "num", "den", "name")

    def __init__(self, r: int, coeffs: Any = (), name: str = "y"):
        fr = [Fraction(x) for x in coeffs]
        den = 1
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
        nums = [int(x * den) for x in fr]
        self._set(r, nums, den, name)

    def _set(self, r: int, nums: list[int], den: int, name: str) -> None:
        self.r = r
        self.name = name
        nums = _reduce_int(nums, r)
        g = den
        for x in nums:
            if g == 1:
                break
            g = math.gcd(g, x)
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self.num = tuple(nums)
        self.den = den

    @classmethod
    def _make(cls, r: int, nums: list[int], den: int, name: str) -> "Cyclo":
        obj = cls.__new__(cls)
        obj._set(r, nums, den, name)
        return obj

    @property
    def coeffs(self) -> tuple:
        d = self.den
        return tuple(Fraction(x, d) for x in self.num)

    @classmethod
    def gen(cls, r: int, name: str = "y") -> "Cyclo":
        """The class of y, a primitive r-th root of unity."""
        return cls(r, [0, 1], name)

    @classmethod
    def scalar(cls, r: int, c: Any, name: str = "y") -> "Cyclo":
        return cls(r, [c], name)

    def _lift(self, other: Any) -> "Cyclo | None":
        if isinstance(other, Cyclo):
            if other.r != self.r:
                raise ValueError("cyclotomic rings of different conductor")
            return other
        if isinstance(other, int):
            return Cyclo._make(self.r, [other], 1, self.name)
        if isinstance(other, Fraction):
            return Cyclo._make(self.r, [other.numerator], other.denominator, self.name)
        return None

    def __add__(self, other: Any) -> Any:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        da, db = self.den, o.den
        if da == db:
            return Cyclo._make(self.r, [a + b for a, b in zip(self.num, o.num)], da, self.name)
        return Cyclo._make(self.r, [a * db + b * da for a, b in zip(self.num, o.num)], da * db, self.name)

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo._make(self.r, [-a for a in self.num], self.den, self.name)

    def __sub__(self, other: Any) -> Any:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> Any:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> Any:
        if isinstance(other, int):
            return Cyclo._make(self.r, [a * other for a in self.num], self.den, self.name)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclo._make(self.r, _int_mul(self.num, o.num), self.den * o.den, self.name)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Cyclo":
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclo._make(self.r, [1], 1, self.name)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Cyclo":
        """Inverse in Q(zeta_r) by the extended Euclidean algorithm."""
        a = _trim(self.coeffs)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        b = [Fraction(c) for c in phi_coeffs(self.r)]
        # invariant: s0*a0 == r0 (mod phi)
        r0, r1 = b, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            qs = _poly_mul(q, s1)
            n = max(len(s0), len(qs))
            s0, s1 = s1, _trim([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)])
        c = r1[0]
        return Cyclo(self.r, [x / c for x in s1], self.name)

    def __truediv__(self, other: Any) -> "Cyclo":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "Cyclo":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def exquo_int(self, n: int) -> "Cyclo":
        return Cyclo._make(self.r, list(self.num), self.den * n, self.name) if n > 0 else Cyclo._make(self.r, [-a for a in self.num], -self.den * n, self.name)

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Cyclo):
            return self.r == other.r and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return not any(self.num[1:]) and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if not any(self.num[1:]):
            return hash(Fraction(self.num[0], self.den))
        return hash((self.r, self.num, self.den))

    def as_int(self) -> int | None:
        if any(self.num[1:]) or self.den != 1:
            return None
        return self.num[0]

    def is_integral(self) -> bool:
        return self.den == 1

    def is_unit(self) -> bool:
        """Unit of Z[zeta_r]: integral with integral inverse."""
        if not self or not self.is_integral():
            return False
        return self.inverse().is_integral()

    def conjugate(self, k: int) -> "Cyclo":
        """Galois image y -> y^k (k prime to r)."""
        out = [Fraction(0)] * (self.r * max(k, 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[(i * k) % self.r] += c
        return Cyclo(self.r, out, self.name)

    def __str__(self) -> str:
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.name if i == 1 else "%s^%d" % (self.name, i))
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else "%s*%s" % (a, mono)
            else:
                body = str(a)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts) or "0"

    def __repr__(self) -> str:
        return "Cyclo(%d, %r)" % (self.r, str(self))
