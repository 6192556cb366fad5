"""Univariate polynomials over a scalar ring, with resultants and discriminants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .cyclo import Cyclo, phi_coeffs
from .poly import Poly

__all__ = ["UniPoly", "cyclotomic", "resultant", "discriminant"]


def _zero_like(c: Any) -> Any:
    return c * 0


@dataclass(frozen=True)
class UniPoly:
    """Coefficient list (lowest degree first) in the indeterminate ``var``.

    Trailing zero coefficients are stripped, so ``coeffs[-1]`` is the
    leading coefficient unless the polynomial is zero.
    """

    coeffs: tuple
    var: str = "x"

    def __post_init__(self):
        c = list(self.coeffs)
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_poly(cls, f: Poly, var: str) -> "UniPoly":
        parts = f.coeffs_in(var)
        if any(d < 0 for d in parts):
            raise ValueError("negative powers of %s" % var)
        deg = max(parts, default=-1)
        zero = Poly.const(0, f.p)
        return cls(tuple(parts.get(d, zero) for d in range(deg + 1)), var)

    def to_poly(self) -> Any:
        x = Poly.var(self.var)
        out: Any = 0
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + c * x**i
        if isinstance(out, int):
            return Poly.const(out)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Any:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)), self.var)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: Any) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly(tuple(c * other for c in self.coeffs), self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out: list = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        out = UniPoly((1,), self.var)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i), self.var)

    def __call__(self, x: Any) -> Any:
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map(self, fn) -> "UniPoly":
        return UniPoly(tuple(fn(c) for c in self.coeffs), self.var)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    def __str__(self) -> str:
        return str(self.to_poly())


def cyclotomic(r: int, var: str = "y") -> UniPoly:
    """The r-th cyclotomic polynomial."""
    return UniPoly(phi_coeffs(r), var)


def _exact_div(a: Any, b: Any) -> Any:
    if isinstance(a, Poly):
        return a.exquo(b)
    if isinstance(b, Poly):
        return Poly.const(a, b.p).exquo(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division")
        return q
    if isinstance(a, Cyclo) or isinstance(b, Cyclo):
        return a / b
    return a / b


def _bareiss_det(M: list[list]) -> Any:
    n = len(M)
    M = [list(row) for row in M]
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def resultant(f: UniPoly, g: UniPoly) -> Any:
    """Resultant as the determinant of the Sylvester matrix."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f: UniPoly) -> Any:
    """(-1)^(n(n-1)/2) res(f, f') / lc(f), so that disc(x^3 - t x - 1) = 4t^3 - 27."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree at least 1")
    if n == 1:
        return 1
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return _exact_div(res * sign, f.lc)
