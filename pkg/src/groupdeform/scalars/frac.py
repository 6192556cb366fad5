"""Fraction-field elements in canonical lowest terms.

``Frac(num, den)`` is stored with ``gcd(num, den) = 1``, the denominator
free of monomial factors (those are Laurent units and live in the
numerator) and normalized to a positive (over Z) or unit (over a field)
leading coefficient.  Equal values therefore have equal representations.
"""

from __future__ import annotations

from typing import Any

from .poly import Poly
from .polygcd import normalize, poly_gcd, unit_normal_factor

__all__ = ["Frac", "simplify", "as_frac"]


def _as_poly(x: Any, p: int) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(x, p)


class Frac:
    """Quotient ``num / den`` of two polynomials over the same ring."""

    __slots__ = ("num", "den")

    def __init__(self, num: Any, den: Any = 1):
        p = num.p if isinstance(num, Poly) else (den.p if isinstance(den, Poly) else 0)
        if isinstance(num, Frac) or isinstance(den, Frac):
            n = as_frac(num, p)
            d = as_frac(den, p)
            num, den = n.num * d.den, n.den * d.num
        num = _as_poly(num, p)
        den = _as_poly(den, p)
        if num.p != den.p:
            raise ValueError("numerator and denominator over different rings")
        if not den:
            raise ZeroDivisionError("fraction with zero denominator")
        if not num:
            self.num, self.den = num, Poly.const(1, den.p)
            return
        g = poly_gcd(num, den)
        if not (g.is_constant() and g.constant_value() == 1):
            num = num.exquo(g)
            den = den.exquo(g)
        u = unit_normal_factor(den)
        inv = u.inverse()
        self.num = num * inv
        self.den = den * inv

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "Frac":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @property
    def p(self) -> int:
        return self.num.p

    def is_poly(self) -> bool:
        return self.den.is_constant() and self.den.constant_value() == 1

    def __bool__(self) -> bool:
        return bool(self.num)

    def __neg__(self) -> "Frac":
        return Frac._raw(-self.num, self.den)

    def __pos__(self) -> "Frac":
        return self

    def __add__(self, other: Any) -> Any:
        o = _coerce(other, self.p)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Frac(self.num + o.num, self.den)
        if o.is_poly():
            return Frac._raw(self.num + o.num * self.den, self.den)
        if self.is_poly():
            return Frac._raw(self.num * o.den + o.num, o.den)
        g = poly_gcd(self.den, o.den)
        d1 = self.den.exquo(g)
        d2 = o.den.exquo(g)
        return Frac(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __sub__(self, other: Any) -> Any:
        o = _coerce(other, self.p)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> Any:
        o = _coerce(other, self.p)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> Any:
        o = _coerce(other, self.p)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return Frac._raw(Poly.const(0, self.p), Poly.const(1, self.p))
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n = self.num.exquo(g1) * o.num.exquo(g2)
        d = self.den.exquo(g2) * o.den.exquo(g1)
        u = unit_normal_factor(d)
        if u.is_constant() and u.constant_value() == 1:
            return Frac._raw(n, d)
        inv = u.inverse()
        return Frac._raw(n * inv, d * inv)

    __rmul__ = __mul__

    def inverse(self) -> "Frac":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Frac(self.den, self.num)

    def __truediv__(self, other: Any) -> Any:
        o = _coerce(other, self.p)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> Any:
        o = _coerce(other, self.p)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "Frac":
        if n < 0:
            return self.inverse() ** (-n)
        return Frac._raw(self.num**n, self.den**n)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Frac):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int)):
            return self.is_poly() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_poly():
            return hash(self.num)
        return hash((self.num, self.den))

    def subs(self, name: str, value: Any) -> Any:
        from .specialize import specialize

        return specialize(self, [(name, value)])

    def mod(self, p: int) -> "Frac":
        from .specialize import specialize

        return specialize(self, [("mod", p)])

    @property
    def gens(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.num.gens) | set(self.den.gens)))

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if len(self.num.terms) > 1 or (n.startswith("-") and not self.num.is_constant()):
            n = "(%s)" % n
        if len(self.den.terms) > 1 or not self.den.is_constant():
            d = "(%s)" % d
        return "%s/%s" % (n, d)

    def __repr__(self) -> str:
        mod = ", p=%d" % self.p if self.p else ""
        return "Frac(%r%s)" % (str(self), mod)

    def to_json(self) -> dict:
        return {"numerator": self.num.to_json(), "denominator": self.den.to_json()}


def _coerce(x: Any, p: int) -> Frac | None:
    if isinstance(x, Frac):
        return x
    if isinstance(x, Poly):
        return Frac._raw(x, Poly.const(1, x.p))
    if isinstance(x, int):
        return Frac._raw(Poly.const(x, p), Poly.const(1, p))
    from .cyclo import Cyclo

    if isinstance(x, Cyclo):
        return Frac._raw(Poly.const(x, p), Poly.const(1, p))
    return None


def as_frac(x: Any, p: int = 0) -> Frac:
    f = _coerce(x, p)
    if f is None:
        raise TypeError("not a scalar: %r" % (x,))
    return f


def simplify(x: Any) -> Any:
    """Return a Poly when a fraction has trivial denominator."""
    if isinstance(x, Frac) and x.is_poly():
        return x.num
    return x
