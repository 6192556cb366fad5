"""Sparse multivariate Laurent polynomials.

A :class:`Poly` is a map from exponent tuples to coefficients.  Coefficients
are Python ints (over Z, or reduced into ``[0, p)`` when ``p`` is a prime) or
:class:`~groupdeform.scalars.cyclo.Cyclo` values for polynomials over a
cyclotomic ring.  Exponents may be negative.

The representation is canonical: generators are kept sorted and only the
generators that actually occur are stored, so two polynomials are equal iff
their ``(gens, terms, p)`` triples are equal.
"""

from __future__ import annotations

from operator import add, sub
from typing import Any, Iterable

__all__ = ["Poly", "NotDivisible", "var", "const"]


class NotDivisible(ArithmeticError):
    """Raised by exact division when the quotient does not exist."""


def _canon(gens: tuple, terms: dict, p: int) -> "Poly":
    if p:
        terms = {e: c % p for e, c in terms.items() if c % p}
    else:
        terms = {e: c for e, c in terms.items() if c}
    n = len(gens)
    if n:
        used = [False] * n
        for e in terms:
            for k in range(n):
                if e[k]:
                    used[k] = True
        if not all(used):
            keep = [k for k in range(n) if used[k]]
            gens = tuple(gens[k] for k in keep)
            terms = {tuple(e[k] for k in keep): c for e, c in terms.items()}
    return Poly._new(gens, terms, p)


def _remap(terms: dict, gens: tuple, target: tuple) -> dict:
    if gens == target:
        return terms
    pos = [target.index(g) for g in gens]
    n = len(target)
    out = {}
    for e, c in terms.items():
        ne = [0] * n
        for k, x in zip(pos, e):
            ne[k] = x
        out[tuple(ne)] = c
    return out


def _inv_mod(c: int, p: int) -> int:
    c %= p
    if not c:
        raise ZeroDivisionError("division by zero modulo %d" % p)
    return pow(c, -1, p)


class Poly:
    """Multivariate Laurent polynomial with exact coefficients."""

    __slots__ = ("gens", "terms", "p")

    def __init__(self, terms: dict | None = None, gens: Iterable[str] = (), p: int = 0):
        gens = tuple(gens)
        terms = dict(terms or {})
        if len(set(gens)) != len(gens):
            raise ValueError("repeated generator names")
        for e in terms:
            if len(e) != len(gens):
                raise ValueError("exponent tuple length does not match generators")
        order = sorted(range(len(gens)), key=gens.__getitem__)
        sgens = tuple(gens[k] for k in order)
        if sgens != gens:
            terms = {tuple(e[k] for k in order): c for e, c in terms.items()}
        merged: dict = {}
        for e, c in terms.items():
            merged[e] = merged.get(e, 0) + c
        res = _canon(sgens, merged, p)
        self.gens, self.terms, self.p = res.gens, res.terms, res.p

    @classmethod
    def _new(cls, gens: tuple, terms: dict, p: int) -> "Poly":
        obj = object.__new__(cls)
        obj.gens = gens
        obj.terms = terms
        obj.p = p
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Any, p: int = 0) -> "Poly":
        return _canon((), {(): c}, p)

    @classmethod
    def var(cls, name: str, p: int = 0) -> "Poly":
        return cls._new((name,), {(1,): 1}, p)

    @classmethod
    def monomial(cls, exps: dict[str, int], c: Any = 1, p: int = 0) -> "Poly":
        gens = tuple(sorted(exps))
        return _canon(gens, {tuple(exps[g] for g in gens): c}, p)

    def _coerce(self, other: Any) -> "Poly | None":
        if isinstance(other, Poly):
            if other.p != self.p:
                if not other.gens and not self.p:
                    return Poly.const(other.constant_value(), 0)
                raise ValueError("cannot mix polynomials over Z and mod %d" % max(self.p, other.p))
            return other
        if isinstance(other, int) or _is_coeff(other):
            return Poly.const(other, self.p)
        return None

    # -- basic predicates -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.gens

    def constant_value(self) -> Any:
        if self.gens:
            raise ValueError("polynomial is not constant")
        return self.terms.get((), 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * len(self.gens)) == 1

    def is_unit(self) -> bool:
        """True for monomials with an invertible coefficient (Laurent units)."""
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        if self.p:
            return True
        if isinstance(c, int):
            return c in (1, -1)
        return c.is_unit()

    def is_laurent(self) -> bool:
        return any(x < 0 for e in self.terms for x in e)

    def degree(self, name: str) -> int:
        if name not in self.gens:
            return 0 if self.terms else -1
        k = self.gens.index(name)
        return max(e[k] for e in self.terms)

    def min_degree(self, name: str) -> int:
        if name not in self.gens:
            return 0
        k = self.gens.index(name)
        return min(e[k] for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def lead(self) -> tuple[tuple, Any]:
        e = max(self.terms)
        return e, self.terms[e]

    def coefficient(self, exps: dict[str, int]) -> Any:
        if any(g not in self.gens for g, x in exps.items() if x):
            return 0
        e = tuple(exps.get(g, 0) for g in self.gens)
        return self.terms.get(e, 0)

    # -- ring operations ------------------------------------------------------

    def __neg__(self) -> "Poly":
        return _canon(self.gens, {e: -c for e, c in self.terms.items()}, self.p)

    def __pos__(self) -> "Poly":
        return self

    def __add__(self, other: Any) -> Any:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        gens = self.gens if self.gens == o.gens else tuple(sorted(set(self.gens) | set(o.gens)))
        res = dict(_remap(self.terms, self.gens, gens))
        for e, c in _remap(o.terms, o.gens, gens).items():
            res[e] = res.get(e, 0) + c
        return _canon(gens, res, self.p)

    __radd__ = __add__

    def __sub__(self, other: Any) -> Any:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> Any:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> Any:
        if isinstance(other, int) or _is_coeff(other):
            return _canon(self.gens, {e: c * other for e, c in self.terms.items()}, self.p)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.gens:
            return self * o.constant_value()
        if not self.gens:
            return o * self.constant_value()
        gens = self.gens if self.gens == o.gens else tuple(sorted(set(self.gens) | set(o.gens)))
        t1 = _remap(self.terms, self.gens, gens)
        t2 = _remap(o.terms, o.gens, gens)
        res: dict = {}
        get = res.get
        if len(gens) == 1:
            for (a,), c1 in t1.items():
                for (b,), c2 in t2.items():
                    k = (a + b,)
                    res[k] = get(k, 0) + c1 * c2
        else:
            for e1, c1 in t1.items():
                for e2, c2 in t2.items():
                    k = tuple(map(add, e1, e2))
                    res[k] = get(k, 0) + c1 * c2
        return _canon(gens, res, self.p)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Any:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            inv = self.inverse()
            if inv is None:
                from .frac import Frac

                return Frac(Poly.const(1, self.p), self ** (-n))
            return inv ** (-n)
        result = Poly.const(1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "Poly | None":
        """Inverse in the Laurent ring, or None when this is not a unit."""
        if not self.is_unit():
            return None
        ((e, c),) = self.terms.items()
        if self.p:
            ci = _inv_mod(c, self.p)
        elif isinstance(c, int):
            ci = c
        else:
            ci = c.inverse()
        return Poly._new(self.gens, {tuple(-x for x in e): ci}, self.p)

    def __truediv__(self, other: Any) -> Any:
        from .frac import Frac

        if isinstance(other, Poly) or isinstance(other, int):
            return Frac(self, other)
        return NotImplemented

    def __rtruediv__(self, other: Any) -> Any:
        from .frac import Frac

        if isinstance(other, int):
            return Frac(Poly.const(other, self.p), self)
        return NotImplemented

    def _div_coeff(self, a: Any, b: Any) -> Any:
        if self.p:
            return a * _inv_mod(b, self.p) % self.p
        if isinstance(b, int):
            if isinstance(a, int):
                q, r = divmod(a, b)
                if r:
                    raise NotDivisible("%s is not divisible by %s" % (a, b))
                return q
            return a.exquo_int(b)
        return a * b.inverse()

    def exquo(self, other: Any) -> "Poly":
        """Exact quotient ``self / other``; raises NotDivisible otherwise."""
        o = self._coerce(other)
        if o is None:
            raise TypeError("cannot divide by %r" % (other,))
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        if not self:
            return self
        if not o.gens and not _cyclo_conductor(self.terms, o.terms):
            c = o.constant_value()
            return _canon(self.gens, {e: self._div_coeff(v, c) for e, v in self.terms.items()}, self.p)
        gens = self.gens if self.gens == o.gens else tuple(sorted(set(self.gens) | set(o.gens)))
        ta = _remap(self.terms, self.gens, gens)
        tb = _remap(o.terms, o.gens, gens)
        r = _cyclo_conductor(ta, tb)
        if r:
            ta = _as_cyclo(ta, r)
            tb = _as_cyclo(tb, r)
        lb = max(tb)
        cb = tb[lb]
        bound = tuple(map(sub, min(ta), min(tb)))
        rem = dict(ta)
        quo: dict = {}
        while rem:
            er = max(rem)
            e = tuple(map(sub, er, lb))
            if e < bound:
                raise NotDivisible("not an exact division")
            c = self._div_coeff(rem[er], cb)
            quo[e] = c
            for eb, v in tb.items():
                k = tuple(map(add, e, eb))
                nv = rem.get(k, 0) - c * v
                if self.p:
                    nv %= self.p
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return _canon(gens, quo, self.p)

    def divides(self, other: "Poly") -> bool:
        try:
            other.exquo(self) if isinstance(other, Poly) else Poly.const(other, self.p).exquo(self)
        except NotDivisible:
            return False
        return True

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Poly):
            return self.p == other.p and self.gens == other.gens and self.terms == other.terms
        if isinstance(other, int) or _is_coeff(other):
            if self.gens:
                return False
            v = self.terms.get((), 0)
            if self.p and isinstance(other, int):
                return (v - other) % self.p == 0
            return v == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.gens:
            return hash(self.terms.get((), 0))
        return hash((self.p, self.gens, frozenset(self.terms.items())))

    # -- structure ------------------------------------------------------------

    def monomial_content(self) -> tuple[dict[str, int], "Poly"]:
        """Split off the largest monomial factor: ``self == x^m * rest``."""
        if not self.terms:
            return {}, self
        mins = [min(e[k] for e in self.terms) for k in range(len(self.gens))]
        rest = {tuple(map(sub, e, mins)): c for e, c in self.terms.items()}
        return dict(zip(self.gens, mins)), _canon(self.gens, rest, self.p)

    def shift(self, exps: dict[str, int]) -> "Poly":
        """Multiply by the monomial ``x^exps``."""
        return self * Poly.monomial(exps, 1, self.p)

    def diff(self, name: str) -> "Poly":
        if name not in self.gens:
            return Poly._new((), {}, self.p)
        k = self.gens.index(name)
        res = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                res[ne] = c * e[k]
        return _canon(self.gens, res, self.p)

    def coeffs_in(self, name: str) -> dict[int, "Poly"]:
        """Coefficients as a polynomial in ``name``: degree -> Poly in the other gens."""
        if name not in self.gens:
            return {0: self} if self.terms else {}
        k = self.gens.index(name)
        rest = self.gens[:k] + self.gens[k + 1:]
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[k], {})[e[:k] + e[k + 1:]] = c
        return {d: _canon(rest, t, self.p) for d, t in parts.items()}

    def subs(self, name: str, value: Any) -> Any:
        """Substitute ``value`` (int, Poly or Frac) for the generator ``name``."""
        if name not in self.gens:
            return self
        if isinstance(value, int):
            value = Poly.const(value, self.p)
        result: Any = Poly._new((), {}, self.p)
        for d, part in sorted(self.coeffs_in(name).items()):
            result = result + part * (value ** d)
        return result

    def mod(self, p: int) -> "Poly":
        """Reduce integer coefficients modulo the prime ``p``."""
        if self.p:
            if self.p != p:
                raise ValueError("already reduced modulo %d" % self.p)
            return self
        for c in self.terms.values():
            if not isinstance(c, int):
                raise TypeError("only integer coefficients can be reduced modulo p")
        return _canon(self.gens, dict(self.terms), p)

    def lift(self) -> "Poly":
        """Forget the modulus, taking representatives in ``[0, p)``."""
        return _canon(self.gens, dict(self.terms), 0)

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def size(self) -> tuple[int, int, int]:
        """Rough cost measure used for pivot selection."""
        if not self.terms:
            return (0, 0, 0)
        deg = max(sum(abs(x) for x in e) for e in self.terms)
        bits = max((abs(c).bit_length() if isinstance(c, int) else 64) for c in self.terms.values())
        return (len(self.terms), deg, bits)

    def variables(self) -> tuple[str, ...]:
        return self.gens

    # -- text ---------------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[tuple, Any]]:
        return sorted(self.terms.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self._sorted_terms():
            mono = "*".join(
                g if x == 1 else "%s^%d" % (g, x) for g, x in zip(self.gens, e) if x
            )
            if isinstance(c, int):
                neg = c < 0
                a = -c if neg else c
                body = mono if (a == 1 and mono) else (str(a) + ("*" + mono if mono else ""))
            else:
                neg = False
                ci = c.as_int()
                if ci is not None:
                    neg = ci < 0
                    a = -ci if neg else ci
                    body = mono if (a == 1 and mono) else (str(a) + ("*" + mono if mono else ""))
                else:
                    body = "(%s)" % c + ("*" + mono if mono else "")
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        mod = ", p=%d" % self.p if self.p else ""
        return "Poly(%r%s)" % (str(self), mod)

    def to_json(self) -> list[dict]:
        return [
            {
                "exponents": {g: x for g, x in zip(self.gens, e) if x},
                "coefficient": str(c),
            }
            for e, c in self._sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: list[dict], p: int = 0) -> "Poly":
        result = Poly.const(0, p)
        for term in data:
            result = result + Poly.monomial(dict(term["exponents"]), int(term["coefficient"]), p)
        return result


def _is_coeff(x: Any) -> bool:
    from .cyclo import Cyclo

    return isinstance(x, Cyclo)


def _cyclo_conductor(*term_maps: dict) -> int:
    for t in term_maps:
        for c in t.values():
            if not isinstance(c, int):
                return c.r
    return 0


def _as_cyclo(terms: dict, r: int) -> dict:
    from .cyclo import Cyclo

    return {e: (Cyclo(r, [c]) if isinstance(c, int) else c) for e, c in terms.items()}


def var(name: str, p: int = 0) -> Poly:
    return Poly.var(name, p)


def const(c: Any, p: int = 0) -> Poly:
    return Poly.const(c, p)
