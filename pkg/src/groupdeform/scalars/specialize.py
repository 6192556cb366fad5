"""Ring morphisms: substitutions of generators and reduction modulo a prime."""

from __future__ import annotations

from typing import Any, Iterable

from .frac import Frac, simplify
from .poly import Poly

__all__ = ["specialize", "EvaluationAtPole", "Bindings"]

Bindings = Iterable[tuple[str, Any]]


class EvaluationAtPole(ArithmeticError):
    """A denominator (or a negative power) vanished under the substitution."""


def _value(v: Any, p: int) -> Any:
    if isinstance(v, str):
        from .parse import parse_scalar

        return parse_scalar(v, p)
    if isinstance(v, int):
        return Poly.const(v, p)
    if isinstance(v, Poly) and p and not v.p:
        return v.mod(p)
    return v


def _subs_poly(f: Poly, name: str, value: Any) -> Any:
    if name not in f.gens:
        return f
    out: Any = Poly.const(0, f.p)
    for d, part in sorted(f.coeffs_in(name).items()):
        if d < 0:
            if not value:
                raise EvaluationAtPole("negative power of %s at %s = 0" % (name, name))
            term = value**d
        else:
            term = value**d
        out = out + part * term
    return out


def _subs(x: Any, name: str, value: Any) -> Any:
    if isinstance(x, Poly):
        return _subs_poly(x, name, value)
    num = _subs_poly(x.num, name, value)
    den = _subs_poly(x.den, name, value)
    if not den:
        raise EvaluationAtPole("denominator %s vanishes at %s = %s" % (x.den, name, value))
    return Frac(num, den)


def _mod(x: Any, p: int) -> Any:
    if isinstance(x, Poly):
        return x.mod(p)
    den = x.den.mod(p)
    if not den:
        raise EvaluationAtPole("denominator %s vanishes modulo %d" % (x.den, p))
    return Frac(x.num.mod(p), den)


def specialize(x: Any, bindings: Bindings | dict) -> Any:
    """Apply substitutions in order.

    ``bindings`` is a sequence of ``(name, value)`` pairs (or an ordered
    dict).  The pseudo-name ``"mod"`` reduces coefficients modulo the given
    prime.  Values may be ints, Polys, Fracs or text in canonical form.
    """
    if isinstance(x, int):
        x = Poly.const(x)
    if isinstance(bindings, dict):
        bindings = list(bindings.items())
    for name, value in bindings:
        p = x.p
        if name == "mod":
            x = _mod(x, int(value))
            continue
        v = _value(value, p)
        if isinstance(v, (Poly, Frac)) and v.p != p:
            raise ValueError("substitution value over a different ring")
        x = _subs(x, name, v)
    return simplify(x)
