"""Quantum integers and factorials."""

from __future__ import annotations

from .poly import Poly

__all__ = ["quantum_integer", "quantum_factorial"]


def quantum_integer(i: int, base: Poly) -> Poly:
    """``1 + base + ... + base^(i-1)``, the exact quotient (1 - base^i)/(1 - base)."""
    if i < 1:
        raise ValueError("quantum integers are defined for i >= 1")
    out = Poly.const(1, base.p)
    power = Poly.const(1, base.p)
    for _ in range(i - 1):
        power = power * base
        out = out + power
    return out


def quantum_factorial(n: int, base: Poly) -> Poly:
    """Product of quantum_integer(j, base) for j = 2..n."""
    if n < 1:
        raise ValueError("quantum factorial needs n >= 1")
    out = Poly.const(1, base.p)
    for j in range(2, n + 1):
        out = out * quantum_integer(j, base)
    return out
