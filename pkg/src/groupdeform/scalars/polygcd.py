"""Greatest common divisors of multivariate polynomials.

Recursive primitive pseudo-remainder sequences.  Coefficients live in Z
(integer content is tracked) or in a field (F_p, or Q(zeta) for cyclotomic
coefficients), in which case every nonzero constant is a unit.

Laurent inputs are handled by stripping monomial content first, since
monomials are units of the Laurent ring.  Results are normalized: no
monomial factor, positive leading coefficient over Z, monic over a field.
"""

from __future__ import annotations

from math import gcd as igcd

from .poly import Poly

__all__ = ["poly_gcd", "normalize", "unit_normal_factor", "poly_lcm"]


def _is_field(a: Poly) -> bool:
    if a.p:
        return True
    return any(not isinstance(c, int) for c in a.terms.values())


def unit_normal_factor(a: Poly) -> Poly:
    """The unit ``u`` with ``a / u`` normalized (monomial * leading coefficient)."""
    mono, _ = a.monomial_content()
    _, lc = a.lead()
    if a.p or not isinstance(lc, int):
        c = lc
    else:
        c = -1 if lc < 0 else 1
    return Poly.monomial(mono, c, a.p)


def normalize(a: Poly) -> Poly:
    """Associate of ``a`` with no monomial factor and canonical leading coefficient."""
    if not a:
        return a
    _, rest = a.monomial_content()
    _, lc = rest.lead()
    if rest.p:
        if lc != 1:
            rest = rest.exquo(lc)
    elif isinstance(lc, int):
        if lc < 0:
            rest = -rest
    else:
        rest = rest.exquo(lc)
    return rest


def _const_gcd(a: Poly, b: Poly, field: bool) -> Poly:
    p = a.p
    if field:
        return Poly.const(1, p)
    x = a.constant_value() if a else 0
    y = b.constant_value() if b else 0
    return Poly.const(igcd(x, y), p)


def _int_univariate_gcd(a: Poly, b: Poly) -> Poly:
    """Dense primitive PRS for univariate polynomials over Z or F_p."""
    name = a.gens[0]
    p = a.p
    A = _dense(a)
    B = _dense(b)
    if len(A) < len(B):
        A, B = B, A
    if p:
        while B:
            A, B = B, _rem_mod(A, B, p)
        inv = pow(A[-1], -1, p)
        A = [c * inv % p for c in A]
        return Poly({(i,): c for i, c in enumerate(A)}, (name,), p)
    ca, cb = _icontent(A), _icontent(B)
    g = igcd(ca, cb)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    while B:
        R = _prem(A, B)
        A = B
        if R:
            c = _icontent(R)
            B = [x // c for x in R]
        else:
            B = R
    if A[-1] < 0:
        A = [-c for c in A]
    return Poly({(i,): c * g for i, c in enumerate(A)}, (name,), 0)


def _dense(a: Poly) -> list:
    d = max(e[0] for e in a.terms)
    out = [0] * (d + 1)
    for (k,), c in a.terms.items():
        out[k] = c
    return out


def _icontent(A: list) -> int:
    g = 0
    for c in A:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def _prem(A: list, B: list) -> list:
    R = list(A)
    db = len(B) - 1
    lb = B[-1]
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= db:
        c = R[-1]
        shift = len(R) - 1 - db
        R = [r * lb for r in R]
        for i, bc in enumerate(B):
            R[i + shift] -= c * bc
        while R and R[-1] == 0:
            R.pop()
        e -= 1
    if e > 0:
        f = lb**e
        R = [r * f for r in R]
    return R


def _rem_mod(A: list, B: list, p: int) -> list:
    R = list(A)
    db = len(B) - 1
    inv = pow(B[-1], -1, p)
    while R and len(R) - 1 >= db:
        c = R[-1] * inv % p
        shift = len(R) - 1 - db
        for i, bc in enumerate(B):
            R[i + shift] = (R[i + shift] - c * bc) % p
        while R and R[-1] == 0:
            R.pop()
    return R


def _content(coeffs: list[Poly], field: bool) -> Poly:
    g = None
    for c in coeffs:
        if not c:
            continue
        if c.is_constant() and (field or c.constant_value() in (1, -1)):
            return Poly.const(1, c.p)
        g = c if g is None else _gcd(g, c, field)
        if g.is_constant() and (field or g.constant_value() == 1):
            return g
    return g


def _gcd(a: Poly, b: Poly, field: bool) -> Poly:
    """gcd of polynomials with non-negative exponents, up to a unit."""
    if not a:
        return b
    if not b:
        return a
    if not a.gens or not b.gens:
        if not a.gens and not b.gens:
            return _const_gcd(a, b, field)
        c, other = (a, b) if not a.gens else (b, a)
        if field or c.constant_value() in (1, -1):
            return Poly.const(1, a.p)
        return _const_gcd(c, Poly.const(other.content(), a.p), False)
    if a.gens == b.gens and len(a.gens) == 1 and not (_has_cyclo(a) or _has_cyclo(b)):
        return _int_univariate_gcd(a, b)
    gens = sorted(set(a.gens) | set(b.gens))
    x = gens[0]
    ca = a.coeffs_in(x)
    cb = b.coeffs_in(x)
    if x not in a.gens:
        return _gcd(a, _content(list(cb.values()), field), field)
    if x not in b.gens:
        return _gcd(_content(list(ca.values()), field), b, field)
    cont_a = _content(list(ca.values()), field)
    cont_b = _content(list(cb.values()), field)
    g_cont = _gcd(cont_a, cont_b, field)
    A = _to_dense(ca, a.p)
    B = _to_dense(cb, a.p)
    A = [c.exquo(cont_a) for c in A]
    B = [c.exquo(cont_b) for c in B]
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _prem_poly(A, B)
        A = B
        if R:
            c = _content(R, field)
            B = [r.exquo(c) for r in R]
        else:
            B = R
    xv = Poly.var(x, a.p)
    res = Poly.const(0, a.p)
    for i, c in enumerate(A):
        if c:
            res = res + c * xv**i
    return res * g_cont


def _has_cyclo(a: Poly) -> bool:
    return any(not isinstance(c, int) for c in a.terms.values())


def _to_dense(parts: dict, p: int) -> list:
    d = max(parts)
    zero = Poly.const(0, p)
    out = [zero] * (d + 1)
    for k, c in parts.items():
        out[k] = c
    return out


def _prem_poly(A: list, B: list) -> list:
    R = list(A)
    db = len(B) - 1
    lb = B[-1]
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= db:
        c = R[-1]
        shift = len(R) - 1 - db
        R = [r * lb for r in R]
        for i, bc in enumerate(B):
            R[i + shift] = R[i + shift] - c * bc
        while R and not R[-1]:
            R.pop()
        e -= 1
    if e > 0:
        f = lb**e
        R = [r * f for r in R]
    return R


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Normalized gcd of two (Laurent) polynomials over the same ring."""
    if a.p != b.p:
        raise ValueError("polynomials over different rings")
    if not a and not b:
        return a
    _, a0 = a.monomial_content() if a else ({}, a)
    _, b0 = b.monomial_content() if b else ({}, b)
    field = _is_field(a) or _is_field(b)
    return normalize(_gcd(a0, b0, field))


def poly_lcm(a: Poly, b: Poly) -> Poly:
    """Normalized lcm, up to units of the Laurent ring."""
    if not a or not b:
        return Poly.const(0, a.p)
    g = poly_gcd(a, b)
    return normalize(normalize(a).exquo(g) * normalize(b))
