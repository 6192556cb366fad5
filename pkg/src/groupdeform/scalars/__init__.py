"""Exact scalars: Laurent polynomials, fractions, cyclotomic coefficients."""

from .cyclo import Cyclo, phi_coeffs
from .frac import Frac, as_frac, simplify
from .parse import ParseError, parse_scalar
from .poly import NotDivisible, Poly, const, var
from .polygcd import normalize, poly_gcd, poly_lcm
from .quantum import quantum_factorial, quantum_integer
from .specialize import EvaluationAtPole, specialize
from .unipoly import UniPoly, cyclotomic, discriminant, resultant

__all__ = [
    "Cyclo",
    "EvaluationAtPole",
    "Frac",
    "NotDivisible",
    "ParseError",
    "Poly",
    "UniPoly",
    "as_frac",
    "const",
    "cyclotomic",
    "discriminant",
    "normalize",
    "parse_scalar",
    "phi_coeffs",
    "poly_gcd",
    "poly_lcm",
    "quantum_factorial",
    "quantum_integer",
    "resultant",
    "simplify",
    "specialize",
    "var",
    "ring_tag",
]


def ring_tag(x) -> str:
    """Short description of the ring a scalar lives in."""
    if isinstance(x, int):
        return "Z"
    if isinstance(x, Frac):
        return "Frac(%s)" % ring_tag(x.num if x.num.gens else x.den)
    base = "F_%d" % x.p if x.p else "Z"
    if any(isinstance(c, Cyclo) for c in x.terms.values()):
        c = next(c for c in x.terms.values() if isinstance(c, Cyclo))
        base = "Q(zeta_%d)" % c.r
    if not x.gens:
        return base
    laurent = {g for e in x.terms for g, k in zip(x.gens, e) if k < 0}
    names = ",".join(g + ("^±1" if g in laurent else "") for g in x.gens)
    return "%s[%s]" % (base, names)
