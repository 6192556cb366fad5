import sympy
from hypothesis import strategies as st

from groupdeform.scalars import Cyclo, Frac, Poly

GENS = ("q", "t")


def to_sympy(x, names=GENS):
    """Exact sympy image of an integer, Poly or Frac (Laurent exponents allowed)."""
    syms = {g: sympy.Symbol(g) for g in names}
    if isinstance(x, int):
        return sympy.Integer(x)
    if isinstance(x, Frac):
        return sympy.cancel(to_sympy(x.num, names) / to_sympy(x.den, names))
    out = sympy.Integer(0)
    for exps, c in x.terms.items():
        mono = sympy.Integer(1)
        for g, k in zip(x.gens, exps):
            mono *= syms.setdefault(g, sympy.Symbol(g)) ** k
        out += _coeff(c) * mono
    return sympy.expand(out)


def _coeff(c):
    if isinstance(c, Cyclo):
        z = sympy.exp(2 * sympy.pi * sympy.I / c.r)
        return sum(sympy.Rational(a) * z**i for i, a in enumerate(c.coeffs))
    return sympy.Rational(c)


def same(a, b):
    return sympy.simplify(a - b) == 0


@st.composite
def laurent_polys(draw, gens=GENS, max_terms=4, lo=-2, hi=3, p=0):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(lo, hi)) for _ in gens)
        terms[exps] = draw(st.integers(-6, 6))
    return Poly(terms, gens, p)


@st.composite
def polys(draw, gens=GENS, max_terms=4, hi=3, p=0):
    return draw(laurent_polys(gens, max_terms, 0, hi, p))
