import sympy
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from groupdeform.scalars import (
    Cyclo,
    EvaluationAtPole,
    Frac,
    NotDivisible,
    ParseError,
    Poly,
    UniPoly,
    cyclotomic,
    discriminant,
    parse_scalar,
    poly_gcd,
    poly_lcm,
    quantum_factorial,
    quantum_integer,
    resultant,
    specialize,
)

from conftest import laurent_polys, polys, same, to_sympy

q, t = Poly.var("q"), Poly.var("t")
Q, T, X = sympy.symbols("q t x")


@settings(max_examples=60, deadline=None)
@given(laurent_polys(), laurent_polys())
def test_ring_ops_match_sympy(a, b):
    assert same(to_sympy(a + b), to_sympy(a) + to_sympy(b))
    assert same(to_sympy(a * b), to_sympy(a) * to_sympy(b))
    assert same(to_sympy(a - b), to_sympy(a) - to_sympy(b))


@settings(max_examples=40, deadline=None)
@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_exquo_inverts_multiplication(a, b):
    if not b:
        return
    assert (a * b).exquo(b) == a
    assert b.divides(a * b)


def test_exquo_rejects_inexact():
    with pytest.raises(NotDivisible):
        (q + 2).exquo(q + 1)


def test_laurent_monomials_are_units():
    assert (q**-3 * t).is_unit()
    assert (q**2).inverse() == q**-2
    assert not (q + 1).is_unit()


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=3, hi=2), polys(max_terms=3, hi=2), polys(max_terms=2, hi=2))
def test_gcd_against_sympy(a, b, c):
    a, b = a * c, b * c
    g = poly_gcd(a, b)
    if not a and not b:
        return
    want = sympy.gcd(to_sympy(a), to_sympy(b))
    # Laurent gcd: equal up to a signed monomial
    num, den = sympy.fraction(sympy.cancel(to_sympy(g) / want))
    assert all(sympy.Poly(x, Q, T).is_monomial and abs(sympy.Poly(x, Q, T).LC()) == 1 for x in (num, den))


def test_lcm_of_coprime_is_product():
    a, b = q + 1, t - 3
    assert poly_lcm(a, b) in (a * b, -a * b)


def test_mod_p_coefficients():
    f = Poly({(2,): 5, (0,): 7}, ("q",), 0).mod(3)
    assert f == Poly({(2,): 2, (0,): 1}, ("q",), 3)
    assert f.p == 3
    assert (f * 3) == 0


def test_frac_reduces_and_adds():
    x = (q + 1) / (q * q - 1)
    assert x == Frac(1, q - 1)
    assert same(to_sympy(x + Frac(q, q + 1)), 1 / (Q - 1) + Q / (Q + 1))
    assert Frac(q + 1, q + 1) == 1


@settings(max_examples=30, deadline=None)
@given(polys(max_terms=3), polys(max_terms=3))
def test_frac_field_ops_match_sympy(a, b):
    if not b or not a:
        return
    x = Frac(a, b)
    assert same(to_sympy(x * x.inverse()), 1)
    assert same(to_sympy(x + x), 2 * to_sympy(a) / to_sympy(b))


def test_cyclo_arithmetic():
    w = Cyclo.gen(3)
    assert w**3 == 1
    assert w * w + w + 1 == 0
    i = Cyclo.gen(4)
    assert i * i == -1
    assert (1 + i).inverse() * (1 + i) == 1
    assert Cyclo(3, [Fraction(1, 2)]) * 2 == 1


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5, 6, 8, 9, 12])
def test_cyclotomic_polynomial_matches_sympy(r):
    got = cyclotomic(r, "x")
    want = sympy.Poly(sympy.cyclotomic_poly(r, X), X).all_coeffs()[::-1]
    assert list(got.coeffs) == [int(c) for c in want]


@pytest.mark.parametrize(
    "coeffs",
    [
        (-1, -t, 0, 1),  # x^3 - t x - 1
        (-1, -t, 1),
        (-1, -t, 0, 0, 1),
        (3, q, -2, 1),
        (1, 0, q, 0, 1),
    ],
)
def test_discriminant_against_sympy(coeffs):
    f = UniPoly(tuple(Poly.const(c) if isinstance(c, int) else c for c in coeffs), "x")
    sym = sum(to_sympy(c) * X**i for i, c in enumerate(coeffs))
    assert same(to_sympy(discriminant(f)), sympy.discriminant(sym, X))


def test_cubic_discriminant_value():
    f = UniPoly((Poly.const(-1), -t, Poly.const(0), Poly.const(1)), "x")
    assert discriminant(f) == 4 * t**3 - 27


def test_resultant_against_sympy():
    f = UniPoly((Poly.const(2), q, Poly.const(1)), "x")
    g = UniPoly((t, Poly.const(-1), Poly.const(3)), "x")
    sf = 2 + Q * X + X**2
    sg = T - X + 3 * X**2
    assert same(to_sympy(resultant(f, g)), sympy.resultant(sf, sg, X))


@pytest.mark.parametrize("i", range(1, 7))
def test_quantum_integer(i):
    got = to_sympy(quantum_integer(i, q**2))
    assert same(got, (1 - Q ** (2 * i)) / (1 - Q**2))


def test_quantum_factorial():
    want = sympy.prod([(1 - Q ** (2 * j)) / (1 - Q**2) for j in range(2, 5)])
    assert same(to_sympy(quantum_factorial(4, q**2)), want)
    assert quantum_factorial(1, q) == 1


def test_specialize_and_pole():
    x = Frac(q + 2, q - 1)
    assert specialize(x, [("q", 3)]) == Frac(5, 2)
    with pytest.raises(EvaluationAtPole):
        specialize(x, [("q", 1)])
    assert specialize(q**2 * t + t, [("q", -1)]) == 2 * t


def test_parse_roundtrip():
    assert parse_scalar("q^-1 + 3*q^2 - t") == q**-1 + 3 * q**2 - t
    assert parse_scalar("(q+1)^2") == q * q + 2 * q + 1
    assert parse_scalar("q + 4", p=3) == Poly({(1,): 1, (0,): 1}, ("q",), 3)
    w = parse_scalar("w^3", cyclotomic={"w": 3})
    assert w == 1
    with pytest.raises(ParseError):
        parse_scalar("q + * 2")


@settings(max_examples=30, deadline=None)
@given(laurent_polys())
def test_str_parses_back(a):
    assert parse_scalar(str(a)) == a


def test_json_roundtrip():
    f = 3 * q**-2 * t - 7
    assert Poly.from_json(f.to_json()) == f
