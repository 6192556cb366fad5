import pytest
from hypothesis import given, settings, strategies as st

from groupdeform.algebra import TensorElement, group_algebra, matrix_algebra, quotient_algebra
from groupdeform.deform import cyclic_deformation
from groupdeform.groups import cyclic, dihedral, symmetric
from groupdeform.kernels import BudgetExceeded
from groupdeform.scalars import Poly, UniPoly, discriminant, poly_gcd
from groupdeform.separability import (
    Inconsistent,
    SpanError,
    classical_idempotent,
    coprime_base,
    mod_p_consistency,
    solve_idempotent,
    verify_idempotent,
)

from conftest import polys

t = Poly.var("t")


@pytest.mark.parametrize("desc", [cyclic(2), cyclic(3), cyclic(5), dihedral(3), symmetric(3)], ids=str)
def test_classical_idempotent_verifies(desc):
    A = group_algebra(desc.enumerate())
    assert all(verify_idempotent(A, classical_idempotent(A)).values())


@pytest.mark.parametrize("r", [2, 3, 4, 6])
def test_solver_recovers_classical_idempotent(r):
    # a commutative separable algebra has exactly one separability idempotent
    A = group_algebra(cyclic(r).enumerate())
    cert = solve_idempotent(A, [A.gen(1)])
    assert cert.separable
    assert cert.element == classical_idempotent(A)


def test_solver_on_nonabelian_group():
    A = group_algebra(symmetric(3).enumerate())
    cert = solve_idempotent(A)
    assert all(cert.flags.values())


@pytest.mark.parametrize("n", [1, 2])
def test_matrix_algebra_certified(n):
    M = matrix_algebra(n)
    cert = solve_idempotent(M)
    assert cert.separable and all(verify_idempotent(M, cert.element).values())


@pytest.mark.parametrize("p,r", [(2, 2), (3, 3), (2, 4)])
def test_modular_group_algebra_is_not_separable(p, r):
    A = group_algebra(cyclic(r).enumerate(), p=p)
    assert isinstance(solve_idempotent(A, [A.gen(1)]), Inconsistent)


def test_coprime_modulus_is_separable():
    A = group_algebra(cyclic(3).enumerate(), p=2)
    cert = solve_idempotent(A, [A.gen(1)])
    assert cert.separable


def test_verify_rejects_wrong_element():
    A = group_algebra(cyclic(2).enumerate())
    e = classical_idempotent(A)
    bad = TensorElement((A, A), {(0, 0): e.terms[(0, 0)]})
    flags = verify_idempotent(A, bad)
    assert not all(flags.values())


def test_span_check():
    A = group_algebra(cyclic(4).enumerate())
    with pytest.raises(SpanError):
        solve_idempotent(A, [A.gen(2)])


def test_budget():
    A = group_algebra(symmetric(3).enumerate())
    with pytest.raises(BudgetExceeded):
        solve_idempotent(A, budget=10)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_cyclic_deformation_denominators(r):
    D = cyclic_deformation(r)
    A = D.algebra
    d = discriminant(D.polynomial)
    cert = solve_idempotent(A, [A.basis_element("x")], reference=d)
    assert cert.denominators.divides_reference_power
    modp = mod_p_consistency(cert, [2, 3, 5, 7], d)
    assert all(v in (True, "skipped") for v in modp.values())


def test_nonseparable_specialization_detected():
    # x^2 - t x - 1 at t = 2i is (x - i)^2 over Q(i); over Q use x^2 with a double root
    one = Poly.const(1)
    A = quotient_algebra(UniPoly((Poly.const(0), Poly.const(0), one), "x"))
    assert isinstance(solve_idempotent(A, [A.basis_element("x")]), Inconsistent)


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(gens=("t",), max_terms=3, hi=3), min_size=1, max_size=4))
def test_coprime_base_properties(fs):
    fs = [f for f in fs if f and not f.is_constant()]
    base = coprime_base(fs)
    for i, a in enumerate(base):
        for b in base[i + 1 :]:
            assert poly_gcd(a, b).is_constant()
    for f in fs:
        rest = f
        for b in base:
            while not rest.is_constant() and b.divides(rest):
                rest = rest.exquo(b)
        # what remains is a unit of Q[t, t^-1]: a constant times a monomial
        assert rest.is_monomial()
