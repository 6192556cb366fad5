"""Acceptance suite: one test per criterion, each timed against its budget.

Every test prints a single ``PASS``/``FAIL`` line (shown even under capture)
and then asserts both the checks and the runtime.  Run directly with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""

import math
import random
import sys
import time
from fractions import Fraction

import pytest

from groupdeform.algebra import embed_tensor, group_algebra, matrix_algebra, switch_element, tensor
from groupdeform.blocks import dn_orbit_data, irreducible_dims, middle_stabilizer_check, qbn_blocks, qdn_blocks
from groupdeform.checks import CheckList
from groupdeform.deform import (
    c3_s_form_idempotent,
    c3_t_form_idempotent,
    cyclic_deformation,
    s_form_algebra,
    s_form_report,
    wreath_c2_build,
    action_matrices,
    symmetric_polynomial,
    symmetry_identity,
)
from groupdeform.groups import Perm, coxeter_length, symmetric, string_action_verify
from groupdeform.hecke import hecke_algebra, hecke_basis, hecke_multiply, multiply_by_generator, specialize_q1
from groupdeform.scalars import Frac, Poly, discriminant, quantum_factorial, specialize
from groupdeform.separability import mod_p_consistency, solve_idempotent, verify_idempotent

SEED = 20240601


def _line(k, title, checks, seconds, limit):
    ok = checks.passed and seconds < limit
    status = "PASS" if ok else "FAIL"
    msg = "%s criterion %d: %s (%.2fs, limit %ss)" % (status, k, title, seconds, limit)
    bad = checks.failures()
    if bad:
        msg += " failed: " + "; ".join(bad)
    if seconds >= limit:
        msg += " over time"
    return msg


def _report(k, title, build, limit, capsys=None):
    t0 = time.perf_counter()
    checks = build()
    seconds = time.perf_counter() - t0
    msg = _line(k, title, checks, seconds, limit)
    if capsys is not None:
        with capsys.disabled():
            print("\n" + msg)
    else:
        print(msg)
    return checks, seconds


def _assert(checks, seconds, limit):
    assert checks.failures() == []
    assert seconds < limit


def _fraction(c):
    if isinstance(c, Frac):
        return Fraction(c.num.constant_value()) / Fraction(c.den.constant_value())
    if isinstance(c, Poly):
        return Fraction(c.constant_value())
    return Fraction(c)


def _classical_c3(A, e0):
    got = {(A.basis[i], A.basis[j]): c for (i, j), c in e0.terms.items()}
    want = {("1", "1"), ("x", "x^2"), ("x^2", "x")}
    return set(got) == want and all(_fraction(c) == Fraction(1, 3) for c in got.values())


# -- 1 ---------------------------------------------------------------------


def criterion_1():
    out = CheckList()
    D = cyclic_deformation(3)
    A = D.algebra
    t = Poly.var("t")
    d = 4 * t**3 - 27
    e = c3_t_form_idempotent(A)
    out.add("closed form verifies", all(verify_idempotent(A, e).values()))
    out.add("closed form denominator is 4t^3 - 27", all(_denominator_divides(c, d) for c in e.terms.values()))
    cert = solve_idempotent(A, [A.basis_element("x")], reference=d)
    out.add("solver certificate verifies", cert.separable and all(verify_idempotent(A, cert.element).values()))
    out.add("solver denominators divide a power of d", bool(cert.denominators.divides_reference_power))
    e0 = e.map(lambda c: specialize(c, [("t", 0)]))
    out.add("t = 0 gives (1/3)(1x1 + x x x^2 + x^2 x x)", _classical_c3(A, e0))
    return out


def _denominator_divides(c, d):
    if not isinstance(c, Frac):
        return True
    return d.divides(c.den) or c.den.divides(d)


def test_criterion_1_c3_t_form(capsys):
    checks, s = _report(1, "C3 idempotent, t-form", criterion_1, 1, capsys)
    _assert(checks, s, 1)


# -- 2 ---------------------------------------------------------------------


def criterion_2():
    out = CheckList()
    A = s_form_algebra()
    s = Poly.var("s")
    e = c3_s_form_idempotent(A)
    out.add("closed form verifies", all(verify_idempotent(A, e).values()))
    delta = (s + 1) * (s - 3) ** 3
    out.add("closed form denominators divide (s+1)(s-3)^3", all(_denominator_divides(c, delta) for c in e.terms.values()))
    e0 = e.map(lambda c: specialize(c, [("s", 0)]))
    out.add("s = 0 gives the classical idempotent", _classical_c3(A, e0))
    return out


def test_criterion_2_c3_s_form(capsys):
    checks, s = _report(2, "C3 idempotent, s-form", criterion_2, 1, capsys)
    _assert(checks, s, 1)


# -- 3 ---------------------------------------------------------------------


def criterion_3():
    out = CheckList()
    t = Poly.var("t")
    out.add("disc(x^3 - t x - 1) = 4t^3 - 27", discriminant(cyclic_deformation(3).polynomial) == 4 * t**3 - 27)
    for c in s_form_report().checks:
        out.checks.append(c)
    for p, m in ((3, 1), (5, 1), (3, 2), (2, 1), (2, 2), (2, 3)):
        out.add("f(x) = (-x)^r f(1/x) for r = %d" % p**m, symmetry_identity(symmetric_polynomial(p, m)))
    return out


def test_criterion_3_discriminants(capsys):
    checks, s = _report(3, "discriminants and symmetric forms", criterion_3, 1, capsys)
    _assert(checks, s, 1)


# -- 4 ---------------------------------------------------------------------


def criterion_4():
    out = CheckList()
    rng = random.Random(SEED)
    q = Poly.var("q")
    n = 4
    G = hecke_algebra(n).group
    for i in range(1, n):
        s = Perm.transposition(n, i, i + 1)
        ok = True
        for w in G.elements:
            got = multiply_by_generator(i, hecke_basis(w))
            if coxeter_length(s * w) > coxeter_length(w):
                want = hecke_basis(s * w)
            else:
                want = hecke_basis(w) * (q - q**-1) + hecke_basis(s * w)
            ok = ok and got == want
        out.add("T_s%d T_w rule on H_4" % i, ok)
    els = G.elements
    assoc = True
    for _ in range(200):
        a, b, c = (hecke_basis(rng.choice(els)) for _ in range(3))
        assoc = assoc and hecke_multiply(hecke_multiply(a, b), c) == hecke_multiply(a, hecke_multiply(b, c))
    out.add("associative on 200 random triples in H_4", assoc)
    S3 = symmetric(3).enumerate()
    ZS3 = group_algebra(S3)
    entries = [
        specialize_q1(hecke_multiply(hecke_basis(v), hecke_basis(w)), ZS3) == ZS3.basis_element(v * w)
        for v in S3.elements
        for w in S3.elements
    ]
    out.add("q = 1 reproduces all 36 products in ZS_3", len(entries) == 36 and all(entries))
    for k in (2, 3):
        H = hecke_algebra(k)
        gens = [H.basis_element(Perm.transposition(k, i, i + 1)) for i in range(1, k)]
        cert = solve_idempotent(H, gens, reference=quantum_factorial(k, q**2), units=("q",))
        out.add("H_%d certified separable" % k, cert.separable and all(cert.flags.values()))
        out.add("H_%d denominators divide a power of %d_{q^2}!" % (k, k), bool(cert.denominators.divides_reference_power))
    return out


def test_criterion_4_hecke(capsys):
    checks, s = _report(4, "Hecke algebra rules and separability", criterion_4, 60, capsys)
    _assert(checks, s, 60)


# -- 5 ---------------------------------------------------------------------


def _random_matrix(M, rng):
    return M.element({b: rng.randint(-5, 5) for b in M.basis})


def criterion_5():
    out = CheckList()
    rng = random.Random(SEED)
    for n in range(1, 5):
        M = matrix_algebra(n)
        T = switch_element(n, algebra=M)
        out.add("T^2 = 1 (x) 1, n = %d" % n, T * T == tensor([M.one(), M.one()]))
        ok = True
        for _ in range(100):
            a, b = _random_matrix(M, rng), _random_matrix(M, rng)
            ok = ok and T * tensor([a, b]) * T == tensor([b, a])
        out.add("T (a (x) b) T = b (x) a, n = %d" % n, ok)
    for n in range(1, 4):
        M = matrix_algebra(n)
        T = switch_element(n, algebra=M)
        T12 = embed_tensor(T, [0, 1], 3)
        T23 = embed_tensor(T, [1, 2], 3)
        lhs = T12 * T23 * T12
        out.add("braid relation, n = %d" % n, lhs == T23 * T12 * T23)
        # sum_j x_j (x) 1 (x) y_j with T = sum_j x_j (x) y_j
        out.add("product is sum x_j (x) 1 (x) y_j, n = %d" % n, lhs == embed_tensor(T, [0, 2], 3))
    return out


def test_criterion_5_switch_element(capsys):
    checks, s = _report(5, "switch element", criterion_5, 10, capsys)
    _assert(checks, s, 10)


# -- 6 ---------------------------------------------------------------------


def criterion_6():
    R = wreath_c2_build()
    out = CheckList(list(R.checks.checks))
    A = R.algebra
    gens = [A.basis_element(x) for x in ("a⊗1", "1⊗a", "(1⊗1)σ")]
    cert = solve_idempotent(A, gens)
    out.add("final algebra certified separable over F2(t, v)", cert.separable and all(cert.flags.values()))
    return out


def test_criterion_6_wreath_c2_end_to_end(capsys):
    checks, s = _report(6, "C2 wr C2 deformation end to end", criterion_6, 10, capsys)
    _assert(checks, s, 10)


# -- 7 ---------------------------------------------------------------------


def criterion_7():
    out = CheckList()
    for n in range(1, 11):
        d = qbn_blocks(n, class_check=n <= 4)
        out.add("QB_%d total 2^n n!" % n, d.total == 2**n * math.factorial(n))
        if n <= 4:
            out.add("QB_%d blocks = conjugacy classes" % n, d.audit.get("classes_match") is True)
    return out


def test_criterion_7_qbn(capsys):
    checks, s = _report(7, "QB_n audits", criterion_7, 30, capsys)
    _assert(checks, s, 30)


# -- 8 ---------------------------------------------------------------------


def criterion_8():
    out = CheckList()
    d3 = qdn_blocks(3, class_check=True)
    out.add("QD_3 blocks {1,1,2,3,3}", d3.simple_blocks == [1, 1, 2, 3, 3])
    out.add("QD_3 blocks match QS_4", d3.simple_blocks == sorted(irreducible_dims(4)))
    d4 = qdn_blocks(4, class_check=True)
    out.add("QD_4 total 192", d4.total == 192)
    middle = [s for s in d4.summands if "wr" in s.label]
    out.add("QD_4 middle block 3^2 * 8 = 72", len(middle) == 1 and middle[0].matrix_size == 3 and middle[0].dimension == 72)
    d5 = qdn_blocks(5, class_check=True)
    out.add("QD_5 total 1920", d5.total == 1920)
    for n, d in ((3, d3), (4, d4), (5, d5)):
        out.add("QD_%d blocks = conjugacy classes" % n, d.audit.get("classes_match") is True)
    return out


def test_criterion_8_qdn(capsys):
    checks, s = _report(8, "QD_n audits", criterion_8, 120, capsys)
    _assert(checks, s, 120)


# -- 9 ---------------------------------------------------------------------


def criterion_9():
    out = CheckList()
    for n in range(2, 11):
        c = string_action_verify(n, enumerate_image=False)
        out.add("n = %d homomorphism" % n, c.homomorphism)
        out.add("n = %d faithful" % n, bool(c.faithful))
        rep = dn_orbit_data(n)
        sizes = orders = True
        for o in rep.orbits:
            m = o.zeros
            if o.middle:
                r = (n - 1) // 2
                sizes = sizes and o.size == math.comb(2 * r + 1, r)
                orders = orders and o.stabilizer_order == 2 * math.factorial(r + 1) ** 2
            else:
                sizes = sizes and o.size == math.comb(n + 1, m + 1)
                orders = orders and o.stabilizer_order == math.factorial(m + 1) * math.factorial(n - m)
        out.add("n = %d orbit sizes" % n, sizes)
        out.add("n = %d stabilizer orders" % n, orders)
        out.add("n = %d orbits cover all strings" % n, sum(o.size for o in rep.orbits) == 2**n)
    for r in (1, 2, 3):
        for c in middle_stabilizer_check(r).checks:
            out.add("r = %d: %s" % (r, c.name), c.passed)
    return out


def test_criterion_9_string_action(capsys):
    checks, s = _report(9, "string action of S_{n+1}", criterion_9, 30, capsys)
    _assert(checks, s, 30)


# -- 10 --------------------------------------------------------------------


def criterion_10():
    return CheckList(list(action_matrices().checks.checks))


def test_criterion_10_action_matrices(capsys):
    checks, s = _report(10, "deformed action matrices", criterion_10, 1, capsys)
    _assert(checks, s, 1)


# -- 11 --------------------------------------------------------------------


def criterion_11():
    out = CheckList()
    for r in (2, 3, 4):
        D = cyclic_deformation(r)
        A = D.algebra
        d = discriminant(D.polynomial)
        cert = solve_idempotent(A, [A.basis_element("x")], reference=d)
        out.add("r = %d certified over Q(t)" % r, cert.separable and all(cert.flags.values()))
        out.add("r = %d denominators divide a power of disc" % r, bool(cert.denominators.divides_reference_power))
        modp = mod_p_consistency(cert, [2, 3, 5], d)
        out.add("r = %d consistent mod 2, 3, 5" % r, all(v in (True, "skipped") for v in modp.values()), modp)
    return out


def test_criterion_11_cyclic_global(capsys):
    checks, s = _report(11, "cyclic global solutions", criterion_11, 10, capsys)
    _assert(checks, s, 10)


CRITERIA = [
    (1, "C3 idempotent, t-form", criterion_1, 1),
    (2, "C3 idempotent, s-form", criterion_2, 1),
    (3, "discriminants and symmetric forms", criterion_3, 1),
    (4, "Hecke algebra rules and separability", criterion_4, 60),
    (5, "switch element", criterion_5, 10),
    (6, "C2 wr C2 deformation end to end", criterion_6, 10),
    (7, "QB_n audits", criterion_7, 30),
    (8, "QD_n audits", criterion_8, 120),
    (9, "string action of S_{n+1}", criterion_9, 30),
    (10, "deformed action matrices", criterion_10, 1),
    (11, "cyclic global solutions", criterion_11, 10),
]


if __name__ == "__main__":
    failed = 0
    for k, title, fn, limit in CRITERIA:
        checks, s = _report(k, title, fn, limit)
        failed += not (checks.passed and s < limit)
    sys.exit(1 if failed else 0)
