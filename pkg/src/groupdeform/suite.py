"""The end-to-end verification suite behind ``groupdeform verify all``.

Each entry returns a CheckList plus a small JSON payload.  Entries are run in
a fixed order; randomized checks draw from ``random.Random(seed)``.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra import embed_tensor, matrix_algebra, switch_element, tensor
from .blocks import dn_orbit_data, middle_stabilizer_check, matrix_unit_check, qbn_blocks, qdn_blocks, smash_decompose
from .checks import CheckList
from .deform import (
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
from .groups import Perm, coxeter_length, perm_group, symmetric, string_action_verify
from .hecke import (
    hecke_algebra,
    hecke_basis,
    hecke_multiply,
    multiply_by_generator,
    specialize_q1,
)
from .algebra import group_algebra
from .scalars import Poly, discriminant, quantum_factorial, specialize
from .separability import mod_p_consistency, solve_idempotent, verify_idempotent

__all__ = ["Report", "SUITE", "run_suite", "run_entry", "status_of"]

DEFAULT_SEED = 20240601


@dataclass
class Report:
    command: str
    status: str
    payload: Any = None
    seconds: float = 0.0
    checks: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "seconds": round(self.seconds, 3),
            "checks": self.checks,
            "payload": self.payload,
        }


def status_of(checks: CheckList) -> str:
    if checks.passed:
        return "pass"
    if any(c.passed for c in checks.checks):
        return "partial"
    return "fail"


# -- entries -------------------------------------------------------------------------


def cyclic_t_form(max_n: int, rng: random.Random):
    D = cyclic_deformation(3)
    A = D.algebra
    t = Poly.var("t")
    d = 4 * t**3 - 27
    out = CheckList()
    e = c3_t_form_idempotent(A)
    out.add("closed form verifies", all(verify_idempotent(A, e).values()))
    cert = solve_idempotent(A, [A.basis_element("x")], reference=d)
    out.add("solver certifies", cert.separable and all(cert.flags.values()))
    out.add("solver output equals the closed form", cert.element == e)
    out.add("denominator divides a power of 4t^3 - 27", bool(cert.denominators.divides_reference_power))
    e0 = e.map(lambda c: specialize(c, [("t", 0)]))
    out.add("t = 0 gives the classical idempotent", _c3_classical_match(A, e0))
    modp = mod_p_consistency(cert, [2, 3, 5], d)
    out.add("consistent modulo 2, 3, 5", all(v is True for v in modp.values()), {str(k): v for k, v in modp.items()})
    return out, {"idempotent": str(cert.element), "denominators": cert.denominators.to_json()}


def _c3_classical_match(A, e0) -> bool:
    """Compare with (1/3)(1(x)1 + x(x)x^2 + x^2(x)x) on the labels of A."""
    from fractions import Fraction

    want = {("1", "1"), ("x", "x^2"), ("x^2", "x")}
    got = {}
    for (i, j), c in e0.terms.items():
        got[(A.basis[i], A.basis[j])] = c
    return set(got) == want and all(_as_fraction(c) == Fraction(1, 3) for c in got.values())


def _as_fraction(c):
    from fractions import Fraction

    from .scalars import Frac

    if isinstance(c, Frac):
        return Fraction(c.num.constant_value()) / Fraction(c.den.constant_value())
    if isinstance(c, Poly):
        return Fraction(c.constant_value())
    return Fraction(c)


def cyclic_s_form(max_n: int, rng: random.Random):
    A = s_form_algebra()
    s = Poly.var("s")
    delta = (s + 1) * (s - 3) ** 3
    out = CheckList()
    e = c3_s_form_idempotent(A)
    out.add("closed form verifies", all(verify_idempotent(A, e).values()))
    cert = solve_idempotent(A, [A.basis_element("x")], reference=delta)
    out.add("solver output equals the closed form", cert.element == e)
    out.add("denominator divides a power of (s+1)(s-3)^3", bool(cert.denominators.divides_reference_power))
    e0 = e.map(lambda c: specialize(c, [("s", 0)]))
    out.add("s = 0 gives the classical idempotent", _c3_classical_match(A, e0))
    return out, {"denominators": cert.denominators.to_json()}


def discriminants(max_n: int, rng: random.Random):
    out = CheckList()
    t = Poly.var("t")
    f = cyclic_deformation(3).polynomial
    out.add("disc(x^3 - t x - 1) = 4t^3 - 27", discriminant(f) == 4 * t**3 - 27)
    for c in s_form_report().checks:
        out.checks.append(c)
    for p, m in ((3, 1), (5, 1), (3, 2), (2, 1), (2, 2), (2, 3)):
        r = p**m
        out.add("symmetry identity r = %d" % r, symmetry_identity(symmetric_polynomial(p, m)))
    return out, {}


def hecke_entry(max_n: int, rng: random.Random):
    out = CheckList()
    n = 4
    H = hecke_algebra(n)
    G = H.group
    q = Poly.var("q")
    rules = True
    for s_i in range(1, n):
        s = Perm.transposition(n, s_i, s_i + 1)
        for w in G.elements:
            got = multiply_by_generator(s_i, hecke_basis(w))
            if coxeter_length(s * w) > coxeter_length(w):
                want = hecke_basis(s * w)
            else:
                want = hecke_basis(w) * (q - q**-1) + hecke_basis(s * w)
            rules = rules and got == want
    out.add("generator rules on H_4", rules)
    els = G.elements
    assoc = True
    for _ in range(200):
        a, b, c = (hecke_basis(rng.choice(els)) for _ in range(3))
        assoc = assoc and hecke_multiply(hecke_multiply(a, b), c) == hecke_multiply(a, hecke_multiply(b, c))
    out.add("associativity on 200 random triples in H_4", assoc)
    S3 = symmetric(3).enumerate()
    ZS3 = group_algebra(S3)
    spec = all(
        specialize_q1(hecke_multiply(hecke_basis(v), hecke_basis(w)), ZS3) == ZS3.basis_element(v * w)
        for v in S3.elements
        for w in S3.elements
    )
    out.add("q = 1 reproduces the 36 products of ZS_3", spec)
    for k in (2, 3):
        Hk = hecke_algebra(k)
        gens = [Hk.basis_element(Perm.transposition(k, i, i + 1)) for i in range(1, k)]
        cert = solve_idempotent(Hk, gens, reference=quantum_factorial(k, q**2), units=("q",))
        out.add("H_%d certified separable" % k, cert.separable)
        out.add("H_%d denominators divide a power of %d_{q^2}!" % (k, k), bool(cert.denominators.divides_reference_power))
    return out, {}


def switch_entry(max_n: int, rng: random.Random):
    out = CheckList()
    for n in range(1, 5):
        M = matrix_algebra(n)
        T = switch_element(n, algebra=M)
        out.add("T^2 = 1 for n = %d" % n, T * T == tensor([M.one(), M.one()]))
        ok = True
        for _ in range(100):
            a = _random_matrix(M, rng)
            b = _random_matrix(M, rng)
            ok = ok and T * tensor([a, b]) * T == tensor([b, a])
        out.add("T (a x b) T = b x a for n = %d" % n, ok)
    for n in range(1, 4):
        M = matrix_algebra(n)
        T = switch_element(n, algebra=M)
        T12 = embed_tensor(T, [0, 1], 3)
        T23 = embed_tensor(T, [1, 2], 3)
        T13 = embed_tensor(T, [0, 2], 3)
        lhs = T12 * T23 * T12
        out.add("braid relation in M_%d^3" % n, lhs == T23 * T12 * T23 and lhs == T13)
    return out, {}


def _random_matrix(M, rng: random.Random):
    return M.element({b: rng.randint(-5, 5) for b in M.basis})


def wreath_c2_entry(max_n: int, rng: random.Random):
    R = wreath_c2_build()
    out = CheckList(list(R.checks.checks))
    A = R.algebra
    gens = [A.basis_element(x) for x in ("a⊗1", "1⊗a", "(1⊗1)σ")]
    cert = solve_idempotent(A, gens)
    out.add("final algebra certified separable over F2(t, v)", cert.separable)
    return out, {"substitution": "u = t^%d v" % R.exponent, "minimal_exponent": R.minimal_exponent}


def qbn_entry(max_n: int, rng: random.Random):
    out = CheckList()
    for n in range(1, max(max_n, 1) + 1):
        d = qbn_blocks(n, class_check=n <= 4)
        out.add("QB_%d total 2^n n!" % n, d.total == 2**n * math.factorial(n))
        if "classes_match" in d.audit:
            out.add("QB_%d blocks = classes" % n, d.audit["classes_match"])
    return out, {}


def qdn_entry(max_n: int, rng: random.Random):
    out = CheckList()
    for n in range(2, max(max_n, 3) + 1):
        d = qdn_blocks(n, class_check=n <= 5)
        out.add("QD_%d total 2^(n-1) n!" % n, d.total == 2 ** (n - 1) * math.factorial(n))
        if "classes_match" in d.audit:
            out.add("QD_%d blocks = classes" % n, d.audit["classes_match"])
        if n == 3:
            from .blocks import irreducible_dims

            out.add("QD_3 blocks match QS_4", d.simple_blocks == sorted(irreducible_dims(4)))
    return out, {}


def string_action_entry(max_n: int, rng: random.Random):
    out = CheckList()
    for n in range(2, max(max_n, 2) + 1):
        c = string_action_verify(n, enumerate_image=False)
        out.add("n = %d homomorphism and faithful" % n, c.homomorphism and bool(c.faithful))
        rep = dn_orbit_data(n)
        out.add("n = %d orbit and stabilizer data" % n, rep.passed)
    for r in range(1, min(max(max_n - 1, 1), 3) + 1):
        out.add("r = %d involution identities" % r, middle_stabilizer_check(r).passed)
    return out, {}


def action_matrices_entry(max_n: int, rng: random.Random):
    S = action_matrices()
    return CheckList(list(S.checks.checks)), {}


def cyclic_global(max_n: int, rng: random.Random):
    out = CheckList()
    for r in (2, 3, 4):
        D = cyclic_deformation(r)
        A = D.algebra
        d = discriminant(D.polynomial)
        cert = solve_idempotent(A, [A.basis_element("x")], reference=d)
        out.add("r = %d certified" % r, cert.separable)
        out.add("r = %d denominators divide a power of the discriminant" % r, bool(cert.denominators.divides_reference_power))
        modp = mod_p_consistency(cert, [2, 3, 5], d)
        out.add("r = %d consistent mod 2, 3, 5" % r, all(v in (True, "skipped") for v in modp.values()), {str(k): v for k, v in modp.items()})
    return out, {}


def witnesses_entry(max_n: int, rng: random.Random):
    out = CheckList()
    swap = perm_group(4, [Perm.from_cycles("(2,3)", 4)])
    d = smash_decompose(4, swap)
    out.add("swap on four idempotents: 2 + 2 + 4", sorted(s.dimension for s in d.summands) == [2, 2, 4])
    out.add("matrix units for I = (1,2)", matrix_unit_check((0, 1), symmetric(2), (1, 1)).passed)
    out.add("switch-element isotropy for I = (1,1)", matrix_unit_check((0, 0), symmetric(2), (2, 1)).passed)
    if max_n >= 3:
        out.add("matrix units for I = (1,1,2) in S_3", matrix_unit_check((0, 0, 1), symmetric(3), (2, 1)).passed)
    return out, {}


SUITE: list[tuple[str, Callable]] = [
    ("cyclic-t-form", cyclic_t_form),
    ("cyclic-s-form", cyclic_s_form),
    ("discriminants", discriminants),
    ("hecke", hecke_entry),
    ("switch-element", switch_entry),
    ("wreath-c2-deformation", wreath_c2_entry),
    ("qbn-blocks", qbn_entry),
    ("qdn-blocks", qdn_entry),
    ("string-action", string_action_entry),
    ("action-matrices", action_matrices_entry),
    ("cyclic-global", cyclic_global),
    ("block-witnesses", witnesses_entry),
]


def run_entry(name: str, fn: Callable, max_n: int, seed: int) -> Report:
    t0 = time.perf_counter()
    try:
        checks, payload = fn(max_n, random.Random(seed))
    except Exception as exc:  # an entry that crashes is a failed entry
        checks = CheckList()
        checks.add("completed", False, "%s: %s" % (type(exc).__name__, exc))
        payload = {}
    return Report(name, status_of(checks), payload, time.perf_counter() - t0, checks.to_json())


def run_suite(max_n: int = 3, seed: int = DEFAULT_SEED) -> list[Report]:
    return [run_entry(name, fn, max_n, seed) for name, fn in SUITE]
