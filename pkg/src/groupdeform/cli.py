"""Command-line front end.

Exit status: 0 when every check passes, 1 on a failed check, 2 for usage
errors (including unknown subcommands), 3 when a computation exceeds its
budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any

from .checks import CheckList
from .kernels import BudgetExceeded
from .suite import DEFAULT_SEED, Report, run_suite, status_of

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class SpecError(ValueError):
    pass

ALGEBRA_SPEC_HELP = """\
Algebra spec files are JSON objects:
  {"name": "C3 deformed",
   "basis": ["1", "x", "x^2"],
   "unit": {"1": "1"},
   "products": [{"left": "x", "right": "x", "product": {"x^2": "1"}}, ...],
   "generators": ["x"],            (optional, default: all basis elements)
   "characteristic": 0,            (optional prime p for F_p coefficients)
   "reference": "4*t^3 - 27",      (optional element to compare denominators with)
   "units": ["q"]}                 (optional Laurent variables)
Products not listed are zero; scalars are strings such as "t^2 - 1/3" or "q^-1".
"""


# -- output ---------------------------------------------------------------------------


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty():
        return text
    return "\033[%sm%s\033[0m" % (code, text)


def _badge(status: str) -> str:
    return _color(status.upper(), {"pass": "32", "fail": "31"}.get(status, "33"))


def _emit(reports: list[Report], fmt: str, text_body: str | None = None) -> None:
    if fmt == "json":
        doc = [r.to_json() for r in reports]
        print(json.dumps(doc[0] if len(doc) == 1 else doc, indent=2, default=str))
        return
    if text_body:
        print(text_body)
    for r in reports:
        print("%-24s %s  (%.2fs)" % (r.command, _badge(r.status), r.seconds))
        for c in r.checks:
            if not c["passed"] or len(reports) == 1:
                mark = "ok  " if c["passed"] else "FAIL"
                extra = "" if "detail" not in c else "  [%s]" % c["detail"]
                print("    %s %s%s" % (mark, c["name"], extra))


def _report(command: str, checks: CheckList, payload: Any, t0: float) -> Report:
    return Report(command, status_of(checks), payload, time.perf_counter() - t0, checks.to_json())


def format_idempotent(e) -> str:
    """``L^-1 [ c 1(x)1 + ... ]`` with L the common denominator."""
    from .scalars import simplify
    from .separability import _common_denominator

    L = _common_denominator(e)
    A, B = e.factors
    parts = []
    for (i, j), v in sorted(e.terms.items()):
        c = simplify(v * L)
        label = "%s⊗%s" % (A.basis[i], B.basis[j])
        s = str(c)
        if s == "1":
            parts.append(label)
        elif s == "-1":
            parts.append("-" + label)
        else:
            parts.append("(%s)*%s" % (s, label))
    body = " + ".join(parts) if parts else "0"
    if str(L) == "1":
        return body
    return "(%s)^-1 * [%s]" % (L, body)


# -- subcommands -------------------------------------------------------------------------


def cmd_decompose(args) -> tuple[list[Report], str]:
    from .blocks import qbn_blocks, qdn_blocks

    t0 = time.perf_counter()
    d = qbn_blocks(args.n) if args.family == "bn" else qdn_blocks(args.n)
    checks = CheckList()
    checks.add("dimension audit", d.total == d.expected_total, "%d = %d" % (d.total, d.expected_total))
    for key in ("blocks_match", "classes_match"):
        if key in d.audit:
            checks.add(key.replace("_", " "), d.audit[key])
    return [_report("decompose %s --n %d" % (args.family, args.n), checks, d.to_json(), t0)], d.table()


def _cyclic_target(args):
    from .deform import cyclic_deformation, split_cyclic_deformation, symmetric_dihedral_deformation, _prime_power

    if args.split:
        return split_cyclic_deformation(args.r), ()
    if args.symmetric:
        p, m = _prime_power(args.r)
        return symmetric_dihedral_deformation(p, m), ("q",)
    return cyclic_deformation(args.r), ()


def cmd_idempotent(args) -> tuple[list[Report], str]:
    from .scalars import discriminant
    from .separability import mod_p_consistency, solve_idempotent

    t0 = time.perf_counter()
    if args.kind == "cyclic":
        D, units = _cyclic_target(args)
        A = D.algebra
        ref = discriminant(D.polynomial)
        gens = [A.basis_element("x")]
        primes = [] if (args.split or args.symmetric) else [2, 3, 5]
        name = "idempotent cyclic --r %d%s" % (args.r, " --split" if args.split else " --symmetric" if args.symmetric else "")
    else:
        A, gens, ref, units = load_algebra_spec(args.spec)
        primes = []
        name = "idempotent algebra --spec %s" % args.spec
    cert = solve_idempotent(A, gens, budget=args.budget, reference=ref, units=units)
    checks = CheckList()
    if not cert.separable:
        checks.add("separability system is consistent", False)
        return [_report(name, checks, cert.to_json(), t0)], "no separability idempotent: %s is not separable" % A.name
    for k, v in cert.flags.items():
        checks.add("%s condition" % k, v)
    if ref is not None and cert.denominators is not None:
        checks.add("denominators divide a power of the reference", bool(cert.denominators.divides_reference_power))
    payload = cert.to_json()
    if primes:
        modp = mod_p_consistency(cert, primes, ref)
        checks.add("consistent modulo %s" % ", ".join(map(str, primes)), all(v in (True, "skipped") for v in modp.values()))
        payload["mod_p"] = {str(k): v for k, v in modp.items()}
    text = "algebra: %s\ne = %s" % (A.name, format_idempotent(cert.element))
    if cert.denominators is not None:
        den = cert.denominators
        text += "\ndenominator: %s" % den.lcm
        if den.factors:
            text += " = %s" % " * ".join("(%s)^%d" % (f, m) for f, m in den.factors)
    return [_report(name, checks, payload, t0)], text


def load_algebra_spec(path: str):
    """Read an algebra spec file; returns (algebra, generators, reference, units)."""
    from .algebra import structure_constant_algebra
    from .scalars import parse_scalar

    try:
        with open(path) as fh:
            spec = json.load(fh)
        p = int(spec.get("characteristic", 0))
        basis = list(spec["basis"])
        table = {}
        for entry in spec.get("products", []):
            table[(entry["left"], entry["right"])] = {k: parse_scalar(str(v), p) for k, v in entry["product"].items()}
        unit = {k: parse_scalar(str(v), p) for k, v in spec["unit"].items()}
        A = structure_constant_algebra(spec.get("name", os.path.basename(path)), basis, table, unit, p, check=True)
        gens = [A.basis_element(g) for g in spec["generators"]] if "generators" in spec else None
        ref = parse_scalar(spec["reference"], p) if "reference" in spec else None
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise SpecError("%s: %s" % (type(exc).__name__, exc)) from exc
    return A, gens, ref, tuple(spec.get("units", ()))


def cmd_hecke(args) -> tuple[list[Report], str]:
    from .hecke import hecke_basis, hecke_multiply, parse_word

    t0 = time.perf_counter()
    x = hecke_basis(parse_word(args.left, args.n))
    y = hecke_basis(parse_word(args.right, args.n))
    z = hecke_multiply(x, y)
    checks = CheckList()
    checks.add("product stays in H_%d" % args.n, all(w.n == args.n for w in z.terms))
    payload = {"left": x.to_json(), "right": y.to_json(), "product": z.to_json()}
    return [_report("hecke mul --n %d" % args.n, checks, payload, t0)], "%s * %s = %s" % (x, y, z)


def cmd_orbits(args) -> tuple[list[Report], str]:
    from .blocks import dn_orbit_data
    from .groups import string_action_verify

    t0 = time.perf_counter()
    cert = string_action_verify(args.n)
    rep = dn_orbit_data(args.n)
    checks = CheckList()
    checks.add("Coxeter relations hold on all strings", cert.homomorphism)
    checks.add("action is faithful", bool(cert.faithful))
    for c in rep.checks.checks:
        checks.checks.append(c)
    for o in rep.orbits:
        checks.add("orbit of %s: size %d, stabilizer %d" % (o.representative, o.size, o.stabilizer_order), o.passed)
    lines = ["S_%d on strings of length %d (0 = e, 1 = f)" % (args.n + 1, args.n)]
    for o in rep.orbits:
        lines.append(
            "  %s  size %4d  e's %d  stabilizer %-8d %s%s"
            % (o.representative, o.size, o.zeros, o.stabilizer_order, o.stabilizer_type, "  (middle)" if o.middle else "")
        )
    payload = rep.to_json()
    payload["image_order"] = cert.image_order
    return [_report("orbits --n %d" % args.n, checks, payload, t0)], "\n".join(lines)


def cmd_matrices(args) -> tuple[list[Report], str]:
    from .deform import action_matrices

    t0 = time.perf_counter()
    S = action_matrices()
    text = "Y =\n%s\nY^-1 =\n%s" % (_matrix_text(S.Y), _matrix_text(S.Yinv))
    return [_report("matrices %s" % args.which, S.checks, S.to_json(), t0)], text


def _matrix_text(M) -> str:
    rows = [[str(c) for c in r] for r in M]
    w = max(len(c) for r in rows for c in r)
    return "\n".join("  [" + "  ".join(c.rjust(w) for c in r) + "]" for r in rows)


def cmd_wreath_c2(args) -> tuple[list[Report], str]:
    from .deform import IntegralityError, wreath_c2_build
    from .separability import solve_idempotent

    t0 = time.perf_counter()
    try:
        R = wreath_c2_build(recipe=args.recipe, exponent=args.exponent)
    except IntegralityError as exc:
        checks = CheckList()
        checks.add("structure constants integral after u = t^%s v" % args.exponent, False, str(exc))
        return [_report("wreath-c2 --recipe %s" % args.recipe, checks, {}, t0)], str(exc)
    checks = CheckList(list(R.checks.checks))
    A = R.algebra
    if A.p:
        gens = [A.basis_element(x) for x in ("a⊗1", "1⊗a", "(1⊗1)σ")]
        cert = solve_idempotent(A, gens)
        checks.add("certified separable over the fraction field", cert.separable)
    text = "recipe %s, substitution u = t^%d v (minimal exponent %s)" % (R.recipe, R.exponent, R.minimal_exponent)
    return [_report("wreath-c2 --recipe %s" % args.recipe, checks, R.to_json(), t0)], text


def cmd_verify(args) -> tuple[list[Report], str]:
    reports = run_suite(max_n=args.max_n, seed=args.seed)
    n_pass = sum(r.status == "pass" for r in reports)
    return reports, "%d of %d suite entries pass" % (n_pass, len(reports))


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS, help="output format (default text)")

    ap = argparse.ArgumentParser(
        prog="groupdeform",
        description="Exact deformations of group algebras: decompositions, separability idempotents, checks.",
        parents=[common],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=ALGEBRA_SPEC_HELP,
    )
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("decompose", parents=[common], help="block decomposition of QB_n or QD_n")
    p.add_argument("family", choices=["bn", "dn"])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("idempotent", parents=[common], help="solve for a separability idempotent")
    p.add_argument("kind", choices=["cyclic", "algebra"])
    p.add_argument("--r", type=int, default=3)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--split", action="store_true", help="roots eta^i (1 + t)")
    g.add_argument("--symmetric", action="store_true", help="inversion-symmetric roots")
    p.add_argument("--spec", help="algebra spec JSON file (for 'algebra')")
    p.add_argument("--budget", type=int, default=2500, help="largest number of unknowns")
    p.set_defaults(func=cmd_idempotent)

    p = sub.add_parser("hecke", parents=[common], help="multiply in the Hecke algebra H_n(q)")
    p.add_argument("op", choices=["mul"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--left", required=True, help="word like 's1 s2' or cycles like '(1,3)'")
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("orbits", parents=[common], help="orbits of S_{n+1} on strings of e and f")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("matrices", parents=[common], help="action matrices for two tensor factors")
    # "section11" is kept as an alias of "action" for older scripts
    p.add_argument("which", choices=["action", "section11"])
    p.set_defaults(func=cmd_matrices)

    p = sub.add_parser("wreath-c2", aliases=["section3"], parents=[common], help="deformation of F2[C2 wr C2] through idempotents")
    p.add_argument("--recipe", choices=["shifted", "hecke"], default="shifted")
    p.add_argument("--exponent", type=int, default=None, help="use u = t^k v (default: minimal k)")
    p.set_defaults(func=cmd_wreath_c2)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("what", choices=["all"])
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    fmt = getattr(args, "format", "text")
    if args.command == "idempotent" and args.kind == "algebra" and not args.spec:
        ap.error("idempotent algebra needs --spec FILE")
    try:
        reports, text = args.func(args)
    except SpecError as exc:
        print("groupdeform: bad algebra spec: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        msg = {"command": args.command, "status": "budget exceeded", "detail": str(exc)}
        print(json.dumps(msg) if fmt == "json" else "budget exceeded: %s" % exc)
        return EXIT_BUDGET
    _emit(reports, fmt, text)
    return EXIT_PASS if all(r.status == "pass" for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
