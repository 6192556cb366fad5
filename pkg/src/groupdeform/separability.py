"""Separability idempotents by exact linear algebra.

An element e = sum c_ij b_i (x) b_j of A (x) A is a separability idempotent
when its multiplication image is 1 and (g (x) 1) e = e (1 (x) g) for a set
of algebra generators g.  Both conditions are linear in the c_ij, so the
unknowns are found by fraction-free elimination over the base ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .algebra import Algebra, AlgebraElement, TensorElement, _add_into
from .kernels import BudgetExceeded
from .linalg import SparseSystem, solve
from .scalars import (
    EvaluationAtPole,
    Frac,
    Poly,
    as_frac,
    normalize,
    poly_gcd,
    poly_lcm,
    simplify,
)

__all__ = [
    "SpanError",
    "SeparabilitySystem",
    "IdempotentCertificate",
    "Inconsistent",
    "DenominatorReport",
    "generated_span_rank",
    "build_system",
    "solve_idempotent",
    "verify_idempotent",
    "denominator_support",
    "coprime_base",
    "reduce_mod",
    "mod_p_consistency",
    "classical_idempotent",
    "idempotent_from_table",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 2500


class SpanError(ValueError):
    """The proposed generators do not generate the algebra."""


# -- generation check ------------------------------------------------------------


def _rank(vectors: list[dict], n: int) -> int:
    from .linalg import fraction_free_rref

    if not vectors:
        return 0
    return fraction_free_rref(vectors, n).rank()


def generated_span_rank(A: Algebra, generators: Sequence[AlgebraElement]) -> int:
    """Rank of the span of all words in the generators (including the empty word)."""
    n = A.dim
    basis: list[dict] = []
    frontier = [A.one()]
    rank = 0
    while frontier and rank < n:
        new_frontier = []
        for w in frontier:
            trial = basis + [dict(w.coeffs)]
            r = _rank(trial, n)
            if r > rank:
                basis.append(dict(w.coeffs))
                rank = r
                new_frontier.append(w)
        frontier = [w * g for w in new_frontier for g in generators]
    return rank


# -- the linear system -----------------------------------------------------------------


@dataclass
class SeparabilitySystem:
    algebra: Algebra
    generators: list
    system: SparseSystem
    row_count: int

    @property
    def nvars(self) -> int:
        return self.system.nvars


def build_system(A: Algebra, generators: Sequence[AlgebraElement]) -> SeparabilitySystem:
    """Rows: multiplication to 1 (dim A rows), then dim A^2 centrality rows per generator."""
    n = A.dim
    nv = n * n
    sysm = SparseSystem(nv)
    p = A.p
    # sum c_ij b_i b_j = 1
    mu_rows: list[dict] = [{} for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in A.mul_basis(i, j).items():
                _add_into(mu_rows[k], i * n + j, c)
    for k in range(n):
        sysm.add(mu_rows[k], A.unit.get(k, Poly.const(0, p)))
    for g in generators:
        left = [A.mul_coeffs(g.coeffs, {i: Poly.const(1, p)}) for i in range(n)]
        right = [A.mul_coeffs({j: Poly.const(1, p)}, g.coeffs) for j in range(n)]
        rows: list[dict] = [{} for _ in range(nv)]
        for i in range(n):
            for j in range(n):
                col = i * n + j
                for k, c in left[i].items():
                    _add_into(rows[k * n + j], col, c)
                for l, c in right[j].items():
                    _add_into(rows[i * n + l], col, -c)
        for r in rows:
            sysm.add(r, 0)
    return SeparabilitySystem(A, list(generators), sysm, len(sysm.rows))


# -- certificates -------------------------------------------------------------------------


@dataclass
class DenominatorReport:
    lcm: Any
    factors: list
    constant: Any = 1
    reference: Any = None
    divides_reference_power: bool | None = None
    exponent: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "lcm": str(self.lcm),
            "factors": [{"factor": str(f), "multiplicity": m} for f, m in self.factors],
            "constant": str(self.constant),
            "reference": None if self.reference is None else str(self.reference),
            "divides_reference_power": self.divides_reference_power,
            "exponent": self.exponent,
            "note": self.note,
        }


@dataclass
class IdempotentCertificate:
    algebra: Algebra
    element: TensorElement
    flags: dict
    row_count: int
    denominators: DenominatorReport | None = None
    separable: bool = True

    def to_json(self) -> dict:
        return {
            "separable": True,
            "algebra": self.algebra.name,
            "dimension": self.algebra.dim,
            "system_rows": self.row_count,
            "idempotent": self.element.to_json(),
            "flags": dict(self.flags),
            "denominators": None if self.denominators is None else self.denominators.to_json(),
        }

    def __str__(self) -> str:
        return str(self.element)


@dataclass
class Inconsistent:
    """The separability system has no solution: the algebra is not separable."""

    algebra: Algebra
    row_count: int
    separable: bool = False

    def to_json(self) -> dict:
        return {"separable": False, "algebra": self.algebra.name, "system_rows": self.row_count}


def solve_idempotent(
    A: Algebra,
    generators: Sequence[AlgebraElement] | None = None,
    budget: int = DEFAULT_BUDGET,
    reference: Any = None,
    units: Iterable[str] = (),
    check_span: bool = True,
) -> IdempotentCertificate | Inconsistent:
    """Solve for a separability idempotent of A over the fraction field of its base ring."""
    if A.dim * A.dim > budget:
        raise BudgetExceeded("%d unknowns exceed the budget of %d" % (A.dim * A.dim, budget))
    gens = list(generators) if generators is not None else [A.gen(i) for i in range(A.dim)]
    if check_span and generated_span_rank(A, gens) < A.dim:
        raise SpanError("generators span a proper subalgebra of %s" % A.name)
    S = build_system(A, gens)
    x = solve(S.system.dedupe())
    if x is None:
        return Inconsistent(A, S.row_count)
    n = A.dim
    terms = {(k // n, k % n): v for k, v in enumerate(x) if v}
    e = TensorElement((A, A), terms)
    flags = verify_idempotent(A, e)
    if not all(flags.values()):
        raise ArithmeticError("solver output failed verification: %s" % flags)
    cert = IdempotentCertificate(A, e, flags, S.row_count)
    cert.denominators = denominator_support(cert, reference, units)
    return cert


def _common_denominator(e: TensorElement) -> Poly:
    p = e.p
    L = Poly.const(1, p)
    for v in e.terms.values():
        if isinstance(v, Frac):
            L = poly_lcm(L, v.den)
    return L


def _scaled(e: TensorElement, L: Poly) -> TensorElement:
    out = {}
    for k, v in e.terms.items():
        w = simplify(v * L)
        if isinstance(w, Frac):
            raise ArithmeticError("denominator does not clear")
        out[k] = w
    return TensorElement(e.factors, out)


def verify_idempotent(A: Algebra, e: TensorElement) -> dict:
    """Flags: multiplication gives 1, a e = e a for every basis a, and e e = e in A (x) A^op."""
    L = _common_denominator(e)
    E = _scaled(e, L)
    unit = E.multiply_out() == A.one() * L
    central = True
    for i in range(A.dim):
        a = A.gen(i)
        if E.left(a, 0) != E.right(a, 1):
            central = False
            break
    idem = E.mul_op(E) == E.scale(L)
    return {"unit": unit, "centrality": central, "idempotency": idem}


# -- denominators ---------------------------------------------------------------------------


def _is_unit_factor(f: Poly, units: set) -> bool:
    if f.is_constant():
        return True
    if f.is_monomial():
        return all(g in units for g, k in zip(f.gens, next(iter(f.terms))) if k)
    return False


def _split_units(f: Poly, units: set) -> tuple[list, Any]:
    """Non-unit pieces of f: the monomial part in non-unit variables, and the primitive rest."""
    pieces = []
    exps, rest = f.monomial_content()
    for g, k in exps.items():
        if k and g not in units:
            pieces.extend([Poly.var(g, f.p)] * k)
    const: Any = 1
    if not f.p and not rest.is_constant():
        c = rest.content()
        if c not in (0, 1):
            rest = rest.exquo(Poly.const(c))
            const = c
    if rest.is_constant():
        const = rest.constant_value() if not f.p else 1
    else:
        pieces.append(normalize(rest))
    return pieces, const


def coprime_base(polys: Iterable[Poly]) -> list[Poly]:
    """Pairwise coprime non-unit polynomials whose products give every input (up to units)."""
    base = [g for g in (normalize(f) for f in polys if f) if not g.is_constant()]
    changed = True
    while changed:
        changed = False
        # deduplicate
        uniq = []
        for f in base:
            if not any(f == g for g in uniq):
                uniq.append(f)
        base = uniq
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = normalize(poly_gcd(base[i], base[j]))
                if not g.is_constant():
                    a, b = base[i].exquo(g), base[j].exquo(g)
                    rest = [f for k, f in enumerate(base) if k not in (i, j)]
                    base = rest + [normalize(x) for x in (a, g, b) if not x.is_constant()]
                    changed = True
                    break
            if changed:
                break
    return sorted(base, key=lambda f: (f.size(), str(f)))


def _multiplicity(b: Poly, f: Poly) -> tuple[int, Poly]:
    m = 0
    while not f.is_constant() and b.divides(f):
        f = f.exquo(b)
        m += 1
    return m, f


def denominator_support(
    cert: IdempotentCertificate | TensorElement,
    reference: Any = None,
    units: Iterable[str] = (),
) -> DenominatorReport:
    """Least common denominator, factored over a coprime base shared with ``reference``.

    Integer constants count as units (the comparison is over the fraction
    field of Q[...]); variables listed in ``units`` are Laurent variables.
    """
    e = cert.element if isinstance(cert, IdempotentCertificate) else cert
    units = set(units)
    L = _common_denominator(e)
    try:
        pieces, const = _split_units(L, units)
        ref_pieces: list = []
        if reference is not None:
            ref = reference if isinstance(reference, Poly) else Poly.const(reference, e.p)
            ref_pieces, _ = _split_units(ref, units)
        base = coprime_base(pieces + ref_pieces)
    except (TypeError, ArithmeticError, NotImplementedError) as exc:  # gcd over an unsupported coefficient ring
        report = DenominatorReport(L, [], None, reference, None, None, "unfactored: %s" % exc)
        if reference is not None:
            report.exponent = _power_dividing(L, reference)
            report.divides_reference_power = report.exponent is not None
        return report
    factors = []
    for b in base:
        m = _count(b, pieces)
        if m:
            factors.append((b, m))
    report = DenominatorReport(L, factors, const, reference)
    if reference is not None:
        k = 0
        ok = True
        for b, m in factors:
            r = _count(b, ref_pieces)
            if r == 0:
                ok = False
                break
            k = max(k, -(-m // r))
        report.divides_reference_power = ok
        report.exponent = k if ok else None
    return report


def _power_dividing(L: Poly, ref: Poly, max_power: int | None = None) -> int | None:
    """Smallest k with L | ref^k up to a Laurent monomial, by exact division."""
    mono, core = L.monomial_content()
    k_max = max_power or max(1, sum(core.degree(g) - core.min_degree(g) for g in core.gens) + 1)
    power = ref
    for k in range(1, k_max + 1):
        if core.divides(power):
            return k
        power = power * ref
    return None


def _count(b: Poly, pieces: list) -> int:
    total = 0
    for f in pieces:
        m, _ = _multiplicity(b, f)
        total += m
    return total


# -- reduction modulo primes --------------------------------------------------------------


def _mod_scalar(c: Any, p: int) -> Any:
    if isinstance(c, Frac):
        den = c.den.mod(p)
        if not den:
            raise EvaluationAtPole("denominator %s vanishes modulo %d" % (c.den, p))
        return simplify(Frac(c.num.mod(p), den))
    if isinstance(c, Poly):
        return c.mod(p)
    return Poly.const(c, p)


def reduce_mod(A: Algebra, p: int) -> Algebra:
    return A.map_scalars(lambda c: _mod_scalar(c, p), name="%s mod %d" % (A.name, p), p=p, check=False)


def mod_p_consistency(cert: IdempotentCertificate, primes: Sequence[int], reference: Any = None) -> dict:
    """For each prime: 'skipped' when the reference vanishes mod p, else whether e mod p verifies."""
    out = {}
    for p in primes:
        if reference is not None and not _mod_scalar(reference, p):
            out[p] = "skipped"
            continue
        Ap = reduce_mod(cert.algebra, p)
        try:
            terms = {k: _mod_scalar(v, p) for k, v in cert.element.terms.items()}
        except EvaluationAtPole:
            out[p] = False
            continue
        ep = TensorElement((Ap, Ap), terms)
        out[p] = all(verify_idempotent(Ap, ep).values())
    return out


# -- known idempotents ------------------------------------------------------------------------


def classical_idempotent(A: Algebra) -> TensorElement:
    """(1/|G|) sum g (x) g^-1 for a group algebra built by group_algebra."""
    fg = A.group
    n = len(fg.elements)
    inv = fg.inverse_index
    c = Frac(Poly.const(1), Poly.const(n)) if not A.p else Poly.const(pow(n, -1, A.p), A.p)
    return TensorElement((A, A), {(i, int(inv[i])): c for i in range(n)})


def idempotent_from_table(A: Algebra, table: dict, scale: Any = 1) -> TensorElement:
    """Tensor from {(label_i, label_j): scalar}, all multiplied by ``scale``."""
    terms: dict = {}
    for (a, b), v in table.items():
        _add_into(terms, (A.index[a], A.index[b]), simplify(v * scale) if not isinstance(v, int) else simplify(Poly.const(v, A.p) * scale))
    return TensorElement((A, A), terms)
