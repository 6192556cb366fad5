"""Exact linear algebra over polynomial domains.

The workhorse is a sparse fraction-free Gauss-Jordan elimination (Bareiss
style): every intermediate entry stays in the polynomial ring and every
division is exact.  Rows that a step does not touch are rescaled lazily,
so each row carries the divisor it is currently normalized against.

A plain Gauss-Jordan over fractions is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .scalars import Frac, Poly, poly_gcd, poly_lcm, simplify
from .scalars.frac import as_frac

__all__ = [
    "Elimination",
    "SparseSystem",
    "fraction_free_rref",
    "solve",
    "nullspace",
    "det",
    "mat_inverse",
    "mat_inverse_naive",
    "solve_naive",
    "mat_mul",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_map",
    "kron",
    "identity",
    "permutation_matrix",
    "mat_equal",
    "mat_to_strings",
]


def _to_poly(x: Any, p: int) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly.const(x, p)


def _domain_p(values: Iterable[Any]) -> int:
    for v in values:
        if isinstance(v, (Poly, Frac)):
            return v.p
    return 0


def _clear_row(row: dict, p: int) -> dict:
    """Multiply a row by the lcm of its denominators."""
    return _clear_row_with_factor(row, p)[0]


def _clear_row_with_factor(row: dict, p: int) -> tuple[dict, Poly]:
    dens = [v.den for v in row.values() if isinstance(v, Frac) and not v.is_poly()]
    if not dens:
        return {j: _to_poly(simplify(v), p) for j, v in row.items()}, Poly.const(1, p)
    L = dens[0]
    for d in dens[1:]:
        L = poly_lcm(L, d)
    out = {}
    for j, v in row.items():
        f = as_frac(v, p)
        out[j] = f.num * L.exquo(f.den)
    return out, L


def _size(x: Poly) -> tuple:
    return (0 if x.is_unit() else 1,) + x.size()


@dataclass
class Elimination:
    """Result of fraction-free reduction.

    ``pivots`` maps a pivot column to its row; ``rows`` are in reduced
    echelon form up to a nonzero scalar per row.
    """

    rows: list[dict]
    pivots: dict[int, int]
    nvars: int
    pivot_value: Poly
    sign: int

    def rank(self) -> int:
        return len(self.pivots)

    def inconsistent_rows(self) -> list[int]:
        piv_rows = set(self.pivots.values())
        return [i for i, r in enumerate(self.rows) if i not in piv_rows and r]

    def free_columns(self) -> list[int]:
        return [c for c in range(self.nvars) if c not in self.pivots]


def fraction_free_rref(rows: Sequence[dict], nvars: int, p: int | None = None) -> Elimination:
    """Reduce sparse rows (column -> scalar) on columns ``0..nvars-1``.

    Columns at or beyond ``nvars`` are right-hand sides and are never pivots.
    """
    if p is None:
        p = _domain_p(v for r in rows for v in r.values())
    R = [_clear_row({j: v for j, v in r.items() if v}, p) for r in rows]
    R = [{j: v for j, v in r.items() if v} for r in R]
    one = Poly.const(1, p)
    d = [one] * len(R)
    cur = one
    pivots: dict[int, int] = {}
    used = set()
    # column -> rows containing it, maintained incrementally
    occ: dict[int, set] = {}
    for i, r in enumerate(R):
        for j in r:
            occ.setdefault(j, set()).add(i)
    order = []
    for c in range(nvars):
        cands = [i for i in occ.get(c, ()) if i not in used]
        if not cands:
            continue
        r = min(cands, key=lambda i: (_size(R[i][c]), len(R[i]), i))
        if d[r] != cur:
            R[r] = {j: (v * cur).exquo(d[r]) for j, v in R[r].items()}
            d[r] = cur
        prow = R[r]
        pv = prow[c]
        for i in list(occ.get(c, ())):
            if i == r:
                continue
            row = R[i]
            a = row[c]
            di = d[i]
            new = {}
            keys = set(row) | set(prow)
            for j in keys:
                x = row.get(j)
                y = prow.get(j)
                if x is None:
                    v = -(a * y)
                elif y is None:
                    v = pv * x
                else:
                    v = pv * x - a * y
                if v:
                    if not (di.is_constant() and di.constant_value() == 1):
                        v = v.exquo(di)
                    new[j] = v
            for j in row:
                if j not in new:
                    occ[j].discard(i)
            for j in new:
                if j not in row:
                    occ.setdefault(j, set()).add(i)
            R[i] = new
            d[i] = pv
        d[r] = pv
        cur = pv
        pivots[c] = r
        used.add(r)
        order.append(r)
    # sign of the row permutation chosen by the pivots
    perm = list(order)
    sign = 1
    seen = sorted(perm)
    ranks = {v: k for k, v in enumerate(seen)}
    arr = [ranks[v] for v in perm]
    for i in range(len(arr)):
        while arr[i] != i:
            j = arr[i]
            arr[i], arr[j] = arr[j], arr[i]
            sign = -sign
    return Elimination(R, pivots, nvars, cur, sign)


@dataclass
class SparseSystem:
    """Linear system ``A x = b`` with sparse rows over a polynomial ring or its fraction field."""

    nvars: int
    rows: list[dict] = field(default_factory=list)
    rhs: list[Any] = field(default_factory=list)

    def add(self, row: dict, b: Any = 0) -> None:
        self.rows.append({j: v for j, v in row.items() if v})
        self.rhs.append(b)

    def augmented(self) -> list[dict]:
        out = []
        for r, b in zip(self.rows, self.rhs):
            a = dict(r)
            if b:
                a[self.nvars] = b
            out.append(a)
        return out

    def dedupe(self) -> "SparseSystem":
        seen = set()
        out = SparseSystem(self.nvars)
        for r, b in zip(self.rows, self.rhs):
            if not r and not b:
                continue
            key = (tuple(sorted((j, str(v)) for j, v in r.items())), str(b))
            if key in seen:
                continue
            seen.add(key)
            out.add(r, b)
        return out


def solve(system: SparseSystem) -> list | None:
    """Particular solution with free unknowns zero, or None if inconsistent."""
    el = fraction_free_rref(system.augmented(), system.nvars)
    if el.inconsistent_rows():
        return None
    p = el.pivot_value.p
    x: list[Any] = [Poly.const(0, p)] * system.nvars
    for c, r in el.pivots.items():
        row = el.rows[r]
        b = row.get(system.nvars)
        if b:
            x[c] = simplify(Frac(b, row[c]))
    return x


def nullspace(rows: Sequence[dict], nvars: int) -> list[list[Poly]]:
    """Basis of the kernel, one primitive polynomial vector per free column."""
    el = fraction_free_rref(rows, nvars)
    p = el.pivot_value.p
    basis = []
    for f in el.free_columns():
        vec: list[Any] = [Poly.const(0, p)] * nvars
        vec[f] = Frac(Poly.const(1, p))
        for c, r in el.pivots.items():
            a = el.rows[r].get(f)
            if a:
                vec[c] = Frac(-a, el.rows[r][c])
        dens = [as_frac(v, p).den for v in vec if v]
        L = dens[0]
        for dd in dens[1:]:
            L = poly_lcm(L, dd)
        polys = [(as_frac(v, p) * L).num if v else Poly.const(0, p) for v in vec]
        g = None
        for v in polys:
            if v:
                g = v if g is None else poly_gcd(g, v)
        if g is not None and not g.is_unit():
            polys = [v.exquo(g) for v in polys]
        basis.append(polys)
    return basis


def _dense_rows(M: Sequence[Sequence[Any]]) -> list[dict]:
    return [{j: v for j, v in enumerate(row) if v} for row in M]


def det(M: Sequence[Sequence[Any]]) -> Any:
    """Determinant by fraction-free elimination (rows with fractions are cleared first)."""
    n = len(M)
    if n == 0:
        return 1
    p = _domain_p(v for r in M for v in r)
    scale = Poly.const(1, p)
    rows = []
    for r in M:
        cleared, L = _clear_row_with_factor({j: v for j, v in enumerate(r) if v}, p)
        scale = scale * L
        rows.append(cleared)
    el = fraction_free_rref(rows, n, p)
    if el.rank() < n:
        return simplify(Frac(Poly.const(0, p)))
    return simplify(Frac(el.pivot_value * el.sign, scale))


def mat_inverse(M: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Exact inverse via fraction-free reduction of ``[M | I]``."""
    n = len(M)
    p = _domain_p(v for r in M for v in r)
    rows = []
    for i, r in enumerate(M):
        row = {j: v for j, v in enumerate(r) if v}
        row[n + i] = Poly.const(1, p)
        rows.append(row)
    el = fraction_free_rref(rows, n, p)
    if el.rank() < n:
        raise ZeroDivisionError("singular matrix")
    out = [[None] * n for _ in range(n)]
    for c, r in el.pivots.items():
        row = el.rows[r]
        for k in range(n):
            v = row.get(n + k)
            out[c][k] = simplify(Frac(v, row[c])) if v else Poly.const(0, p)
    return out


def solve_naive(A: Sequence[Sequence[Any]], b: Sequence[Any]) -> list | None:
    """Gauss-Jordan over the fraction field (oracle); free unknowns set to zero."""
    p = _domain_p([v for r in A for v in r] + list(b))
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[as_frac(v, p) for v in row] + [as_frac(bv, p)] for row, bv in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if M[i][c]), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = M[r][c].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [v - f * w for v, w in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, m):
        if M[i][n]:
            return None
    x = [simplify(as_frac(0, p))] * n
    for i, c in enumerate(piv_cols):
        x[c] = simplify(M[i][n])
    return x


def mat_inverse_naive(M: Sequence[Sequence[Any]]) -> list[list[Any]]:
    n = len(M)
    p = _domain_p(v for r in M for v in r)
    cols = []
    for k in range(n):
        e = [Poly.const(1 if i == k else 0, p) for i in range(n)]
        x = solve_naive(M, e)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    return [[cols[k][i] for k in range(n)] for i in range(n)]


def identity(n: int, p: int = 0) -> list[list[Poly]]:
    return [[Poly.const(1 if i == j else 0, p) for j in range(n)] for i in range(n)]


def permutation_matrix(images: Sequence[int], p: int = 0) -> list[list[Poly]]:
    """Matrix sending basis vector j to basis vector images[j] (1-indexed images)."""
    n = len(images)
    M = [[Poly.const(0, p) for _ in range(n)] for _ in range(n)]
    for j, i in enumerate(images):
        M[i - 1][j] = Poly.const(1, p)
    return M


def mat_mul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> list[list[Any]]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc: Any = 0
            for t in range(k):
                a = A[i][t]
                if a:
                    b = B[t][j]
                    if b:
                        acc = acc + a * b
            row.append(simplify(acc) if not isinstance(acc, int) else Poly.const(acc, _domain_p([A[i][0]])))
        out.append(row)
    return out


def mat_add(A, B):
    return [[simplify(a + b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[simplify(a - b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[simplify(c * a) for a in row] for row in A]


def mat_map(fn, A):
    return [[fn(a) for a in row] for row in A]


def kron(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Kronecker product with the usual block layout A[i][j] * B."""
    n, m = len(A), len(A[0])
    r, s = len(B), len(B[0])
    return [
        [simplify(A[i][j] * B[k][l]) for j in range(m) for l in range(s)]
        for i in range(n)
        for k in range(r)
    ]


def mat_equal(A, B) -> bool:
    if len(A) != len(B):
        return False
    return all(len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_to_strings(A) -> list[list[str]]:
    return [[str(a) for a in row] for row in A]
