"""Finite-dimensional algebras given by a basis and a product rule.

An :class:`Algebra` knows how to multiply two basis elements (returning a
sparse combination), caches those products, and exposes its unit.  Elements
and tensors are sparse maps to exact scalars.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Sequence

from .scalars import Frac, Poly, UniPoly, simplify
from .linalg import nullspace

__all__ = [
    "Algebra",
    "AlgebraElement",
    "TensorElement",
    "AlgebraMismatch",
    "group_algebra",
    "matrix_algebra",
    "quotient_algebra",
    "structure_constant_algebra",
    "tensor_product_algebra",
    "center_basis",
    "switch_element",
    "reduced_trace",
    "tensor",
    "embed_tensor",
    "scalar",
]


class AlgebraMismatch(ValueError):
    """Operands belong to different algebras."""


def scalar(x: Any, p: int = 0) -> Any:
    """Coerce an int into the polynomial ring; simplify fractions with unit denominator."""
    if isinstance(x, int):
        return Poly.const(x, p)
    return simplify(x)


def _add_into(acc: dict, k: Any, v: Any) -> None:
    if not v:
        return
    cur = acc.get(k)
    if cur is None:
        acc[k] = v
    else:
        s = cur + v
        if s:
            acc[k] = simplify(s) if isinstance(s, Frac) else s
        else:
            del acc[k]


class Algebra:
    """Free module on ``basis`` with bilinear product ``rule(i, j) -> {k: scalar}`` on indices."""

    def __init__(
        self,
        name: str,
        basis: Sequence[Hashable],
        rule: Callable[[int, int], dict],
        unit: dict,
        p: int = 0,
        check: bool | None = None,
    ):
        self.name = name
        self.basis = list(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.p = p
        self._rule = rule
        self._cache: dict[tuple[int, int], dict] = {}
        self.unit = {k: scalar(v, p) for k, v in unit.items() if v}
        if check is None:
            check = self.dim <= 64
        if check:
            if not self.check_unit():
                raise ValueError("%s: unit is not a two-sided identity" % name)
            if not self.check_associativity():
                raise ValueError("%s: product is not associative" % name)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def mul_basis(self, i: int, j: int) -> dict:
        key = (i, j)
        res = self._cache.get(key)
        if res is None:
            res = {k: scalar(v, self.p) for k, v in self._rule(i, j).items() if v}
            self._cache[key] = res
        return res

    # -- elements -------------------------------------------------------------

    def element(self, coeffs: dict) -> "AlgebraElement":
        """Element from a map basis label -> scalar."""
        out: dict = {}
        for b, v in coeffs.items():
            _add_into(out, self.index[b], scalar(v, self.p))
        return AlgebraElement(self, out)

    def from_indices(self, coeffs: dict) -> "AlgebraElement":
        return AlgebraElement(self, {k: scalar(v, self.p) for k, v in coeffs.items() if v})

    def basis_element(self, label: Hashable) -> "AlgebraElement":
        return AlgebraElement(self, {self.index[label]: Poly.const(1, self.p)})

    def gen(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {i: Poly.const(1, self.p)})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, dict(self.unit))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def mul_coeffs(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, c in self.mul_basis(i, j).items():
                    _add_into(out, k, ab * c)
        return out

    # -- checks -----------------------------------------------------------------

    def check_unit(self) -> bool:
        u = self.unit
        for i in range(self.dim):
            e = {i: Poly.const(1, self.p)}
            if self.mul_coeffs(u, e) != e or self.mul_coeffs(e, u) != e:
                return False
        return True

    def check_associativity(self, samples: int | None = None, seed: int = 0) -> bool:
        """All basis triples, or ``samples`` random ones."""
        n = self.dim
        if samples is None:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]
        for i, j, k in triples:
            left = self.mul_coeffs(self.mul_basis(i, j), {k: Poly.const(1, self.p)})
            right = self.mul_coeffs({i: Poly.const(1, self.p)}, self.mul_basis(j, k))
            if left != right:
                return False
        return True

    def structure_constants(self) -> dict:
        return {(i, j): self.mul_basis(i, j) for i in range(self.dim) for j in range(self.dim)}

    def map_scalars(self, fn: Callable[[Any], Any], name: str | None = None, p: int | None = None, check: bool | None = None) -> "Algebra":
        """Algebra with structure constants and unit transformed by a ring morphism."""
        table = {key: {k: fn(v) for k, v in val.items()} for key, val in self.structure_constants().items()}
        unit = {k: fn(v) for k, v in self.unit.items()}
        newp = self.p if p is None else p
        return Algebra(
            name or self.name,
            self.basis,
            lambda i, j: table[(i, j)],
            unit,
            newp,
            check=check,
        )

    def __repr__(self) -> str:
        return "Algebra(%s, dim=%d)" % (self.name, self.dim)


@dataclass(frozen=True)
class AlgebraElement:
    algebra: Algebra
    coeffs: dict

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements of %s and %s" % (self.algebra.name, other.algebra.name))

    def __add__(self, other: Any) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            other = self.algebra.one() * other
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _add_into(out, k, v)
        return AlgebraElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: Any) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            other = self.algebra.one() * other
        return self + (-other)

    def __rsub__(self, other: Any) -> "AlgebraElement":
        return (-self) + other

    def __mul__(self, other: Any) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.mul_coeffs(self.coeffs, other.coeffs))
        c = scalar(other, self.algebra.p)
        out = {}
        for k, v in self.coeffs.items():
            w = v * c
            if w:
                out[k] = simplify(w)
        return AlgebraElement(self.algebra, out)

    def __rmul__(self, other: Any) -> "AlgebraElement":
        return self * other

    def __pow__(self, n: int) -> "AlgebraElement":
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, AlgebraElement):
            return self.algebra is other.algebra and self.coeffs == other.coeffs
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, label: Hashable) -> Any:
        return self.coeffs.get(self.algebra.index[label], Poly.const(0, self.algebra.p))

    def by_label(self) -> dict:
        return {self.algebra.basis[k]: v for k, v in sorted(self.coeffs.items())}

    def map(self, fn: Callable[[Any], Any], algebra: Algebra | None = None) -> "AlgebraElement":
        A = algebra or self.algebra
        out = {}
        for k, v in self.coeffs.items():
            w = fn(v)
            if w:
                out[k] = scalar(w, A.p)
        return AlgebraElement(A, out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in sorted(self.coeffs.items()):
            label = _label_str(self.algebra.basis[k])
            s = str(v)
            if s == "1":
                parts.append(label)
            elif s == "-1":
                parts.append("-" + label)
            else:
                parts.append("(%s)*%s" % (s, label))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [{"basis": _label_str(self.algebra.basis[k]), "scalar": str(v)} for k, v in sorted(self.coeffs.items())]


def _label_str(b: Any) -> str:
    if isinstance(b, tuple):
        return "e" + "".join(str(x) for x in b) if all(isinstance(x, int) for x in b) else str(b)
    return str(b)


class TensorElement:
    """Sparse element of ``A_1 (x) ... (x) A_n`` keyed by tuples of basis indices."""

    __slots__ = ("factors", "terms")

    def __init__(self, factors: Sequence[Algebra], terms: dict):
        self.factors = tuple(factors)
        self.terms = {k: v for k, v in terms.items() if v}

    @property
    def p(self) -> int:
        return self.factors[0].p

    @classmethod
    def one(cls, factors: Sequence[Algebra]) -> "TensorElement":
        terms: dict = {(): Poly.const(1, factors[0].p)}
        for A in factors:
            new: dict = {}
            for key, v in terms.items():
                for k, u in A.unit.items():
                    _add_into(new, key + (k,), v * u)
            terms = new
        return cls(factors, terms)

    def _check(self, other: "TensorElement") -> None:
        if len(self.factors) != len(other.factors) or any(a is not b for a, b in zip(self.factors, other.factors)):
            raise AlgebraMismatch("tensors over different algebras")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return TensorElement(self.factors, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.factors, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c: Any) -> "TensorElement":
        c = scalar(c, self.p)
        return TensorElement(self.factors, {k: simplify(v * c) for k, v in self.terms.items()})

    def _mul(self, other: "TensorElement", opposite: Sequence[bool]) -> "TensorElement":
        self._check(other)
        out: dict = {}
        factors = self.factors
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                # basis products first; coefficients only for surviving terms
                prods = []
                for pos, (A, i, j) in enumerate(zip(factors, k1, k2)):
                    prod = A.mul_basis(j, i) if opposite[pos] else A.mul_basis(i, j)
                    if not prod:
                        break
                    prods.append(prod)
                else:
                    v = v1 * v2
                    for combo in itertools.product(*(p.items() for p in prods)):
                        c = v
                        for _, w in combo:
                            if not (isinstance(w, Poly) and w.is_one()):
                                c = c * w
                        _add_into(out, tuple(k for k, _ in combo), c)
        return TensorElement(self.factors, out)

    def __mul__(self, other: Any) -> "TensorElement":
        if isinstance(other, TensorElement):
            return self._mul(other, [False] * len(self.factors))
        return self.scale(other)

    def __rmul__(self, other: Any) -> "TensorElement":
        return self.scale(other)

    def mul_op(self, other: "TensorElement") -> "TensorElement":
        """Product in A (x) A^op: the second factor multiplies in reverse order."""
        return self._mul(other, [False] + [True] * (len(self.factors) - 1))

    def left(self, a: AlgebraElement, position: int = 0) -> "TensorElement":
        """Multiply factor ``position`` on the left by ``a``."""
        return self._act(a, position, True)

    def right(self, a: AlgebraElement, position: int = -1) -> "TensorElement":
        """Multiply factor ``position`` on the right by ``a``."""
        return self._act(a, position % len(self.factors), False)

    def _act(self, a: AlgebraElement, position: int, on_left: bool) -> "TensorElement":
        A = self.factors[position]
        if a.algebra is not A:
            raise AlgebraMismatch("element not in tensor factor")
        out: dict = {}
        for key, v in self.terms.items():
            i = key[position]
            for j, c in a.coeffs.items():
                prod = A.mul_basis(j, i) if on_left else A.mul_basis(i, j)
                for k, w in prod.items():
                    _add_into(out, key[:position] + (k,) + key[position + 1 :], v * c * w)
        return TensorElement(self.factors, out)

    def multiply_out(self) -> AlgebraElement:
        """The multiplication map x_1 (x) ... (x) x_n -> x_1 ... x_n (equal factors)."""
        A = self.factors[0]
        if any(B is not A for B in self.factors):
            raise AlgebraMismatch("multiplication needs equal factors")
        acc = A.zero()
        for key, v in self.terms.items():
            partial = {key[0]: v}
            for i in key[1:]:
                partial = A.mul_coeffs(partial, {i: Poly.const(1, A.p)})
            acc = acc + AlgebraElement(A, partial)
        return acc

    def map(self, fn: Callable[[Any], Any], factors: Sequence[Algebra] | None = None) -> "TensorElement":
        F = tuple(factors) if factors is not None else self.factors
        out = {}
        for k, v in self.terms.items():
            w = fn(v)
            if w:
                out[k] = scalar(w, F[0].p)
        return TensorElement(F, out)

    def permute(self, order: Sequence[int]) -> "TensorElement":
        """Reorder tensor factors: new factor k is old factor order[k]."""
        return TensorElement(
            [self.factors[o] for o in order],
            {tuple(k[o] for o in order): v for k, v in self.terms.items()},
        )

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            len(self.factors) == len(other.factors)
            and all(a is b for a, b in zip(self.factors, other.factors))
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def by_label(self) -> dict:
        return {tuple(A.basis[i] for A, i in zip(self.factors, k)): v for k, v in sorted(self.terms.items())}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            label = "⊗".join(_label_str(A.basis[i]) for A, i in zip(self.factors, k))
            s = str(v)
            parts.append(label if s == "1" else "(%s)*%s" % (s, label))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            {"basis": [_label_str(A.basis[i]) for A, i in zip(self.factors, k)], "scalar": str(v)}
            for k, v in sorted(self.terms.items())
        ]


# -- constructors ---------------------------------------------------------------------


def structure_constant_algebra(
    name: str,
    basis: Sequence[Hashable],
    table: dict,
    unit: dict,
    p: int = 0,
    check: bool | None = None,
) -> Algebra:
    """Algebra from constants ``table[(b1, b2)] = {b3: scalar}`` keyed by labels."""
    idx = {b: i for i, b in enumerate(basis)}
    itable = {}
    for (b1, b2), val in table.items():
        itable[(idx[b1], idx[b2])] = {idx[k]: v for k, v in val.items()}
    return Algebra(
        name,
        basis,
        lambda i, j: itable.get((i, j), {}),
        {idx[b]: v for b, v in unit.items()},
        p,
        check=check,
    )


def group_algebra(G, p: int = 0, check: bool | None = None) -> Algebra:
    """Group algebra over Z (or F_p) on the enumerated elements of G."""
    from .groups import FiniteGroup

    fg = G if isinstance(G, FiniteGroup) else G.enumerate()
    table = fg.table
    one = Poly.const(1, p)
    A = Algebra(
        "%s[%s]" % ("F_%d" % p if p else "Z", fg.descriptor),
        fg.elements,
        lambda i, j: {int(table[i, j]): one},
        {0: one},
        p,
        check=False,
    )
    if check or (check is None and A.dim <= 64):
        from .kernels import is_associative

        if not is_associative(table):
            raise ValueError("group table is not associative")
    A.group = fg
    return A


def matrix_algebra(n: int, p: int = 0) -> Algebra:
    """M_n with basis e_ij labelled (i, j), 1-indexed."""
    basis = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    one = Poly.const(1, p)

    def rule(a: int, b: int) -> dict:
        i, j = divmod(a, n)
        k, l = divmod(b, n)
        return {i * n + l: one} if j == k else {}

    unit = {i * n + i: one for i in range(n)}
    return Algebra("M_%d" % n, basis, rule, unit, p, check=n <= 3)


def quotient_algebra(
    f: UniPoly, name: str | None = None, p: int | None = None, check: bool | None = None
) -> Algebra:
    """k[x]/(f) for monic f, basis labelled "1", "x", ..., "x^(d-1)"."""
    d = f.degree
    if d < 1:
        raise ValueError("need degree >= 1")
    coeffs = [scalar(c, p or 0) for c in f.coeffs]
    if coeffs[-1] != 1:
        raise ValueError("quotient needs a monic polynomial")
    if p is None:
        p = coeffs[0].p if isinstance(coeffs[0], (Poly, Frac)) else 0
    # reduction of x^k for k < 2d - 1
    powers: list[dict] = [{k: Poly.const(1, p)} for k in range(d)]
    tail = {k: -coeffs[k] for k in range(d) if coeffs[k]}
    powers.append(dict(tail))
    for k in range(d + 1, 2 * d - 1):
        prev = powers[-1]
        nxt: dict = {}
        for e, c in prev.items():
            if e + 1 < d:
                _add_into(nxt, e + 1, c)
            else:
                for e2, c2 in tail.items():
                    _add_into(nxt, e2, c * c2)
        powers.append(nxt)
    labels = ["1", f.var] + ["%s^%d" % (f.var, k) for k in range(2, d)]
    return Algebra(
        name or "[%s]/(%s)" % (f.var, f),
        labels[:d],
        lambda i, j: powers[i + j],
        {0: Poly.const(1, p)},
        p,
        check=check,
    )


def tensor_product_algebra(A: Algebra, B: Algebra, name: str | None = None) -> Algebra:
    """Flattened A (x) B with basis pairs (a, b); meant for small dimensions."""
    nb = B.dim
    basis = [(a, b) for a in A.basis for b in B.basis]

    def rule(x: int, y: int) -> dict:
        i1, j1 = divmod(x, nb)
        i2, j2 = divmod(y, nb)
        out: dict = {}
        for k, c in A.mul_basis(i1, i2).items():
            for l, e in B.mul_basis(j1, j2).items():
                _add_into(out, k * nb + l, c * e)
        return out

    unit: dict = {}
    for k, c in A.unit.items():
        for l, e in B.unit.items():
            _add_into(unit, k * nb + l, c * e)
    return Algebra(name or "%s⊗%s" % (A.name, B.name), basis, rule, unit, A.p)


# -- center, switch element, trace ----------------------------------------------------


def center_basis(A: Algebra, budget: int = 2500) -> list[AlgebraElement]:
    """Basis of the center from the kernel of z -> (z b - b z) over all basis b."""
    n = A.dim
    if n > budget:
        from .kernels import BudgetExceeded

        raise BudgetExceeded("dimension %d exceeds budget %d" % (n, budget))
    rows = []
    for b in range(n):
        eqs: dict[int, dict] = {}
        for k in range(n):
            for out, c in A.mul_basis(k, b).items():
                _add_into(eqs.setdefault(out, {}), k, c)
            for out, c in A.mul_basis(b, k).items():
                _add_into(eqs.setdefault(out, {}), k, -c)
        rows.extend(r for r in eqs.values() if r)
    return [A.from_indices({k: v for k, v in enumerate(vec) if v}) for vec in nullspace(rows, n)]


def tensor(parts: Sequence[AlgebraElement]) -> TensorElement:
    """The pure tensor ``parts[0] (x) parts[1] (x) ...``."""
    factors = [x.algebra for x in parts]
    p = factors[0].p
    if any(A.p != p for A in factors):
        raise AlgebraMismatch("tensor factors over different scalar rings")
    terms: dict = {(): Poly.const(1, p)}
    for x in parts:
        new: dict = {}
        for key, v in terms.items():
            for k, c in x.coeffs.items():
                _add_into(new, key + (k,), v * c)
        terms = new
    return TensorElement(factors, terms)


def switch_element(n: int, p: int = 0, algebra: Algebra | None = None) -> TensorElement:
    """T = sum over i, j of e_ij (x) e_ji in M_n (x) M_n."""
    M = algebra or matrix_algebra(n, p)
    one = Poly.const(1, M.p)
    terms = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms[(M.index[(i, j)], M.index[(j, i)])] = one
    return TensorElement((M, M), terms)


def embed_tensor(T: TensorElement, positions: Sequence[int], nfactors: int) -> TensorElement:
    """Place the factors of T at ``positions`` of an n-fold tensor, with 1 elsewhere."""
    A = T.factors[0]
    one_terms = list(A.unit.items())
    factors = [A] * nfactors
    terms: dict = {}
    others = [k for k in range(nfactors) if k not in positions]
    for key, v in T.terms.items():
        for fill in itertools.product(one_terms, repeat=len(others)):
            full = [None] * nfactors
            coeff = v
            for pos, k in zip(positions, key):
                full[pos] = k
            for pos, (k, c) in zip(others, fill):
                full[pos] = k
                coeff = coeff * c
            _add_into(terms, tuple(full), coeff)
    return TensorElement(factors, terms)


class NotScalar(ArithmeticError):
    pass


def reduced_trace(a: AlgebraElement, T: TensorElement) -> Any:
    """Sum of x_i a y_i over the terms x_i (x) y_i of T, as a scalar."""
    A = a.algebra
    acc = A.zero()
    for (i, j), v in T.terms.items():
        acc = acc + A.gen(i) * a * A.gen(j) * v
    one = A.one()
    # acc must be c * 1
    if not acc:
        return Poly.const(0, A.p)
    k0 = next(iter(one.coeffs))
    c = simplify(Frac(acc.coeffs.get(k0, Poly.const(0, A.p))) / one.coeffs[k0])
    if acc != one * c:
        raise NotScalar("sum is not a multiple of the identity")
    return c
