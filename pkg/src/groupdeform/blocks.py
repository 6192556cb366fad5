"""Block decompositions of smash products and wreath products, with audits.

Conventions:

* ``A = k^n`` with a group permuting its n primitive idempotents gives
  ``A # kG = sum over orbits of M_{|orbit|}(k) (x) kG_orbit``.
* For ``A = M_{d_1} + ... + M_{d_b}`` (block matrix sizes ``d_i``) and
  ``G <= S_n`` permuting tensor factors, each G-orbit of multi-indices ``I``
  gives ``M_{(G:G_I)}(A(I)) (x) kG_I`` with ``A(I)`` the tensor product of
  the blocks named by ``I``.

A summand's dimension is ``matrix_size^2 * dim(inner) * |isotropy|``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from . import kernels
from .checks import CheckList
from .groups import (
    FiniteGroup,
    GroupDescriptor,
    HomomorphismError,
    Perm,
    action_images,
    conjugacy_classes,
    hyperoctahedral,
    symmetric,
    string_action_image,
    weyl_d,
)
from .kernels import BudgetExceeded
from .scalars import Poly

__all__ = [
    "BlockSummand",
    "Decomposition",
    "partitions",
    "partition_count",
    "irreducible_dims",
    "smash_decompose",
    "wreath_decompose",
    "qbn_blocks",
    "qdn_blocks",
    "OrbitRecord",
    "OrbitReport",
    "dn_orbit_data",
    "middle_stabilizer_check",
    "matrix_unit_check",
    "WreathAlgebra",
]

WREATH_BUDGET = 2_000_000


# -- partitions ---------------------------------------------------------------


@lru_cache(maxsize=None)
def partitions(m: int, largest: int | None = None) -> tuple:
    """All partitions of m as non-increasing tuples."""
    if largest is None:
        largest = m
    if m == 0:
        return ((),)
    out = []
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def partition_count(m: int) -> int:
    """p(m) by the usual coin-change dynamic program."""
    ways = [1] + [0] * m
    for part in range(1, m + 1):
        for total in range(part, m + 1):
            ways[total] += ways[total - part]
    return ways[m]


def _hook_dim(lam: Sequence[int]) -> int:
    m = sum(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(m) // hooks


def irreducible_dims(m: int) -> list[int]:
    """Degrees of the irreducible representations of S_m, by the hook length formula."""
    return [_hook_dim(lam) for lam in partitions(m)]


# -- decomposition records --------------------------------------------------------


@dataclass
class BlockSummand:
    matrix_size: int
    inner: dict
    isotropy: dict
    simple_blocks: list | None = None
    label: str = ""

    @property
    def dimension(self) -> int:
        return self.matrix_size**2 * int(self.inner.get("dim", 1)) * int(self.isotropy["order"])

    def to_json(self) -> dict:
        out = {
            "matrix_size": self.matrix_size,
            "inner": {k: (v.to_json() if hasattr(v, "to_json") else v) for k, v in self.inner.items()},
            "isotropy": dict(self.isotropy),
            "dimension": self.dimension,
        }
        if self.simple_blocks is not None:
            out["simple_blocks"] = list(self.simple_blocks)
        if self.label:
            out["label"] = self.label
        return out


@dataclass
class Decomposition:
    name: str
    summands: list
    expected_total: int
    audit: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(s.dimension for s in self.summands)

    @property
    def simple_blocks(self) -> list | None:
        out = []
        for s in self.summands:
            if s.simple_blocks is None:
                return None
            out.extend(s.simple_blocks)
        return sorted(out)

    @property
    def block_count(self) -> int | None:
        b = self.simple_blocks
        return None if b is None else len(b)

    @property
    def passed(self) -> bool:
        ok = self.total == self.expected_total
        for key in ("classes_match", "blocks_match", "witnesses"):
            if key in self.audit:
                ok = ok and bool(self.audit[key])
        return ok

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "summands": [s.to_json() for s in self.summands],
            "total": self.total,
            "audit": {"expected_total": self.expected_total, "dimension_ok": self.total == self.expected_total, **self.audit},
            "passed": self.passed,
        }

    def table(self) -> str:
        rows = ["%s  (total %d, expected %d)" % (self.name, self.total, self.expected_total)]
        for s in self.summands:
            blocks = "" if s.simple_blocks is None else "  blocks " + ",".join(map(str, s.simple_blocks))
            rows.append("  %-40s dim %6d%s" % (s.label or _default_label(s), s.dimension, blocks))
        for k, v in self.audit.items():
            rows.append("  %s: %s" % (k, v))
        return "\n".join(rows)


def _default_label(s: BlockSummand) -> str:
    inner = s.inner.get("name", "k")
    iso = s.isotropy.get("type", "order %d" % s.isotropy["order"])
    return "M_%d(%s) (x) k[%s]" % (s.matrix_size, inner, iso)


# -- smash product with k^n --------------------------------------------------------


def _as_group(G: GroupDescriptor | FiniteGroup) -> FiniteGroup:
    return G if isinstance(G, FiniteGroup) else G.enumerate()


def _young_type(fibers: Sequence[int]) -> str:
    parts = [k for k in fibers if k > 1]
    return "x".join("S_%d" % k for k in parts) if parts else "1"


def smash_decompose(n: int, G: GroupDescriptor | FiniteGroup, action=None, names: Sequence[str] | None = None) -> Decomposition:
    """Decompose ``k^n # kG`` for G permuting the n idempotents of k^n.

    ``action(g)`` gives the images of the points 0..n-1 under a generator;
    by default G's own permutation representation is used (degree must be n).
    """
    fg = _as_group(G)
    if action is None:
        if fg.descriptor.degree != n:
            raise HomomorphismError("group acts on %d points, not %d" % (fg.descriptor.degree, n))
        action = lambda g: [int(x) for x in fg.descriptor.to_perm(g)]  # noqa: E731
    fg, P = action_images(fg, action, list(range(n)))
    labels = kernels.orbit_labels(P) if len(P) else np.arange(n)
    summands = []
    for rep in sorted(set(labels.tolist())):
        orbit = [i for i in range(n) if labels[i] == rep]
        stab = int(np.sum(P[:, rep] == rep))
        iso_type = "trivial" if stab == 1 else ("G" if stab == fg.order else "order %d" % stab)
        pts = [names[i] for i in orbit] if names else orbit
        summands.append(
            BlockSummand(
                len(orbit),
                {"name": "k", "dim": 1},
                {"type": iso_type, "order": stab},
                None,
                "M_%d(k) (x) kG_%s  orbit %s" % (len(orbit), "{%s}" % ",".join(map(str, pts)), pts),
            )
        )
    d = Decomposition("k^%d # k%s" % (n, fg.descriptor), summands, n * fg.order, {"orbits": len(summands)})
    return d


# -- wreath products -----------------------------------------------------------------


def _multi_indices(b: int, n: int) -> np.ndarray:
    """All multi-indices in lexicographic order, one per row."""
    if b**n > WREATH_BUDGET:
        raise BudgetExceeded("%d^%d multi-indices exceed budget" % (b, n))
    grid = np.indices((b,) * n).reshape(n, -1).T
    return grid.astype(np.int64)


def _encode(idx: np.ndarray, b: int) -> np.ndarray:
    weights = b ** np.arange(idx.shape[1] - 1, -1, -1, dtype=np.int64)
    return idx @ weights


def _act_on_indices(perm_rows: np.ndarray, idx: np.ndarray, b: int) -> np.ndarray:
    """Row k: code of g_k . I for every multi-index I, with (gI)_{g(j)} = I_j."""
    out = np.empty((len(perm_rows), len(idx)), np.int64)
    for k, g in enumerate(perm_rows):
        moved = np.empty_like(idx)
        moved[:, g] = idx
        out[k] = _encode(moved, b)
    return out


def wreath_decompose(
    block_sizes: Sequence[int],
    n: int,
    G: GroupDescriptor | FiniteGroup,
    block_names: Sequence[str] | None = None,
    witnesses: bool = False,
) -> Decomposition:
    """Decompose ``A wr G`` for ``A`` a sum of matrix blocks ``M_{d}`` and G <= S_n.

    ``block_sizes`` are the matrix sizes of the central simple blocks of A.
    Isotropy acts innerly on A(I), so the summand splits like its isotropy
    group algebra: done for Young subgroups of S_n and for groups of order
    at most 2 (``kC_2 = k + k``).
    """
    fg = _as_group(G)
    if fg.descriptor.degree != n:
        raise HomomorphismError("group acts on %d points, not %d" % (fg.descriptor.degree, n))
    b = len(block_sizes)
    idx = _multi_indices(b, n)
    if len(idx) * fg.order > WREATH_BUDGET:
        raise BudgetExceeded("orbit computation exceeds budget")
    images = _act_on_indices(fg.rows, idx, b)
    gens = fg.descriptor.generator_rows()
    labels = kernels.orbit_labels(_act_on_indices(gens, idx, b)) if len(gens) else np.arange(len(idx))
    names = list(block_names) if block_names else ["A%d" % (i + 1) for i in range(b)]
    dim_a = sum(d * d for d in block_sizes)
    summands = []
    for rep in sorted(set(labels.tolist())):
        size = int(np.sum(labels == rep))
        I = tuple(int(x) for x in idx[rep])
        stab = int(np.sum(images[:, rep] == rep))
        if stab * size != fg.order:
            raise AssertionError("orbit-stabilizer count failed")
        inner_dim = math.prod(block_sizes[i] ** 2 for i in I)
        side = math.prod(block_sizes[i] for i in I)
        if fg.descriptor.kind == "symmetric":
            iso_type = _young_type([I.count(i) for i in range(b)])
        else:
            iso_type = "trivial" if stab == 1 else "order %d" % stab
        simple = None
        if fg.descriptor.kind == "symmetric":
            # Young isotropy: QS_c is split, block sizes are products of irreducible dims
            fibers = [irreducible_dims(I.count(i)) for i in range(b) if I.count(i)]
            simple = sorted(size * side * math.prod(ds) for ds in itertools.product(*fibers))
        elif stab <= 2:
            simple = [size * side] * stab
        summands.append(
            BlockSummand(
                size,
                {"name": "(x)".join(names[i] for i in I), "dim": inner_dim, "index": list(I)},
                {"type": iso_type, "order": stab},
                simple,
                "M_%d(%s) (x) k[%s]" % (size, "(x)".join(names[i] for i in I), iso_type),
            )
        )
    audit: dict = {"orbits": len(summands)}
    if witnesses:
        certs = [matrix_unit_check(tuple(s.inner["index"]), fg, block_sizes) for s in summands]
        audit["witnesses"] = all(c.passed for c in certs)
    return Decomposition("A wr %s, A blocks %s" % (fg.descriptor, list(block_sizes)), summands, dim_a**n * fg.order, audit)


# -- B_n and D_n ------------------------------------------------------------------


def _sym_summand(size: int, a: int, b: int, iso_type: str | None = None) -> BlockSummand:
    simple = [size * x * y for x in irreducible_dims(a) for y in irreducible_dims(b)]
    iso = iso_type or _young_type([a, b])
    return BlockSummand(
        size,
        {"name": "Q", "dim": 1, "factors": ["QS_%d" % a, "QS_%d" % b]},
        {"type": iso, "order": math.factorial(a) * math.factorial(b)},
        simple,
        "M_%d(Q) (x) QS_%d (x) QS_%d" % (size, a, b),
    )


def qbn_blocks(n: int, class_check: bool | None = None) -> Decomposition:
    """QB_n as the sum over m of M_{C(n,m)}(Q) (x) QS_m (x) QS_{n-m}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    summands = [_sym_summand(math.comb(n, m), m, n - m) for m in range(n + 1)]
    expected = 2**n * math.factorial(n)
    blocks = sum(partition_count(m) * partition_count(n - m) for m in range(n + 1))
    audit: dict = {"block_count": blocks}
    d = Decomposition("QB_%d" % n, summands, expected, audit)
    audit["blocks_match"] = d.block_count == blocks
    if class_check is None:
        class_check = n <= 4
    if class_check:
        audit["class_count"] = len(conjugacy_classes(hyperoctahedral(n)))
        audit["classes_match"] = audit["class_count"] == blocks
    return d


def qdn_blocks(n: int, class_check: bool | None = None) -> Decomposition:
    """QD_n by the type-D block formula; the middle block for even n is expanded as a wreath product."""
    if n < 2:
        raise ValueError("n must be at least 2")
    r = n // 2
    summands = []
    if n % 2:
        for m in range(r + 1):
            summands.append(_sym_summand(math.comb(n, m), n - m, m))
        blocks = sum(partition_count(m) * partition_count(n - m) for m in range(r + 1))
    else:
        for m in range(r):
            summands.append(_sym_summand(math.comb(n, m), n - m, m))
        size = math.comb(2 * r - 1, r)
        inner = wreath_decompose(irreducible_dims(r), 2, symmetric(2), ["S_%d(%s)" % (r, lam) for lam in _lam_names(r)])
        pr = partition_count(r)
        summands.append(
            BlockSummand(
                size,
                {"name": "Q", "dim": 1, "factors": ["Q(S_%d wr C_2)" % r], "expansion": inner},
                {"type": "S_%d wr C_2" % r, "order": 2 * math.factorial(r) ** 2},
                [size * s for s in inner.simple_blocks],
                "M_%d(Q) (x) Q(S_%d wr C_2)" % (size, r),
            )
        )
        blocks = sum(partition_count(m) * partition_count(n - m) for m in range(r)) + pr * (pr + 3) // 2
    expected = 2 ** (n - 1) * math.factorial(n)
    audit: dict = {"block_count": blocks}
    d = Decomposition("QD_%d" % n, summands, expected, audit)
    audit["blocks_match"] = d.block_count == blocks
    if class_check is None:
        class_check = n <= 5
    if class_check:
        audit["class_count"] = len(conjugacy_classes(weyl_d(n)))
        audit["classes_match"] = audit["class_count"] == blocks
    return d


def _lam_names(r: int) -> list[str]:
    return ["".join(map(str, lam)) for lam in partitions(r)]


# -- the action of S_{n+1} on strings of e (0) and f (1) ---------------------------------


@dataclass
class OrbitRecord:
    representative: str
    size: int
    zeros: int
    middle: bool
    expected_size: int
    stabilizer_order: int
    expected_order: int
    stabilizer_type: str
    structural: bool
    brute_force_order: int | None = None

    @property
    def passed(self) -> bool:
        ok = self.size == self.expected_size and self.stabilizer_order == self.expected_order and self.structural
        if self.brute_force_order is not None:
            ok = ok and self.brute_force_order == self.expected_order
        return ok

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["passed"] = self.passed
        return out


@dataclass
class OrbitReport:
    n: int
    orbits: list
    checks: CheckList

    @property
    def passed(self) -> bool:
        return self.checks.passed and all(o.passed for o in self.orbits)

    def to_json(self) -> dict:
        return {"n": self.n, "orbits": [o.to_json() for o in self.orbits], "checks": self.checks.to_json(), "passed": self.passed}


def _generator_ops(n: int) -> list[np.ndarray]:
    taus, swaps = kernels.bitstring_operators(n)
    return [swaps[i] for i in range(n - 1)] + [taus[n - 1]]


def _popcount_zeros(v: int, n: int) -> int:
    return n - bin(v).count("1")


def _transposition_ops(n: int) -> dict:
    return {(a, b): string_action_image(n, Perm.transposition(n + 1, a, b)) for a in range(1, n + 2) for b in range(a + 1, n + 2)}


def _components(nodes: int, edges: Sequence[tuple]) -> list[int]:
    parent = list(range(nodes + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    sizes: dict = {}
    for x in range(1, nodes + 1):
        sizes[find(x)] = sizes.get(find(x), 0) + 1
    return sorted(sizes.values(), reverse=True)


def dn_orbit_data(n: int, brute_force: bool | None = None) -> OrbitReport:
    """Orbits and stabilizers of S_{n+1} acting on the 2^n strings.

    Bit 0 is the idempotent e and bit 1 is f; an orbit is labelled by the
    largest number m of e's among its strings.
    """
    if n < 2:
        raise ValueError("the string action is faithful only for n >= 2")
    ops = _generator_ops(n)
    labels = kernels.orbit_labels(np.stack(ops))
    total = math.factorial(n + 1)
    trans = _transposition_ops(n)
    if brute_force is None:
        brute_force = n <= 6
    image = kernels.closure(np.stack(ops), max_order=total + 1) if brute_force else None
    orbits = []
    for rep in sorted(set(labels.tolist())):
        members = np.nonzero(labels == rep)[0]
        size = len(members)
        m = max(_popcount_zeros(int(v), n) for v in members)
        middle = n % 2 == 1 and 2 * m == n - 1
        r = (n - 1) // 2
        if middle:
            exp_size = math.comb(n, r)
            exp_order = 2 * math.factorial(r + 1) ** 2
        else:
            exp_size = math.comb(n + 1, m + 1)
            exp_order = math.factorial(m + 1) * math.factorial(n - m)
        # representative with the e's last: f^(n-m) e^m
        rep_int = (1 << n) - (1 << m) if m < n else 0
        if labels[rep_int] != rep:
            raise AssertionError("representative outside its orbit")
        fixing = [ab for ab, img in trans.items() if img[rep_int] == rep_int]
        comps = _components(n + 1, fixing)
        young = math.prod(math.factorial(c) for c in comps)
        want = sorted([m + 1, n - m], reverse=True)
        # every fixing transposition lies in Sym(Z + {n+1}) x Sym(O)
        zeros = set(range(n - m + 1, n + 2))
        inside = all((a in zeros) == (b in zeros) for a, b in fixing)
        if middle:
            structural = inside and [c for c in comps if c > 1] == [c for c in want if c > 1] and 2 * young == total // size
            iso = "S_%d wr C_2" % (r + 1)
        else:
            structural = inside and [c for c in comps if c > 1] == [c for c in want if c > 1] and young == total // size
            iso = _young_type(want)
        bf = None
        if image is not None:
            bf = int(np.sum(image[:, rep_int] == rep_int))
        orbits.append(
            OrbitRecord(
                _bits(rep_int, n), size, m, middle, exp_size, total // size, exp_order, iso, structural, bf
            )
        )
    checks = CheckList()
    checks.add("orbits partition the strings", sum(o.size for o in orbits) == 1 << n)
    checks.add("orbit size times stabilizer order is (n+1)!", all(o.size * o.stabilizer_order == total for o in orbits))
    return OrbitReport(n, orbits, checks)


def _bits(v: int, n: int) -> str:
    return format(v, "0%db" % n) if n else ""


def _entry_swap(n: int, pairs: Sequence[tuple]) -> np.ndarray:
    """Operator exchanging string entries (1-indexed positions, MSB first)."""
    s = np.arange(1 << n, dtype=np.int64)
    out = s.copy()
    for a, b in pairs:
        ba, bb = n - a, n - b
        hi = (out >> ba) & 1
        lo = (out >> bb) & 1
        out = (out & ~((1 << ba) | (1 << bb))) | (lo << ba) | (hi << bb)
    return out


def middle_stabilizer_check(r: int) -> CheckList:
    """The extra involution of the middle stabilizer, for strings of length 2r+1.

    With I = e^r f^(r+1), sigma = (1,r+1)(2,r+2)...(r,2r) on entries and tau
    the operator of entry 2r+1, rho = sigma tau fixes I, squares to 1 and
    swaps the two symmetric-group factors of the stabilizer.
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = 2 * r + 1
    taus, _ = kernels.bitstring_operators(n)
    ident = np.arange(1 << n, dtype=np.int64)
    sigma = _entry_swap(n, [(i, r + i) for i in range(1, r + 1)])
    tau = taus[n - 1]
    rho = sigma[tau]
    I = (1 << (r + 1)) - 1  # e^r f^(r+1)
    checks = CheckList()
    checks.add("rho fixes the middle index", int(rho[I]) == I)
    checks.add("rho squared is 1", bool(np.array_equal(rho[rho], ident)))
    for i in range(1, r + 1):
        lhs = rho[taus[i - 1]][rho]
        checks.add("rho tau_%d rho = (%d,%d)" % (i, r + i, n), bool(np.array_equal(lhs, _entry_swap(n, [(r + i, n)]))))
    # factor generators: Sym(Z + {n+1}) by tau_i (i <= r) and entry swaps within Z;
    # Sym(O) by entry swaps within O = {r+1, ..., 2r+1}
    first = [taus[i - 1] for i in range(1, r + 1)] + [_entry_swap(n, [(i, i + 1)]) for i in range(1, r)]
    second = [_entry_swap(n, [(a, b)]) for a in range(r + 1, n + 1) for b in range(a + 1, n + 1)]
    second_keys = {x.tobytes() for x in second}
    checks.add(
        "rho maps the first factor into the second",
        all(rho[g][rho].tobytes() in second_keys for g in first),
    )
    checks.add("generators fix the middle index", all(int(g[I]) == I for g in first + second))
    young = kernels.closure(np.stack(first + second), max_order=math.factorial(r + 1) ** 2 + 1)
    checks.add("factors have order ((r+1)!)^2", len(young) == math.factorial(r + 1) ** 2, len(young))
    in_young = bool(len(kernels.lookup(young, rho[None, :])) and np.any(np.all(young == rho, axis=1)))
    checks.add("rho lies outside the product of the factors", not in_young)
    stab = kernels.closure(np.stack(first + second + [rho]), max_order=2 * math.factorial(r + 1) ** 2 + 1)
    checks.add("stabilizer order 2((r+1)!)^2", len(stab) == 2 * math.factorial(r + 1) ** 2, len(stab))
    if n <= 7:
        full = kernels.closure(np.stack(_generator_ops(n)), max_order=math.factorial(n + 1) + 1)
        bf = int(np.sum(full[:, I] == I))
        checks.add("brute-force stabilizer order", bf == 2 * math.factorial(r + 1) ** 2, bf)
    return checks


# -- explicit matrix units in A^{(x)n} # kG -------------------------------------------------


class WreathAlgebra:
    """``A^{(x)n} # kG`` for A a sum of matrix blocks, with rational coefficients.

    A basis element of A is ``(block, row, col)``; an element of the wreath
    algebra is a dict ``{(tensor_key, g_index): Fraction}``.
    """

    def __init__(self, block_sizes: Sequence[int], n: int, G: GroupDescriptor | FiniteGroup):
        self.block_sizes = tuple(block_sizes)
        self.n = n
        self.group = _as_group(G)
        if self.group.descriptor.degree != n:
            raise HomomorphismError("group acts on %d points, not %d" % (self.group.descriptor.degree, n))
        self.rows = [tuple(int(x) for x in r) for r in self.group.rows]
        self.table = self.group.table
        self.inv = self.group.inverse_index

    def move(self, key: tuple, g: int) -> tuple:
        """Tensor factor at position j goes to position g(j)."""
        perm = self.rows[g]
        out = [None] * self.n
        for j, x in enumerate(key):
            out[perm[j]] = x
        return tuple(out)

    @staticmethod
    def _mul_key(x: tuple, y: tuple):
        out = []
        for (b1, i, j), (b2, k, l) in zip(x, y):
            if b1 != b2 or j != k:
                return None
            out.append((b1, i, l))
        return tuple(out)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (kx, gx), cx in x.items():
            for (ky, gy), cy in y.items():
                k = self._mul_key(kx, self.move(ky, gx))
                if k is None:
                    continue
                key = (k, int(self.table[gx, gy]))
                v = out.get(key, 0) + cx * cy
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    @staticmethod
    def add(x: dict, y: dict, c: Any = 1) -> dict:
        out = dict(x)
        for k, v in y.items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def _unit_times(self, g: int) -> dict:
        out = {}
        for key in itertools.product(*[self._diag() for _ in range(self.n)]):
            out[(key, g)] = Fraction(1)
        return out

    def _diag(self) -> list:
        return [(b, i, i) for b, d in enumerate(self.block_sizes) for i in range(d)]

    def one(self) -> dict:
        return self._unit_times(0)

    def e(self, I: Sequence[int], g: int = 0) -> dict:
        """Central idempotent of the summand A(I), times the group element g."""
        parts = [[(b, i, i) for i in range(self.block_sizes[b])] for b in I]
        return {(key, g): Fraction(1) for key in itertools.product(*parts)}

    def basis_of(self, I: Sequence[int]) -> list[tuple]:
        parts = [[(b, i, j) for i in range(self.block_sizes[b]) for j in range(self.block_sizes[b])] for b in I]
        return list(itertools.product(*parts))

    def act_index(self, I: Sequence[int], g: int) -> tuple:
        return self.move(tuple(I), g)

    def switch(self, I: Sequence[int], a: int, b: int) -> dict:
        """Switch element for positions a, b (0-indexed) inside A(I); needs I[a] == I[b]."""
        if I[a] != I[b]:
            raise ValueError("positions carry different blocks")
        d = self.block_sizes[I[a]]
        out = {}
        others = [k for k in range(self.n) if k not in (a, b)]
        fills = itertools.product(*[[(I[k], i, i) for i in range(self.block_sizes[I[k]])] for k in others])
        for fill in fills:
            for i in range(d):
                for j in range(d):
                    key = [None] * self.n
                    key[a] = (I[a], i, j)
                    key[b] = (I[b], j, i)
                    for k, x in zip(others, fill):
                        key[k] = x
                    out[(tuple(key), 0)] = Fraction(1)
        return out

    def factor_permutation(self, I: Sequence[int], g: int) -> dict:
        """T_g in A(I): the product of switch elements along the cycles of g."""
        perm = self.rows[g]
        out = self.e(I)
        seen = set()
        for start in range(self.n):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = perm[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = perm[x]
            # (c0 c1 ... ck) = (c0 ck) ... (c0 c2)(c0 c1), rightmost first
            for k in range(len(cyc) - 1, 0, -1):
                out = self.mul(out, self.switch(I, cyc[0], cyc[k]))
        return out


def _min_coset_reps(W: WreathAlgebra, stab: list[int]) -> list[int]:
    reps = []
    covered = set()
    for g in range(W.group.order):
        if g in covered:
            continue
        reps.append(g)
        covered.update(int(W.table[g, h]) for h in stab)
    return reps


def matrix_unit_check(I: Sequence[int], G: GroupDescriptor | FiniteGroup, block_sizes: Sequence[int] = (1, 1)) -> CheckList:
    """Build E_{s,t} = e(sI) s t^-1 and upsilon(pi) = sum_mu mu T_pi^-1 pi mu^-1, then test their relations."""
    W = WreathAlgebra(block_sizes, len(I), G)
    I = tuple(I)
    if any(not 0 <= b < len(block_sizes) for b in I):
        raise ValueError("multi-index names a missing block")
    order = W.group.order
    stab = [g for g in range(order) if W.act_index(I, g) == I]
    reps = _min_coset_reps(W, stab)
    checks = CheckList()
    checks.add("orbit times isotropy is |G|", len(reps) * len(stab) == order)

    def E(s, t):
        return W.e(W.act_index(I, s), int(W.table[s, W.inv[t]]))

    unit_B: dict = {}
    for s in reps:
        unit_B = W.add(unit_B, W.e(W.act_index(I, s)))
    ok = True
    for s, t, s2, t2 in itertools.product(reps, repeat=4):
        want = E(s, t2) if t == s2 else {}
        if W.mul(E(s, t), E(s2, t2)) != want:
            ok = False
            break
    checks.add("E elements multiply like matrix units", ok)
    diag: dict = {}
    for s in reps:
        diag = W.add(diag, E(s, s))
    checks.add("diagonal E elements sum to the unit of B(I)", diag == unit_B)

    T = {pi: W.factor_permutation(I, pi) for pi in stab}
    Tinv = {pi: T[int(W.inv[pi])] for pi in stab}
    checks.add("T_pi T_pi^-1 = e(I)", all(W.mul(T[pi], Tinv[pi]) == W.e(I) for pi in stab))
    basis_I = W.basis_of(I)
    conj_ok = True
    for pi in stab:
        g_pi = W.e(I, pi)
        g_inv = W.e(I, int(W.inv[pi]))
        for key in basis_I:
            a = {(key, 0): Fraction(1)}
            lhs = W.mul(W.mul(T[pi], a), Tinv[pi])
            rhs = W.mul(W.mul(g_pi, a), g_inv)
            if lhs != rhs:
                conj_ok = False
    checks.add("T_pi realizes the factor permutation", conj_ok)

    def upsilon(pi):
        out: dict = {}
        core = W.mul(Tinv[pi], W.e(I, pi))
        for mu in reps:
            left = W.e(W.act_index(I, mu), mu)
            right = W.e(I, int(W.inv[mu]))
            out = W.add(out, W.mul(W.mul(left, core), right))
        return out

    ups = {pi: upsilon(pi) for pi in stab}
    checks.add("upsilon(1) is the unit of B(I)", ups[0] == unit_B if 0 in ups else False)
    checks.add(
        "upsilon is multiplicative",
        all(W.mul(ups[a], ups[b]) == ups[int(W.table[a, b])] for a in stab for b in stab),
    )
    comm = True
    matrix_part = []
    for s in reps:
        for t in reps:
            for key in basis_I:
                x = W.mul(W.mul(W.e(W.act_index(I, s), s), {(key, 0): Fraction(1)}), W.e(I, int(W.inv[t])))
                matrix_part.append(x)
                for pi in stab:
                    if W.mul(ups[pi], x) != W.mul(x, ups[pi]):
                        comm = False
    checks.add("upsilon commutes with M(I)", comm)
    products = [W.mul(x, ups[pi]) for x in matrix_part for pi in stab]
    rank = _rank(products)
    want = len(reps) ** 2 * len(basis_I) * len(stab)
    checks.add("M(I) upsilon(G_I) spans B(I) freely", rank == want == len(products), rank)
    return checks


def _rank(vectors: list[dict]) -> int:
    from .linalg import fraction_free_rref

    cols: dict = {}
    rows = []
    for v in vectors:
        row = {}
        for k, c in v.items():
            j = cols.setdefault(k, len(cols))
            row[j] = Fraction(c)
        scale = math.lcm(*(c.denominator for c in row.values())) if row else 1
        rows.append({j: Poly.const(int(c * scale)) for j, c in row.items()})
    return fraction_free_rref(rows, len(cols)).rank()
