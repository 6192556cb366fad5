"""Finite groups as explicit element sets.

Element types carry their own multiplication; every group descriptor also
fixes a faithful permutation representation, which is what the enumeration
kernels work on.  Permutations are one-indexed and compose right to left:
``(p * q)(i) = p(q(i))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .kernels import BudgetExceeded

__all__ = [
    "Perm",
    "CyclicElement",
    "DihedralElement",
    "WreathElement",
    "ProductElement",
    "GroupDescriptor",
    "FiniteGroup",
    "BudgetExceeded",
    "HomomorphismError",
    "cyclic",
    "dihedral",
    "symmetric",
    "hyperoctahedral",
    "weyl_d",
    "wreath",
    "direct_product",
    "perm_group",
    "coxeter_length",
    "reduced_word",
    "word_to_perm",
    "conjugacy_classes",
    "orbit_stabilizer",
    "OrbitStabilizer",
    "string_operator",
    "string_action_image",
    "string_action_verify",
    "StringActionCertificate",
    "bits_to_str",
    "str_to_bits",
]

DEFAULT_BUDGET = 100_000


class HomomorphismError(ValueError):
    """A generator assignment does not extend to a group homomorphism."""


# -- element types ------------------------------------------------------------


@dataclass(frozen=True)
class Perm:
    """Permutation of {1..n} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a permutation: %r" % (self.images,))

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Perm":
        im = list(range(1, n + 1))
        im[i - 1], im[j - 1] = im[j - 1], im[i - 1]
        return cls(tuple(im))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Perm":
        """Parse cycle notation such as ``(1,2)(3,4)`` or ``(1 3 2)``."""
        # cycles compose right to left
        result = cls.identity(n)
        for cyc in reversed(re.findall(r"\(([^()]*)\)", text)):
            pts = [int(x) for x in re.split(r"[,\s]+", cyc.strip()) if x]
            c = list(range(1, n + 1))
            for a, b in zip(pts, pts[1:] + pts[:1]):
                c[a - 1] = b
            result = cls(tuple(c)) * result
        return result

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        out = Perm.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            c = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                c.append(j)
                seen.add(j)
                j = self(j)
            if len(c) > 1:
                out.append(tuple(c))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64) - 1


@dataclass(frozen=True)
class CyclicElement:
    r: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % self.r)

    def __mul__(self, other: "CyclicElement") -> "CyclicElement":
        return CyclicElement(self.r, self.k + other.k)

    def inverse(self) -> "CyclicElement":
        return CyclicElement(self.r, -self.k)

    def __str__(self) -> str:
        return "x^%d" % self.k if self.k != 1 else "x"


@dataclass(frozen=True)
class DihedralElement:
    """``rho^rot * flip^f`` in the dihedral group of order 2m."""

    m: int
    rot: int
    flip: int

    def __post_init__(self):
        object.__setattr__(self, "rot", self.rot % self.m)
        object.__setattr__(self, "flip", self.flip % 2)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        sign = -1 if self.flip else 1
        return DihedralElement(self.m, self.rot + sign * other.rot, self.flip + other.flip)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement(self.m, -self.rot, 0)

    def __str__(self) -> str:
        return "r^%d%s" % (self.rot, "*s" if self.flip else "")


@dataclass(frozen=True)
class WreathElement:
    """``(a, sigma)`` in C_r wr S_n with ``(a,s)(b,t) = (a + s(b), s t)``, ``s(b)_i = b_{s^-1(i)}``."""

    r: int
    comps: tuple[int, ...]
    perm: Perm

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(c % self.r for c in self.comps))
        if len(self.comps) != self.perm.n:
            raise ValueError("component tuple and permutation sizes differ")

    def act(self, b: tuple[int, ...]) -> tuple[int, ...]:
        inv = self.perm.inverse()
        return tuple(b[inv(i) - 1] for i in range(1, len(b) + 1))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        moved = self.act(other.comps)
        return WreathElement(
            self.r, tuple(a + b for a, b in zip(self.comps, moved)), self.perm * other.perm
        )

    def inverse(self) -> "WreathElement":
        # (a, s)^-1 = (-s^-1(a), s^-1) with s^-1(a)_i = a_{s(i)}
        comps = tuple(-self.comps[self.perm(i) - 1] for i in range(1, self.perm.n + 1))
        return WreathElement(self.r, comps, self.perm.inverse())

    def __str__(self) -> str:
        return "(%s)|%s" % (",".join(map(str, self.comps)), self.perm)


@dataclass(frozen=True)
class ProductElement:
    parts: tuple

    def __mul__(self, other: "ProductElement") -> "ProductElement":
        return ProductElement(tuple(a * b for a, b in zip(self.parts, other.parts)))

    def inverse(self) -> "ProductElement":
        return ProductElement(tuple(a.inverse() for a in self.parts))

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.parts)) + ")"


# -- descriptors ----------------------------------------------------------------


@dataclass(frozen=True)
class GroupDescriptor:
    """Constructor tag, parameters, order and generators of a finite group.

    ``to_perm``/``from_perm`` realize a faithful permutation representation
    on ``degree`` points (0-indexed arrays).
    """

    kind: str
    params: tuple
    order: int
    generators: tuple
    degree: int
    factors: tuple = ()

    def identity(self) -> Any:
        k = self.kind
        if k == "cyclic":
            return CyclicElement(self.params[0], 0)
        if k == "dihedral":
            return DihedralElement(self.params[0], 0, 0)
        if k in ("symmetric", "perm"):
            return Perm.identity(self.degree)
        if k in ("wreath", "hyperoctahedral", "weyl_d"):
            r, n = self._wreath_rn()
            return WreathElement(r, (0,) * n, Perm.identity(n))
        if k == "product":
            return ProductElement(tuple(f.identity() for f in self.factors))
        raise ValueError(k)

    def _wreath_rn(self) -> tuple[int, int]:
        if self.kind == "wreath":
            return self.params
        return 2, self.params[0]

    def to_perm(self, g: Any) -> np.ndarray:
        k = self.kind
        if k == "cyclic":
            r = self.params[0]
            return (np.arange(r) + g.k) % r
        if k == "dihedral":
            m = self.params[0]
            out = np.empty(2 * m, np.int64)
            for x in range(m):
                for eps in (0, 1):
                    if g.flip:
                        y, e2 = (-x + g.rot) % m, 1 - eps
                    else:
                        y, e2 = (x + g.rot) % m, eps
                    out[x + m * eps] = y + m * e2
            return out
        if k in ("symmetric", "perm"):
            return g.to_array()
        if k in ("wreath", "hyperoctahedral", "weyl_d"):
            r, n = self._wreath_rn()
            out = np.empty(n * r, np.int64)
            for i in range(1, n + 1):
                j = g.perm(i)
                for c in range(r):
                    out[(i - 1) * r + c] = (j - 1) * r + (c + g.comps[j - 1]) % r
            return out
        if k == "product":
            rows = []
            off = 0
            for f, part in zip(self.factors, g.parts):
                rows.append(f.to_perm(part) + off)
                off += f.degree
            return np.concatenate(rows) if rows else np.zeros(0, np.int64)
        raise ValueError(k)

    def from_perm(self, row: np.ndarray) -> Any:
        k = self.kind
        row = [int(x) for x in row]
        if k == "cyclic":
            return CyclicElement(self.params[0], row[0])
        if k == "dihedral":
            m = self.params[0]
            y = row[0]
            return DihedralElement(m, y % m, y // m)
        if k in ("symmetric", "perm"):
            return Perm(tuple(x + 1 for x in row))
        if k in ("wreath", "hyperoctahedral", "weyl_d"):
            r, n = self._wreath_rn()
            images = [0] * n
            comps = [0] * n
            for i in range(n):
                y = row[i * r]
                images[i] = y // r + 1
                comps[y // r] = y % r
            return WreathElement(r, tuple(comps), Perm(tuple(images)))
        if k == "product":
            parts = []
            off = 0
            for f in self.factors:
                parts.append(f.from_perm(np.asarray(row[off : off + f.degree]) - off))
                off += f.degree
            return ProductElement(tuple(parts))
        raise ValueError(k)

    def generator_rows(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, self.degree), np.int64)
        return np.stack([self.to_perm(g) for g in self.generators])

    def enumerate(self, budget: int = DEFAULT_BUDGET) -> "FiniteGroup":
        if self.order > budget:
            raise BudgetExceeded("group of order %d exceeds budget %d" % (self.order, budget))
        rows = kernels.closure(self.generator_rows(), max_order=max(budget, 1))
        if len(rows) != self.order:
            raise AssertionError("enumerated %d elements, expected %d" % (len(rows), self.order))
        return FiniteGroup(self, rows)

    def __str__(self) -> str:
        return "%s%s" % (self.kind, self.params)


@dataclass
class FiniteGroup:
    """An enumerated group: elements in lexicographic order of their permutation rows."""

    descriptor: GroupDescriptor
    rows: np.ndarray

    @cached_property
    def elements(self) -> list:
        return [self.descriptor.from_perm(r) for r in self.rows]

    @cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.rows)

    @cached_property
    def table(self) -> np.ndarray:
        return kernels.multiplication_table(self.rows)

    @cached_property
    def inverse_index(self) -> np.ndarray:
        inv_rows = np.argsort(self.rows, axis=1)
        return kernels.lookup(self.rows, inv_rows)

    def index_of(self, g: Any) -> int:
        return self.index[g]

    def mul_rows(self, i: int, j: int) -> int:
        return int(kernels.lookup(self.rows, self.rows[i][self.rows[j]])[0])


# -- constructors ---------------------------------------------------------------


def cyclic(r: int) -> GroupDescriptor:
    if r < 1:
        raise ValueError("r must be positive")
    gens = (CyclicElement(r, 1),) if r > 1 else ()
    return GroupDescriptor("cyclic", (r,), r, gens, r)


def dihedral(m: int) -> GroupDescriptor:
    """Dihedral group of order 2m."""
    if m < 1:
        raise ValueError("m must be positive")
    gens = (DihedralElement(m, 1, 0), DihedralElement(m, 0, 1))
    return GroupDescriptor("dihedral", (m,), 2 * m, gens, 2 * m)


def _adjacent(n: int) -> list[Perm]:
    return [Perm.transposition(n, i, i + 1) for i in range(1, n)]


def symmetric(n: int) -> GroupDescriptor:
    if n < 1:
        raise ValueError("n must be positive")
    return GroupDescriptor("symmetric", (n,), math.factorial(n), tuple(_adjacent(n)), n)


def wreath(r: int, n: int) -> GroupDescriptor:
    """C_r wr S_n acting on n*r points."""
    ident = Perm.identity(n)
    gens = [WreathElement(r, (0,) * n, s) for s in _adjacent(n)]
    if r > 1:
        gens.append(WreathElement(r, (1,) + (0,) * (n - 1), ident))
    return GroupDescriptor("wreath", (r, n), r**n * math.factorial(n), tuple(gens), n * r)


def hyperoctahedral(n: int) -> GroupDescriptor:
    """Weyl group B_n = C_2 wr S_n (signed permutations)."""
    w = wreath(2, n)
    return GroupDescriptor("hyperoctahedral", (n,), w.order, w.generators, w.degree)


def weyl_d(n: int) -> GroupDescriptor:
    """Weyl group D_n: signed permutations with an even number of sign changes."""
    if n < 1:
        raise ValueError("n must be positive")
    ident = Perm.identity(n)
    gens = [WreathElement(2, (0,) * n, s) for s in _adjacent(n)]
    if n >= 2:
        gens.append(WreathElement(2, (1, 1) + (0,) * (n - 2), ident))
    order = 2 ** (n - 1) * math.factorial(n)
    return GroupDescriptor("weyl_d", (n,), order, tuple(gens), 2 * n)


def direct_product(*groups: GroupDescriptor) -> GroupDescriptor:
    gens = []
    for k, g in enumerate(groups):
        for s in g.generators:
            parts = tuple(s if j == k else h.identity() for j, h in enumerate(groups))
            gens.append(ProductElement(parts))
    order = math.prod(g.order for g in groups)
    degree = sum(g.degree for g in groups)
    params = tuple(str(g) for g in groups)
    return GroupDescriptor("product", params, order, tuple(gens), degree, tuple(groups))


def perm_group(degree: int, generators: Iterable[Perm], budget: int = DEFAULT_BUDGET) -> GroupDescriptor:
    """Permutation group given by generators; the order is found by enumeration."""
    gens = tuple(generators)
    rows = np.stack([g.to_array() for g in gens]) if gens else np.zeros((0, degree), np.int64)
    order = len(kernels.closure(rows, max_order=budget))
    return GroupDescriptor("perm", (degree, len(gens)), order, gens, degree)


# -- Coxeter combinatorics ------------------------------------------------------------


def coxeter_length(w: Perm) -> int:
    """Number of inversions, the length in the generators s_i = (i, i+1)."""
    im = w.images
    n = len(im)
    return sum(1 for i in range(n) for j in range(i + 1, n) if im[i] > im[j])


def reduced_word(w: Perm) -> list[int]:
    """Indices ``[a1, ..., ak]`` with ``w = s_a1 * ... * s_ak`` and k = length(w)."""
    im = list(w.images)
    word: list[int] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(im) - 1):
            if im[i] > im[i + 1]:
                im[i], im[i + 1] = im[i + 1], im[i]
                word.append(i + 1)
                changed = True
    word.reverse()
    return word


def word_to_perm(word: Sequence[int], n: int) -> Perm:
    out = Perm.identity(n)
    for i in word:
        if not 1 <= i < n:
            raise ValueError("generator index %d out of range for S_%d" % (i, n))
        out = out * Perm.transposition(n, i, i + 1)
    return out


# -- classes and orbits -----------------------------------------------------------------


def conjugacy_classes(G: GroupDescriptor | FiniteGroup, budget: int = DEFAULT_BUDGET) -> list[list]:
    """Conjugacy classes, each sorted, ordered by their smallest element."""
    fg = G if isinstance(G, FiniteGroup) else G.enumerate(budget)
    gens = fg.descriptor.generator_rows()
    if len(gens) == 0:
        return [[e] for e in fg.elements]
    images = kernels.conjugation_images(fg.rows, gens)
    labels = kernels.orbit_labels(images)
    classes: dict[int, list] = {}
    for i, lab in enumerate(labels.tolist()):
        classes.setdefault(lab, []).append(fg.elements[i])
    return [classes[k] for k in sorted(classes)]


@dataclass
class OrbitStabilizer:
    point: Any
    orbit: list
    stabilizer: list
    group_order: int

    def check(self) -> bool:
        return len(self.orbit) * len(self.stabilizer) == self.group_order


def action_images(
    G: GroupDescriptor | FiniteGroup,
    action: Callable[[Any], Sequence[int] | dict],
    points: Sequence,
    budget: int = DEFAULT_BUDGET,
) -> tuple[FiniteGroup, np.ndarray]:
    """Extend a generator action to all of G, verifying it is a homomorphism.

    ``action(g)`` returns either a dict point -> point or a sequence of images
    indexed like ``points``.  Returns the enumerated group and an array whose
    row ``k`` is the permutation of point indices induced by element ``k``.
    """
    fg = G if isinstance(G, FiniteGroup) else G.enumerate(budget)
    pos = {p: i for i, p in enumerate(points)}
    gen_imgs = []
    for s in fg.descriptor.generators:
        a = action(s)
        if isinstance(a, dict):
            img = [pos[a.get(p, p)] for p in points]
        else:
            img = [pos[x] for x in a] if a and not isinstance(a[0], (int, np.integer)) else list(a)
        img = np.asarray(img, dtype=np.int64)
        if sorted(img.tolist()) != list(range(len(points))):
            raise HomomorphismError("generator %s does not act by a permutation" % s)
        gen_imgs.append(img)
    n = fg.order
    P = np.full((n, len(points)), -1, np.int64)
    P[0] = np.arange(len(points))  # identity is the smallest row
    grows = fg.descriptor.generator_rows()
    # left multiplication by each generator, as index maps
    left = [kernels.lookup(fg.rows, g[fg.rows]) for g in grows]
    seen = np.zeros(n, bool)
    seen[0] = True
    queue = [0]
    head = 0
    while head < len(queue):
        e = queue[head]
        head += 1
        for k, gimg in enumerate(gen_imgs):
            t = int(left[k][e])
            img = gimg[P[e]]
            if seen[t]:
                if not np.array_equal(P[t], img):
                    raise HomomorphismError("generator images violate a relation of the group")
            else:
                seen[t] = True
                P[t] = img
                queue.append(t)
    return fg, P


def orbit_stabilizer(
    G: GroupDescriptor | FiniteGroup,
    action: Callable[[Any], Sequence[int] | dict],
    points: Sequence,
    point: Any,
    budget: int = DEFAULT_BUDGET,
) -> OrbitStabilizer:
    """Orbit of ``point`` and its stabilizer under a verified action."""
    fg, P = action_images(G, action, points, budget)
    i = list(points).index(point)
    col = P[:, i]
    orbit_idx = sorted(set(col.tolist()))
    stab = [fg.elements[k] for k in np.nonzero(col == i)[0]]
    res = OrbitStabilizer(point, [points[j] for j in orbit_idx], stab, fg.order)
    if not res.check():
        raise AssertionError("orbit-stabilizer count failed")
    return res


# -- the action of S_{n+1} on bit-strings ---------------------------------------------


def str_to_bits(s: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(s, str):
        return tuple(int(c) for c in s.strip())
    return tuple(int(c) for c in s)


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join(str(int(b)) for b in bits)


def bits_to_int(bits: Sequence[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | int(b)
    return v


def int_to_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


def string_operator(n: int, i: int, s: str | Sequence[int]) -> tuple[int, ...]:
    """Operator for entry ``i``: fix strings with a 0 there, otherwise complement the other entries.

    Bit 1 stands for the idempotent f and bit 0 for e; ``i = n + 1`` is the identity.
    """
    bits = str_to_bits(s)
    if len(bits) != n:
        raise ValueError("string length %d, expected %d" % (len(bits), n))
    if not 1 <= i <= n + 1:
        raise ValueError("operator index out of range")
    if i == n + 1 or bits[i - 1] == 0:
        return bits
    return tuple(b if k == i - 1 else 1 - b for k, b in enumerate(bits))


def _generator_images(n: int) -> list[np.ndarray]:
    """Images of s_1..s_n in S_{n+1}: entry swaps for i < n, then the operator for entry n."""
    taus, swaps = kernels.bitstring_operators(n)
    return [swaps[i] for i in range(n - 1)] + [taus[n - 1]]


def string_action_image(n: int, w: Perm) -> np.ndarray:
    """Permutation of the 2^n strings (as integers) induced by w in S_{n+1}."""
    if w.n != n + 1:
        raise ValueError("need a permutation of %d points" % (n + 1))
    gens = _generator_images(n)
    out = np.arange(1 << n, dtype=np.int64)
    # w = s_a1 ... s_ak acts by applying s_ak first
    for a in reversed(reduced_word(w)):
        out = gens[a - 1][out]
    return out


@dataclass
class StringActionCertificate:
    n: int
    involutions: bool
    commuting: bool
    braids: bool
    faithful: bool | None
    image_order: int | None = None
    failures: list = field(default_factory=list)

    @property
    def homomorphism(self) -> bool:
        return self.involutions and self.commuting and self.braids


def _is_identity(p: np.ndarray) -> bool:
    return bool(np.array_equal(p, np.arange(len(p))))


def string_action_verify(n: int, enumerate_image: bool | None = None) -> StringActionCertificate:
    """Check the Coxeter relations of S_{n+1} on all 2^n strings and decide faithfulness.

    Faithfulness uses the normal subgroups of S_{n+1}: the kernel is trivial
    iff it misses a 3-cycle, plus (12)(34) when n + 1 = 4 and (12) when n + 1 = 2.
    With ``enumerate_image`` the image group is also enumerated (small n).
    """
    if n < 1:
        raise ValueError("n must be positive")
    g = _generator_images(n)
    fails = []
    inv = all(_is_identity(x[x]) for x in g)
    if not inv:
        fails.append("involution")
    comm = True
    braid = True
    for i in range(n):
        for j in range(i + 1, n):
            ab = g[i][g[j]]
            if j - i >= 2:
                if not _is_identity(ab[ab]):
                    comm = False
                    fails.append("commute %d %d" % (i + 1, j + 1))
            else:
                if not _is_identity(ab[ab][ab]):
                    braid = False
                    fails.append("braid %d" % (i + 1))
    cert = StringActionCertificate(n, inv, comm, braid, None, failures=fails)
    if not cert.homomorphism:
        raise HomomorphismError("relation failures: %s" % ", ".join(fails))
    m = n + 1
    tests = []
    if m >= 3:
        tests.append(Perm.from_cycles("(1,2,3)", m))
    if m == 4:
        tests.append(Perm.from_cycles("(1,2)(3,4)", m))
    if m == 2:
        tests.append(Perm.from_cycles("(1,2)", m))
    cert.faithful = all(not _is_identity(string_action_image(n, w)) for w in tests)
    if enumerate_image is None:
        enumerate_image = n <= 6
    if enumerate_image:
        cert.image_order = len(kernels.closure(np.stack(g), max_order=math.factorial(m) + 1))
    return cert
