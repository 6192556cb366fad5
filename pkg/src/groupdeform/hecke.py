"""The Hecke algebra H_n(q) of S_n over Z[q, q^-1].

Basis T_w for w in S_n, with

* ``T_s T_w = T_{sw}`` when length(sw) > length(w),
* ``T_s T_w = (q - q^-1) T_w + T_{sw}`` otherwise,

and the mirrored rules on the right.  In particular T_s^2 = (q - q^-1) T_s + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

from .algebra import Algebra, AlgebraElement, group_algebra
from .groups import Perm, reduced_word, symmetric, word_to_perm
from .scalars import EvaluationAtPole, Frac, Poly, simplify, specialize

__all__ = [
    "HeckeElement",
    "RankMismatch",
    "q_var",
    "hecke_basis",
    "hecke_generator",
    "multiply_by_generator",
    "hecke_multiply",
    "multiply_word",
    "specialize_q1",
    "hecke_algebra",
    "parse_word",
]


class RankMismatch(ValueError):
    pass


def q_var() -> Poly:
    return Poly.var("q")


def _qdiff() -> Poly:
    q = q_var()
    return q - q**-1


@dataclass(frozen=True)
class HeckeElement:
    """Sparse combination of T_w, keyed by permutations of {1..n}."""

    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, c in self.terms.items():
            if w.n != self.n:
                raise RankMismatch("T_w with w in S_%d inside H_%d" % (w.n, self.n))
            if isinstance(c, int):
                c = Poly.const(c)
            if c:
                clean[w] = simplify(c)
        object.__setattr__(self, "terms", clean)

    def _check(self, other: "HeckeElement") -> None:
        if other.n != self.n:
            raise RankMismatch("H_%d versus H_%d" % (self.n, other.n))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.n, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __mul__(self, other: Any) -> "HeckeElement":
        if isinstance(other, HeckeElement):
            return hecke_multiply(self, other)
        return HeckeElement(self.n, {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other: Any) -> "HeckeElement":
        return HeckeElement(self.n, {w: other * c for w, c in self.terms.items()})

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(reduced_word(w)), w.images)):
            c = self.terms[w]
            label = _t_label(w)
            s = str(c)
            parts.append(label if s == "1" else "(%s)*%s" % (s, label))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            {"word": reduced_word(w), "permutation": str(w), "scalar": str(c)}
            for w, c in sorted(self.terms.items(), key=lambda kv: kv[0].images)
        ]


def _t_label(w: Perm) -> str:
    word = reduced_word(w)
    return "T[%s]" % " ".join("s%d" % i for i in word) if word else "T[e]"


def hecke_basis(w: Perm) -> HeckeElement:
    return HeckeElement(w.n, {w: Poly.const(1)})


def hecke_generator(n: int, i: int) -> HeckeElement:
    if not 1 <= i < n:
        raise IndexError("generator s%d not in S_%d" % (i, n))
    return hecke_basis(Perm.transposition(n, i, i + 1))


def _swap_values(w: Perm, i: int) -> Perm:
    im = tuple(i + 1 if v == i else i if v == i + 1 else v for v in w.images)
    return Perm(im)


def _swap_positions(w: Perm, i: int) -> Perm:
    im = list(w.images)
    im[i - 1], im[i] = im[i], im[i - 1]
    return Perm(tuple(im))


def multiply_by_generator(i: int, x: HeckeElement, side: str = "left") -> HeckeElement:
    """T_{s_i} x (side='left') or x T_{s_i} (side='right')."""
    n = x.n
    if not 1 <= i < n:
        raise IndexError("generator s%d not in S_%d" % (i, n))
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    qd = _qdiff()
    out: dict = {}

    def add(w, c):
        v = out.get(w)
        s = c if v is None else v + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)

    for w, c in x.terms.items():
        if side == "left":
            sw = _swap_values(w, i)
            longer = w.images.index(i) < w.images.index(i + 1)
        else:
            sw = _swap_positions(w, i)
            longer = w.images[i - 1] < w.images[i]
        if longer:
            add(sw, c)
        else:
            add(w, c * qd)
            add(sw, c)
    return HeckeElement(n, out)


def multiply_word(word: Sequence[int], y: HeckeElement) -> HeckeElement:
    """T_{a1} ... T_{ak} y, applying the rightmost generator first."""
    out = y
    for a in reversed(list(word)):
        out = multiply_by_generator(a, out, "left")
    return out


@lru_cache(maxsize=200_000)
def _basis_product(v: Perm, w: Perm) -> tuple:
    res = multiply_word(reduced_word(v), hecke_basis(w))
    return tuple(res.terms.items())


def hecke_multiply(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """Bilinear product, each T_v T_w expanded along a reduced word of v."""
    if x.n != y.n:
        raise RankMismatch("H_%d versus H_%d" % (x.n, y.n))
    out: dict = {}
    for v, a in x.terms.items():
        for w, b in y.terms.items():
            ab = a * b
            for u, c in _basis_product(v, w):
                s = out.get(u)
                t = ab * c if s is None else s + ab * c
                if t:
                    out[u] = t
                else:
                    out.pop(u, None)
    return HeckeElement(x.n, out)


def specialize_q1(x: HeckeElement, algebra: Algebra | None = None) -> AlgebraElement:
    """Image in the group algebra Z S_n under q -> 1, T_w -> w."""
    A = algebra or group_algebra(symmetric(x.n))
    coeffs = {}
    for w, c in x.terms.items():
        try:
            v = specialize(c, [("q", 1)])
        except EvaluationAtPole:
            raise
        if v:
            coeffs[w] = v
    return A.element(coeffs)


def hecke_algebra(n: int) -> Algebra:
    """H_n(q) as a structure-constant algebra on the elements of S_n (lexicographic order)."""
    fg = symmetric(n).enumerate()
    perms = fg.elements

    def rule(i: int, j: int) -> dict:
        idx = fg.index
        return {idx[u]: c for u, c in _basis_product(perms[i], perms[j])}

    A = Algebra("H_%d(q)" % n, perms, rule, {0: 1}, 0, check=n <= 3)
    A.group = fg
    return A


def parse_word(text: str, n: int) -> Perm:
    """Parse ``"s1 s2 s1"`` (generator word) or cycle notation ``"(1,3)"`` into a permutation."""
    text = text.strip()
    if not text or text in ("e", "1"):
        return Perm.identity(n)
    if text.startswith("("):
        return Perm.from_cycles(text, n)
    word = []
    for tok in text.replace(",", " ").split():
        tok = tok.lower().lstrip("s")
        word.append(int(tok))
    return word_to_perm(word, n)
