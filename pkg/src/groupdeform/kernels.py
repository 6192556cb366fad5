"""Integer kernels for permutation groups.

Each kernel has a loop version compiled with numba and a vectorized numpy
version.  The public functions dispatch on :func:`groupdeform._jit.backend`
and return identical results (element lists are sorted lexicographically so
the enumeration order does not depend on the backend).

Permutations here are 0-indexed image arrays; the product ``p * q`` applies
``q`` first, i.e. ``(p * q)[x] = p[q[x]]``.
"""

from __future__ import annotations

import numpy as np

from ._jit import backend, njit

__all__ = [
    "BudgetExceeded",
    "closure",
    "lookup",
    "orbit_labels",
    "multiplication_table",
    "is_associative",
    "conjugation_images",
    "bitstring_operators",
]


class BudgetExceeded(RuntimeError):
    """An enumeration grew past its configured limit."""


_HMOD = 1 << 40


@njit
def _row_hash(row, mask):
    h = 7
    for j in range(row.shape[0]):
        h = (h * 131 + row[j] + 1) % 1099511627776
    return h & mask


@njit
def _table_size(n):
    size = 16
    while size < 2 * n:
        size *= 2
    return size


@njit
def _find(table, elems, row, mask):
    h = _row_hash(row, mask)
    d = row.shape[0]
    while True:
        idx = table[h]
        if idx < 0:
            return -1, h
        same = True
        for j in range(d):
            if elems[idx, j] != row[j]:
                same = False
                break
        if same:
            return idx, h
        h = (h + 1) & mask


@njit
def _closure_nb(gens, max_order):
    k, d = gens.shape
    cap = max_order + 1
    elems = np.empty((cap, d), np.int64)
    size = _table_size(cap)
    mask = size - 1
    table = -np.ones(size, np.int64)
    for j in range(d):
        elems[0, j] = j
    _, slot = _find(table, elems, elems[0], mask)
    table[slot] = 0
    count = 1
    head = 0
    buf = np.empty(d, np.int64)
    while head < count:
        for g in range(k):
            for j in range(d):
                buf[j] = gens[g, elems[head, j]]
            idx, slot = _find(table, elems, buf, mask)
            if idx < 0:
                if count >= max_order:
                    return elems[:count], False
                for j in range(d):
                    elems[count, j] = buf[j]
                table[slot] = count
                count += 1
        head += 1
    return elems[:count], True


def _keys(rows: np.ndarray) -> np.ndarray:
    """Byte keys whose memcmp order is the lexicographic order of rows."""
    a = np.ascontiguousarray(rows, dtype=">i4")
    return a.view(np.dtype((np.void, 4 * a.shape[1]))).ravel()


def _closure_np(gens: np.ndarray, max_order: int):
    d = gens.shape[1]
    known = np.arange(d, dtype=np.int64)[None, :]
    known_keys = _keys(known)
    frontier = known
    while len(frontier):
        cand = gens[:, frontier].reshape(-1, d)
        ck = _keys(cand)
        _, first = np.unique(ck, return_index=True)
        cand = cand[first]
        ck = ck[first]
        pos = np.searchsorted(known_keys, ck)
        pos = np.minimum(pos, len(known_keys) - 1)
        new = known_keys[pos] != ck
        frontier = cand[new]
        if len(known) + len(frontier) > max_order:
            return np.concatenate([known, frontier])[:max_order], False
        known = np.concatenate([known, frontier])
        order = np.argsort(_keys(known), kind="stable")
        known = known[order]
        known_keys = _keys(known)
    return known, True


def _lexsort_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) == 0:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def closure(gens, max_order: int = 100_000) -> np.ndarray:
    """All elements of the group generated by ``gens`` (rows), lexicographically sorted."""
    g = np.asarray(gens, dtype=np.int64)
    if g.ndim != 2:
        raise ValueError("generators must be a 2-D array")
    if g.shape[0] == 0:
        return np.arange(g.shape[1], dtype=np.int64)[None, :]
    if backend() == "numba":
        elems, ok = _closure_nb(g, max_order)
    else:
        elems, ok = _closure_np(g, max_order)
    if not ok:
        raise BudgetExceeded("group order exceeds %d" % max_order)
    return _lexsort_rows(np.asarray(elems))


@njit
def _lookup_nb(elems, rows):
    n, d = elems.shape
    size = _table_size(n)
    mask = size - 1
    table = -np.ones(size, np.int64)
    for i in range(n):
        _, slot = _find(table, elems, elems[i], mask)
        table[slot] = i
    out = np.empty(rows.shape[0], np.int64)
    for r in range(rows.shape[0]):
        idx, _ = _find(table, elems, rows[r], mask)
        out[r] = idx
    return out


def _lookup_np(elems: np.ndarray, rows: np.ndarray) -> np.ndarray:
    ek = _keys(elems)
    rk = _keys(rows)
    pos = np.searchsorted(ek, rk)
    pos = np.minimum(pos, len(ek) - 1)
    return np.where(ek[pos] == rk, pos, -1).astype(np.int64)


def lookup(elems: np.ndarray, rows) -> np.ndarray:
    """Index of each row in the sorted element array ``elems`` (-1 if absent)."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    if backend() == "numba":
        return _lookup_nb(np.ascontiguousarray(elems, dtype=np.int64), np.ascontiguousarray(rows))
    return _lookup_np(elems, rows)


@njit
def _orbit_labels_nb(perms):
    k, n = perms.shape
    parent = np.arange(n)
    for g in range(k):
        for x in range(n):
            a = x
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = perms[g, x]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
    out = np.empty(n, np.int64)
    for x in range(n):
        a = x
        while parent[a] != a:
            a = parent[a]
        out[x] = a
    return out


def _orbit_labels_np(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    label = np.arange(n, dtype=np.int64)
    while True:
        new = label.copy()
        for p in perms:
            new = np.minimum(new, new[p])
            np.minimum.at(new, p, new.copy())
        new = new[new]
        if np.array_equal(new, label):
            return label
        label = new


def orbit_labels(perms) -> np.ndarray:
    """Label each point by the smallest point in its orbit under the given permutations."""
    p = np.asarray(perms, dtype=np.int64)
    if p.ndim == 1:
        p = p[None, :]
    if p.shape[0] == 0:
        return np.arange(p.shape[1], dtype=np.int64)
    if backend() == "numba":
        return _orbit_labels_nb(np.ascontiguousarray(p))
    return _orbit_labels_np(p)


@njit
def _mult_table_nb(elems):
    n, d = elems.shape
    size = _table_size(n)
    mask = size - 1
    table = -np.ones(size, np.int64)
    for i in range(n):
        _, slot = _find(table, elems, elems[i], mask)
        table[slot] = i
    out = np.empty((n, n), np.int32)
    buf = np.empty(d, np.int64)
    for i in range(n):
        for j in range(n):
            for x in range(d):
                buf[x] = elems[i, elems[j, x]]
            idx, _ = _find(table, elems, buf, mask)
            out[i, j] = idx
    return out


def _mult_table_np(elems: np.ndarray) -> np.ndarray:
    n = len(elems)
    out = np.empty((n, n), np.int32)
    for i in range(n):
        out[i] = _lookup_np(elems, elems[i][elems])
    return out


def multiplication_table(elems: np.ndarray) -> np.ndarray:
    """``table[i, j]`` is the index of ``elems[i] * elems[j]``."""
    e = np.ascontiguousarray(elems, dtype=np.int64)
    if backend() == "numba":
        return _mult_table_nb(e)
    return _mult_table_np(e)


@njit
def _assoc_nb(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return False
    return True


def _assoc_np(table: np.ndarray) -> bool:
    for a in range(table.shape[0]):
        if not np.array_equal(table[table[a]], table[a][table]):
            return False
    return True


def is_associative(table: np.ndarray) -> bool:
    """Exhaustive associativity check of a multiplication table."""
    t = np.ascontiguousarray(table)
    if backend() == "numba":
        return bool(_assoc_nb(t))
    return _assoc_np(t)


def conjugation_images(elems: np.ndarray, gens) -> np.ndarray:
    """Row ``k`` maps element index ``i`` to the index of ``g_k e_i g_k^-1``."""
    g = np.asarray(gens, dtype=np.int64)
    out = np.empty((len(g), len(elems)), np.int64)
    for k, s in enumerate(g):
        sinv = np.argsort(s)
        rows = s[elems][:, sinv]
        out[k] = lookup(elems, rows)
    return out


@njit
def _bit_ops_nb(n):
    size = 1 << n
    full = size - 1
    taus = np.empty((n + 1, size), np.int64)
    swaps = np.empty((max(n - 1, 0), size), np.int64)
    for s in range(size):
        for i in range(n):
            bit = 1 << (n - 1 - i)
            if s & bit:
                taus[i, s] = (s ^ full) | bit
            else:
                taus[i, s] = s
        taus[n, s] = s
        for i in range(n - 1):
            hi = (s >> (n - 1 - i)) & 1
            lo = (s >> (n - 2 - i)) & 1
            t = s & ~((1 << (n - 1 - i)) | (1 << (n - 2 - i)))
            swaps[i, s] = t | (lo << (n - 1 - i)) | (hi << (n - 2 - i))
    return taus, swaps


def _bit_ops_np(n: int):
    s = np.arange(1 << n, dtype=np.int64)
    full = (1 << n) - 1
    taus = np.empty((n + 1, 1 << n), np.int64)
    for i in range(n):
        bit = 1 << (n - 1 - i)
        taus[i] = np.where(s & bit, (s ^ full) | bit, s)
    taus[n] = s
    swaps = np.empty((max(n - 1, 0), 1 << n), np.int64)
    for i in range(n - 1):
        b1, b2 = n - 1 - i, n - 2 - i
        hi = (s >> b1) & 1
        lo = (s >> b2) & 1
        swaps[i] = (s & ~((1 << b1) | (1 << b2))) | (lo << b1) | (hi << b2)
    return taus, swaps


def bitstring_operators(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Images of the complement operators and adjacent entry swaps on all 2^n strings.

    A string ``(s_1, ..., s_n)`` is the integer with ``s_1`` as its most
    significant bit.  ``taus[i-1]`` is the operator for entry ``i`` (identity
    when the entry is 0, otherwise complement every other entry);
    ``taus[n]`` is the identity.  ``swaps[i-1]`` exchanges entries i, i+1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if backend() == "numba":
        return _bit_ops_nb(n)
    return _bit_ops_np(n)
