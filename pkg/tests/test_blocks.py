import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from sympy.functions.combinatorial.numbers import partition as npartitions

from groupdeform.blocks import (
    WreathAlgebra,
    dn_orbit_data,
    irreducible_dims,
    middle_stabilizer_check,
    matrix_unit_check,
    partition_count,
    partitions,
    qbn_blocks,
    qdn_blocks,
    smash_decompose,
    wreath_decompose,
)
from groupdeform.groups import Perm, conjugacy_classes, cyclic, hyperoctahedral, perm_group, symmetric, string_action_image


@pytest.mark.parametrize("m", range(0, 12))
def test_partition_counts(m):
    assert partition_count(m) == npartitions(m) == len(partitions(m))


@pytest.mark.parametrize("m", range(1, 8))
def test_irreducible_dims_square_sum(m):
    dims = irreducible_dims(m)
    assert len(dims) == npartitions(m)
    assert sum(d * d for d in dims) == math.factorial(m)


def test_smash_dimension_and_shape():
    swap = perm_group(4, [Perm.from_cycles("(2,3)", 4)])
    d = smash_decompose(4, swap)
    assert d.total == 8
    assert sorted(s.dimension for s in d.summands) == [2, 2, 4]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wreath_of_two_points_is_qbn(n):
    d = wreath_decompose([1, 1], n, symmetric(n))
    assert d.total == 2**n * math.factorial(n)
    assert d.block_count == len(conjugacy_classes(hyperoctahedral(n)))


def test_wreath_with_matrix_blocks():
    d = wreath_decompose([2, 1], 2, symmetric(2))
    assert d.total == (4 + 1) ** 2 * 2
    assert sum(x * x for x in d.simple_blocks) == d.total


@pytest.mark.parametrize("n", [2, 3])
def test_wreath_blocks_square_sum(n):
    d = wreath_decompose([1, 2, 1], n, symmetric(n))
    assert sum(x * x for x in d.simple_blocks) == d.total


@pytest.mark.parametrize("n", range(1, 11))
def test_qbn_audits(n):
    d = qbn_blocks(n, class_check=False)
    assert d.total == 2**n * math.factorial(n)
    assert d.block_count == sum(npartitions(m) * npartitions(n - m) for m in range(n + 1))


def test_qdn_small_cases():
    assert qdn_blocks(3).simple_blocks == [1, 1, 2, 3, 3]
    d4 = qdn_blocks(4)
    assert d4.total == 192 and d4.block_count == 13
    assert qdn_blocks(5).block_count == 18


@pytest.mark.parametrize("n", range(2, 9))
def test_qdn_totals(n):
    assert qdn_blocks(n, class_check=False).total == 2 ** (n - 1) * math.factorial(n)


def _orbits_by_search(n):
    """Orbits of S_{n+1} on strings from the images of all transpositions."""
    imgs = [string_action_image(n, Perm.transposition(n + 1, a, b)) for a, b in itertools.combinations(range(1, n + 2), 2)]
    seen, orbits = set(), []
    for v in range(1 << n):
        if v in seen:
            continue
        orb, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for g in imgs:
                y = int(g[x])
                if y not in orb:
                    orb.add(y)
                    stack.append(y)
        seen |= orb
        orbits.append(orb)
    return orbits


@pytest.mark.parametrize("n", range(2, 8))
def test_orbit_data_against_search(n):
    rep = dn_orbit_data(n)
    assert rep.passed
    assert sorted(o.size for o in rep.orbits) == sorted(len(o) for o in _orbits_by_search(n))
    for o in rep.orbits:
        assert o.size * o.stabilizer_order == math.factorial(n + 1)


def test_orbit_data_rejects_n1():
    with pytest.raises(ValueError):
        dn_orbit_data(1)


@pytest.mark.parametrize("r", [1, 2])
def test_middle_stabilizer_identities(r):
    c = middle_stabilizer_check(r)
    assert c.passed, c.failures()


@pytest.mark.parametrize(
    "I,G,blocks",
    [((0, 1), symmetric(2), (1, 1)), ((0, 0), symmetric(2), (2, 1)), ((0, 0, 1), symmetric(3), (1, 1)), ((0, 0, 0), cyclic(3), (2,))],
    ids=["distinct", "switch", "s3", "c3"],
)
def test_matrix_unit_witnesses(I, G, blocks):
    c = matrix_unit_check(I, G, blocks)
    assert c.passed, c.failures()


def _random_element(W, rng, size=4):
    keys = list(itertools.product(*[W._diag() + [(0, 0, 1)] for _ in range(W.n)]))
    return {(rng.choice(keys), rng.randrange(W.group.order)): Fraction(rng.randint(-3, 3) or 1) for _ in range(size)}


def test_wreath_algebra_associative_and_unital():
    W = WreathAlgebra((2, 1), 2, symmetric(2))
    rng = random.Random(3)
    one = W.one()
    for _ in range(20):
        x, y, z = (_random_element(W, rng) for _ in range(3))
        assert W.mul(W.mul(x, y), z) == W.mul(x, W.mul(y, z))
        assert W.mul(one, x) == x == W.mul(x, one)


def test_summand_idempotents_partition_unity():
    W = WreathAlgebra((1, 2), 2, symmetric(2))
    total = {}
    for I in itertools.product(range(2), repeat=2):
        e = W.e(I)
        assert W.mul(e, e) == e
        total = W.add(total, e)
    assert total == W.one()
