import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from groupdeform import kernels
from groupdeform.groups import (
    HomomorphismError,
    Perm,
    action_images,
    bits_to_int,
    conjugacy_classes,
    coxeter_length,
    cyclic,
    dihedral,
    direct_product,
    hyperoctahedral,
    int_to_bits,
    orbit_stabilizer,
    perm_group,
    reduced_word,
    symmetric,
    string_action_image,
    string_operator,
    string_action_verify,
    weyl_d,
    word_to_perm,
    wreath,
)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(lambda p: Perm(tuple(p)))


def _sympy_group(desc):
    gens = [Permutation(list(r)) for r in desc.generator_rows()]
    return PermutationGroup(gens)


@pytest.mark.parametrize(
    "desc",
    [cyclic(5), dihedral(4), symmetric(4), wreath(3, 2), hyperoctahedral(3), weyl_d(4), direct_product(cyclic(2), symmetric(3))],
    ids=str,
)
def test_orders_against_sympy(desc):
    G = desc.enumerate()
    assert G.order == desc.order == _sympy_group(desc).order()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_class_counts_against_sympy(n):
    for desc in (hyperoctahedral(n), weyl_d(n), symmetric(n + 1)):
        if desc.order == 1:
            continue
        want = len(_sympy_group(desc).conjugacy_classes())
        assert len(conjugacy_classes(desc)) == want


def test_hyperoctahedral_class_counts():
    # bipartition counts 2, 5, 10, 20
    assert [len(conjugacy_classes(hyperoctahedral(n))) for n in range(1, 5)] == [2, 5, 10, 20]


def test_closure_brute_force_s4():
    rows = symmetric(4).generator_rows()
    got = {tuple(r) for r in kernels.closure(rows).tolist()}
    assert got == set(itertools.permutations(range(4)))


@settings(max_examples=50, deadline=None)
@given(perms(5))
def test_reduced_word(w):
    word = reduced_word(w)
    assert len(word) == coxeter_length(w)
    assert word_to_perm(word, 5) == w


@settings(max_examples=50, deadline=None)
@given(perms(5), perms(5))
def test_perm_composition(a, b):
    assert (a * b)(3) == a(b(3))
    assert (a * b).inverse() == b.inverse() * a.inverse()


def test_from_cycles():
    p = Perm.from_cycles("(1,2,3)", 4)
    assert p(1) == 2 and p(3) == 1 and p(4) == 4
    assert str(Perm.from_cycles("(1 3)(2 4)", 4)) == "(1,3)(2,4)"


def test_word_out_of_range():
    with pytest.raises(ValueError):
        word_to_perm([4], 4)


def test_orbit_stabilizer_on_pairs():
    pts = list(itertools.combinations(range(1, 5), 2))
    G = symmetric(4)

    def act(g):
        return {s: tuple(sorted(g(i) for i in s)) for s in pts}

    res = orbit_stabilizer(G, act, pts, (1, 2))
    assert len(res.orbit) == 6
    assert len(res.stabilizer) == 4
    assert res.check()


def test_action_images_rejects_bad_relations():
    # send the generators of S_3 to a 3-cycle: violates s^2 = 1
    with pytest.raises(HomomorphismError):
        action_images(symmetric(3), lambda g: [1, 2, 0], [0, 1, 2])


def test_string_operator_matches_kernel():
    n = 4
    taus, swaps = kernels.bitstring_operators(n)
    for v in range(1 << n):
        bits = int_to_bits(v, n)
        for i in range(1, n + 1):
            assert taus[i - 1][v] == bits_to_int(string_operator(n, i, bits))
        for i in range(1, n):
            b = list(bits)
            b[i - 1], b[i] = b[i], b[i - 1]
            assert swaps[i - 1][v] == bits_to_int(b)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_string_action_is_faithful_homomorphism(n):
    P = [Perm(p) for p in itertools.permutations(range(1, n + 2))]
    imgs = {w: string_action_image(n, w) for w in P}
    rng = np.random.default_rng(n)
    for _ in range(200):
        v, w = P[rng.integers(len(P))], P[rng.integers(len(P))]
        assert np.array_equal(imgs[v * w], imgs[v][imgs[w]])
    distinct = {tuple(x.tolist()) for x in imgs.values()}
    assert len(distinct) == math.factorial(n + 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_string_action_certificate(n):
    c = string_action_verify(n)
    assert c.homomorphism
    assert c.faithful == (n >= 2)


def test_perm_group_order():
    G = perm_group(4, [Perm.from_cycles("(1,2)", 4), Perm.from_cycles("(3,4)", 4)])
    assert G.order == 4
