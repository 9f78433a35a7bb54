import random
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from simpkit.complex import f_vector
from simpkit.constructions import K3_GENERATORS, K3_SEEDS, cyclic_group, k3_group
from simpkit.errors import ParseError, PreconditionError
from simpkit.homology import homology
from simpkit.permgroups import (PermGroup, Permutation, complex_from_generators, enumerate_transitive_complexes,
                                group_order, orbit_of_set, parse_generators, set_orbits, transitivity)


def brute_transitivity(G):
    elems = G.elements()
    n = G.degree
    t = 0
    for k in range(1, n + 1):
        images = {tuple(g(i) for i in range(1, k + 1)) for g in elems}
        if len(images) != factorial(n) // factorial(n - k):
            break
        t = k
    return t


def test_parse_cycles():
    p = Permutation.parse("(1,2)(3,4,5)")
    assert p.images == (2, 1, 4, 5, 3)
    assert str(p) == "(1,2)(3,4,5)"
    assert Permutation.parse("(1 3)").images == (3, 2, 1)
    assert Permutation.parse("()").is_identity()
    for bad in ["", "(1,1)", "(1,a)", "1,2", "(1,2)x"]:
        with pytest.raises(ParseError):
            Permutation.parse(bad)


def test_product_is_left_to_right():
    p = Permutation.parse("(1,2)")
    q = Permutation.parse("(2,3)")
    # apply p first, then q: 1 -> 2 -> 3
    assert (p * q)(1) == 3
    assert (p * p.inverse()).is_identity()


def test_equality_ignores_fixed_tail():
    assert Permutation.parse("(1,2)") == Permutation([2, 1, 3])
    assert hash(Permutation.parse("(1,2)")) == hash(Permutation([2, 1, 3]))


def test_parse_generators_formats():
    a = parse_generators("(1,2)(3,4)\n(1,3)\n# comment\n")
    b = parse_generators("Group((1,2)(3,4),(1,3));")
    c = parse_generators("(1,2)(3,4),(1,3)")
    assert a == b == c and len(a) == 2
    with pytest.raises(ParseError):
        parse_generators("# nothing")


@pytest.mark.parametrize("n", range(1, 7))
def test_standard_groups(n):
    assert PermGroup.symmetric(n).order() == factorial(n)
    assert PermGroup.cyclic(n).order() == n
    assert PermGroup.symmetric(n).transitivity() == n
    assert PermGroup.trivial(n).order() == 1


def test_k3_group():
    G = k3_group()
    assert G.order() == 240
    assert G.transitivity() == 2
    assert group_order(G) == 240 and transitivity(G) == 2
    assert len(G.generators) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3), st.randoms(use_true_random=False))
def test_orders_match_enumeration(n, k, rnd):
    gens = []
    for _ in range(k):
        img = list(range(1, n + 1))
        rnd.shuffle(img)
        gens.append(Permutation(img))
    G = PermGroup(gens, n)
    elems = G.elements()
    assert G.order() == len(elems)
    assert G.transitivity() == brute_transitivity(G)
    for g in elems[:20]:
        assert G.contains(g)


def test_contains_rejects_outsiders():
    G = PermGroup.cyclic(5)
    assert G.contains(Permutation.parse("(1,2,3,4,5)"))
    assert not G.contains(Permutation.parse("(1,2)"))


def test_random_larger_groups_against_elements():
    rng = random.Random(17)
    for n in (7, 8):
        for _ in range(5):
            gens = []
            for _ in range(2):
                img = list(range(1, n + 1))
                rng.shuffle(img)
                gens.append(Permutation(img))
            G = PermGroup(gens, n)
            assert G.order() == len(G.elements())


def test_orbits():
    G = PermGroup([Permutation.parse("(1,2)(3,4)")], 5)
    assert G.orbits() == [[1, 2], [3, 4], [5]]
    assert not G.is_transitive()
    assert orbit_of_set(G, [1, 3]) == {frozenset({1, 3}), frozenset({2, 4})}
    with pytest.raises(IndexError):
        orbit_of_set(G, [1, 9])


def test_set_orbits_partition():
    G = cyclic_group(6)
    orbits = set_orbits(G, 3)
    assert sum(len(o) for o in orbits) == 20
    assert sorted(len(o) for o in orbits) == [2, 6, 6, 6]


def test_complex_from_generators_k3():
    K = complex_from_generators(PermGroup.from_text(K3_GENERATORS), K3_SEEDS)
    assert f_vector(K) == [16, 120, 560, 720, 288]
    with pytest.raises(ValueError):
        complex_from_generators(k3_group(), [])
    with pytest.raises(ValueError):
        complex_from_generators(k3_group(), [[1, 1, 2]])


def test_transitive_enumeration_finds_torus_and_cp2():
    res = enumerate_transitive_complexes(7, 2, cyclic_group(7))
    kinds = sorted(tuple(g.rank for g in homology(K)) for K in res)
    assert (0, 2, 1) in kinds
    with pytest.raises(PreconditionError):
        enumerate_transitive_complexes(6, 2, PermGroup([Permutation.parse("(1,2)")], 6))


def test_transitive_enumeration_against_brute_force():
    """Every union of Z_6 orbits of triples that is a closed pseudomanifold."""
    from itertools import combinations

    from simpkit.complex import from_facets, pseudomanifold_check

    G = cyclic_group(6)
    orbits = set_orbits(G, 3)
    expect = set()
    for r in range(1, len(orbits) + 1):
        for pick in combinations(range(len(orbits)), r):
            facets = [sorted(f) for i in pick for f in orbits[i]]
            K = from_facets(facets)
            if K.n_vertices == 6 and pseudomanifold_check(K)[0]:
                expect.add(frozenset(K.facets))
    got = {frozenset(K.facets) for K in enumerate_transitive_complexes(6, 2, G)}
    assert got == expect
