import random

import pytest

from simpkit.bistellar import (AnnealingParams, Move, apply_move, format_trace, is_manifold, is_manifold_heuristic,
                               move_options, parse_trace, randomize, recognise_sphere, reduce, replay)
from simpkit.complex import (euler_characteristic, f_vector, from_facets, is_pseudomanifold, link,
                             simplex_boundary)
from simpkit.errors import InvalidMoveError, PreconditionError
from simpkit.homology import homology
from simpkit.matching import is_isomorphic


def all_options(K):
    return [m for i in range(K.dim + 1) for m in move_options(K, i)]


def reverse_of(K, m, L):
    """The move on L undoing move m on K."""
    d = K.dim
    if m.index == 0:
        new = next(x for x in L.labels if x not in K.labels)
        return Move((L.id_of(new),), tuple(L.id_of(K.label_of(v)) for v in m.face))
    face = tuple(sorted(L.id_of(K.label_of(v)) for v in m.cofacet))
    if m.index == d:
        return Move(face, (L.n_vertices + 1,))
    return Move(face, tuple(sorted(L.id_of(K.label_of(v)) for v in m.face)))


def test_move_counts_on_tetrahedron_boundary():
    K = simplex_boundary(2)
    assert len(move_options(K, 0)) == 4  # subdivide any triangle
    assert move_options(K, 1) == []  # edge flips would create an existing edge
    assert move_options(K, 2) == []  # removing a vertex would recreate the opposite facet
    with pytest.raises(ValueError):
        move_options(K, 3)


def test_zero_move_then_vertex_removal():
    K = simplex_boundary(3)
    m = move_options(K, 0)[0]
    L = apply_move(K, m)
    assert f_vector(L) == [6, 14, 16, 8]
    back = reverse_of(K, m, L)
    assert back.index == 3
    assert is_isomorphic(apply_move(L, back), K)


def test_invalid_moves_rejected():
    K = simplex_boundary(3)
    with pytest.raises(InvalidMoveError):
        apply_move(K, Move((1, 2), (3, 4, 5)))  # 3-4-5 is already a face
    with pytest.raises(InvalidMoveError):
        apply_move(K, Move((1, 2, 3, 4), (7,)))
    with pytest.raises(InvalidMoveError):
        apply_move(K, Move((1, 9), (2, 3, 4)))
    with pytest.raises(PreconditionError):
        move_options(from_facets([(1, 2, 3)]), 0)


def test_random_moves_preserve_invariants(sphere_corpus):
    rng = random.Random(2024)
    moves = 0
    spheres = [K for K in sphere_corpus if K.dim >= 2]
    assert spheres
    while moves < 200:
        K = rng.choice(spheres)
        H, chi = homology(K), euler_characteristic(K)
        for _ in range(10):
            m = rng.choice(all_options(K))
            L = apply_move(K, m)
            moves += 1
            assert is_pseudomanifold(L)
            assert homology(L) == H
            assert euler_characteristic(L) == chi
            R = apply_move(L, reverse_of(K, m, L))
            assert is_isomorphic(R, K)
            K = L


def test_randomize_determinism():
    S = simplex_boundary(3)
    assert randomize(S, 0, seed=3) is S
    a = randomize(S, 30, seed=5)
    b = randomize(S, 30, seed=5)
    assert a == b
    assert homology(a) == homology(S)


def test_reduce_minimal_sphere_unchanged():
    S = simplex_boundary(2)
    R, trace = reduce(S)
    assert set(R.facets) == set(S.facets) and trace == []


def test_reduce_and_replay():
    K = randomize(simplex_boundary(3), 40, seed=11)
    R, trace = reduce(K, AnnealingParams(seed=2))
    assert f_vector(R) == [5, 10, 10, 5]
    again = replay(K, trace)
    assert again == R
    assert parse_trace(format_trace(trace)) == trace


def test_reduce_randomized_spheres_mostly():
    ok = 0
    for s in range(10):
        R, _ = reduce(randomize(simplex_boundary(3), 50, seed=s), AnnealingParams(seed=s))
        ok += R.n_vertices == 5
    assert ok >= 9


def test_move_parse():
    m = Move.parse("1-move: face=1,2 co=3,4")
    assert m == Move((1, 2), (3, 4)) and str(m) == "1-move: face=1,2 co=3,4"
    with pytest.raises(ValueError):
        Move.parse("2-move: face=1,2 co=3,4")
    with pytest.raises(ValueError):
        AnnealingParams(max_rounds=0)


def test_manifold_verdicts(catalog):
    from simpkit.catalog import load_entry

    def verdict(name):
        return is_manifold(load_entry(catalog, catalog.by_name(name).id)).value

    assert verdict("T^2 (VT)") is True
    assert verdict("RP^2 (VT)") is True
    assert verdict("S^2xS^1 (VT)") is True
    assert verdict("S^2~S^1 (VT)") is True
    assert verdict("Pinched torus") is False
    assert verdict("Suspension of RP^2") is False
    assert verdict("Pseudomanifold (VT, 8 vertices)") is False
    assert verdict("Two 2-spheres sharing a vertex") is False


def test_false_certificates_reverify(catalog):
    from simpkit.catalog import load_entry
    from simpkit.complex import pseudomanifold_check

    K = load_entry(catalog, catalog.by_name("Suspension of RP^2").id)
    v = is_manifold_heuristic(K)
    assert v.value is False
    bad = [(lab, rec) for lab, rec in v.certificate.items() if rec["status"] != "exact" and
           rec["status"] not in ("reduced", "simplex_boundary")]
    lab, rec = bad[-1]
    L = link(K, (K.id_of(lab),))
    if rec["status"] == "homology":
        assert [[g.rank, list(g.torsion)] for g in homology(L)] == rec["homology"]
        assert homology(L) != homology(simplex_boundary(L.dim))
    else:
        assert not pseudomanifold_check(L)[0]


def test_true_certificates_replay(catalog):
    from simpkit.catalog import load_entry

    K = load_entry(catalog, catalog.by_name("S^2xS^1 (VT)").id)
    v = is_manifold_heuristic(K, AnnealingParams(seed=0))
    assert v.value is True
    for lab, rec in v.certificate.items():
        if rec["status"] == "reduced":
            L = link(K, (K.id_of(lab),))
            R = replay(L, parse_trace("\n".join(rec["trace"])))
            assert f_vector(R) == [4, 6, 4]


def test_small_budget_may_be_undetermined(k3):
    v = is_manifold_heuristic(k3, AnnealingParams(max_rounds=1))
    assert v.value in (True, None)


def test_recognise_sphere_cases():
    p = AnnealingParams()
    assert recognise_sphere(from_facets([]), p)[0] is True
    assert recognise_sphere(simplex_boundary(3), p)[0] is True
    assert recognise_sphere(from_facets([(1, 2, 3)]), p)[0] is False
