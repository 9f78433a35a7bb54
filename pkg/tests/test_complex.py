import threading
from itertools import combinations

import pytest

from simpkit.complex import (PropertyCache, SimplicialComplex, boundary_complex, connected_components, cycle,
                             disjoint_union, euler_characteristic, f_vector, from_facets, induced_subcomplex,
                             is_connected, is_pseudomanifold, join, link, neighborliness, permuted,
                             pseudomanifold_check, relabeled, simplex_boundary, simplex_complex, skeleton,
                             star)
from simpkit.errors import InvalidFaceError


def brute_faces(facets):
    faces = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            faces.update(combinations(sorted(f), k))
    return faces


def test_labels_are_sorted_and_numbered():
    K = from_facets([("b", "c", "a"), ("c", "d")])
    assert K.labels == ("a", "b", "c", "d")
    assert K.facets == ((1, 2, 3), (3, 4))
    assert K.labeled_facets() == [("a", "b", "c"), ("c", "d")]
    assert K.id_of("d") == 4 and K.label_of(1) == "a"
    with pytest.raises(KeyError):
        K.id_of("z")


def test_non_maximal_and_duplicate_facets_collapse():
    K = from_facets([(1, 2, 3), (1, 2), (3, 2, 1), (4,)])
    assert K.facets == ((1, 2, 3), (4,))
    assert not K.is_pure


@pytest.mark.parametrize("bad", [[()], [(1, 1, 2)]])
def test_bad_facets_rejected(bad):
    with pytest.raises(ValueError):
        from_facets(bad)


def test_empty_complex():
    K = from_facets([])
    assert K.is_empty and K.dim == -1 and f_vector(K) == []
    assert pseudomanifold_check(K) == (False, "empty")


@pytest.mark.parametrize("d", range(0, 6))
def test_simplex_boundary_counts(d):
    K = simplex_boundary(d)
    from math import comb
    assert f_vector(K) == [comb(d + 2, k + 1) for k in range(d + 1)]
    assert euler_characteristic(K) == 1 + (-1) ** d
    assert K.name == f"S^{d}_{d + 2}"


def test_f_vector_matches_brute_force(corpus):
    for K in corpus:
        faces = brute_faces(K.facets)
        counts = [sum(1 for f in faces if len(f) == k + 1) for k in range(K.dim + 1)]
        assert f_vector(K) == counts, K.name


def test_has_face():
    K = simplex_boundary(2)
    assert K.has_face((1, 2)) and K.has_face((3, 1)) and not K.has_face((1, 2, 3, 4))
    assert not from_facets([(1, 2), (2, 3)]).has_face((1, 3))


def test_link_and_star(torus):
    for v in torus.vertices:
        L = link(torus, (v,))
        assert f_vector(L) == [6, 6] and is_connected(L)
        assert len(star(torus, (v,)).facets) == 6
    e = torus.faces(1)[0]
    assert f_vector(link(torus, e)) == [2]
    with pytest.raises(InvalidFaceError):
        link(simplex_boundary(1), (1, 2, 3))


def test_link_of_facet_is_empty():
    K = simplex_boundary(2)
    assert link(K, (1, 2, 3)).is_empty


def test_skeleton():
    K = simplex_boundary(3)
    S = skeleton(K, 1)
    assert f_vector(S) == [5, 10]
    assert skeleton(K, 3) is K
    with pytest.raises(IndexError):
        skeleton(K, 4)


def test_induced_subcomplex():
    K = simplex_boundary(2)
    assert f_vector(induced_subcomplex(K, [1, 2, 3])) == [3, 3, 1]
    assert induced_subcomplex(K, []).is_empty


def test_neighborliness(torus, rp2, k3):
    assert neighborliness(torus) == 2
    assert neighborliness(rp2) == 2
    assert neighborliness(k3) == 3
    assert neighborliness(cycle(5)) == 1
    assert neighborliness(simplex_boundary(3)) == 4


def test_components_and_union():
    K = disjoint_union(simplex_boundary(1), cycle(4))
    assert len(connected_components(K)) == 2
    assert not is_connected(K)
    assert pseudomanifold_check(K) == (False, "disconnected")


def test_pseudomanifold_codes():
    assert pseudomanifold_check(simplex_boundary(2)) == (True, "ok")
    assert pseudomanifold_check(from_facets([(1, 2, 3), (3, 4)])) == (False, "not_pure")
    assert pseudomanifold_check(simplex_complex(2)) == (False, "ridge_degree")
    assert not is_pseudomanifold(from_facets([(1, 2, 3), (1, 2, 4), (1, 2, 5)]))


def test_boundary_complex():
    moebius = from_facets([(1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 4, 5), (1, 2, 5)])
    B = boundary_complex(moebius)
    assert f_vector(B) == [5, 5] and is_connected(B)
    assert boundary_complex(simplex_boundary(2)).is_empty


def test_join_of_spheres_is_sphere():
    J = join(simplex_boundary(1), simplex_boundary(0))
    assert f_vector(J) == [5, 9, 6]
    assert is_pseudomanifold(J)


def test_relabel_and_permute_preserve_shape(torus):
    R = relabeled(torus, {x: x + 100 for x in torus.labels})
    assert R.labels[0] == 101 and f_vector(R) == f_vector(torus)
    P = permuted(torus, [2, 3, 4, 5, 6, 7, 1])
    assert f_vector(P) == f_vector(torus)


def test_equality_uses_facets_and_labels():
    a = from_facets([(1, 2), (2, 3)])
    b = from_facets([(3, 2), (2, 1)])
    c = from_facets([(1, 2), (2, 4)])
    assert a == b and hash(a) == hash(b)
    assert a != c


def test_cache_is_write_once():
    c = PropertyCache()
    assert c.put("x", 1) == 1
    assert c.put("x", 2) == 1
    assert c.get_or_compute("x", lambda: 3) == 1
    assert "x" in c and c.keys() == ["x"]


def test_cache_transparent():
    K = simplex_boundary(3)
    assert "f_vector" not in K.cache
    first = f_vector(K)
    assert K.cache.get("f_vector") is first
    assert f_vector(K) is first


def test_cache_thread_safety():
    K = simplex_boundary(4)
    results = []
    barrier = threading.Barrier(8)

    def work():
        barrier.wait()
        results.append(f_vector(K))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


def test_constructor_trusts_input():
    K = SimplicialComplex([(1, 2)], (1, 2), name="edge")
    assert K.n_vertices == 2 and K.dim == 1 and repr(K).startswith("<SimplicialComplex 'edge'")
