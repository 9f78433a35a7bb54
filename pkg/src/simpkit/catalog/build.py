"""Regenerate the bundled catalog: ``python3 -m simpkit.catalog.build [out.json]``.

Every entry is produced by a construction in this package, so the file can be
rebuilt bit-for-bit. The 4-sphere with 6 vertices is deliberately absent: it
is 3-neighborly and would otherwise match the complete-2-skeleton 4-manifold
query alongside CP^2 and K3.
"""
from __future__ import annotations

import sys

from .. import constructions as C
from ..bistellar import randomize, reduce
from ..complex import SimplicialComplex, f_vector, from_facets, join, relabeled, simplex_boundary
from ..homology import homology
from ..permgroups import Permutation, PermGroup, enumerate_transitive_complexes
from . import BUNDLED_PATH, Catalog, CatalogEntry, compute_properties

EDITION = "simpkit-1"


def _ints(K: SimplicialComplex) -> tuple:
    """Facets over internal ids, whatever the labels were."""
    return tuple(K.facets)


def _cp2() -> SimplicialComplex:
    """First 9-vertex CP^2 among complexes invariant under Z3 x Z3 translations."""
    def pt(x, y):
        return 3 * (x % 3) + (y % 3) + 1
    a = Permutation([pt(x + 1, y) for x in range(3) for y in range(3)])
    b = Permutation([pt(x, y + 1) for x in range(3) for y in range(3)])
    for K in enumerate_transitive_complexes(9, 4, PermGroup([a, b], 9)):
        h = [g.rank for g in homology(K)]
        if f_vector(K) == [9, 36, 84, 90, 36] and h == [0, 0, 1, 0, 1]:
            return K
    raise RuntimeError("no 9-vertex CP^2 found")


def _cyclic_3d(n: int, ranks: list[int], torsion_free: bool = True) -> SimplicialComplex:
    for K in enumerate_transitive_complexes(n, 3, C.cyclic_group(n)):
        H = homology(K)
        if [g.rank for g in H] == ranks and (not torsion_free or not any(g.torsion for g in H)):
            return K
    raise RuntimeError(f"no cyclic {n}-vertex complex with ranks {ranks}")


def _cyclic_3d_torsion(n: int, ranks: list[int]) -> SimplicialComplex:
    for K in enumerate_transitive_complexes(n, 3, C.cyclic_group(n)):
        H = homology(K)
        if [g.rank for g in H] == ranks and any(g.torsion for g in H):
            return K
    raise RuntimeError(f"no cyclic {n}-vertex complex with ranks {ranks} and torsion")


def _pinched_torus() -> SimplicialComplex:
    T = C.grid_surface(5, 5)
    # grid points (0,0) and (2,3) (ids 1 and 14) have no common neighbour, so
    # identifying them keeps all faces distinct and creates one pinch point
    return from_facets([tuple(sorted(1 if v == 14 else v for v in f)) for f in T.facets])


def _wedge() -> SimplicialComplex:
    A = simplex_boundary(2)
    B = relabeled(simplex_boundary(2), {1: 1, 2: 5, 3: 6, 4: 7})
    return from_facets(list(A.facets) + list(B.labeled_facets()))


def _join_int(K, L) -> SimplicialComplex:
    return from_facets(join(K, L).facets)


def constructions() -> list[tuple[str, SimplicialComplex]]:
    klein, _ = reduce(C.grid_surface(3, 3, twist=True))
    random_sphere = randomize(simplex_boundary(3), 40, seed=7)
    return [
        ("S^0_2", simplex_boundary(0)),
        ("S^1_3", simplex_boundary(1)),
        ("S^2_4", simplex_boundary(2)),
        ("S^3_5", simplex_boundary(3)),
        ("S^5_7", simplex_boundary(5)),
        ("S^6_8", simplex_boundary(6)),
        ("S^1_4", from_facets([(1, 2), (2, 3), (3, 4), (1, 4)])),
        ("S^1_6", from_facets([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)])),
        ("RP^2 (VT)", C.rp2_6()),
        ("T^2 (VT)", C.torus_7()),
        ("T^2 (3x3 grid)", C.grid_surface(3, 3)),
        ("Klein bottle (8 vertices)", klein),
        ("Klein bottle (3x3 grid)", C.grid_surface(3, 3, twist=True)),
        ("Moebius strip (5 vertices)", from_facets([(1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 4, 5), (1, 2, 5)])),
        ("Pinched torus", _pinched_torus()),
        ("Two 2-spheres sharing a vertex", _wedge()),
        ("Suspension of RP^2", _join_int(C.rp2_6(), simplex_boundary(0))),
        ("S^3 (cyclic polytope, 6 vertices)", C.cyclic_polytope_boundary(6, 4)),
        ("S^3 (cyclic polytope, 7 vertices)", C.cyclic_polytope_boundary(7, 4)),
        ("S^3 (join of two triangles)", _join_int(simplex_boundary(1), simplex_boundary(1))),
        ("S^3 (VT, 8 vertices)", _cyclic_3d(8, [0, 0, 0, 1])),
        ("S^3 (randomized)", random_sphere),
        ("S^2~S^1 (VT)", _cyclic_3d_torsion(9, [0, 1, 0, 0])),
        ("S^2xS^1 (VT)", _cyclic_3d(10, [0, 1, 1, 1])),
        ("Pseudomanifold (VT, 8 vertices)", _cyclic_3d(8, [0, 0, 4, 1])),
        ("S^4 (cyclic polytope, 7 vertices)", C.cyclic_polytope_boundary(7, 5)),
        ("S^4 (join of S^1_3 and S^2_4)", _join_int(simplex_boundary(1), simplex_boundary(2))),
        ("CP^2 (VT)", _cp2()),
        ("K3 surface", C.k3_surface()),
        ("S^5 (cyclic polytope, 8 vertices)", C.cyclic_polytope_boundary(8, 6)),
    ]


def build() -> Catalog:
    entries = []
    for i, (name, K) in enumerate(constructions(), start=1):
        K = from_facets(_ints(K), name)
        entries.append(CatalogEntry(i, name, tuple(K.facets), compute_properties(K)))
    return Catalog(entries, EDITION)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out = argv[0] if argv else BUNDLED_PATH
    cat = build()
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(cat.dumps())
    print(f"wrote {len(cat)} entries to {out}")


if __name__ == "__main__":
    main()
