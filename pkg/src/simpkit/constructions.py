"""Named constructions used by the catalog builder, the CLI and the tests."""
from __future__ import annotations

from itertools import combinations

from .complex import SimplicialComplex, from_facets, join, simplex_boundary
from .permgroups import Permutation, PermGroup, complex_from_generators

# Vertex-transitive 16-vertex K3 surface: five generators on 16 points and
# two seed facets whose orbits give all 288 facets.
K3_GENERATORS = """\
(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)(15,16)
(1,3)(2,4)(5,7)(6,8)(9,11)(10,12)(13,15)(14,16)
(1,5)(2,6)(3,7)(4,8)(9,13)(10,14)(11,15)(12,16)
(1,9)(2,10)(3,11)(4,12)(5,13)(6,14)(7,15)(8,16)
(2,13,15,11,14,3,5,8,16,7,4,9,10,6,12)
"""
K3_SEEDS = ((2, 3, 4, 5, 9), (2, 5, 7, 10, 11))

RP2_6_FACETS = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
)


def k3_group() -> PermGroup:
    return PermGroup.from_text(K3_GENERATORS)


def k3_surface() -> SimplicialComplex:
    """The 16-vertex K3 surface built from its generators and seeds."""
    return complex_from_generators(k3_group(), K3_SEEDS, name="K3 surface")


def rp2_6() -> SimplicialComplex:
    return from_facets(RP2_6_FACETS, name="RP^2 (VT)")


def cyclic_group(n: int) -> PermGroup:
    return PermGroup([Permutation([i % n + 1 for i in range(1, n + 1)])], n)


def torus_7() -> SimplicialComplex:
    """Seven-vertex torus: Z_7 orbits of {0,1,3} and {0,2,3}, shifted to 1..7."""
    return complex_from_generators(cyclic_group(7), [(1, 2, 4), (1, 3, 4)], name="T^2 (VT)")


def grid_surface(a: int, b: int, twist: bool = False, name: str = "") -> SimplicialComplex:
    """Triangulated a x b grid with opposite sides glued.

    Without ``twist`` the result is a torus; with it the gluing of the first
    direction reverses the second and gives a Klein bottle. Needs a, b >= 3.
    """
    if a < 3 or b < 3:
        raise ValueError("grid sides must be at least 3")

    def vid(i, j):
        if i == a:
            i, j = 0, (-j if twist else j)
        return (i % a) * b + (j % b) + 1

    facets = []
    for i in range(a):
        for j in range(b):
            p, q, r, s = vid(i, j), vid(i, j + 1), vid(i + 1, j), vid(i + 1, j + 1)
            facets.append((p, q, s))
            facets.append((p, r, s))
    return from_facets(facets, name=name)


def cyclic_polytope_boundary(n: int, d: int, name: str = "") -> SimplicialComplex:
    """Boundary of the cyclic d-polytope on n vertices via Gale's evenness condition."""
    if n < d + 1 or d < 2:
        raise ValueError("need n >= d + 1 and d >= 2")
    facets = []
    for S in combinations(range(1, n + 1), d):
        members = set(S)
        ok = True
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if i in members or j in members:
                    continue
                between = sum(1 for k in S if i < k < j)
                if between % 2:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            facets.append(S)
    return from_facets(facets, name=name or f"C({n},{d}) boundary")


def sphere_join(p: int, q: int) -> SimplicialComplex:
    """Join of the minimal p-sphere and the minimal q-sphere, a (p+q+1)-sphere."""
    return join(simplex_boundary(p), simplex_boundary(q))
