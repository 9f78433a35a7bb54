"""Slicings: level surfaces of 3-manifolds separating a vertex partition.

A tetrahedron with a 3-1 vertex split contributes a triangle to the
surface and one with a 2-2 split a quadrilateral. Quadrilaterals are
counted as single cells.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .complex import SimplicialComplex, _sorted_labels, pseudomanifold_check
from .errors import PreconditionError


@dataclass(frozen=True)
class Slicing:
    vertices: int  # crossing edges
    edges: int  # crossing triangles
    faces: int  # crossing tetrahedra
    triangles: int
    quadrilaterals: int
    euler: int
    connected: bool
    genus: int | None
    partition: tuple  # (part1 labels, part2 labels)

    @property
    def cells(self) -> tuple:
        return (self.vertices, self.edges, self.faces)


def _crossing(face, side):
    s = {side[v] for v in face}
    return len(s) == 2


def slicing(K: SimplicialComplex, part1: Iterable) -> Slicing:
    """Level surface between ``part1`` (vertex labels) and its complement."""
    if K.dim != 3:
        raise PreconditionError("slicings are defined for 3-dimensional complexes")
    ok, reason = pseudomanifold_check(K)
    if not ok:
        raise PreconditionError(f"slicing needs a closed pseudomanifold ({reason})")
    labels = set(part1)
    unknown = labels - set(K.labels)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown, key=repr)}")
    if not labels or len(labels) == K.n_vertices:
        raise ValueError("part1 must be a proper nonempty subset of the vertices")
    side = {v: K.label_of(v) in labels for v in K.vertices}
    V = sum(1 for e in K.faces(1) if _crossing(e, side))
    E = sum(1 for t in K.faces(2) if _crossing(t, side))
    tets = [t for t in K.faces(3) if _crossing(t, side)]
    quads = sum(1 for t in tets if sum(side[v] for v in t) == 2)
    F = len(tets)
    euler = V - E + F
    # cells meet along crossing triangles
    by_tri: dict[tuple, list[tuple]] = {}
    for t in tets:
        for i in range(4):
            tri = t[:i] + t[i + 1:]
            if _crossing(tri, side):
                by_tri.setdefault(tri, []).append(t)
    adj: dict[tuple, list[tuple]] = {t: [] for t in tets}
    for pair in by_tri.values():
        if len(pair) == 2:
            a, b = pair
            adj[a].append(b)
            adj[b].append(a)
    seen = {tets[0]} if tets else set()
    queue = deque(seen)
    while queue:
        for u in adj[queue.popleft()]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    connected = len(seen) == len(tets)
    genus = None
    if connected:
        from .homology import is_orientable

        if is_orientable(K) and euler % 2 == 0:
            genus = (2 - euler) // 2
    p1 = tuple(_sorted_labels([K.label_of(v) for v in K.vertices if side[v]]))
    p2 = tuple(_sorted_labels([K.label_of(v) for v in K.vertices if not side[v]]))
    return Slicing(V, E, F, F - quads, quads, euler, connected, genus, (p1, p2))
