"""Backtracking search for vertex bijections between complexes.

Shared by automorphism groups and isomorphism testing. Vertices are first
split by an iterated degree refinement (the multiset of neighbouring colours
over all faces), then matched in an order that closes faces as early as
possible so that the face check prunes hard.
"""
from __future__ import annotations

from .complex import SimplicialComplex, f_vector


def _refine(complexes: list[SimplicialComplex]) -> list[list[int]]:
    """Joint colour refinement; colours are comparable across the inputs."""
    colours = []
    incid = []
    for K in complexes:
        faces = [f for level in K.faces_by_dim() for f in level]
        inc: list[list[tuple]] = [[] for _ in range(K.n_vertices + 1)]
        for f in faces:
            for v in f:
                inc[v].append(f)
        incid.append(inc)
        colours.append([0] * (K.n_vertices + 1))
    n_classes = -1
    while True:
        sigs = []
        for K, col, inc in zip(complexes, colours, incid):
            sig = [None] * (K.n_vertices + 1)
            for v in K.vertices:
                sig[v] = (col[v], tuple(sorted(tuple(sorted(col[u] for u in f if u != v)) for f in inc[v])))
            sigs.append(sig)
        table = {s: i for i, s in enumerate(sorted({s for sig in sigs for s in sig[1:]}))}
        colours = [[0] + [table[s] for s in sig[1:]] for sig in sigs]
        if len(table) == n_classes:
            return colours
        n_classes = len(table)


def _bitmask_faces(K: SimplicialComplex) -> set[int]:
    out = set()
    for level in K.faces_by_dim():
        for f in level:
            m = 0
            for v in f:
                m |= 1 << v
            out.add(m)
    return out


class _Matcher:
    def __init__(self, K: SimplicialComplex, L: SimplicialComplex, colK, colL):
        self.n = K.n_vertices
        self.colK, self.colL = colK, colL
        self.L_faces = _bitmask_faces(L)
        self.order = self._vertex_order(K)
        pos = {v: i for i, v in enumerate(self.order)}
        # faces of K that become fully assigned at each depth
        checks: list[list[tuple]] = [[] for _ in range(self.n)]
        for level in K.faces_by_dim()[1:]:
            for f in level:
                last = max(f, key=lambda v: pos[v])
                checks[pos[last]].append(tuple(u for u in f if u != last))
        self.checks = checks
        self.cells: dict[int, list[int]] = {}
        for w in L.vertices:
            self.cells.setdefault(colL[w], []).append(w)

    def _vertex_order(self, K):
        size = {}
        for v in K.vertices:
            size[self.colK[v]] = size.get(self.colK[v], 0) + 1
        facets_of: list[list[tuple]] = [[] for _ in range(self.n + 1)]
        for f in K.facets:
            for v in f:
                facets_of[v].append(f)
        order: list[int] = []
        chosen: set[int] = set()
        score = [0] * (self.n + 1)  # number of already chosen co-facet vertices
        while len(order) < self.n:
            v = min((u for u in K.vertices if u not in chosen),
                    key=lambda u: (-score[u], size[self.colK[u]], u))
            order.append(v)
            chosen.add(v)
            for f in facets_of[v]:
                for u in f:
                    if u not in chosen:
                        score[u] += 1
        return order

    def search(self, prefix: dict[int, int], find_all: bool = False):
        """Yield bijections (as dicts K-vertex -> L-vertex) extending ``prefix``."""
        img = [0] * (self.n + 1)
        used = set()
        for v, w in prefix.items():
            if self.colK[v] != self.colL[w]:
                return
            img[v] = w
            used.add(w)
        order = self.order
        fixed = set(prefix)

        def rec(depth):
            if depth == self.n:
                yield {v: img[v] for v in order}
                return
            v = order[depth]
            if v in fixed:
                # consistency of faces closing here was checked upfront only
                # when all members were fixed; re-check with free members now
                if self._ok(v, img[v], depth, img):
                    yield from rec(depth + 1)
                return
            for w in self.cells[self.colK[v]]:
                if w in used:
                    continue
                if not self._ok(v, w, depth, img):
                    continue
                img[v] = w
                used.add(w)
                yield from rec(depth + 1)
                used.discard(w)
                img[v] = 0

        yield from rec(0)

    def _ok(self, v, w, depth, img):
        L_faces = self.L_faces
        bw = 1 << w
        for rest in self.checks[depth]:
            m = bw
            for u in rest:
                m |= 1 << img[u]
            if m not in L_faces:
                return False
        return True


def _compatible(K: SimplicialComplex, L: SimplicialComplex):
    if K.n_vertices != L.n_vertices or len(K.facets) != len(L.facets):
        return None
    if K.is_empty:
        return None
    if f_vector(K) != f_vector(L):
        return None
    colK, colL = _refine([K, L])
    if sorted(colK[1:]) != sorted(colL[1:]):
        return None
    return colK, colL


def find_isomorphism(K: SimplicialComplex, L: SimplicialComplex) -> dict[int, int] | None:
    """A vertex bijection (internal ids of K -> of L) mapping facets onto facets."""
    if K.is_empty and L.is_empty:
        return {}
    cols = _compatible(K, L)
    if cols is None:
        return None
    m = _Matcher(K, L, *cols)
    for phi in m.search({}):
        return phi
    return None


def automorphism_generators(K: SimplicialComplex) -> list[list[int]]:
    """Generators of Aut(K) as image lists over internal ids.

    Works down a stabilizer chain along the matching order: for each base
    point, every image not yet in the orbit of the generators found so far
    is tried once, so the result generates the full group.
    """
    if K.is_empty:
        return []
    n = K.n_vertices
    col = _refine([K])[0]
    m = _Matcher(K, K, col, col)
    base = m.order
    gens: list[list[int]] = []
    for i in range(n - 1, -1, -1):
        b = base[i]
        prefix = {u: u for u in base[:i]}
        level_gens = list(gens)  # all found so far fix base[:i]
        orbit = _orbit(b, level_gens)
        for w in m.cells[col[b]]:
            if w in orbit or w in prefix:
                continue
            trial = dict(prefix)
            trial[b] = w
            phi = next(m.search(trial), None)
            if phi is None:
                continue
            g = [phi[v] for v in range(1, n + 1)]
            gens.append(g)
            orbit = _orbit(b, gens)
    return gens


def _orbit(point, gens):
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x - 1]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_automorphism(K: SimplicialComplex, images) -> bool:
    facets = {tuple(sorted(images[v - 1] for v in f)) for f in K.facets}
    return facets == set(K.facets)


def is_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """Whether some vertex bijection maps the facets of K onto those of L."""
    return find_isomorphism(K, L) is not None
