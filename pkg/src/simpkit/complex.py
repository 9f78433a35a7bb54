"""Abstract simplicial complexes given by their facets.

A complex stores its facets over internal vertex ids ``1..n`` and keeps the
user's vertex labels in a side table, so every algorithm in the package can
work with small integers and never has to care what the labels are.

A simplex is a plain tuple of strictly increasing internal ids.
"""
from __future__ import annotations

import threading
from collections import deque
from itertools import combinations
from math import comb
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import InvalidFaceError, PreconditionError

Simplex = tuple  # tuple[int, ...], strictly increasing internal ids


def _sorted_labels(labels):
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=lambda x: (type(x).__name__, repr(x)))


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Validate ``vertices`` and return them as a sorted tuple."""
    vs = list(vertices)
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    s = tuple(sorted(vs))
    if len(set(s)) != len(s):
        raise ValueError(f"repeated vertex in simplex {vs}")
    if any(not isinstance(v, int) or v < 1 for v in s):
        raise ValueError(f"simplex vertices must be positive integers: {vs}")
    return s


class PropertyCache:
    """Write-once store of computed properties.

    Values are computed outside the lock; if two threads race on the same key
    the first stored value wins and the loser's result is discarded.
    """

    def __init__(self, entries=None):
        self._entries: dict[str, Any] = dict(entries or {})
        self._lock = threading.Lock()

    def __contains__(self, key):
        return key in self._entries

    def __len__(self):
        return len(self._entries)

    def get(self, key, default=None):
        return self._entries.get(key, default)

    def keys(self):
        return list(self._entries)

    def items(self):
        return list(self._entries.items())

    def put(self, key: str, value):
        with self._lock:
            return self._entries.setdefault(key, value)

    def get_or_compute(self, key: str, compute: Callable[[], Any]):
        try:
            return self._entries[key]
        except KeyError:
            pass
        return self.put(key, compute())


def cached(key: str):
    """Decorator caching ``func(K)`` in ``K.cache`` under ``key``."""

    def deco(func):
        def wrapper(K, *args, **kwargs):
            if args or kwargs:
                return func(K, *args, **kwargs)
            return K.cache.get_or_compute(key, lambda: func(K))

        wrapper.__name__ = func.__name__
        wrapper.__qualname__ = func.__qualname__
        wrapper.__doc__ = func.__doc__
        wrapper.cache_key = key
        return wrapper

    return deco


class SimplicialComplex:
    """Immutable facet-list complex with a label map and property cache.

    Use :func:`from_facets` (or :meth:`from_ids`) to build one; the
    constructor trusts its input.
    """

    __slots__ = ("facets", "labels", "name", "cache", "_faces", "_face_sets", "_facet_set", "_face_lock")

    def __init__(self, facets: Sequence[Simplex], labels: Sequence[Hashable], name: str = "",
                 cache: PropertyCache | None = None):
        self.facets: tuple[Simplex, ...] = tuple(facets)
        self.labels: tuple = tuple(labels)
        self.name = name
        self.cache = cache if cache is not None else PropertyCache()
        self._faces = None
        self._face_sets = None
        self._facet_set = frozenset(self.facets)
        self._face_lock = threading.Lock()

    @classmethod
    def from_ids(cls, facets: Iterable[Iterable[int]], name: str = "") -> "SimplicialComplex":
        """Build from facets over arbitrary positive ints, keeping the ints as labels."""
        return from_facets(facets, name=name)

    # -- basic attributes --------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(1, len(self.labels) + 1)

    @property
    def dim(self) -> int:
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    @property
    def is_empty(self) -> bool:
        return not self.facets

    def label_of(self, v: int):
        return self.labels[v - 1]

    def id_of(self, label) -> int:
        try:
            return self.labels.index(label) + 1
        except ValueError:
            raise KeyError(label) from None

    def labeled_facets(self) -> list[tuple]:
        return [tuple(self.labels[v - 1] for v in f) for f in self.facets]

    # -- faces ---------------------------------------------------------------
    def faces_by_dim(self) -> list[list[Simplex]]:
        """All faces per dimension, each list sorted lexicographically."""
        if self._faces is None:
            with self._face_lock:
                if self._faces is None:
                    levels: list[set] = [set() for _ in range(self.dim + 1)]
                    for f in self.facets:
                        for k in range(1, len(f) + 1):
                            levels[k - 1].update(combinations(f, k))
                    self._faces = [sorted(level) for level in levels]
        return self._faces

    def faces(self, k: int) -> list[Simplex]:
        if k < 0 or k > self.dim:
            return []
        return self.faces_by_dim()[k]

    def has_face(self, face: Iterable[int]) -> bool:
        s = tuple(sorted(face))
        if not s:
            return bool(self.facets)
        if s in self._facet_set:
            return True
        if len(s) - 1 > self.dim:
            return False
        return s in self._face_index()[len(s) - 1]

    def _face_index(self):
        if self._face_sets is None:
            self._face_sets = [frozenset(level) for level in self.faces_by_dim()]
        return self._face_sets

    # -- dunder ----------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._facet_set == other._facet_set and self.labels == other.labels

    def __hash__(self):
        return hash((self._facet_set, self.labels))

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return f"<SimplicialComplex{nm} dim={self.dim} n={self.n_vertices} facets={len(self.facets)}>"


def from_facets(facet_list: Iterable[Iterable[Hashable]], name: str = "") -> SimplicialComplex:
    """Build a complex from facets given over arbitrary vertex labels.

    Duplicate facets collapse and faces contained in other facets are
    dropped. Labels are sorted and numbered ``1..n``.
    """
    raw = []
    for facet in facet_list:
        vs = list(facet)
        if not vs:
            raise ValueError("empty facet")
        if len(set(vs)) != len(vs):
            raise ValueError(f"facet {vs} repeats a vertex")
        raw.append(frozenset(vs))
    labels = _sorted_labels({v for f in raw for v in f})
    index = {lab: i + 1 for i, lab in enumerate(labels)}
    facets = _maximal({tuple(sorted(index[v] for v in f)) for f in raw})
    used = sorted({v for f in facets for v in f})
    if len(used) != len(labels):  # pragma: no cover - pruning never drops vertices
        raise AssertionError("label normalisation lost a vertex")
    return SimplicialComplex(facets, labels, name=name)


def _maximal(simplices: set) -> list[Simplex]:
    """Drop every simplex contained in another one; return sorted."""
    by_size = sorted(simplices, key=len, reverse=True)
    kept: list[Simplex] = []
    kept_sets: list[frozenset] = []
    top = len(by_size[0]) if by_size else 0
    for s in by_size:
        if len(s) < top:
            fs = frozenset(s)
            if any(fs < k for k in kept_sets):
                continue
        kept.append(s)
        kept_sets.append(frozenset(s))
    return sorted(kept)


def _sub(K: SimplicialComplex, facets: Iterable[Simplex], name: str = "") -> SimplicialComplex:
    """Complex on a subset of K's ids, carrying K's labels."""
    facets = [tuple(f) for f in facets]
    if not facets:
        return SimplicialComplex((), (), name=name)
    return from_facets([[K.labels[v - 1] for v in f] for f in facets], name=name)


# -- constructors ------------------------------------------------------------------


def simplex_complex(d: int) -> SimplicialComplex:
    """The full d-simplex on vertices 1..d+1."""
    return from_facets([range(1, d + 2)], name=f"Delta^{d}")


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the (d+1)-simplex: the minimal d-sphere on d+2 vertices."""
    n = d + 2
    return from_facets(combinations(range(1, n + 1), d + 1), name=f"S^{d}_{n}")


def cycle(n: int) -> SimplicialComplex:
    return from_facets([(i, i % n + 1) for i in range(1, n + 1)], name=f"C_{n}")


def relabeled(K: SimplicialComplex, mapping: dict) -> SimplicialComplex:
    """Rename vertex labels through ``mapping`` (label -> new label)."""
    return from_facets([[mapping[x] for x in f] for f in K.labeled_facets()], name=K.name)


def permuted(K: SimplicialComplex, images: Sequence[int]) -> SimplicialComplex:
    """Apply the id permutation ``v -> images[v-1]``; labels become the ids."""
    return SimplicialComplex(
        sorted(tuple(sorted(images[v - 1] for v in f)) for f in K.facets),
        tuple(range(1, K.n_vertices + 1)),
        name=K.name,
    )


def disjoint_union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    n = K.n_vertices
    facets = list(K.facets) + [tuple(v + n for v in f) for f in L.facets]
    return from_facets(facets)


# -- elementary operations ---------------------------------------------------------


@cached("f_vector")
def f_vector(K: SimplicialComplex) -> list[int]:
    """Number of faces per dimension, ``[f_0, ..., f_d]``.

    >>> f_vector(simplex_boundary(2))
    [4, 6, 4]
    """
    return [len(level) for level in K.faces_by_dim()]


@cached("euler_characteristic")
def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** i * c for i, c in enumerate(f_vector(K)))


def _check_face(K: SimplicialComplex, face) -> Simplex:
    s = tuple(sorted(face))
    if not s or not K.has_face(s):
        raise InvalidFaceError(f"{list(face)} is not a face of {K!r}")
    return s


def link(K: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """Link of ``face``: faces disjoint from it whose join with it lies in K."""
    s = _check_face(K, face)
    fs = set(s)
    rest = [tuple(v for v in f if v not in fs) for f in K.facets if fs.issubset(f)]
    rest = [r for r in rest if r]
    return _sub(K, _maximal(set(rest)) if rest else [])


def star(K: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """Closed star: the subcomplex generated by the facets containing ``face``."""
    s = _check_face(K, face)
    fs = set(s)
    return _sub(K, [f for f in K.facets if fs.issubset(f)])


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    if not 0 <= k <= K.dim:
        raise IndexError(f"skeleton dimension {k} outside 0..{K.dim}")
    if k == K.dim:
        return K
    keep = [f for f in K.facets if len(f) <= k + 1]
    return SimplicialComplex(_maximal(set(K.faces(k)) | set(keep)), K.labels, name=K.name)


def induced_subcomplex(K: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Subcomplex of all faces whose vertices lie in ``vertices`` (internal ids)."""
    vs = set(vertices)
    pieces = {tuple(v for v in f if v in vs) for f in K.facets}
    pieces.discard(())
    return _sub(K, _maximal(pieces) if pieces else [])


@cached("neighborliness")
def neighborliness(K: SimplicialComplex) -> int:
    """Largest k such that every k-subset of the vertex set spans a face."""
    n = K.n_vertices
    fv = f_vector(K)
    k = 0
    while k < len(fv) and fv[k] == comb(n, k + 1):
        k += 1
    return k


def connected_components(K: SimplicialComplex) -> list[list[int]]:
    parent = list(range(K.n_vertices + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in K.facets:
        r = find(f[0])
        for v in f[1:]:
            rv = find(v)
            if rv != r:
                parent[rv] = r
    groups: dict[int, list[int]] = {}
    for v in K.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(K: SimplicialComplex) -> bool:
    return len(connected_components(K)) == 1


def ridge_map(K: SimplicialComplex) -> dict[Simplex, list[Simplex]]:
    """Map each codimension-one face of a pure complex to its facets."""
    ridges: dict[Simplex, list[Simplex]] = {}
    for f in K.facets:
        for i in range(len(f)):
            ridges.setdefault(f[:i] + f[i + 1:], []).append(f)
    return ridges


def pseudomanifold_check(K: SimplicialComplex) -> tuple[bool, str]:
    """Closed pseudomanifold test with a reason code.

    Codes: ``ok``, ``empty``, ``not_pure``, ``ridge_degree``, ``disconnected``.
    """
    if K.is_empty:
        return False, "empty"
    if not K.is_pure:
        return False, "not_pure"
    ridges = ridge_map(K)
    if any(len(fs) != 2 for fs in ridges.values()):
        return False, "ridge_degree"
    adj: dict[Simplex, list[Simplex]] = {f: [] for f in K.facets}
    for a, b in ridges.values():
        adj[a].append(b)
        adj[b].append(a)
    seen = {K.facets[0]}
    queue = deque(seen)
    while queue:
        for g in adj[queue.popleft()]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    if len(seen) != len(K.facets):
        return False, "disconnected"
    return True, "ok"


@cached("is_pseudomanifold")
def is_pseudomanifold(K: SimplicialComplex) -> bool:
    return pseudomanifold_check(K)[0]


def boundary_complex(K: SimplicialComplex) -> SimplicialComplex:
    """Subcomplex generated by ridges lying in exactly one facet."""
    if K.is_empty:
        return K
    if not K.is_pure:
        raise PreconditionError("boundary_complex needs a pure complex")
    free = [r for r, fs in ridge_map(K).items() if len(fs) == 1 and r]
    if not free:
        return SimplicialComplex((), (), name="")
    return _sub(K, free)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes with vertex labels tagged ``(0, x)`` / ``(1, y)``."""
    if K.is_empty:
        return L
    if L.is_empty:
        return K
    return from_facets(
        [[(0, x) for x in a] + [(1, y) for y in b] for a in K.labeled_facets() for b in L.labeled_facets()]
    )
