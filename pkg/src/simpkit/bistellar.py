"""Bistellar moves, randomisation and vertex-minimising annealing.

A bistellar i-move on a d-dimensional complex replaces ``A * dB`` by
``dA * B`` where ``A`` is a (d-i)-face whose link is the boundary of the
i-simplex ``B`` and ``B`` is not already a face. The 0-move subdivides a
facet with a new vertex; the d-move removes a vertex whose link is the
boundary of a d-simplex.

Moves are expressed in the internal ids of the complex they apply to.
Working copies carry integer labels; a vertex created by a 0-move gets the
smallest positive integer not yet used as a label.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .complex import SimplicialComplex, from_facets, pseudomanifold_check
from .errors import InvalidMoveError, PreconditionError


@dataclass(frozen=True)
class Move:
    face: tuple  # A, internal ids
    cofacet: tuple  # B; for a 0-move the single id n+1 stands for the new vertex

    @property
    def index(self) -> int:
        return len(self.cofacet) - 1

    def __str__(self):
        return f"{self.index}-move: face={','.join(map(str, self.face))} co={','.join(map(str, self.cofacet))}"

    @classmethod
    def parse(cls, line: str) -> "Move":
        head, _, rest = line.partition(":")
        parts = dict(p.split("=", 1) for p in rest.split())
        m = cls(tuple(int(x) for x in parts["face"].split(",")), tuple(int(x) for x in parts["co"].split(",")))
        if m.index != int(head.split("-")[0]):
            raise ValueError(f"move index does not match cofacet size: {line!r}")
        return m


@dataclass
class AnnealingParams:
    seed: int = 0
    max_rounds: int = 5000
    heating_trigger: int = 10
    heating_length: int = 15

    def __post_init__(self):
        if self.max_rounds < 1 or self.heating_trigger < 1 or self.heating_length < 1:
            raise ValueError("annealing counters must be positive")


def format_trace(trace: list[Move]) -> str:
    return "".join(f"{m}\n" for m in trace)


def parse_trace(text: str) -> list[Move]:
    return [Move.parse(ln) for ln in text.splitlines() if ln.strip()]


# -- working state ------------------------------------------------------------


def _working_facets(K: SimplicialComplex) -> set[frozenset]:
    if all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in K.labels):
        return {frozenset(K.labels[v - 1] for v in f) for f in K.facets}
    return {frozenset(f) for f in K.facets}


class _State:
    """Mutable facet set over integer vertex names."""

    def __init__(self, facets: set[frozenset], dim: int):
        self.facets = set(facets)
        self.dim = dim
        self._star = None

    def star_index(self) -> dict[frozenset, list[frozenset]]:
        if self._star is None:
            star: dict[frozenset, list[frozenset]] = {}
            for f in self.facets:
                fl = sorted(f)
                for k in range(1, len(fl) + 1):
                    for c in combinations(fl, k):
                        star.setdefault(frozenset(c), []).append(f)
            self._star = star
        return self._star

    def vertices(self) -> set[int]:
        return {v for f in self.facets for v in f}

    def fvec(self) -> tuple:
        counts = [0] * (self.dim + 1)
        for face in self.star_index():
            counts[len(face) - 1] += 1
        return tuple(counts)

    def new_vertex(self) -> int:
        used = self.vertices()
        v = 1
        while v in used:
            v += 1
        return v

    def options(self) -> list[list[tuple]]:
        """Valid moves by index; each move is ``(sorted A, sorted B)``, B=() for 0-moves."""
        d = self.dim
        star = self.star_index()
        out: list[list[tuple]] = [[] for _ in range(d + 1)]
        for face, cont in star.items():
            i = d + 1 - len(face)
            if i == 0:
                out[0].append((tuple(sorted(face)), ()))
                continue
            if len(cont) != i + 1:
                continue
            B = set()
            for f in cont:
                B |= f
            B -= face
            if len(B) != i + 1:
                continue
            fb = frozenset(B)
            if fb in star:
                continue
            out[i].append((tuple(sorted(face)), tuple(sorted(B))))
        for lst in out:
            lst.sort()
        return out

    def valid(self, A: tuple, B: tuple) -> bool:
        d = self.dim
        fa = frozenset(A)
        star = self.star_index()
        if fa not in star:
            return False
        cont = star[fa]
        if not B:
            return len(A) == d + 1
        i = len(B) - 1
        if len(A) != d + 1 - i or len(cont) != i + 1:
            return False
        union = set()
        for f in cont:
            union |= f
        return union - fa == set(B) and frozenset(B) not in star

    def apply(self, A: tuple, B: tuple) -> int | None:
        fa = frozenset(A)
        new = None
        if not B:
            new = self.new_vertex()
            B = (new,)
        fb = frozenset(B)
        for b in B:
            self.facets.discard(fa | (fb - {b}))
        for a in A:
            self.facets.add((fa - {a}) | fb)
        self._star = None
        return new


def _to_internal(state_vertices, A, B):
    rank = {v: i + 1 for i, v in enumerate(sorted(state_vertices))}
    n = len(rank)
    return Move(tuple(rank[v] for v in A), tuple(rank[v] for v in B) if B else (n + 1,))


def _finish(state: _State, name: str = "") -> SimplicialComplex:
    return from_facets(sorted(sorted(f) for f in state.facets), name=name)


def _closed(K: SimplicialComplex, what: str):
    ok, reason = pseudomanifold_check(K)
    if not ok:
        raise PreconditionError(f"{what} needs a closed pseudomanifold ({reason})")


# -- public operations -----------------------------------------------------------


def move_options(K: SimplicialComplex, i: int) -> list[Move]:
    """All valid bistellar i-moves of a closed pseudomanifold."""
    _closed(K, "move_options")
    if not 0 <= i <= K.dim:
        raise ValueError(f"move index {i} outside 0..{K.dim}")
    st = _State({frozenset(f) for f in K.facets}, K.dim)
    n = K.n_vertices
    return [Move(A, B if B else (n + 1,)) for A, B in st.options()[i]]


def apply_move(K: SimplicialComplex, m: Move) -> SimplicialComplex:
    """Apply a bistellar move; raises :class:`InvalidMoveError` if it is not valid."""
    n = K.n_vertices
    A = tuple(m.face)
    B = () if m.index == 0 else tuple(m.cofacet)
    if m.index == 0 and (len(m.cofacet) != 1 or m.cofacet[0] != n + 1):
        raise InvalidMoveError("a 0-move must name the new vertex as n+1")
    if any(not 1 <= v <= n for v in A + B):
        raise InvalidMoveError(f"{m} refers to a vertex outside 1..{n}")
    idst = _State({frozenset(f) for f in K.facets}, K.dim)
    if not idst.valid(A, B):
        raise InvalidMoveError(f"{m} is not a valid move")
    work = {frozenset(f) for f in _working_facets(K)}
    lab = _label_map(K)
    st = _State(work, K.dim)
    st.apply(tuple(lab[v] for v in A), tuple(lab[v] for v in B))
    return _finish(st, K.name)


def _label_map(K):
    if all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in K.labels):
        return {v: K.labels[v - 1] for v in K.vertices}
    return {v: v for v in K.vertices}


def randomize(K: SimplicialComplex, rounds: int, seed: int = 0) -> SimplicialComplex:
    """Apply ``rounds`` moves drawn uniformly from all valid options."""
    _closed(K, "randomize")
    if rounds == 0:
        return K
    rng = random.Random(seed)
    st = _State(_working_facets(K), K.dim)
    for _ in range(rounds):
        opts = [o for lst in st.options() for o in lst]
        A, B = rng.choice(opts)
        st.apply(A, B)
    return _finish(st, K.name)


def _objective(st: _State) -> tuple:
    fv = st.fvec()
    return fv


def reduce(K: SimplicialComplex, params: AnnealingParams | None = None) -> tuple[SimplicialComplex, list[Move]]:
    """Minimise (vertex count, then f-vector) by bistellar moves.

    Vertex removals are taken whenever available, then moves that shrink
    the f-vector. When nothing shrinks it, lateral (or the mildest
    upward) moves are used; after ``heating_trigger`` such rounds the
    search heats up and takes ``heating_length`` random upward moves.
    Returns the best complex seen and the move sequence leading to it.
    """
    params = params or AnnealingParams()
    _closed(K, "reduce")
    d = K.dim
    rng = random.Random(params.seed)
    st = _State(_working_facets(K), d)
    trace: list[Move] = []
    best_obj = _objective(st)
    best = (set(st.facets), 0)
    heat = 0
    stagnant = 0
    up_pool = range(1, d // 2 + 1)
    for _ in range(params.max_rounds):
        if best_obj[0] == d + 2:
            break
        opts = st.options()
        pool: list[tuple] = []
        if heat > 0:
            heat -= 1
            pool = [o for i in up_pool for o in opts[i]]
        elif opts[d] and d > 0:
            pool = opts[d]
        else:
            pool = [o for i in range(d // 2 + 1, d) for o in opts[i]]
            if not pool:
                stagnant += 1
                if stagnant >= params.heating_trigger:
                    heat = params.heating_length
                    stagnant = 0
                for i in range(d // 2, 0, -1):
                    if opts[i]:
                        pool = opts[i]
                        break
        if not pool:
            pool = opts[0]
        A, B = rng.choice(pool)
        trace.append(_to_internal(st.vertices(), A, B))
        st.apply(A, B)
        obj = _objective(st)
        if obj < best_obj:
            best_obj = obj
            best = (set(st.facets), len(trace))
            stagnant = 0
    facets, length = best
    return _finish(_State(facets, d), K.name), trace[:length]


def replay(K: SimplicialComplex, trace: list[Move]) -> SimplicialComplex:
    for m in trace:
        K = apply_move(K, m)
    return K


# -- manifold recognition ----------------------------------------------------------


@dataclass
class ManifoldVerdict:
    value: bool | None  # None means undetermined
    certificate: dict = field(default_factory=dict)  # vertex label -> record

    @property
    def text(self) -> str:
        return {True: "true", False: "false", None: "undetermined"}[self.value]

    def __str__(self):
        return self.text


def _sphere_homology(L: SimplicialComplex) -> bool:
    from .homology import homology

    H = homology(L)
    m = L.dim
    return all(g.torsion == () and g.rank == (1 if k == m else 0) for k, g in enumerate(H))


def _is_simplex_boundary(L: SimplicialComplex) -> bool:
    m = L.dim
    return L.n_vertices == m + 2 and len(L.facets) == m + 2 and L.is_pure


def recognise_sphere(L: SimplicialComplex, params: AnnealingParams) -> tuple[bool | None, dict]:
    """Decide whether ``L`` is a PL sphere, as far as the budget allows."""
    from .complex import connected_components, link

    m = L.dim
    if L.is_empty:
        return True, {"status": "empty_sphere"}
    ok, reason = pseudomanifold_check(L)
    if not ok:
        return False, {"status": "not_pseudomanifold", "reason": reason}
    if not _sphere_homology(L):
        from .homology import homology

        return False, {"status": "homology", "homology": [[g.rank, list(g.torsion)] for g in homology(L)]}
    if _is_simplex_boundary(L):
        return True, {"status": "simplex_boundary"}
    if m <= 1:
        return True, {"status": "exact"}
    if m == 2:
        for v in L.vertices:
            if len(connected_components(link(L, (v,)))) != 1:
                return False, {"status": "pinched_vertex", "vertex": L.label_of(v)}
        return True, {"status": "exact"}
    reduced, trace = reduce(L, params)
    if _is_simplex_boundary(reduced):
        return True, {"status": "reduced", "trace": [str(mv) for mv in trace]}
    # no reduction within budget: links may still expose an obstruction
    for v in L.vertices:
        value, rec = recognise_sphere(link(L, (v,)), params)
        if value is False:
            return False, {"status": "link", "vertex": L.label_of(v), "detail": rec}
    return None, {"status": "budget_exhausted", "reached_f_vector": list(_State(_working_facets(reduced), m).fvec())}


def is_manifold_heuristic(K: SimplicialComplex, params: AnnealingParams | None = None) -> ManifoldVerdict:
    """Check that every vertex link is a sphere, reducing links by bistellar moves.

    The link of vertex ``v`` is annealed with seed ``params.seed + v``.
    ``True`` and ``False`` are certified; ``None`` means some link could not
    be reduced within the budget.
    """
    from .complex import link

    params = params or AnnealingParams()
    cert: dict = {}
    if K.is_empty:
        return ManifoldVerdict(False, {"_": {"status": "empty"}})
    if not K.is_pure:
        return ManifoldVerdict(False, {"_": {"status": "not_pure"}})
    value: bool | None = True
    for v in K.vertices:
        p = AnnealingParams(params.seed + v, params.max_rounds, params.heating_trigger, params.heating_length)
        val, rec = recognise_sphere(link(K, (v,)), p)
        cert[K.label_of(v)] = rec
        if val is False:
            return ManifoldVerdict(False, cert)
        if val is None:
            value = None
    return ManifoldVerdict(value, cert)


def is_manifold(K: SimplicialComplex, params: AnnealingParams | None = None) -> ManifoldVerdict:
    """Cached :func:`is_manifold_heuristic` for the default parameters."""
    if params is not None:
        return is_manifold_heuristic(K, params)
    return K.cache.get_or_compute("is_manifold", lambda: is_manifold_heuristic(K))
