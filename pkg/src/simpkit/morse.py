"""Polyhedral Morse functions given by vertex orderings, and tightness."""
from __future__ import annotations

import logging
import random
from typing import Sequence

from .complex import SimplicialComplex, _maximal, from_facets, is_connected, neighborliness
from .errors import PreconditionError
from .homology import betti_numbers_mod_p, augmented_betti_mod_p

log = logging.getLogger(__name__)


def _positions(K: SimplicialComplex, order: Sequence) -> dict[int, int]:
    order = list(order)
    if len(order) != K.n_vertices or len(set(order)) != len(order):
        raise ValueError("order must list every vertex exactly once")
    try:
        ids = [K.id_of(x) for x in order]
    except KeyError as exc:
        raise ValueError(f"order mentions unknown vertex {exc.args[0]!r}") from None
    return {v: i for i, v in enumerate(ids)}


def lower_link(K: SimplicialComplex, v: int, pos: dict[int, int]) -> SimplicialComplex:
    """Link of ``v`` restricted to vertices earlier in the order."""
    p = pos[v]
    pieces = {tuple(u for u in f if u != v and pos[u] < p) for f in K.facets if v in f}
    pieces.discard(())
    if not pieces:
        return SimplicialComplex((), ())
    return from_facets(_maximal(pieces))


def morse_multiplicity(K: SimplicialComplex, order: Sequence, p: int = 2) -> list[list[int]]:
    """Multiplicity vectors ``[mu_0, ..., mu_d]`` for each vertex in ``order``.

    ``mu_j`` at a vertex is the rank over GF(p) of the reduced homology in
    degree ``j - 1`` of its lower link; an empty lower link (a minimum)
    contributes ``mu_0 = 1``. ``order`` lists vertex labels.
    """
    pos = _positions(K, order)
    d = K.dim
    ids = sorted(pos, key=pos.get)
    table = []
    for v in ids:
        rb = augmented_betti_mod_p(lower_link(K, v, pos), p)
        table.append([rb[j] if j < len(rb) else 0 for j in range(d + 1)])
    return table


def is_perfect(K: SimplicialComplex, order: Sequence, p: int = 2) -> bool:
    """Whether the total multiplicity meets the total Betti number over GF(p)."""
    total = sum(map(sum, morse_multiplicity(K, order, p)))
    return total == sum(betti_numbers_mod_p(K, p)) + 1


def _is_simplex_boundary(K):
    return K.is_pure and K.n_vertices == K.dim + 2 and len(K.facets) == K.dim + 2


def tightness(K: SimplicialComplex, manifold: bool | None = None, samples: int = 50, seed: int = 0,
              p: int = 2) -> tuple[bool | None, str]:
    """Tightness verdict with the reason it was reached.

    ``True`` only through a sufficient criterion (simplex boundary, or a
    (k+1)-neighborly 2k-manifold); ``False`` when a sampled vertex order gives
    a non-perfect Morse function, since tight complexes have none.
    ``manifold`` overrides the bistellar manifold check.
    """
    if K.is_empty or not is_connected(K):
        raise PreconditionError("tightness needs a connected complex")
    if not K.is_pure:
        raise PreconditionError("tightness needs a pure complex")
    d = K.dim
    if _is_simplex_boundary(K):
        return True, "complex is the boundary of a simplex and thus tight"
    if d % 2 == 0 and d > 0:
        k = d // 2
        if neighborliness(K) >= k + 1:
            if manifold is None:
                from .bistellar import is_manifold

                manifold = is_manifold(K).value
            if manifold:
                return True, "complex is (k+1)-neighborly 2k-manifold and thus tight"
    rng = random.Random(seed)
    labels = list(K.labels)
    orders = [labels]
    for _ in range(samples):
        o = labels[:]
        rng.shuffle(o)
        orders.append(o)
    for o in orders:
        if not is_perfect(K, o, p):
            return False, f"order {o} gives a non-perfect Morse function"
    return None, "no criterion applies"


def is_tight(K: SimplicialComplex, manifold: bool | None = None) -> bool | None:
    def compute():
        verdict, reason = tightness(K, manifold)
        log.info("is_tight: %s", reason)
        return verdict

    if manifold is not None:
        return compute()
    return K.cache.get_or_compute("is_tight", compute)
