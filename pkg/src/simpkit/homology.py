"""Simplicial homology, orientations and the intersection form.

Homology in dimension 0 is reduced (a connected complex has ``(0, ())``
there), matching the usual output of ``Homology`` in simplicial toolkits.
"""
from __future__ import annotations

from collections import deque
from typing import NamedTuple

import numpy as np

from .complex import SimplicialComplex, cached, f_vector, pseudomanifold_check
from .errors import PreconditionError
from .linalg import IntegerMatrix, inertia, integer_kernel, is_prime, rank_mod_p, smith_normal_form


class HomologyGroup(NamedTuple):
    rank: int
    torsion: tuple  # invariant factors > 1, each dividing the next


class IntersectionForm(NamedTuple):
    gram: list  # symmetric integer matrix
    parity: int  # 0 even, 1 odd
    signature_triple: tuple  # (rank, n_minus, n_plus)

    @property
    def rank(self) -> int:
        return self.signature_triple[0]

    @property
    def signature(self) -> int:
        _, neg, pos = self.signature_triple
        return pos - neg


def boundary_matrix(K: SimplicialComplex, k: int) -> IntegerMatrix:
    """Matrix of the boundary map from k-chains to (k-1)-chains.

    Rows index (k-1)-faces and columns k-faces, both in lexicographic order.
    For ``k = 0`` the target is empty (no augmentation).
    """
    if not 0 <= k <= K.dim:
        raise IndexError(f"boundary dimension {k} outside 0..{K.dim}")
    cols = K.faces(k)
    if k == 0:
        return IntegerMatrix(0, len(cols))
    index = {f: i for i, f in enumerate(K.faces(k - 1))}
    rows: list[dict[int, int]] = [{} for _ in index]
    for j, f in enumerate(cols):
        for i in range(len(f)):
            rows[index[f[:i] + f[i + 1:]]][j] = -1 if i % 2 else 1
    return IntegerMatrix(len(index), len(cols), rows)


def _boundary_factors(K: SimplicialComplex) -> list[list[int]]:
    """Invariant factors of every boundary map, index k -> d_k."""
    return K.cache.get_or_compute(
        "_boundary_factors",
        lambda: [[]] + [smith_normal_form(boundary_matrix(K, k)) for k in range(1, K.dim + 1)],
    )


@cached("homology")
def homology(K: SimplicialComplex) -> list[HomologyGroup]:
    """Integral homology ``[(rank, torsion), ...]`` for dimensions 0..dim.

    >>> from simpkit.complex import simplex_boundary
    >>> homology(simplex_boundary(2))
    [HomologyGroup(rank=0, torsion=()), HomologyGroup(rank=0, torsion=()), HomologyGroup(rank=1, torsion=())]
    """
    if K.is_empty:
        raise PreconditionError("homology of the empty complex")
    fv = f_vector(K)
    factors = _boundary_factors(K)
    d = K.dim
    out = []
    for k in range(d + 1):
        rk = len(factors[k])
        nxt = factors[k + 1] if k < d else []
        rank_k = fv[k] - rk - len(nxt) - (1 if k == 0 else 0)
        out.append(HomologyGroup(rank_k, tuple(x for x in nxt if x > 1)))
    return out


def betti_numbers_mod_p(K: SimplicialComplex, p: int = 2) -> list[int]:
    """Reduced Betti numbers with coefficients in the field of ``p`` elements."""
    if not is_prime(p):
        raise ValueError(f"coefficient characteristic {p} is not prime")
    if K.is_empty:
        return []
    return K.cache.get_or_compute(f"betti_mod_{p}", lambda: _betti_mod_p(K, p))


def _betti_mod_p(K, p):
    fv = f_vector(K)
    d = K.dim
    ranks = [0] + [rank_mod_p(boundary_matrix(K, k), p) for k in range(1, d + 1)] + [0]
    return [fv[k] - ranks[k] - ranks[k + 1] - (1 if k == 0 else 0) for k in range(d + 1)]


def augmented_betti_mod_p(K: SimplicialComplex, p: int = 2) -> list[int]:
    """Reduced Betti numbers indexed from dimension -1.

    The empty complex has a single class in dimension -1; this is what
    makes the Morse multiplicity of a global minimum come out as 1.
    """
    if K.is_empty:
        return [1]
    return [0] + betti_numbers_mod_p(K, p)


def _ridge_signs(K):
    signs: dict[tuple, list[tuple[tuple, int]]] = {}
    for f in K.facets:
        for i in range(len(f)):
            signs.setdefault(f[:i] + f[i + 1:], []).append((f, -1 if i % 2 else 1))
    return signs


def orientation(K: SimplicialComplex) -> dict[tuple, int] | None:
    """Coherent facet signs, or ``None`` if K is not orientable.

    The lexicographically first facet gets ``+1``.
    """
    ok, reason = pseudomanifold_check(K)
    if not ok:
        raise PreconditionError(f"orientation needs a closed pseudomanifold ({reason})")
    adj: dict[tuple, list[tuple[tuple, int]]] = {f: [] for f in K.facets}
    for (a, sa), (b, sb) in _ridge_signs(K).values():
        # neighbouring signs must cancel on the shared ridge
        rel = -sa * sb
        adj[a].append((b, rel))
        adj[b].append((a, rel))
    first = K.facets[0]
    sign = {first: 1}
    queue = deque([first])
    while queue:
        f = queue.popleft()
        for g, rel in adj[f]:
            want = sign[f] * rel
            if g not in sign:
                sign[g] = want
                queue.append(g)
            elif sign[g] != want:
                return None
    return sign


def fundamental_cycle(K: SimplicialComplex) -> dict[tuple, int] | None:
    """Cached :func:`orientation`; a cycle whose boundary vanishes."""
    return K.cache.get_or_compute("fundamental_cycle", lambda: orientation(K))


def is_orientable(K: SimplicialComplex) -> bool:
    return fundamental_cycle(K) is not None


def _matmul_exact(A, B):
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    bound = (int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0))) * max(A.shape[1], 1)
    if bound < 2**62:
        return (A.astype(np.int64) @ B.astype(np.int64)).astype(object)
    return A.dot(B)


def cup_pairing(K: SimplicialComplex, cocycles: list[dict[int, int]], signs: dict[tuple, int]) -> list[list[int]]:
    """Evaluate ``a u b`` on the oriented top cycle for every pair of 2-cocycles.

    Cochains are sparse dicts over the index of ``K.faces(2)``; the cup
    product uses front and back faces in the vertex order.
    """
    index = {f: i for i, f in enumerate(K.faces(2))}
    m = len(cocycles)
    front = np.zeros((m, len(K.facets)), dtype=object)
    back = np.zeros((m, len(K.facets)), dtype=object)
    for s, f in enumerate(K.facets):
        fi = index[f[:3]]
        bi = index[f[2:]]
        eps = signs[f]
        for a, z in enumerate(cocycles):
            front[a, s] = eps * z.get(fi, 0)
            back[a, s] = z.get(bi, 0)
    return [[int(x) for x in row] for row in _matmul_exact(front, back.T)]


def intersection_form(K: SimplicialComplex, signs: dict[tuple, int] | None = None) -> IntersectionForm:
    """Intersection form of a closed orientable 4-dimensional complex.

    The cup pairing on the full lattice of integral 2-cocycles has, by
    Poincare duality, precisely the classes vanishing in H^2/torsion as its
    radical; the Gram matrix is taken on a lattice complement of that radical.
    ``signs`` overrides the canonical orientation.
    """
    if K.dim != 4:
        raise PreconditionError("intersection form needs a 4-dimensional complex")
    ok, reason = pseudomanifold_check(K)
    if not ok:
        raise PreconditionError(f"intersection form needs a closed pseudomanifold ({reason})")
    if signs is None:
        cached_form = K.cache.get("intersection_form")
        if cached_form is not None:
            return cached_form
        signs = fundamental_cycle(K)
        if signs is None:
            raise PreconditionError("complex is not orientable")
        return K.cache.put("intersection_form", _intersection_form(K, signs))
    return _intersection_form(K, signs)


def _intersection_form(K, signs):
    coboundary = boundary_matrix(K, 3).transpose()  # 2-cochains -> 3-cochains
    cocycles, _ = integer_kernel(coboundary)
    full = cup_pairing(K, cocycles, signs)
    radical, complement = integer_kernel(IntegerMatrix.from_dense(full, ncols=len(cocycles)))
    C = np.zeros((len(complement), len(cocycles)), dtype=object)
    for a, v in enumerate(complement):
        for k, x in v.items():
            C[a, k] = x
    gram = _matmul_exact(_matmul_exact(C, np.asarray(full, dtype=object)), C.T) if len(complement) else np.zeros((0, 0))
    gram = [[int(x) for x in row] for row in gram]
    parity = 1 if any(gram[i][i] % 2 for i in range(len(gram))) else 0
    neg, zero, pos = inertia(gram)
    return IntersectionForm(gram, parity, (len(gram), neg, pos))


def intersection_form_parity(K: SimplicialComplex) -> int:
    return intersection_form(K).parity


def intersection_form_signature(K: SimplicialComplex) -> tuple:
    return intersection_form(K).signature_triple
