"""Edge-path presentations of fundamental groups and Tietze simplification."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .complex import SimplicialComplex, is_connected
from .errors import PreconditionError
from .linalg import IntegerMatrix, smith_normal_form

Word = tuple  # signed 1-based generator indices; -k is the inverse of generator k


@dataclass
class GroupPresentation:
    generators: list[str]
    relators: list[Word]
    edges: dict = field(default_factory=dict)  # generator index -> K-edge (internal ids)

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > n for x in r):
                raise ValueError(f"relator {r} uses an unknown generator")

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        return " ".join(self.generators[abs(x) - 1] + ("^-1" if x < 0 else "") for x in w)

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def fundamental_group_presentation(K: SimplicialComplex) -> GroupPresentation:
    """One generator per edge outside a breadth-first spanning tree, one relator per triangle.

    The tree grows from vertex 1, visiting neighbours in increasing order.
    """
    if K.is_empty or not is_connected(K):
        raise PreconditionError("fundamental group needs a connected complex")
    nbrs: dict[int, list[int]] = {v: [] for v in K.vertices}
    for a, b in K.faces(1):
        nbrs[a].append(b)
        nbrs[b].append(a)
    tree = set()
    seen = {1}
    queue = deque([1])
    while queue:
        v = queue.popleft()
        for u in sorted(nbrs[v]):
            if u not in seen:
                seen.add(u)
                tree.add((min(u, v), max(u, v)))
                queue.append(u)
    gen_of: dict[tuple, int] = {}
    for e in K.faces(1):
        if e not in tree:
            gen_of[e] = len(gen_of) + 1

    def edge_word(a, b):
        g = gen_of.get((a, b))
        return () if g is None else (g,)

    relators = []
    for a, b, c in K.faces(2):
        w = edge_word(a, b) + edge_word(b, c) + tuple(-x for x in edge_word(a, c))
        relators.append(w)
    names = [f"g{i}" for i in range(1, len(gen_of) + 1)]
    return GroupPresentation(names, relators, {g: e for e, g in gen_of.items()})


def _free_reduce(w):
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(w):
    w = _free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def _canonical(w):
    """Representative of the relator up to rotation and inversion."""
    if not w:
        return ()
    inv = [-x for x in reversed(w)]
    cands = []
    for word in (w, inv):
        for k in range(len(word)):
            cands.append(tuple(word[k:] + word[:k]))
    return min(cands)


def _invert(w):
    return [-x for x in reversed(w)]


def simplify_presentation(P: GroupPresentation, max_length: int = 10_000) -> tuple[GroupPresentation, str]:
    """Tietze-simplify ``P`` and classify the group.

    Repeatedly removes a generator occurring exactly once in some relator,
    always using the shortest such relator. The verdict is ``"trivial"`` when
    no generators are left, ``"nontrivial"`` when the abelianisation is not
    zero, and ``"unknown"`` otherwise.
    """
    gens = set(range(1, len(P.generators) + 1))
    rels = {_canonical(_cyclic_reduce(list(r))) for r in P.relators}
    rels.discard(())
    while True:
        best = None
        for r in rels:
            if best is not None and len(r) >= len(best[0]):
                continue
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            g = next((a for a in sorted(counts) if counts[a] == 1), None)
            if g is not None:
                best = (r, g)
        if best is None:
            break
        r, g = best
        k = next(i for i, x in enumerate(r) if abs(x) == g)
        rot = list(r[k:] + r[:k])  # g^e w = 1
        e, w = rot[0], rot[1:]
        value = _invert(w) if e > 0 else w  # expression for g
        ivalue = _invert(value)
        new_rels = set()
        total = 0
        for s in rels:
            if s == r:
                continue
            if any(abs(x) == g for x in s):
                t: list[int] = []
                for x in s:
                    if x == g:
                        t.extend(value)
                    elif x == -g:
                        t.extend(ivalue)
                    else:
                        t.append(x)
                s = _canonical(_cyclic_reduce(t))
            if s:
                new_rels.add(s)
                total += len(s)
        if total > max_length:
            break
        rels = new_rels
        gens.discard(g)
    keep = sorted(gens)
    renum = {g: i + 1 for i, g in enumerate(keep)}
    relators = sorted((tuple(renum[abs(x)] * (1 if x > 0 else -1) for x in r) for r in rels), key=lambda r: (len(r), r))
    out = GroupPresentation([P.generators[g - 1] for g in keep], relators,
                            {renum[g]: P.edges[g] for g in keep if g in P.edges})
    if not keep:
        return out, "trivial"
    free_rank, torsion = abelian_invariants(out)
    if free_rank > 0 or torsion:
        return out, "nontrivial"
    return out, "unknown"


def abelian_invariants(P: GroupPresentation) -> tuple[int, list[int]]:
    """Free rank and torsion coefficients of the abelianisation."""
    n = len(P.generators)
    rows = []
    for r in P.relators:
        row: dict[int, int] = {}
        for x in r:
            j = abs(x) - 1
            row[j] = row.get(j, 0) + (1 if x > 0 else -1)
        rows.append({j: v for j, v in row.items() if v})
    factors = smith_normal_form(IntegerMatrix(len(rows), n, rows))
    return n - len(factors), [d for d in factors if d > 1]


def fundamental_group(K: SimplicialComplex) -> tuple[GroupPresentation, str]:
    """Simplified presentation and verdict, cached on the complex."""
    return K.cache.get_or_compute("fundamental_group", lambda: simplify_presentation(fundamental_group_presentation(K)))
