"""Permutation groups: orbits, stabilizer chains and transitive constructions.

Points are ``1..n``. Products act on the right, as in GAP: ``(p * q)(i)``
means "apply ``p``, then ``q``".
"""
from __future__ import annotations

import re
from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

from .complex import SimplicialComplex, from_facets, pseudomanifold_check
from .errors import ParseError, PreconditionError


class Permutation:
    """A bijection of ``1..n`` stored as its image list."""

    __slots__ = ("_img",)

    def __init__(self, images: Sequence[int]):
        img = tuple(int(x) for x in images)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"not a permutation of 1..{len(img)}: {list(images)}")
        self._img = img

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> "Permutation":
        cycles = [list(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=0)
        n = max(top, degree or 0)
        img = list(range(1, n + 1))
        seen = set()
        for c in cycles:
            for x in c:
                if x < 1:
                    raise ValueError(f"point {x} is not positive")
                if x in seen:
                    raise ValueError(f"point {x} occurs twice in cycle notation")
                seen.add(x)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b
        return cls(img)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``(1,2)(3,4)`` or ``(1 2 3)``; ``()`` is the identity."""
        s = text.strip()
        if not s:
            raise ParseError("empty permutation", column=1)
        cycles = []
        pos = 0
        for m in re.finditer(r"\(([^()]*)\)|(\S)", s):
            if m.group(2) is not None:
                raise ParseError(f"unexpected {m.group(2)!r} in cycle notation", column=m.start() + 1)
            if s[pos:m.start()].strip():
                raise ParseError("junk between cycles", column=pos + 1)
            pos = m.end()
            body = m.group(1).strip()
            if not body:
                continue
            try:
                cycles.append([int(x) for x in re.split(r"[,\s]+", body) if x])
            except ValueError:
                raise ParseError(f"bad cycle {m.group(0)!r}", column=m.start() + 1) from None
        try:
            return cls.from_cycles(cycles, degree)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return self._img

    def __call__(self, i: int) -> int:
        return self._img[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        a, b = _pad(self, other)
        return Permutation([b[x - 1] for x in a])

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, x in enumerate(self._img):
            inv[x - 1] = i + 1
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(x == i + 1 for i, x in enumerate(self._img))

    def cycles(self) -> list[tuple]:
        seen = set()
        out = []
        for start in range(1, len(self._img) + 1):
            if start in seen or self(start) == start:
                continue
            c = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                c.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(c))
        return out

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        a, b = _pad(self, other)
        return a == b

    def __hash__(self):
        img = list(self._img)
        while img and img[-1] == len(img):
            img.pop()
        return hash(tuple(img))

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()"

    __repr__ = __str__


def _pad(p: Permutation, q: Permutation):
    n = max(p.degree, q.degree)
    a = p._img + tuple(range(p.degree + 1, n + 1))
    b = q._img + tuple(range(q.degree + 1, n + 1))
    return a, b


def parse_generators(text: str) -> list[Permutation]:
    """Parse a list of permutations in cycle notation.

    Generators are separated by newlines or by commas between cycles, so
    ``(1,2)(3,4),\\n(1,3)`` and a GAP-style ``Group(...)`` body both work.
    Lines starting with ``#`` are comments.
    """
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    body = "\n".join(lines).strip()
    m = re.fullmatch(r"Group\s*\((.*)\)\s*;?", body, flags=re.S)
    if m:
        body = m.group(1)
    chunks = re.split(r"\)\s*,\s*(?=\()|\n", body.replace(");", ")"))
    gens = []
    for chunk in chunks:
        chunk = chunk.strip().rstrip(",")
        if not chunk:
            continue
        if not chunk.endswith(")"):
            chunk += ")"
        gens.append(Permutation.parse(chunk))
    if not gens:
        raise ParseError("no generators found")
    return gens


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens: list[tuple] = []
        self.transversal: dict[int, tuple] = {base: tuple(range(n))}


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(b[x] for x in a)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class PermGroup:
    """Finite permutation group of degree ``n`` given by generators."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = list(generators)
        n = max([g.degree for g in gens] + [degree or 0])
        if n < 1:
            raise ValueError("group needs degree >= 1")
        self.degree = n
        self.generators = [Permutation(_pad(g, Permutation.identity(n))[0]) for g in gens] or [Permutation.identity(n)]
        self._chain: list[_Level] | None = None

    @classmethod
    def from_text(cls, text: str, degree: int | None = None) -> "PermGroup":
        return cls(parse_generators(text), degree)

    @classmethod
    def trivial(cls, n: int) -> "PermGroup":
        return cls([Permutation.identity(n)], n)

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        if n == 1:
            return cls.trivial(1)
        return cls([Permutation.from_cycles([(1, 2)], n), Permutation.from_cycles([tuple(range(1, n + 1))], n)], n)

    @classmethod
    def cyclic(cls, n: int) -> "PermGroup":
        return cls([Permutation.from_cycles([tuple(range(1, n + 1))], n)], n)

    def _gen_tuples(self):
        return [tuple(x - 1 for x in g.images) for g in self.generators]

    # -- stabilizer chain -----------------------------------------------------
    def _stabilizer_chain(self) -> list[_Level]:
        """Schreier-Sims with the fixed base ``1, 2, ..., n``.

        Level ``i`` holds the orbit of point ``i`` under the strong
        generators fixing ``1..i-1`` (0-based internally).
        """
        if self._chain is not None:
            return self._chain
        n = self.degree
        ident = tuple(range(n))

        def fixcount(g):
            k = 0
            while k < n and g[k] == k:
                k += 1
            return k

        strong: list[tuple[tuple, int]] = [(g, fixcount(g)) for g in self._gen_tuples() if g != ident]
        levels = [_Level(i, n) for i in range(n)]

        def build(i):
            lv = levels[i]
            lv.gens = [g for g, f in strong if f >= i]
            lv.transversal = {i: ident}
            queue = deque([i])
            while queue:
                pt = queue.popleft()
                u = lv.transversal[pt]
                for s in lv.gens:
                    q = s[pt]
                    if q not in lv.transversal:
                        lv.transversal[q] = _mul(u, s)
                        queue.append(q)

        def sift(g, start):
            for i in range(start, n):
                u = levels[i].transversal.get(g[i])
                if u is None:
                    return g, i
                g = _mul(g, _inv(u))
            return g, n

        for i in range(n):
            build(i)
        i = n - 1
        while i >= 0:
            lv = levels[i]
            jumped = False
            for pt, u in list(lv.transversal.items()):
                for s in lv.gens:
                    us = _mul(u, s)
                    schreier = _mul(us, _inv(lv.transversal[us[i]]))
                    if schreier == ident:
                        continue
                    h, j = sift(schreier, i + 1)
                    if h != ident:
                        f = fixcount(h)
                        strong.append((h, f))
                        for k in range(f + 1):
                            build(k)
                        i = j
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1
        self._chain = levels
        return levels

    def order(self) -> int:
        out = 1
        for lv in self._stabilizer_chain():
            out *= len(lv.transversal)
        return out

    def contains(self, p: Permutation) -> bool:
        g = tuple(x - 1 for x in _pad(p, Permutation.identity(self.degree))[0])
        if len(g) != self.degree:
            return False
        levels = self._stabilizer_chain()
        for lv in levels:
            u = lv.transversal.get(g[lv.base])
            if u is None:
                return False
            g = _mul(g, _inv(u))
        return g == tuple(range(self.degree))

    def elements(self, limit: int = 10**6) -> list[Permutation]:
        """All group elements by breadth-first closure (small groups only)."""
        n = self.degree
        gens = self._gen_tuples()
        ident = tuple(range(n))
        seen = {ident}
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = _mul(g, s)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > limit:
                        raise OverflowError("group larger than enumeration limit")
                    queue.append(h)
        return [Permutation([x + 1 for x in g]) for g in sorted(seen)]

    def orbit(self, point: int) -> list[int]:
        gens = self.generators
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        out, seen = [], set()
        for p in range(1, self.degree + 1):
            if p not in seen:
                o = self.orbit(p)
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree

    def transitivity(self) -> int:
        """Largest t with G transitive on ordered t-tuples of distinct points."""
        levels = self._stabilizer_chain()
        n = self.degree
        t = 0
        for i in range(n):
            size = len(levels[i].transversal) if i < len(levels) else 1
            if size != n - i:
                break
            t += 1
        return t

    def __repr__(self):
        return f"<PermGroup degree={self.degree} generators={len(self.generators)}>"


def group_order(G: PermGroup) -> int:
    return G.order()


def transitivity(G: PermGroup) -> int:
    return G.transitivity()


def orbit_of_set(G: PermGroup, S: Iterable[int]) -> set[frozenset]:
    """Orbit of the vertex set ``S`` under ``G``, by breadth-first closure."""
    start = frozenset(S)
    if any(not 1 <= x <= G.degree for x in start):
        raise IndexError(f"set {sorted(start)} leaves the points 1..{G.degree}")
    gens = [g.images for g in G.generators]
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for g in gens:
            t = frozenset(g[x - 1] for x in s)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def complex_from_generators(G: PermGroup, seeds: Iterable[Iterable[int]], name: str | None = None) -> SimplicialComplex:
    """Complex whose facets are the G-orbits of the seed simplices."""
    seeds = [list(s) for s in seeds]
    if not seeds:
        raise ValueError("need at least one seed simplex")
    facets: set[frozenset] = set()
    for s in seeds:
        if len(set(s)) != len(s) or not s:
            raise ValueError(f"bad seed simplex {s}")
        facets |= orbit_of_set(G, s)
    K = from_facets(sorted(sorted(f) for f in facets),
                    name=name or f"complex from generators under group of order {G.order()}")
    return K


def automorphism_group(K: SimplicialComplex) -> PermGroup:
    """Automorphism group of K acting on internal vertex ids."""
    from .matching import automorphism_generators

    def compute():
        n = max(K.n_vertices, 1)
        gens = [Permutation(g) for g in automorphism_generators(K)]
        return PermGroup(gens or [Permutation.identity(n)], n)

    return K.cache.get_or_compute("automorphism_group", compute)


def set_orbits(G: PermGroup, k: int) -> list[list[frozenset]]:
    """Partition of all k-subsets of ``1..n`` into G-orbits (each sorted)."""
    n = G.degree
    seen: set[frozenset] = set()
    orbits = []
    for c in combinations(range(1, n + 1), k):
        s = frozenset(c)
        if s in seen:
            continue
        orb = orbit_of_set(G, s)
        seen |= orb
        orbits.append(sorted(orb, key=sorted))
    return orbits


def enumerate_transitive_complexes(n: int, d: int, G: PermGroup) -> list[SimplicialComplex]:
    """All closed d-pseudomanifolds on ``1..n`` that are unions of G-orbits.

    Orbits of (d+1)-sets are chosen by depth-first search; a branch is cut
    as soon as some ridge lies in more than two chosen facets, and a ridge
    that can no longer reach degree two kills the branch too.
    """
    if G.degree != n:
        raise PreconditionError(f"group degree {G.degree} differs from n = {n}")
    if not G.is_transitive():
        raise PreconditionError("group is not transitive")
    if not 1 <= d < n:
        raise PreconditionError("need 1 <= d < n")
    orbits = set_orbits(G, d + 1)
    ridge_sets = []
    for orb in orbits:
        counts: dict[frozenset, int] = {}
        for f in orb:
            for v in f:
                r = f - {v}
                counts[r] = counts.get(r, 0) + 1
        ridge_sets.append(counts)
    # only orbits that do not overload a ridge on their own are usable
    usable = [i for i, rc in enumerate(ridge_sets) if max(rc.values()) <= 2]
    remaining_cap: dict[frozenset, int] = {}
    for i in usable:
        for r, c in ridge_sets[i].items():
            remaining_cap[r] = remaining_cap.get(r, 0) + c
    results = []
    degree: dict[frozenset, int] = {}

    def feasible(pos):
        # every touched ridge must still be able to reach exactly two
        return all(c == 2 or c + remaining_cap.get(r, 0) >= 2 for r, c in degree.items() if c)

    def search(pos, chosen):
        if pos == len(usable):
            if chosen and all(c in (0, 2) for c in degree.values()):
                facets = [sorted(f) for i in chosen for f in orbits[i]]
                K = from_facets(facets)
                if K.n_vertices == n and pseudomanifold_check(K)[0]:
                    results.append((tuple(chosen), K))
            return
        i = usable[pos]
        rc = ridge_sets[i]
        for r, c in rc.items():
            remaining_cap[r] -= c
        # include
        if all(degree.get(r, 0) + c <= 2 for r, c in rc.items()):
            for r, c in rc.items():
                degree[r] = degree.get(r, 0) + c
            if feasible(pos):
                search(pos + 1, chosen + [i])
            for r, c in rc.items():
                degree[r] -= c
        # exclude
        if feasible(pos):
            search(pos + 1, chosen)
        for r, c in rc.items():
            remaining_cap[r] += c

    search(0, [])
    results.sort(key=lambda t: t[0])
    return [K for _, K in results]
