"""Exact integer linear algebra on sparse matrices.

Everything here uses Python integers, so entries never overflow. Matrices
are stored row-wise as ``{column: value}`` dicts with zero entries omitted.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class IntegerMatrix:
    """Sparse integer matrix with ``nrows x ncols`` shape."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict[int, int]] = [dict(r) for r in rows] if rows is not None else [{} for _ in range(nrows)]
        if len(self.rows) != nrows:
            raise ValueError("row count does not match nrows")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: int(x) for j, x in enumerate(r) if x})
        return cls(len(data), ncols, rows)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                out[i][j] = x
        return out

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self.rows[i].get(j, 0)

    def transpose(self) -> "IntegerMatrix":
        cols: list[dict[int, int]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                cols[j][i] = x
        return IntegerMatrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc: dict[int, int] = {}
            for k, x in r.items():
                for j, y in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + x * y
            out.append({j: v for j, v in acc.items() if v})
        return IntegerMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"IntegerMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"


def _as_rows(M) -> tuple[list[dict[int, int]], int]:
    if isinstance(M, IntegerMatrix):
        return [dict(r) for r in M.rows if r], M.ncols
    dense = [list(r) for r in M]
    ncols = len(dense[0]) if dense else 0
    return [{j: int(x) for j, x in enumerate(r) if x} for r in dense if any(r)], ncols


def _sub_row(target: dict, pivot_row: dict, factor: int, col_index=None, tid=None):
    """target -= factor * pivot_row, in place, keeping the column index current."""
    for j, x in pivot_row.items():
        v = target.get(j, 0) - factor * x
        if v:
            if j not in target and col_index is not None:
                col_index[j].add(tid)
            target[j] = v
        else:
            if j in target:
                del target[j]
                if col_index is not None:
                    col_index[j].discard(tid)


def _unit_elimination(rows: list[dict], ncols: int, modulus: int | None = None):
    """Pivot on unit entries until none are left.

    Returns ``(rank_found, leftover_rows)``. Over the integers a unit is
    +-1; modulo a prime every nonzero entry is a unit.
    """
    col_index: list[set] = [set() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j in r:
            col_index[j].add(i)
    pending = sorted(range(len(rows)), key=lambda i: len(rows[i]))
    rank = 0
    progress = True
    while pending and progress:
        progress = False
        deferred = []
        for i in pending:
            r = rows[i]
            if not r:
                continue
            if modulus is None:
                units = [j for j, x in r.items() if x == 1 or x == -1]
            else:
                units = list(r)
            if not units:
                deferred.append(i)
                continue
            c = min(units, key=lambda j: (len(col_index[j]), j))
            pv = r[c]
            inv = pv if modulus is None else pow(pv, -1, modulus)
            for j in r:
                col_index[j].discard(i)
            for t in list(col_index[c]):
                f = rows[t][c] * inv
                if modulus is not None:
                    f %= modulus
                _sub_row(rows[t], r, f, col_index, t)
                if modulus is not None:
                    tr = rows[t]
                    for j in [j for j, x in tr.items() if x % modulus == 0]:
                        del tr[j]
                        col_index[j].discard(t)
                    for j in tr:
                        tr[j] %= modulus
            rows[i] = {}
            rank += 1
            progress = True
        pending = deferred
    leftover = [rows[i] for i in pending if rows[i]]
    return rank, leftover


def _snf_dense(A: list[list[int]]) -> list[int]:
    """Invariant factors of a small dense integer matrix."""
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # a remainder is smaller than the pivot: move it into place
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(best[1])):
                        best = (("r", i), A[i][t])
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < abs(best[1])):
                        best = (("c", j), A[t][j])
                kind, k = best[0]
                if kind == "r":
                    A[t], A[k] = A[k], A[t]
                else:
                    for row in A:
                        row[t], row[k] = row[k], row[t]
                continue
            p = A[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        factors.append(abs(A[t][t]))
        t += 1
    return factors


def smith_normal_form(M) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix.

    ``M`` is an :class:`IntegerMatrix` or a dense list of rows. Unit pivots
    are eliminated sparsely first; whatever is left over is small and goes
    through the dense algorithm.
    """
    rows, ncols = _as_rows(M)
    if not rows:
        return []
    ones, leftover = _unit_elimination(rows, ncols)
    rest: list[int] = []
    if leftover:
        cols = sorted({j for r in leftover for j in r})
        pos = {j: k for k, j in enumerate(cols)}
        dense = [[0] * len(cols) for _ in leftover]
        for i, r in enumerate(leftover):
            for j, x in r.items():
                dense[i][pos[j]] = x
        rest = _snf_dense(dense)
    return [1] * ones + rest


def rank(M) -> int:
    return len(smith_normal_form(M))


def rank_mod_p(M, p: int) -> int:
    """Rank over the field with ``p`` elements (``p`` must be prime)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rows, ncols = _as_rows(M)
    rows = [{j: x % p for j, x in r.items() if x % p} for r in rows]
    rows = [r for r in rows if r]
    r, leftover = _unit_elimination(rows, ncols, modulus=p)
    assert not leftover
    return r


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def integer_kernel(M) -> tuple[list[dict[int, int]], list[dict[int, int]]]:
    """Z-basis of ``{x : M x = 0}`` together with a complement.

    Works by unimodular column operations, so the two returned lists of
    sparse vectors (indexed by column of ``M``) together form a basis of
    ``Z^ncols``; the first list spans the kernel.
    """
    rows, ncols = (M.rows, M.ncols) if isinstance(M, IntegerMatrix) else (_as_rows(M)[0], _as_rows(M)[1])
    # column j: image (row -> value) and transform (original column -> coefficient)
    image: list[dict[int, int]] = [{} for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j, x in r.items():
            image[j][i] = x
    transform: list[dict[int, int]] = [{j: 1} for j in range(ncols)]
    row_index: dict[int, set] = {}
    for j in range(ncols):
        for i in image[j]:
            row_index.setdefault(i, set()).add(j)
    active = set(range(ncols))
    pivots = []
    for i in sorted(row_index):
        cands = [j for j in row_index.get(i, ()) if j in active]
        while len(cands) > 1:
            p = min(cands, key=lambda j: (abs(image[j][i]), len(image[j]) + len(transform[j]), j))
            pv = image[p][i]
            for c in cands:
                if c == p:
                    continue
                q = _round_div(image[c][i], pv)
                for k, x in image[p].items():
                    v = image[c].get(k, 0) - q * x
                    if v:
                        if k not in image[c]:
                            row_index.setdefault(k, set()).add(c)
                        image[c][k] = v
                    elif k in image[c]:
                        del image[c][k]
                        row_index[k].discard(c)
                _axpy(transform[c], transform[p], -q)
            cands = [j for j in cands if i in image[j]]
        if cands:
            p = cands[0]
            active.discard(p)
            pivots.append(p)
    kernel = [transform[j] for j in sorted(active)]
    complement = [transform[j] for j in pivots]
    return kernel, complement


def _round_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


def _axpy(y: dict, x: dict, a: int):
    """y += a * x for sparse vectors."""
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def inertia(Q: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """``(n_minus, n_zero, n_plus)`` of a symmetric rational matrix.

    Exact symmetric Gaussian elimination by congruences; by Sylvester's law
    the sign counts of the resulting diagonal are the inertia.
    """
    A = [[Fraction(x) for x in row] for row in Q]
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    neg = pos = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes the (i, i) entry 2*A[i][j] != 0
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        d = A[piv][piv]
        active.remove(piv)
        for i in active:
            if A[i][piv]:
                f = A[i][piv] / d
                for k in active:
                    A[i][k] -= f * A[piv][k]
                A[i][piv] = Fraction(0)
        for k in active:
            A[piv][k] = Fraction(0)
        if d > 0:
            pos += 1
        else:
            neg += 1
    return neg, n - neg - pos, pos


def dense_from_vectors(vectors: Iterable[dict[int, int]], length: int) -> list[list[int]]:
    out = []
    for v in vectors:
        row = [0] * length
        for k, x in v.items():
            row[k] = x
        out.append(row)
    return out
