"""Smith normal form over the integers, with transformation certificates.

Arbitrary-precision arithmetic throughout (entries can blow up even at desk
scale).  Pivoting always picks a smallest-magnitude nonzero entry, which in
boundary matrices of nerves keeps almost every pivot at +-1.  The returned
row/column transforms U, V satisfy U @ M @ V == diag(factors) exactly and are
products of elementary integer operations, hence unimodular; ``verify``
re-multiplies to check.

Matrices are lists of rows; internally rows are sparse dicts col -> value.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class SmithNormalForm:
    shape: tuple
    factors: tuple          # invariant factors d1 | d2 | ..., all positive
    rank: int
    row_transform: list     # U, len m, sparse dict rows
    col_transform: list     # V, len n, sparse dict rows

    def diagonal_matrix(self):
        m, n = self.shape
        return [{i: self.factors[i]} if i < len(self.factors) else {}
                for i in range(m)]

    def verify(self, matrix):
        """Exact re-multiplication check: U M V == diag(factors)."""
        m, n = self.shape
        sparse = [_sparse_row(row) for row in matrix]
        um = _mat_mult(self.row_transform, sparse, n)
        umv = _mat_mult(um, self.col_transform, n)
        want = self.diagonal_matrix()
        return umv == want


def _sparse_row(row):
    return {j: v for j, v in enumerate(row) if v}


def _mat_mult(a, b, n_cols):
    """Sparse (dict-rows) matrix product a @ b."""
    out = []
    for row in a:
        acc = {}
        for k, v in row.items():
            for j, w in b[k].items():
                acc[j] = acc.get(j, 0) + v * w
        out.append({j: v for j, v in acc.items() if v})
    return out


def smith_normal_form(matrix, n_cols=None):
    """SNF of an integer matrix (list of rows, possibly empty).

    Pass n_cols when the matrix has zero rows (shape is ambiguous then).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else n_cols
    if n is None:
        n = 0
    rows = [_sparse_row(r) for r in matrix]
    col_rows = [set() for _ in range(n)]          # col -> rows with a nonzero
    for i, r in enumerate(rows):
        for j in r:
            col_rows[j].add(i)

    U = [{i: 1} for i in range(m)]
    VT = [{j: 1} for j in range(n)]               # V maintained transposed

    def row_set(i, j, v):
        if v:
            rows[i][j] = v
            col_rows[j].add(i)
        else:
            rows[i].pop(j, None)
            col_rows[j].discard(i)

    def row_addmul(dst, src, q):
        """row[dst] += q * row[src] (and same on U)."""
        for j, v in list(rows[src].items()):
            row_set(dst, j, rows[dst].get(j, 0) + q * v)
        acc = U[dst]
        for j, v in U[src].items():
            w = acc.get(j, 0) + q * v
            if w:
                acc[j] = w
            else:
                acc.pop(j, None)

    def col_addmul(dst, src, q):
        """col[dst] += q * col[src] (and same on V)."""
        for i in list(col_rows[src]):
            row_set(i, dst, rows[i].get(dst, 0) + q * rows[i][src])
        acc = VT[dst]
        for j, v in VT[src].items():
            w = acc.get(j, 0) + q * v
            if w:
                acc[j] = w
            else:
                acc.pop(j, None)

    def row_swap(a, b):
        if a == b:
            return
        for j in set(rows[a]) | set(rows[b]):
            col_rows[j].discard(a)
            col_rows[j].discard(b)
        rows[a], rows[b] = rows[b], rows[a]
        U[a], U[b] = U[b], U[a]
        for j in rows[a]:
            col_rows[j].add(a)
        for j in rows[b]:
            col_rows[j].add(b)

    def col_swap(a, b):
        if a == b:
            return
        for i in col_rows[a] | col_rows[b]:
            va, vb = rows[i].get(a, 0), rows[i].get(b, 0)
            row_set(i, a, vb)
            row_set(i, b, va)
        VT[a], VT[b] = VT[b], VT[a]

    def smallest_pivot(t):
        best = None
        for j in range(t, n):
            for i in col_rows[j]:
                if i < t:
                    continue
                v = abs(rows[i][j])
                if best is None or v < best[0]:
                    best = (v, i, j)
                    if v == 1:
                        return best
        return best

    t = 0
    limit = min(m, n)
    while t < limit:
        best = smallest_pivot(t)
        if best is None:
            break
        _, pi, pj = best
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            if rows[t][t] < 0:
                rows[t] = {j: -w for j, w in rows[t].items()}
                U[t] = {j: -w for j, w in U[t].items()}
            pivot = rows[t][t]
            # clear column t
            dirty = False
            for i in list(col_rows[t]):
                if i == t:
                    continue
                if i < t:
                    continue
                q = -(rows[i][t] // pivot)
                row_addmul(i, t, q)
                if rows[i].get(t):
                    dirty = True
            if dirty:
                # a remainder is smaller than the pivot; re-pivot on it
                _, pi, pj = smallest_pivot(t)
                row_swap(t, pi)
                col_swap(t, pj)
                continue
            # clear row t
            dirty = False
            for j in list(rows[t]):
                if j == t:
                    continue
                q = -(rows[t][j] // pivot)
                col_addmul(j, t, q)
                if rows[t].get(j):
                    dirty = True
            if dirty:
                _, pi, pj = smallest_pivot(t)
                row_swap(t, pi)
                col_swap(t, pj)
                continue
            if len(rows[t]) == 1 and not any(i > t for i in col_rows[t]):
                break
        # divisibility: pivot must divide the remaining submatrix
        pivot = rows[t][t]
        offender = None
        for j in range(t + 1, n):
            for i in col_rows[j]:
                if i > t and rows[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_addmul(t, offender, 1)
            continue  # redo position t with the merged row
        t += 1

    factors = []
    for i in range(t):
        v = rows[i].get(i, 0)
        if v < 0:
            # negate the row to make the factor positive
            rows[i] = {j: -w for j, w in rows[i].items()}
            U[i] = {j: -w for j, w in U[i].items()}
            v = -v
        if v:
            factors.append(v)

    V = [dict() for _ in range(n)]
    for j, row in enumerate(VT):
        for i, v in row.items():
            V[i][j] = v
    return SmithNormalForm((m, n), tuple(factors), len(factors), U, V)


def rank_of(matrix, n_cols=None):
    return smith_normal_form(matrix, n_cols).rank
