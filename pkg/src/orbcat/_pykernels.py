"""Pure-Python elimination kernel (reference implementation and fallback)."""

from __future__ import annotations

import heapq

import numpy as np


def unit_eliminate(nrows, ncols, indptr, indices, data):
    """Eliminate +-1 pivots from a sparse integer matrix given in CSC form.

    Each unit pivot contributes an invariant factor 1 and removes one row and
    one column; the other rows of the pivot column are updated by row
    operations, which leaves the Smith form of the remaining block unchanged.
    Pivots are taken from the sparsest columns first, preferring the shortest
    row, to keep fill-in low.

    Returns ``(pivot_cols, res_rows, res_cols, res_vals)``: the columns that
    received a pivot, in order, and the residual block in COO form (original
    row/column indices).
    """
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    data = np.asarray(data, dtype=np.int64)
    rows: list[dict[int, int]] = [dict() for _ in range(nrows)]
    col_rows: list[set[int]] = [set() for _ in range(ncols)]
    for c in range(ncols):
        for p in range(indptr[c], indptr[c + 1]):
            v = int(data[p])
            if v:
                r = int(indices[p])
                rows[r][c] = rows[r].get(c, 0) + v
                col_rows[c].add(r)
    alive_row = [True] * nrows
    alive_col = [True] * ncols
    heap = [(len(col_rows[c]), c) for c in range(ncols) if col_rows[c]]
    heapq.heapify(heap)
    pivot_cols: list[int] = []
    deferred: list[int] = []

    def live(c: int) -> set[int]:
        cur = {r for r in col_rows[c] if alive_row[r] and rows[r].get(c)}
        col_rows[c] = cur
        return cur

    def try_pivot(c: int) -> bool:
        cand = live(c)
        best = None
        for r in cand:
            v = rows[r][c]
            if v == 1 or v == -1:
                if best is None or len(rows[r]) < len(rows[best]):
                    best = r
        if best is None:
            return False
        prow = rows[best]
        u = prow[c]
        for r2 in cand:
            if r2 == best:
                continue
            row2 = rows[r2]
            factor = row2[c] * u
            for c2, v in prow.items():
                nv = row2.get(c2, 0) - factor * v
                if nv:
                    if c2 not in row2:
                        col_rows[c2].add(r2)
                        heapq.heappush(heap, (len(col_rows[c2]), c2))
                    row2[c2] = nv
                else:
                    row2.pop(c2, None)
        alive_row[best] = False
        alive_col[c] = False
        rows[best] = {}
        pivot_cols.append(c)
        return True

    while heap:
        key, c = heapq.heappop(heap)
        if not alive_col[c]:
            continue
        n = len(live(c))
        if n == 0:
            alive_col[c] = False
            continue
        if n > key:
            heapq.heappush(heap, (n, c))
            continue
        if not try_pivot(c):
            deferred.append(c)

    progress = True
    while progress and deferred:
        progress = False
        remaining = []
        for c in sorted(set(deferred)):
            if not alive_col[c]:
                continue
            if try_pivot(c):
                progress = True
            else:
                remaining.append(c)
        deferred = remaining

    rr, cc, vv = [], [], []
    for r in range(nrows):
        if not alive_row[r]:
            continue
        for c, v in sorted(rows[r].items()):
            if alive_col[c] and v:
                rr.append(r)
                cc.append(c)
                vv.append(v)
    return pivot_cols, rr, cc, vv
