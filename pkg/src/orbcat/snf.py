"""Smith normal form over the integers.

Small dense matrices are reduced directly with exact Python integers.  Large
sparse boundary matrices first go through unit-pivot elimination (see
``kernels``), and only the leftover block is reduced densely.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from . import kernels


@dataclass(frozen=True)
class SNFResult:
    """Nonzero diagonal entries d_1 | d_2 | ... of the Smith form, all positive."""

    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SNFResult:
    """Invariant factors of a dense integer matrix."""
    A = [[int(x) for x in row] for row in matrix]
    if not A or not A[0]:
        return SNFResult(())
    m, n = len(A), len(A[0])
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block becomes the pivot
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    ri, rt = A[i], A[t]
                    for j in range(t, n):
                        ri[j] -= q * rt[j]
                if A[i][t]:
                    done = False
            rt = A[t]
            for j in range(t + 1, n):
                q = rt[j] // p
                if q:
                    for row in A[t:]:
                        row[j] -= q * row[t]
                if rt[j]:
                    done = False
            if done:
                # pivot must divide the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                for j in range(t, n):
                    A[t][j] += A[i][j]
                continue
            # move the smallest nonzero remainder into the pivot position
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cand)
            if i != t:
                A[t], A[i] = A[i], A[t]
            else:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return SNFResult(tuple(_normalise(diag)))


def _normalise(diag: list[int]) -> list[int]:
    """Turn any diagonal into the divisibility chain with the same group."""
    d = sorted(x for x in diag if x)
    # repeated gcd/lcm passes settle into the Smith chain
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                g = gcd(a, b)
                if g != a:
                    d[i], d[j] = g, a * b // g
                    changed = True
    return sorted(d)


def invariant_factors(matrix, backend: str | None = None) -> SNFResult:
    """Invariant factors of a sparse (or dense) integer matrix."""
    return reduce_sparse(matrix, backend)[0]


def reduce_sparse(matrix, backend: str | None = None) -> tuple[SNFResult, list[int]]:
    """Invariant factors plus the columns that took a unit pivot."""
    M = sp.csc_matrix(matrix, dtype=np.int64)
    M.sum_duplicates()
    M.eliminate_zeros()
    M.sort_indices()
    nrows, ncols = M.shape
    if M.nnz == 0:
        return SNFResult(()), []
    pcols, rr, cc, vv = kernels.unit_eliminate(nrows, ncols, M.indptr, M.indices, M.data, backend=backend)
    pivots = len(pcols)
    if not vv:
        return SNFResult((1,) * pivots), list(pcols)
    rows = sorted(set(rr))
    cols = sorted(set(cc))
    ri = {r: i for i, r in enumerate(rows)}
    ci = {c: i for i, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rows]
    for r, c, v in zip(rr, cc, vv):
        dense[ri[r]][ci[c]] = int(v)
    rest = smith_normal_form(dense)
    return SNFResult((1,) * pivots + rest.factors), list(pcols)


def rank_over_q(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by exact fraction-free elimination."""
    A = [[int(x) for x in row] for row in matrix]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r
