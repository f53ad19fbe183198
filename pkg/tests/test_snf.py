from __future__ import annotations

import itertools
import random
from math import gcd

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat.kernels import available_backends
from orbcat.snf import invariant_factors, rank_over_q, smith_normal_form


def det(M: list[list[int]]) -> int:
    """Bareiss determinant."""
    A = [row[:] for row in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def determinantal_factors(M: list[list[int]]) -> tuple[int, ...]:
    """d_k = D_k / D_{k-1}, D_k the gcd of all k x k minors."""
    m, n = len(M), len(M[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        D = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                D = gcd(D, det([[M[r][c] for c in cols] for r in rows]))
        if D == 0:
            break
        out.append(D // prev)
        prev = D
    return tuple(out)


def test_tiny_cases():
    assert smith_normal_form([[2]]).factors == (2,)
    r = smith_normal_form([[1, 0], [0, 0]])
    assert r.factors == (1,) and r.rank == 1
    assert smith_normal_form([[2, 0], [0, 3]]).factors == (1, 6)
    assert smith_normal_form([[0, 0], [0, 0]]).factors == ()
    assert smith_normal_form([]).factors == ()


def test_random_6x7_against_minors():
    rng = random.Random(7)
    for _ in range(5):
        M = [[rng.randint(-4, 4) for _ in range(7)] for _ in range(6)]
        res = smith_normal_form(M)
        assert res.factors == determinantal_factors(M)
        assert res.rank == rank_over_q(M)


small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_snf_matches_minors(M):
    res = smith_normal_form(M)
    assert res.factors == determinantal_factors(M)
    assert all(b % a == 0 for a, b in zip(res.factors, res.factors[1:]))
    assert res.rank == rank_over_q(M)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_sparse_path_matches_dense(M):
    want = smith_normal_form(M).factors
    for backend in available_backends():
        assert invariant_factors(sp.csc_matrix(np.array(M, dtype=np.int64)), backend=backend).factors == want


@pytest.mark.parametrize("seed", range(4))
def test_sparse_boundary_like(seed):
    # a sparse +-1 matrix with a planted non-unit block
    rng = np.random.default_rng(seed)
    m, n = 40, 50
    A = np.zeros((m, n), dtype=np.int64)
    for j in range(n):
        for i in rng.choice(m, size=3, replace=False):
            A[i, j] = rng.choice([-1, 1])
    A[:3, :3] = np.array([[2, 4, 0], [0, 6, 0], [0, 0, 0]])
    want = smith_normal_form(A.tolist()).factors
    for backend in available_backends():
        assert invariant_factors(sp.csc_matrix(A), backend=backend).factors == want
