from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from orbcat import kernels
from orbcat.snf import invariant_factors, smith_normal_form

compiled_only = pytest.mark.skipif("compiled" not in kernels.available_backends(), reason="extension not built")


def _residual(result):
    pcols, rr, cc, vv = result
    return sorted(pcols), sorted(zip(rr, cc, vv))


@compiled_only
def test_extension_is_default():
    assert kernels.BACKEND == "compiled"


@compiled_only
@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 12),
    st.integers(1, 12),
    st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11), st.integers(-3, 3)), max_size=60),
)
def test_backends_agree(m, n, entries):
    A = np.zeros((m, n), dtype=np.int64)
    for i, j, v in entries:
        A[i % m, j % n] = v
    M = sp.csc_matrix(A)
    M.eliminate_zeros()
    M.sort_indices()
    args = (m, n, M.indptr, M.indices, M.data)
    py = kernels.unit_eliminate(*args, backend="python")
    cx = kernels.unit_eliminate(*args, backend="compiled")
    # the two share the pivot rule, so pivots and leftovers coincide exactly
    assert _residual(py) == _residual(cx)


@compiled_only
def test_overflow_falls_back():
    big = 2**40
    A = np.array([[1, big, 0], [big, 1, big], [0, big, 3]], dtype=np.int64)
    want = smith_normal_form(A.tolist()).factors
    assert invariant_factors(sp.csc_matrix(A), backend="compiled").factors == want


def test_env_selects_python():
    env = dict(os.environ, ORBCAT_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "import orbcat.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_unknown_compiled_request_without_extension(monkeypatch):
    monkeypatch.setattr(kernels, "_compiled", None)
    with pytest.raises(RuntimeError):
        kernels.unit_eliminate(1, 1, np.array([0, 1]), np.array([0]), np.array([1]), backend="compiled")
