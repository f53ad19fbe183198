"""Backend selection for the hot elimination kernel.

The compiled extension is used when it was built; otherwise, or when
``ORBCAT_BACKEND=python`` is set, the pure-Python implementation is used.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_compiled = None

if os.environ.get("ORBCAT_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _compiled = None


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _compiled is not None else [])


def unit_eliminate(nrows, ncols, indptr, indices, data, backend: str | None = None):
    """Dispatch to the selected backend; int64 overflow falls back to Python integers."""
    backend = backend or BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        try:
            return _compiled.unit_eliminate(nrows, ncols, indptr, indices, data)
        except OverflowError:
            pass
    return _pykernels.unit_eliminate(nrows, ncols, indptr, indices, data)
