"""Hot loops for list-homomorphism search.

The compiled extension is used when it was built and the target has at most
64 colors; otherwise the pure-Python twin runs.  Set ``GEOHOM_PURE=1`` to
force the Python path.
"""
from __future__ import annotations

import importlib
import os

from . import _pykernel

FOUND = _pykernel.FOUND
NOT_FOUND = _pykernel.NOT_FOUND
LIMIT = _pykernel.LIMIT


def _load_native():
    if os.environ.get("GEOHOM_PURE") == "1":
        return None
    try:
        return importlib.import_module(f"{__name__}._ckernel")
    except ImportError:
        return None


_ckernel = _load_native()

BACKEND = "cython" if _ckernel is not None else "python"

MAX_NATIVE_COLORS = 64


def _pick(hadj, backend: str | None):
    if backend == "python" or _ckernel is None or len(hadj) > MAX_NATIVE_COLORS:
        if backend == "cython" and _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        return _pykernel
    return _ckernel


def ac_propagate(indptr, indices, hadj, lists, seeds=None, backend: str | None = None) -> bool:
    return _pick(hadj, backend).ac_propagate(indptr, indices, hadj, lists, seeds)


def search(indptr, indices, hadj, lists, node_limit: int = 0, backend: str | None = None):
    return _pick(hadj, backend).search(indptr, indices, hadj, lists, node_limit)
