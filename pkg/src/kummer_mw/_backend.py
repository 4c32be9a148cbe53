"""Kernel backend selection: compiled if importable, else pure Python.

Set ``KUMMER_MW_PURE=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py


def _load_compiled() -> ModuleType | None:
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


def get_backend(name: str | None = None) -> ModuleType:
    """'cython', 'python' or None (automatic)."""
    if name == "python":
        return _kernels_py
    compiled = _load_compiled()
    if name == "cython":
        if compiled is None:
            raise ImportError("compiled kernels are not built")
        return compiled
    if name is not None:
        raise ValueError(f"unknown backend {name!r}")
    if os.environ.get("KUMMER_MW_PURE", "") not in ("", "0") or compiled is None:
        return _kernels_py
    return compiled


kernels = get_backend()
BACKEND = "python" if kernels is _kernels_py else "cython"
