"""Kernel selection: the compiled extension when importable, else pure Python.

Set INTPOINTS_PURE_PYTHON=1 to force the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("INTPOINTS_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as impl
else:
    try:
        from . import _kernels as impl
    except ImportError:  # extension not built
        from . import _kernels_py as impl

from . import _kernels_py as python_impl

IMPLEMENTATION = impl.IMPLEMENTATION
max_cliques = impl.max_cliques
canon_batch = impl.canon_batch
count_top_branches = impl.count_top_branches

__all__ = ["IMPLEMENTATION", "max_cliques", "canon_batch", "count_top_branches", "impl", "python_impl"]
