"""Kernel selection.

The compiled extension is used when it imports cleanly; otherwise the
pure-Python module is used.  Setting ``POLYSTAR_PURE_PYTHON=1`` forces the
fallback (handy for benchmarks and for checking that both agree).
"""

import os

from polystar import _pykernels

BACKEND = "python"
shuffle_counts = _pykernels.shuffle_counts
li_taylor = _pykernels.li_taylor

if os.environ.get("POLYSTAR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from polystar import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        shuffle_counts = _ckernels.shuffle_counts
        li_taylor = _ckernels.li_taylor

__all__ = ["BACKEND", "shuffle_counts", "li_taylor"]
