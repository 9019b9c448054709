"""Backend selection for the hot loops.

The compiled extension is used when it was built; set ``CUBICTWIST_PURE=1``
to force the pure-Python implementation.
"""

import os

from . import _pykernels

if os.environ.get("CUBICTWIST_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"
    else:
        BACKEND = "cython"

hecke_table = _impl.hecke_table
smoothed_sum = _impl.smoothed_sum

__all__ = ["BACKEND", "hecke_table", "smoothed_sum"]
