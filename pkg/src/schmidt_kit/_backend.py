"""Pick the elimination kernel at import time.

The compiled extension is used when it was built; setting
``SCHMIDT_KIT_PURE_PYTHON=1`` forces the pure-Python kernel.
"""

import os

from schmidt_kit import _bareiss_py

if os.environ.get("SCHMIDT_KIT_PURE_PYTHON", "").strip() not in ("", "0"):
    _compiled = None
else:
    try:
        from schmidt_kit import _bareiss as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    BACKEND = "cython"
    rank_gaussian = _compiled.rank_gaussian
    det_gaussian = _compiled.det_gaussian
else:
    BACKEND = "python"
    rank_gaussian = _bareiss_py.rank_gaussian
    det_gaussian = _bareiss_py.det_gaussian

__all__ = ["BACKEND", "rank_gaussian", "det_gaussian"]
