"""Select the elimination kernel at import time.

The compiled kernel is used when it was built; ``TRIALITY_PURE_PYTHON=1``
forces the pure-Python one.
"""

import os

from . import _rref_py

BACKEND = "python"
rref_int = _rref_py.rref_int

if os.environ.get("TRIALITY_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _rref_c
    except ImportError:
        pass
    else:
        rref_int = _rref_c.rref_int
        BACKEND = "cython"
