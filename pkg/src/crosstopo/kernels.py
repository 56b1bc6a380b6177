"""Kernel selection: the compiled extension when built, else pure Python.

Set ``CROSSTOPO_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
label4 = _pykernels.label4

if os.environ.get("CROSSTOPO_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        label4 = _ckernels.label4
        BACKEND = "cython"
