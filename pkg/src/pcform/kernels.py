"""Backend selection for the dense mod-p kernels.

The compiled extension is used when it imports and ``PCFORM_PURE_PYTHON`` is
unset or ``0``; otherwise the numpy implementation is used.  ``BACKEND``
names the active choice.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
try:
    from . import _kernels as compiled_backend  # type: ignore[no-redef]
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("PCFORM_PURE_PYTHON", "0") in ("", "0"):
    _active = compiled_backend
    BACKEND = "cython"
else:
    _active = python_backend
    BACKEND = "python"

sweep_reduce_modp = _active.sweep_reduce_modp
rank_modp = _active.rank_modp
