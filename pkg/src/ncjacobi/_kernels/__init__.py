"""Hot kernels with a compiled implementation and a pure-Python fallback.

The compiled extension is used when it imports; set ``NCJACOBI_PURE_PYTHON=1``
to force the fallback.  ``BACKEND`` names the active implementation.
"""

import os

from . import _labelled_py as python_backend

compiled_backend = None
if not os.environ.get("NCJACOBI_PURE_PYTHON"):
    try:
        from . import _labelled as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

labelled_table = _impl.labelled_table
count_labellings = _impl.count_labellings

__all__ = ["BACKEND", "labelled_table", "count_labellings", "python_backend", "compiled_backend"]
