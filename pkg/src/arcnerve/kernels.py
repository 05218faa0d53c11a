"""Backend selection for the reduction kernels.

The compiled extension is used when it imports; set ``ARCNERVE_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
import os

from . import _kernels_py

try:
    if os.environ.get("ARCNERVE_PURE_PYTHON"):
        raise ImportError("pure-Python backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

default = _compiled if _compiled is not None else _kernels_py
BACKEND = default.BACKEND


def get(name=None):
    """Return the kernel module called ``name`` (``"compiled"``/``"python"``)."""
    if name is None:
        return default
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available; build the extension first")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def available():
    return ["compiled", "python"] if _compiled is not None else ["python"]
