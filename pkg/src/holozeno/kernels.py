"""
Backend selection for the hot kernels.

The compiled extension ``holozeno._ckernels`` is used when it imports;
otherwise, or when ``HOLOZENO_PURE_PYTHON=1`` is set, the numpy versions in
``holozeno._pykernels`` are used. Both expose the same functions.
"""
import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if os.environ.get("HOLOZENO_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

if compiled_backend is not None:
    BACKEND = "cython"
    _impl = compiled_backend
else:
    BACKEND = "python"
    _impl = _pykernels

linear_entropy_batch = _impl.linear_entropy_batch
max_concurrence_grid = _impl.max_concurrence_grid

__all__ = ["BACKEND", "linear_entropy_batch", "max_concurrence_grid",
           "python_backend", "compiled_backend"]
