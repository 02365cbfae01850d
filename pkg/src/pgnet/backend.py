"""Kernel backend selection.

PGNET_BACKEND=numba forces the compiled kernels, PGNET_BACKEND=numpy the
vectorized fallback. Default ("auto") prefers numba and falls back to numpy
when numba is not importable. Both backends expose the same functions and
generate bit-identical networks.
"""

import os

from .errors import ParamError

ENV_VAR = "PGNET_BACKEND"


def load_backend(name):
    """Import a kernel backend by name ('numba' or 'numpy')."""
    if name == "numba":
        from . import _kernels_numba

        return _kernels_numba
    if name == "numpy":
        from . import _kernels_numpy

        return _kernels_numpy
    raise ParamError(f"unknown kernel backend {name!r}; expected 'numba' or 'numpy'")


def _select():
    choice = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
    if choice == "auto":
        try:
            return load_backend("numba")
        except ImportError:
            return load_backend("numpy")
    return load_backend(choice)


kernels = _select()


def backend_name():
    """Name of the active backend."""
    return kernels.BACKEND_NAME
