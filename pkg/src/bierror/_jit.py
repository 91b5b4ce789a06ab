"""Optional numba acceleration.

Kernels in :mod:`bierror._kernels` are decorated with :func:`jit`. When numba
is importable and ``BIERR_NUMBA`` is not set to ``0``, they compile to native
code; otherwise the decorator is the identity and the same source runs as
plain Python, with vectorised numpy replacements used where they exist
(see :mod:`bierror.simulation`).
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("BIERR_NUMBA", "1").strip().lower() in {"0", "false", "no", "off"}

try:
    if _DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:  # pragma: no cover - exercised with BIERR_NUMBA=0
    _numba = None

NUMBA_ENABLED = _numba is not None

if _numba is not None:
    # the system TBB is too old for numba; skip straight to the other layers
    _numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


def jit(*args, parallel=False):
    """``numba.njit(cache=True)`` when enabled, otherwise a no-op decorator."""

    def wrap(fn):
        if _numba is None:
            return fn
        return _numba.njit(cache=True, parallel=parallel)(fn)

    if len(args) == 1 and callable(args[0]):
        return wrap(args[0])
    return wrap


if _numba is not None:
    prange = _numba.prange
else:  # pragma: no cover
    prange = range


def py_func(fn):
    """The uncompiled Python function behind a (possibly) jitted kernel."""
    return getattr(fn, "py_func", fn)
