"""Kernel compilation switch.

Hot kernels are plain Python functions decorated with :func:`kernel`.  By
default they are compiled with ``numba.njit``; setting the environment
variable ``TEMPFOREST_DISABLE_JIT=1`` before import keeps them as ordinary
Python operating on the same numpy arrays.
"""
import os

_FLAG = "TEMPFOREST_DISABLE_JIT"

JIT_ENABLED = os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")

if JIT_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False

if JIT_ENABLED:
    def kernel(fn):
        return njit(cache=True, nogil=True)(fn)
else:
    def kernel(fn):
        return fn


def backend_name() -> str:
    return "numba" if JIT_ENABLED else "python"
